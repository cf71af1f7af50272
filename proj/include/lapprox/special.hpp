#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "lapprox/bernoulli.hpp"
#include "lapprox/bigcomplex.hpp"

namespace lapprox {

namespace detail {

// sin(pi z) with the real part reduced first, so the result keeps full
// relative accuracy near the real integers (where gamma's poles live).
inline BigComplex sin_pi(const BigComplex& z) {
  Precision p = z.precision();
  BigFloat pi = const_pi(p);
  long m = 0;
  BigFloat f = z.real();
  if (abs(z.real()) > 0.5) {
    m = round_to_long(z.real());
    f = z.real() - m;
  }
  BigFloat s(p), c(p);
  sin_cos(pi * f, s, c);
  BigFloat sh(p), ch(p);
  sinh_cosh(pi * z.imag(), sh, ch);
  BigComplex r(s * ch, c * sh);
  if (m % 2 != 0) r = -r;
  return r;
}

struct SpougeCache {
  std::mutex mu;
  // keyed by (a, work bits)
  std::map<std::pair<long, int>, std::shared_ptr<const std::vector<BigFloat>>> coeffs;
};

inline SpougeCache& spouge_cache() {
  static SpougeCache c;
  return c;
}

inline std::shared_ptr<const std::vector<BigFloat>> spouge_coeffs(long a, int wbits) {
  auto& cache = spouge_cache();
  {
    std::lock_guard<std::mutex> lock(cache.mu);
    auto it = cache.coeffs.find({a, wbits});
    if (it != cache.coeffs.end()) return it->second;
  }
  Precision pw(wbits, 0);
  auto cs = std::make_shared<std::vector<BigFloat>>();
  cs->reserve(static_cast<size_t>(a));
  BigFloat fact(1L, pw);
  for (long k = 1; k < a; ++k) {
    if (k > 1) fact = fact * (k - 1);
    BigFloat base(a - k, pw);
    BigFloat ex = BigFloat(k, pw) - BigFloat::from_ratio(1, 2, pw);
    BigFloat ck = pow(base, ex) * exp(base) / fact;
    if (k % 2 == 0) ck = -ck;
    cs->push_back(ck);
  }
  std::lock_guard<std::mutex> lock(cache.mu);
  cache.coeffs.emplace(std::make_pair(a, wbits), cs);
  return cs;
}

// Spouge's approximation on Re(z) >= 1/2. The alternating coefficient sum
// cancels down from magnitudes near 2^(1.85 a), hence the enlarged working
// precision.
inline BigComplex gamma_spouge(const BigComplex& z, int wp) {
  long a = static_cast<long>(std::ceil((wp + 12) / 2.6509)) + 2;
  int wbits = wp + static_cast<int>(std::ceil(1.85 * static_cast<double>(a))) + 16;
  Precision pw(wbits, 0);
  auto cs = spouge_coeffs(a, wbits);
  BigComplex zz = z.at_precision(pw);
  BigFloat pi = const_pi(pw);
  BigComplex acc(sqrt(mul_2si(pi, 1)));
  for (long k = 1; k < a; ++k)
    acc = acc + BigComplex((*cs)[static_cast<size_t>(k - 1)]) / (zz + (k - 1));
  BigComplex w = zz + (a - 1);
  BigComplex half(BigFloat::from_ratio(1, 2, pw));
  BigComplex pref = exp((zz - half) * log(w) - w);
  return pref * acc;
}

}  // namespace detail

// Complete gamma for complex argument. Non-positive integers raise a
// pole_error carrying the residue (-1)^n / n!.
inline BigComplex gamma(const BigComplex& z) {
  Precision p = z.precision();
  int wp = p.work() + 16;
  Precision pw(wp, 0);
  if (z.is_real() && z.real().is_integer() && z.real() <= 0L) {
    long n = -z.real().to_long();
    BigFloat res = 1L / factorial(static_cast<unsigned long>(n), pw);
    if (n % 2 != 0) res = -res;
    throw pole_error("gamma pole at z = " + std::to_string(-n), z,
                     BigComplex(res.at_precision(p)));
  }
  BigComplex r(pw);
  if (z.real() < 0.5) {
    // reflection: gamma(z) = pi / (sin(pi z) gamma(1 - z))
    BigComplex zz = z.at_precision(pw);
    BigComplex s = detail::sin_pi(zz);
    BigComplex g1 = detail::gamma_spouge(1L - zz, wp);
    r = BigComplex(const_pi(pw)) / (s * g1);
  } else {
    r = detail::gamma_spouge(z.at_precision(pw), wp);
  }
  if (!r.is_finite()) throw overflow_error("gamma overflow");
  return r.at_precision(p);
}

// Which evaluation scheme inc_gamma uses at (z, x). The series route is
// unusable for large x (alternating terms reach e^x before decaying), the
// continued fraction converges slowly for x << |z|.
struct IncGammaRegime {
  enum Method { lower_series, continued_fraction } method;
  static constexpr double threshold_offset = 4.0;  // switch at x = |z| + 4
};

inline IncGammaRegime inc_gamma_regime(const BigComplex& z, const BigFloat& x) {
  double za = abs(z).to_double();
  double xd = x.to_double();
  return {xd < za + IncGammaRegime::threshold_offset ? IncGammaRegime::lower_series
                                                     : IncGammaRegime::continued_fraction};
}

namespace detail {

// Legendre continued fraction for Gamma(z, x), modified Lentz iteration.
inline BigComplex inc_gamma_cf(const BigComplex& z, const BigFloat& x, int wp) {
  Precision pw(wp, 0);
  BigComplex zz = z.at_precision(pw);
  BigFloat xx = x.at_precision(pw);
  BigFloat tiny = pow2(-2 * wp, pw);
  BigComplex b0 = BigComplex(xx) + 1L - zz;
  BigComplex f = b0.is_zero() ? BigComplex(tiny) : b0;
  BigComplex C = f;
  BigComplex D(pw);
  BigFloat eps = pow2(-(wp - 4), pw);
  long max_iter = 4000 + 40L * wp;
  for (long n = 1; n <= max_iter; ++n) {
    BigComplex an = (-n) * (BigComplex(n, pw) - zz);
    BigComplex bn = BigComplex(xx) + (2 * n + 1) - zz;
    D = bn + an * D;
    if (D.is_zero()) D = BigComplex(tiny);
    C = bn + an / C;
    if (C.is_zero()) C = BigComplex(tiny);
    D = 1L / D;
    BigComplex delta = C * D;
    f = f * delta;
    if (abs(delta - 1L) < eps)
      return exp(BigComplex(-xx) + zz * log(xx)) / f;
  }
  throw precision_error("incomplete gamma continued fraction did not converge");
}

// Gamma(z) - x^z sum_n (-x)^n / (n! (z+n)); needs guard bits growing with x
// because the alternating sum peaks near e^x.
inline BigComplex inc_gamma_series(const BigComplex& z, const BigFloat& x, int wp) {
  double xd = x.to_double();
  int wp2 = wp + static_cast<int>(std::ceil(1.4427 * xd)) + 32;
  // near-negative-integer z inflates 1/(z+n); compensate
  if (z.real() < 0.5) {
    long n0 = round_to_long(-z.real());
    if (n0 >= 0) {
      BigFloat d = abs(z + n0);
      if (!d.is_zero() && d < 1L) wp2 += static_cast<int>(-d.mag_exp()) + 8;
    }
  }
  Precision pw(wp2, 0);
  BigComplex zz = z.at_precision(pw);
  BigFloat xx = x.at_precision(pw);
  BigComplex sum(pw);
  BigComplex t(1L, pw);
  BigFloat cutoff = pow2(-(wp2 - 4), pw);
  long max_terms = 1000 + 10L * wp2 + static_cast<long>(8 * xd);
  bool converged = false;
  for (long n = 0; n <= max_terms; ++n) {
    BigComplex term = t / (zz + n);
    sum = sum + term;
    t = t * (-xx) / (n + 1);
    if (static_cast<double>(n) > xd && abs(t) < cutoff) {
      converged = true;
      break;
    }
  }
  if (!converged) throw precision_error("incomplete gamma series did not converge");
  BigComplex g = gamma(BigComplex(zz));
  return g - pow_real_base(xx, zz) * sum;
}

// E1(x) = Gamma(0, x); power series for small x, continued fraction otherwise.
inline BigComplex exp_integral_e1(const BigFloat& x, int wp) {
  if (x >= 1L) return inc_gamma_cf(BigComplex(Precision(std::max(wp, 64), 0)), x, wp);
  Precision pw(wp + 16, 0);
  BigFloat xx = x.at_precision(pw);
  // -euler - log x + sum_{k>=1} (-1)^{k+1} x^k / (k k!)
  BigFloat acc = -const_euler(pw) - log(xx);
  BigFloat t(1L, pw);
  BigFloat cutoff = pow2(-(pw.work() - 4), pw);
  for (long k = 1; k < 10000; ++k) {
    t = t * xx / k;
    BigFloat term = t / k;
    if (k % 2 == 0) term = -term;
    acc = acc + term;
    if (t < cutoff) return BigComplex(acc);
  }
  throw precision_error("E1 series did not converge");
}

// Shared Euler-Maclaurin core; aa must already carry working precision wp.
// The correction series stops only when the latest term is below target and
// still shrinking; if terms turn around first, the split point N doubles.
inline BigComplex hurwitz_em(const BigComplex& ss, const BigFloat& aa, int wp) {
  Precision pw(wp, 0);
  double imag_s = std::abs(ss.imag().to_double());
  long N = std::max<long>(24, static_cast<long>(0.27 * wp + 0.6 * imag_s));
  for (int attempt = 0; attempt < 6; ++attempt, N *= 2) {
    BigComplex acc(pw);
    for (long k = 0; k < N; ++k)
      acc = acc + pow_real_base(BigFloat(k, pw) + aa, -ss);
    BigFloat zN = BigFloat(N, pw) + aa;
    acc = acc + pow_real_base(zN, 1L - ss) / (ss - 1L);
    BigComplex zs = pow_real_base(zN, -ss);
    acc = acc + zs / 2;

    BigFloat target = mul_2si(abs(acc) + 1L, -(wp - 12));
    BigComplex curpow = zs / zN;  // zN^(-s-1)
    BigComplex poch = ss;         // (s)_1
    BigFloat fact(2L, pw);        // (2j)!
    BigFloat prev_mag(pw);
    bool have_prev = false;
    for (long j = 1; j <= 8 + wp; ++j) {
      BigComplex term =
          BigComplex(bernoulli_2n(static_cast<unsigned>(j), pw)) * poch * curpow / fact;
      BigFloat mag = abs(term);
      if (have_prev && mag > prev_mag && mag > target) break;  // turn-around: retry larger N
      acc = acc + term;
      if (mag < target && have_prev && mag <= prev_mag) return acc;
      prev_mag = mag;
      have_prev = true;
      poch = poch * (ss + (2 * j - 1)) * (ss + 2 * j);
      curpow = curpow / (zN * zN);
      fact = fact * ((2 * j + 1) * (2 * j + 2));
    }
  }
  throw precision_error("hurwitz_zeta: Euler-Maclaurin did not reach target");
}

}  // namespace detail

// Upper incomplete gamma Gamma(z, x) = int_x^inf e^-t t^(z-1) dt for real
// x > 0, analytically continued in z (entire for fixed x > 0).
inline BigComplex inc_gamma(const BigComplex& z, const BigFloat& x) {
  if (x.sign() <= 0) throw domain_error("inc_gamma requires x > 0");
  Precision p = promote(z.precision(), x.precision());
  int wp = p.work() + 16;
  if (z.is_real() && z.real().is_integer() && z.real() <= 0L) {
    // E1 plus downward recurrence Gamma(z-1,x) = (Gamma(z,x) - x^{z-1} e^-x)/(z-1)
    long m = -z.real().to_long();
    int wpm = wp + 8 * static_cast<int>(m) + 8;
    Precision pw(wpm, 0);
    BigComplex cur = detail::exp_integral_e1(x.at_precision(pw), wpm);
    BigFloat ex = exp(-x.at_precision(pw));
    for (long j = 1; j <= m; ++j) {
      BigFloat xp = pow_si(x.at_precision(pw), -j);
      cur = (cur - BigComplex(xp * ex)) / (-j);
    }
    return cur.at_precision(p);
  }
  auto regime = inc_gamma_regime(z, x);
  BigComplex r = regime.method == IncGammaRegime::lower_series
                     ? detail::inc_gamma_series(z, x, wp)
                     : detail::inc_gamma_cf(z, x, wp);
  if (!r.is_finite()) throw overflow_error("inc_gamma overflow");
  return r.at_precision(p);
}

// Force a particular regime; used to check both schemes agree on the switch band.
inline BigComplex inc_gamma_via(IncGammaRegime regime, const BigComplex& z, const BigFloat& x) {
  if (x.sign() <= 0) throw domain_error("inc_gamma requires x > 0");
  Precision p = promote(z.precision(), x.precision());
  int wp = p.work() + 16;
  BigComplex r = regime.method == IncGammaRegime::lower_series
                     ? detail::inc_gamma_series(z, x, wp)
                     : detail::inc_gamma_cf(z, x, wp);
  return r.at_precision(p);
}

// Hurwitz zeta(s, a) with a = a_num/a_den in (0, 1] kept exact across
// precision changes.
inline BigComplex hurwitz_zeta_ratio(const BigComplex& s, long a_num, long a_den) {
  if (a_den <= 0 || a_num <= 0 || a_num > a_den)
    throw domain_error("hurwitz_zeta: a must lie in (0, 1]");
  if (s.is_real() && s.real() == 1L)
    throw pole_error("hurwitz zeta pole at s = 1", s, BigComplex(1L, s.precision()));
  Precision p = s.precision();
  int wp = p.work() + 24;
  Precision pw(wp, 0);
  BigComplex r = detail::hurwitz_em(s.at_precision(pw), BigFloat::from_ratio(a_num, a_den, pw), wp);
  return r.at_precision(p);
}

inline BigComplex hurwitz_zeta(const BigComplex& s, const BigFloat& a) {
  if (a.sign() <= 0 || a > 1L) throw domain_error("hurwitz_zeta: a must lie in (0, 1]");
  if (s.is_real() && s.real() == 1L)
    throw pole_error("hurwitz zeta pole at s = 1", s, BigComplex(1L, s.precision()));
  Precision p = promote(s.precision(), a.precision());
  int wp = p.work() + 24;
  Precision pw(wp, 0);
  BigComplex r = detail::hurwitz_em(s.at_precision(pw), a.at_precision(pw), wp);
  return r.at_precision(p);
}

}  // namespace lapprox
