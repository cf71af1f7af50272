#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "lapprox/approximation.hpp"
#include "lapprox/quadrature.hpp"
#include "lapprox/reference.hpp"

namespace lapprox {

// Ascending integers with at least one prime factor exceeding u (the index
// set of the exact error series).
class RoughNumberStream {
 public:
  explicit RoughNumberStream(double u) : u_(u), primes_(primes_upto(u)), cursor_(1) {}

  long next() {
    for (;;) {
      ++cursor_;
      if (has_prime_factor_above(cursor_, u_, primes_)) return cursor_;
    }
  }

  static bool member(long n, double u) {
    if (n < 2) return false;
    return has_prime_factor_above(n, u, primes_upto(u));
  }

 private:
  double u_;
  std::vector<long> primes_;
  long cursor_;
};

namespace error_analysis {

// One term of the exact error series:
//   J(n) = chi(n) n^k (q/(n^2 pi))^((k+s0)/2)     Gamma((k+s0)/2,     n^2 pi/q)
//        + eps(chi) conj(chi)(n) n^k (q/(n^2 pi))^((k+1-s0)/2) Gamma((k+1-s0)/2, n^2 pi/q)
inline BigComplex j_term(long n, const BigComplex& s0, const DirichletCharacter& chi) {
  Precision p = s0.precision();
  Precision pw(p.work() + 16, 0);
  long q = chi.modulus();
  if (gcd(n, q) > 1) return BigComplex(p);
  int k = chi.parity();
  BigComplex ss = s0.at_precision(pw);
  BigFloat n2pi_q = BigFloat(n, pw) * BigFloat(n, pw) * const_pi(pw) / q;
  BigFloat base = BigFloat(q, pw) / (BigFloat(n, pw) * BigFloat(n, pw) * const_pi(pw));
  BigComplex z1 = (ss + k) / 2;
  BigComplex z2 = (BigComplex(k + 1, pw) - ss) / 2;
  BigFloat nk(k == 0 ? 1L : n, pw);
  BigComplex j1 = chi.eval(n, pw) * BigComplex(nk) * pow_real_base(base, z1) * inc_gamma(z1, n2pi_q);
  BigComplex j2 = chi.epsilon(pw) * conj(chi.eval(n, pw)) * BigComplex(nk) *
                  pow_real_base(base, z2) * inc_gamma(z2, n2pi_q);
  return (j1 + j2).at_precision(p);
}

struct Theorem1Sum {
  BigComplex sum;
  BigFloat tail_bound;
  long terms_used = 0;
  long last_n = 0;
};

namespace detail {

// log2 of an upper bound for |J1(m)| + |J2(m)|, using
// |Gamma(z, x)| <= Gamma(Re z, x) <= x^(Re z - 1) e^-x / (1 - max(0, Re z - 1)/x).
inline double j_bound_log2(long m, double sig1, double sig2, int k, long q) {
  const double pi_d = 3.14159265358979324;
  double x = pi_d * static_cast<double>(m) * static_cast<double>(m) / static_cast<double>(q);
  double lbase = std::log2(static_cast<double>(q) / (pi_d * m * static_cast<double>(m)));
  auto piece = [&](double sig) {
    double corr = 1.0 - std::max(0.0, sig - 1.0) / x;
    if (corr <= 0.25) corr = 0.25;
    return sig * lbase + (sig - 1.0) * std::log2(x) - x / 0.69314718055994531 -
           std::log2(corr);
  };
  double a = piece(sig1), b = piece(sig2);
  double hi = std::max(a, b);
  return k * std::log2(static_cast<double>(m)) + hi + std::log2(1.0 + std::exp2(std::min(a, b) - hi));
}

}  // namespace detail

// Partial sum of J(n) over A_u, ascending, truncated when the analytic tail
// bound (Gaussian-decay comparison, all integers beyond the cutoff counted)
// falls below target_abs.
inline Theorem1Sum theorem1_series(const BigComplex& s0, const DirichletCharacter& chi,
                                   const TruncationLevel& t, const BigFloat& target_abs) {
  if (target_abs.sign() <= 0) throw domain_error("theorem1_series: target must be positive");
  Precision p = s0.precision();
  Precision pw(p.work() + 8, 0);
  long q = chi.modulus();
  int k = chi.parity();
  double sig1 = (k + s0.real().to_double()) / 2.0;
  double sig2 = (k + 1.0 - s0.real().to_double()) / 2.0;
  double target_log2 = static_cast<double>(target_abs.mag_exp()) - 1.0;

  RoughNumberStream stream(t.u);
  BigComplex sum(pw);
  long terms = 0, n = 0;
  const long max_terms = 200000;
  for (;;) {
    n = stream.next();
    if (gcd(n, q) == 1) {
      sum = sum + j_term(n, s0.at_precision(pw), chi);
      ++terms;
    }
    if (terms > max_terms) throw precision_error("theorem1_series: term cap exceeded");
    // ratio between consecutive bounds ~ e^{-2 pi n / q}; trust once < 1/2
    double ratio_log2 = -2.0 * 3.14159265358979324 * (n + 1) / (q * 0.69314718055994531) +
                        (2.0 * std::abs(sig1) + 2.0 * std::abs(sig2) + k + 2) *
                            std::log2(1.0 + 1.0 / (n + 1));
    if (ratio_log2 > -1.0) continue;
    double tail_log2 = detail::j_bound_log2(n + 1, sig1, sig2, k, q) + 1.0;  // geometric sum x2
    if (tail_log2 < target_log2) {
      BigFloat tail = tail_log2 < -100000 ? BigFloat(p) : pow2(static_cast<long>(tail_log2) + 1, p);
      return {sum.at_precision(p), tail, terms, n};
    }
  }
}

// Corollary-style bound on |xi - xi_approx|:
//   kappa = 1:  (q/pi)   Gamma(0,    pi u^2 / q)
//   kappa = 0:  sqrt(q/pi) Gamma(-1/2, pi u^2 / q)
inline BigFloat corollary_bound(double u, long q, int kappa, Precision p = Precision()) {
  if (u < 2) throw domain_error("corollary_bound requires u >= 2");
  Precision pw(p.work() + 16, 0);
  BigFloat uu(u, pw);
  BigFloat x = const_pi(pw) * uu * uu / q;
  BigFloat qp = BigFloat(q, pw) / const_pi(pw);
  BigComplex v(pw);
  if (kappa == 1) {
    v = BigComplex(qp) * inc_gamma(BigComplex(pw), x);
  } else {
    v = BigComplex(sqrt(qp)) * inc_gamma(BigComplex(BigFloat::from_ratio(-1, 2, pw)), x);
  }
  return v.real().at_precision(p);
}

inline BigFloat corollary_bound(double u, const DirichletCharacter& chi,
                                Precision p = Precision()) {
  return corollary_bound(u, chi.modulus(), chi.parity(), p);
}

// Vertical-line form of the error (validation path): numerically integrates
//   (1/2 pi i) int_{Re s = sigma} g(s,chi) [ (L-L_u)(s,chi)/(s-s0)
//                + eps(chi) (L-L_u)(s,conj chi)/(s-(1-s0)) ] ds
// over |Im s| <= T_cut. (L - L_u) on the line equals the Dirichlet tail
// sum_{n in A_u} chi(n) n^-s; with sigma barely above 1 that series converges
// far too slowly for direct summation, so both terms are evaluated through
// their analytic continuations instead.
inline BigComplex theorem2_quadrature(const BigComplex& s0, const DirichletCharacter& chi,
                                      const TruncationLevel& t, double sigma, double T_cut,
                                      const BigFloat& target_abs) {
  if (sigma <= 1.0) throw domain_error("theorem2_quadrature requires sigma > 1");
  if (std::fabs(s0.real().to_double() - sigma) < 1e-9 ||
      std::fabs(1.0 - s0.real().to_double() - sigma) < 1e-9)
    throw domain_error("theorem2_quadrature: s0 or 1-s0 lies on the contour");
  Precision p = s0.precision();
  Precision pw(p.work() + 8, 0);
  double target_log2 = static_cast<double>(target_abs.mag_exp());
  if (T_cut <= 0) {
    // gamma decay e^{-pi T/4}: pick T so the omitted tail sits below target
    T_cut = (-target_log2 + 24) * 0.69314718055994531 * 4.0 / 3.14159265358979324 +
            std::fabs(s0.imag().to_double()) + 4.0;
  }
  DirichletCharacter chic = chi.conjugate();
  BigComplex eps = chi.epsilon(pw);
  BigComplex s0w = s0.at_precision(pw);
  BigComplex one_minus_s0 = 1L - s0w;
  BigFloat sig(sigma, pw);
  bool real_chi = chi.is_real();

  auto integrand = [&](const BigFloat& tval) -> BigComplex {
    BigComplex s(sig, tval);
    BigComplex d1 = reference::l_reference(s, chi) - euler::detail::l_truncated_raw(s, chi, t, pw);
    BigComplex d2 = real_chi
                        ? d1
                        : reference::l_reference(s, chic) -
                              euler::detail::l_truncated_raw(s, chic, t, pw);
    BigComplex gs = euler::g_factor(s, chi);
    return gs * (d1 / (s - s0w) + eps * d2 / (s - one_minus_s0));
  };

  // panels of width ~4, each integrated to a share of the target
  long npanels = std::max<long>(2, static_cast<long>(std::ceil(T_cut / 2.0)));
  BigFloat per_panel = target_abs / (2 * npanels);
  BigComplex acc(pw);
  for (long i = 0; i < npanels; ++i) {
    BigFloat a(-T_cut + 2 * T_cut * static_cast<double>(i) / npanels, pw);
    BigFloat b(-T_cut + 2 * T_cut * static_cast<double>(i + 1) / npanels, pw);
    acc = acc + integrate_finite(integrand, a, b, per_panel, pw).value;
  }
  // ds = i dt and the 1/(2 pi i) prefactor leave 1/(2 pi)
  BigComplex r = acc / mul_2si(const_pi(pw), 1);
  return r.at_precision(p);
}

// Everything the error-table CLI emits for one (character, s0, u) cell.
struct ErrorReport {
  std::string char_label;
  BigComplex s0;
  double u = 0;
  BigFloat exact_abs;      // |L(s0) - L_approx(s0)|
  BigFloat series_abs;     // |sum J(n)| / |g(s0)|, same scale as exact_abs
  BigFloat identity_resid; // |(xi - xi_approx) - sum J(n)|
  BigFloat tail_bound;     // series truncation bound (xi scale)
  BigFloat corollary;      // corollary bound (xi scale)
  long terms_used = 0;
};

inline ErrorReport build_error_report(const BigComplex& s0, const DirichletCharacter& chi,
                                      const Approximant& approx, const BigFloat& target_abs) {
  Precision p = s0.precision();
  ErrorReport r;
  r.char_label = chi.label();
  r.s0 = s0;
  r.u = approx.truncation().u;
  BigComplex lref = reference::l_reference(s0, chi);
  BigComplex lapp = approx.l_approx(s0).value;
  r.exact_abs = abs(lref - lapp);
  Theorem1Sum t1 = theorem1_series(s0, chi, approx.truncation(), target_abs);
  BigFloat gabs = abs(euler::g_factor(s0, chi));
  r.series_abs = abs(t1.sum) / gabs;
  BigComplex xi_diff = euler::g_factor(s0, chi) * lref - approx.xi_approx(s0).value;
  r.identity_resid = abs(xi_diff - t1.sum);
  r.tail_bound = t1.tail_bound;
  r.corollary = corollary_bound(approx.truncation().u, chi, p);
  r.terms_used = t1.terms_used;
  return r;
}

}  // namespace error_analysis
}  // namespace lapprox
