#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lapprox/characters.hpp"
#include "lapprox/special.hpp"

namespace lapprox {

// Cutoff u with its sieved prime list; `removed` selects the variant with a
// single Euler factor dropped.
struct TruncationLevel {
  double u = 0;
  std::vector<long> primes;  // exactly the primes <= u, ascending
  std::optional<long> removed;

  explicit TruncationLevel(double u_) : u(u_), primes(primes_upto(u_)) {
    if (u_ < 0) throw domain_error("truncation level u must be >= 0");
  }

  TruncationLevel with_removed(long p) const {
    TruncationLevel t(*this);
    bool found = false;
    for (long q : primes)
      if (q == p) found = true;
    if (!found)
      throw domain_error("removed prime " + std::to_string(p) + " is not a prime <= u");
    t.removed = p;
    return t;
  }
};

namespace euler {

namespace detail {

// 1 - chi(p) p^{-s}, evaluated as -expm1(-w) after shifting w by the nearest
// multiple of 2 pi i. Keeps full relative accuracy arbitrarily close to the
// factor's zeros s = (2 pi i / log p)(n_j/phi + h).
inline BigComplex factor_d(const BigComplex& s, const DirichletCharacter& chi, long p,
                           Precision pw) {
  long e = chi.value_exponent(p);
  if (e < 0) return BigComplex(1L, pw);
  BigFloat lnp = log(BigFloat(p, pw));
  BigFloat two_pi = mul_2si(const_pi(pw), 1);
  BigFloat wre = s.real().at_precision(pw) * lnp;
  BigFloat wim = s.imag().at_precision(pw) * lnp - two_pi * BigFloat::from_ratio(e, chi.phi(), pw);
  // reduce Im(w) mod 2 pi toward 0
  BigFloat k = wim / two_pi;
  if (abs(k) >= 0.5) {
    long kk = round_to_long(k);
    wim = wim - two_pi * kk;
  }
  return -expm1(BigComplex(-wre, -wim));
}

inline BigComplex l_truncated_raw(const BigComplex& s, const DirichletCharacter& chi,
                                  const TruncationLevel& t, Precision pw,
                                  BigFloat* min_factor = nullptr) {
  BigComplex den(1L, pw);
  bool first = true;
  for (long p : t.primes) {
    if (t.removed && *t.removed == p) continue;
    if (chi.value_exponent(p) < 0) continue;  // chi(p) = 0: exact no-op factor
    BigComplex d = factor_d(s, chi, p, pw);
    if (min_factor) {
      BigFloat ad = abs(d);
      if (first || ad < *min_factor) *min_factor = ad;
      first = false;
    }
    den = den * d;
  }
  if (min_factor && first) *min_factor = BigFloat(1L, pw);
  return 1L / den;
}

}  // namespace detail

// Gamma/conductor prefactor g(s, chi) = (q/pi)^((s+kappa)/2) Gamma((s+kappa)/2).
// Poles at s = -kappa - 2h carry the residue 2 (-1)^h (q/pi)^{-h} / h!.
inline BigComplex g_factor(const BigComplex& s, const DirichletCharacter& chi) {
  Precision p = s.precision();
  Precision pw(p.work() + 16, 0);
  BigComplex w = (s.at_precision(pw) + chi.parity()) / 2;
  if (w.is_real() && w.real().is_integer() && w.real() <= 0L) {
    long h = -w.real().to_long();
    BigFloat qp = BigFloat(chi.modulus(), pw) / const_pi(pw);
    BigFloat res = mul_2si(pow_si(qp, -h) / factorial(static_cast<unsigned long>(h), pw), 1);
    if (h % 2 != 0) res = -res;
    throw pole_error("g(s, chi) pole at s = " + std::to_string(-chi.parity() - 2 * h), s,
                     BigComplex(res.at_precision(p)));
  }
  BigFloat qp = BigFloat(chi.modulus(), pw) / const_pi(pw);
  BigComplex r = pow_real_base(qp, w) * gamma(w);
  return r.at_precision(p);
}

// Truncated Euler product over primes <= u. Factors with chi(p) = 0
// contribute exactly 1 and are skipped; results are bit-identical whether or
// not such primes sit below u.
inline BigComplex l_truncated(const BigComplex& s, const DirichletCharacter& chi,
                              const TruncationLevel& t) {
  Precision p = s.precision();
  Precision pw(p.work() + 8, 0);
  BigFloat min_factor(pw);
  BigComplex r = detail::l_truncated_raw(s, chi, t, pw, &min_factor);
  if (min_factor.mag_exp() < -(p.bits / 2)) {
    throw near_pole_error(
        "l_truncated within 2^-" + std::to_string(p.bits / 2) +
            " of an Euler-factor pole; use the principal-part-aware evaluation",
        s);
  }
  return r.at_precision(p);
}

// Completed truncated product xi_u = g * L_u. Near-pole detection covers both
// factors' pole sets.
inline BigComplex xi_truncated(const BigComplex& s, const DirichletCharacter& chi,
                               const TruncationLevel& t) {
  Precision p = s.precision();
  // proximity to a g pole (s near -kappa-2h) is an error here as well
  BigComplex w = (s + chi.parity()) / 2;
  if (w.real() < 0.25) {
    long h = -round_to_long(w.real());
    if (h >= 0) {
      BigFloat d = abs(w + h);
      if (!d.is_zero() && d.mag_exp() < -(p.bits / 2))
        throw near_pole_error("xi_truncated within 2^-" + std::to_string(p.bits / 2) +
                                  " of a gamma-factor pole",
                              s);
    }
  }
  return g_factor(s, chi) * l_truncated(s, chi, t);
}

namespace detail {

// xi with no near-pole guard, for residue work on the pole lattice itself.
inline BigComplex xi_truncated_raw(const BigComplex& s, const DirichletCharacter& chi,
                                   const TruncationLevel& t, Precision pw) {
  return g_factor(s.at_precision(pw), chi) * l_truncated_raw(s, chi, t, pw);
}

}  // namespace detail

}  // namespace euler

}  // namespace lapprox
