#pragma once

#include "lapprox/euler.hpp"

namespace lapprox {
namespace reference {

// L(s, chi) = q^-s sum_{a=1}^{q} chi(a) zeta(s, a/q). Independent of every
// truncated-product formula; serves as ground truth for the error tables.
inline BigComplex l_reference(const BigComplex& s, const DirichletCharacter& chi) {
  Precision p = s.precision();
  Precision pw(p.work() + 16, 0);
  BigComplex ss = s.at_precision(pw);
  BigComplex acc(pw);
  for (long a = 1; a < chi.modulus(); ++a) {
    long e = chi.value_exponent(a);
    if (e < 0) continue;
    BigComplex z = hurwitz_zeta_ratio(ss, a, chi.modulus());
    acc = acc + chi.eval(a, pw) * z;
  }
  BigComplex r = pow_real_base(BigFloat(chi.modulus(), pw), -ss) * acc;
  return r.at_precision(p);
}

inline BigComplex xi_reference(const BigComplex& s, const DirichletCharacter& chi) {
  return euler::g_factor(s, chi) * l_reference(s, chi);
}

// Partial Dirichlet series sum_{n<=N} chi(n) n^-s, for absolute-convergence
// checks at Re(s) > 1.
inline BigComplex dirichlet_partial(const BigComplex& s, const DirichletCharacter& chi, long N) {
  Precision p = s.precision();
  Precision pw(p.work() + 8, 0);
  BigComplex ss = s.at_precision(pw);
  BigComplex acc(pw);
  for (long n = 1; n <= N; ++n) {
    long e = chi.value_exponent(n);
    if (e < 0) continue;
    acc = acc + chi.eval(n, pw) * pow_real_base(BigFloat(n, pw), -ss);
  }
  return acc.at_precision(p);
}

// Tail of the partial sum above: |sum_{n>N}| <= N^(1-sigma)/(sigma-1).
inline BigFloat dirichlet_tail_bound(const BigComplex& s, long N) {
  Precision p = s.precision();
  if (s.real() <= 1L) throw domain_error("dirichlet_tail_bound needs Re(s) > 1");
  BigFloat sigma = s.real();
  return pow(BigFloat(N, p), 1L - sigma) / (sigma - 1L);
}

}  // namespace reference
}  // namespace lapprox
