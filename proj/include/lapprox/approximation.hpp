#pragma once

#include <memory>

#include "lapprox/principal_part.hpp"

namespace lapprox {

// A value together with a bound-flavored estimate of its truncation and
// rounding error.
struct ApproxResult {
  BigComplex value;
  BigFloat est_err;
};

// The entire approximant built from one truncated Euler product:
//   xi_reg(s)    = xi_u(s) - xi_pp(s)              (holomorphic part)
//   xi_approx(s) = xi_reg(s, chi) + eps(chi) xi_reg(1-s, conj chi)
//   l_approx(s)  = xi_approx(s) / g(s, chi)
// Evaluation stays accurate arbitrarily close to (and exactly at) the poles
// of xi_u: inside the near-pole radius 2^(-bits/4) the singular Euler or
// gamma factor and the matching principal-part term are combined analytically
// at a working precision boosted by the bits the plain subtraction would lose.
class Approximant {
 public:
  Approximant(const DirichletCharacter& chi, const TruncationLevel& t, Precision prec)
      : chi_(chi),
        chi_conj_(chi.conjugate()),
        t_(t),
        prec_(prec),
        eps_(chi.epsilon(prec)),
        pp_(std::make_shared<PrincipalPart>(chi_, t, prec)) {
    pp_conj_ = chi_.is_real() ? pp_ : std::make_shared<PrincipalPart>(chi_conj_, t, prec);
    BigComplex unit = eps_ * chi_conj_.epsilon(prec_);
    if (!nearly_equal(unit, BigComplex(1L, prec_), prec_.bits / 2))
      throw domain_error("root number check failed: eps(chi) eps(conj chi) != 1");
  }

  const DirichletCharacter& chi() const { return chi_; }
  const DirichletCharacter& chi_conj() const { return chi_conj_; }
  const TruncationLevel& truncation() const { return t_; }
  Precision precision() const { return prec_; }
  const BigComplex& epsilon() const { return eps_; }
  const PrincipalPart& pp() const { return *pp_; }
  const PrincipalPart& pp_conj() const { return *pp_conj_; }

  ApproxResult xi_reg(const BigComplex& s, bool conj_side = false) const {
    const PrincipalPart& P = conj_side ? *pp_conj_ : *pp_;
    const DirichletCharacter& ch = conj_side ? chi_conj_ : chi_;
    int wp = prec_.work();
    Precision pw(wp + 8, 0);
    BigFloat target = pow2(prec_.guard - prec_.bits, pw);
    BigComplex loc(pw);
    BigFloat dist(pw);
    PrincipalPart::PoleId near = P.nearest_pole(s.at_precision(pw), &loc, &dist);

    if (!dist.is_zero() && dist.mag_exp() > -(prec_.bits / 4)) {
      BigFloat tail(pw);
      BigComplex xv = euler::detail::xi_truncated_raw(s, ch, t_, pw);
      BigComplex pv = P.eval(s, target, &tail);
      BigComplex v = xv - pv;
      BigFloat err = tail + mul_2si(abs(xv) + abs(pv) + 1L, -(wp - 10));
      return {v.at_precision(prec_), err.at_precision(prec_)};
    }
    return xi_reg_grouped(s, near, dist, ch, P);
  }

  ApproxResult xi_approx(const BigComplex& s) const {
    ApproxResult a = xi_reg(s, false);
    ApproxResult b = xi_reg(1L - s, true);
    return {a.value + eps_ * b.value, a.est_err + b.est_err};
  }

  ApproxResult l_approx(const BigComplex& s) const {
    BigComplex w = (s + chi_.parity()) / 2;
    if (w.is_real() && w.real().is_integer() && w.real() <= 0L)
      throw domain_error("l_approx is undefined at the gamma-factor poles s = -kappa - 2h");
    ApproxResult xa = xi_approx(s);
    BigComplex gv = euler::g_factor(s, chi_);
    BigFloat ga = abs(gv);
    BigComplex v = xa.value / gv;
    BigFloat err = xa.est_err / ga + mul_2si(abs(v) + 1L, -(prec_.work() - 8));
    return {v.at_precision(prec_), err.at_precision(prec_)};
  }

 private:
  // xi_u(x) (s - rho) written without the cancelling singular factor, for a
  // simple pole rho; analytic near rho.
  BigComplex regular_numerator(const BigComplex& x, const PrincipalPart::PoleId& id,
                               const BigComplex& rho, const DirichletCharacter& ch,
                               Precision pb) const {
    if (id.kind == PrincipalPart::PoleId::euler) {
      BigFloat lnp = log(BigFloat(id.p, pb));
      BigComplex y = (x - rho) * lnp;
      BigComplex E = y.is_zero() ? BigComplex(1L, pb) : -expm1(-y) / y;
      TruncationLevel tr = t_.with_removed(id.p);
      return euler::detail::xi_truncated_raw(x, ch, tr, pb) / (E * lnp);
    }
    // gamma-factor pole at -kappa - 2 h0: pull the 1/(w + h0) factor out of
    // gamma(w) via gamma(w) = gamma(w + h0 + 1) / prod_{j=0..h0} (w + j)
    long h0 = id.h;
    BigComplex w = (x + ch.parity()) / 2;
    BigComplex num = gamma(w + (h0 + 1));
    BigComplex den(1L, pb);
    for (long j = 0; j < h0; ++j) den = den * (w + j);
    BigFloat qp = BigFloat(ch.modulus(), pb) / const_pi(pb);
    BigComplex lu = euler::detail::l_truncated_raw(x, ch, t_, pb);
    return mul_2si(pow_real_base(qp, w) * (num / den) * lu, 1);
  }

  // xi_u(x) x^ell with every origin-singular factor cancelled analytically.
  BigComplex xi_times_s_ell(const BigComplex& x, const DirichletCharacter& ch,
                            Precision pb) const {
    BigFloat qp = BigFloat(ch.modulus(), pb) / const_pi(pb);
    BigComplex prod(pb);
    if (ch.parity() == 0) {
      BigComplex w = x / 2;
      prod = mul_2si(pow_real_base(qp, w) * gamma(w + 1L), 1);
    } else {
      BigComplex w = (x + 1L) / 2;
      prod = pow_real_base(qp, w) * gamma(w);
    }
    for (long p : t_.primes) {
      long nj = ch.value_exponent(p);
      if (nj < 0) continue;
      BigFloat lnp = log(BigFloat(p, pb));
      if (nj == 0) {
        BigComplex y = x * lnp;
        BigComplex E = y.is_zero() ? BigComplex(1L, pb) : -expm1(-y) / y;
        prod = prod / (E * lnp);
      } else {
        prod = prod / euler::detail::factor_d(x, ch, p, pb);
      }
    }
    return prod;
  }

  ApproxResult xi_reg_grouped(const BigComplex& s, const PrincipalPart::PoleId& near,
                              const BigFloat& dist, const DirichletCharacter& ch,
                              const PrincipalPart& P) const {
    int wp = prec_.work();
    Precision pw(wp + 8, 0);
    bool at_pole = dist.is_zero();
    long boost = at_pole ? 0 : std::max<long>(0, -dist.mag_exp());
    int mult = near.kind == PrincipalPart::PoleId::origin ? P.origin_order() : 1;
    int wp2 = at_pole ? 2 * wp + 64 : wp + static_cast<int>(boost) * mult + 48;
    Precision pb(wp2, 0);
    BigComplex s2 = s.at_precision(pb);
    BigComplex main(pb);

    if (near.kind == PrincipalPart::PoleId::origin) {
      int ell = P.origin_order();
      std::vector<BigComplex> cs = P.laurent_block(wp2, pow2(-(wp2 - 24), pb));
      if (s.is_zero()) {
        main = cs[0];
      } else {
        BigComplex F = xi_times_s_ell(s2, ch, pb);
        BigComplex tay(pb);
        BigComplex sp(1L, pb);
        for (int j = 0; j < ell; ++j) {
          tay = tay + cs[static_cast<size_t>(ell - j)] * sp;
          sp = sp * s2;
        }
        main = (F - tay) / sp;  // sp = s^ell after the loop
      }
    } else {
      BigComplex rho = P.pole_location(near, pb);
      if (at_pole) {
        BigFloat hstep = pow2(-(wp / 2 + 24), pb);
        BigComplex f1 = regular_numerator(rho + BigComplex(hstep), near, rho, ch, pb);
        BigComplex f2 = regular_numerator(rho - BigComplex(hstep), near, rho, ch, pb);
        main = (f1 - f2) / BigComplex(mul_2si(hstep, 1));
      } else {
        BigComplex F1 = regular_numerator(s2, near, rho, ch, pb);
        BigComplex F0 = regular_numerator(rho, near, rho, ch, pb);
        main = (F1 - F0) / (s2 - rho);
      }
    }

    BigFloat target = pow2(prec_.guard - prec_.bits, pw);
    BigFloat tail(pw);
    BigComplex rest = P.eval_excluding(s, near, target, &tail);
    BigComplex v = main.at_precision(pw) - rest;
    BigFloat err = tail + mul_2si(abs(main) + abs(rest) + 1L, -(wp - 12));
    return {v.at_precision(prec_), err.at_precision(prec_)};
  }

  DirichletCharacter chi_;
  DirichletCharacter chi_conj_;
  TruncationLevel t_;
  Precision prec_;
  BigComplex eps_;
  std::shared_ptr<PrincipalPart> pp_;
  std::shared_ptr<PrincipalPart> pp_conj_;
};

}  // namespace lapprox
