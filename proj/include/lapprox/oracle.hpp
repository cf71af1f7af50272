#pragma once

#include "lapprox/error_analysis.hpp"

namespace lapprox {

// Two independent routes to L(s, chi). The Hurwitz decomposition shares no
// machinery with the truncated-product pipeline; the reconstruction route
// rebuilds L from xi_approx plus the exact error series and is used as an
// internal cross-check (it must agree for every u).
enum class OracleMethod { hurwitz_decomposition, theorem1_selfcheck };

struct OracleConfig {
  OracleMethod method = OracleMethod::hurwitz_decomposition;
  Precision precision;
  double u = 7;  // truncation level for the reconstruction route
};

// L via xi_approx(s) + sum_{A_u} J(n), divided by g(s).
inline BigComplex l_reference_theorem1(const BigComplex& s, const Approximant& approx,
                                       const BigFloat& target_abs) {
  BigComplex xi =
      approx.xi_approx(s).value +
      error_analysis::theorem1_series(s, approx.chi(), approx.truncation(), target_abs).sum;
  return xi / euler::g_factor(s, approx.chi());
}

inline BigComplex l_oracle(const BigComplex& s, const DirichletCharacter& chi,
                           const OracleConfig& cfg) {
  if (cfg.method == OracleMethod::hurwitz_decomposition)
    return reference::l_reference(s.at_precision(cfg.precision), chi);
  Approximant approx(chi, TruncationLevel(cfg.u), cfg.precision);
  BigFloat target = pow2(cfg.precision.guard - cfg.precision.bits, cfg.precision);
  return l_reference_theorem1(s.at_precision(cfg.precision), approx, target);
}

}  // namespace lapprox
