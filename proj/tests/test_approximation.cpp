#include <catch_amalgamated.hpp>

#include "test_util.hpp"

using namespace lapprox;
using namespace lapprox::testing;

namespace {
const Precision P = prec256();
}

TEST_CASE("functional equation holds on random strip points") {
  RandomPoints rng(51001);
  for (const char* label : {"5.4", "7.6"}) {
    auto chi = DirichletCharacter::from_label(label);
    Approximant ax(chi, TruncationLevel(5), P);
    Approximant ax_conj(chi.conjugate(), TruncationLevel(5), P);
    for (int i = 0; i < 20; ++i) {
      BigComplex s = rng.complex_in(-2.0, 3.0, -10.0, 10.0);
      BigComplex lhs = ax.xi_approx(s).value;
      BigComplex rhs = ax.epsilon() * ax_conj.xi_approx(1L - s).value;
      REQUIRE(abs(lhs - rhs) < pow2(-(P.bits - 56), P));
    }
  }
}

TEST_CASE("functional equation for a complex character (eps != 1)") {
  auto chi = DirichletCharacter::from_label("5.2");
  Approximant ax(chi, TruncationLevel(3), P);
  Approximant ax_conj(chi.conjugate(), TruncationLevel(3), P);
  REQUIRE(abs(ax.epsilon().imag()) > 0.1);  // genuinely complex root number
  RandomPoints rng(51002);
  for (int i = 0; i < 8; ++i) {
    BigComplex s = rng.complex_in(-1.5, 2.5, -8.0, 8.0);
    BigComplex lhs = ax.xi_approx(s).value;
    BigComplex rhs = ax.epsilon() * ax_conj.xi_approx(1L - s).value;
    REQUIRE(abs(lhs - rhs) < pow2(-(P.bits - 56), P));
  }
}

TEST_CASE("self-conjugate reflection on the critical line for chi 5.4") {
  auto chi = DirichletCharacter::from_label("5.4");
  Approximant ax(chi, TruncationLevel(5), P);
  for (int t : {2, 7, 11}) {
    BigComplex s = cplx(1, 2, t, 1);
    // eps = 1 and chi real: xi(s) = conj(xi(conj(1-s)))
    BigComplex lhs = ax.xi_approx(s).value;
    BigComplex rhs = conj(ax.xi_approx(conj(1L - s)).value);
    REQUIRE(abs(lhs - rhs) < pow2(-(P.bits - 48), P));
  }
}

TEST_CASE("plain and grouped evaluation agree in the borderland") {
  auto chi = DirichletCharacter::from_label("5.4");
  TruncationLevel t(3);
  Approximant base(chi, t, P);
  Approximant wide(chi, t, Precision(512, 32));
  PrincipalPart pp(chi, t, P);
  BigComplex rho = pp.pole_location({PrincipalPart::PoleId::euler, 2, 0}, Precision(560, 0));
  // delta = 2^-70 sits inside the grouped radius at 256 bits but far outside
  // it at 512 bits, so the two instances take different paths
  BigComplex s = rho + BigComplex(pow2(-70, Precision(560, 0)), pow2(-71, Precision(560, 0)));
  BigComplex a = base.xi_reg(s.at_precision(Precision(560, 0))).value;
  BigComplex b = wide.xi_reg(s.at_precision(Precision(560, 0))).value;
  REQUIRE(abs(a - b.at_precision(P)) < pow2(-(P.bits - 32), P));
}

TEST_CASE("xi_reg is stable arbitrarily close to a pole") {
  auto chi = DirichletCharacter::from_label("5.4");
  Approximant ax(chi, TruncationLevel(3), P);
  PrincipalPart pp(chi, TruncationLevel(3), P);
  Precision hi(400, 0);
  BigComplex rho = pp.pole_location({PrincipalPart::PoleId::euler, 3, 0}, hi);
  BigComplex prev(P);
  for (long de : {-100, -110, -120}) {
    BigComplex s = rho + BigComplex(pow2(de, hi), pow2(de, hi));
    BigComplex v = ax.xi_reg(s).value;
    if (de != -100) REQUIRE(abs(v - prev) < pow2(-(P.bits - 64), P));
    prev = v;
  }
  // and exactly at the pole: the finite part, consistent with the limit
  BigComplex at = ax.xi_reg(rho).value;
  REQUIRE(abs(at - prev) < pow2(-(P.bits - 72), P));
}

TEST_CASE("xi_reg at and near the origin block") {
  auto chi = DirichletCharacter::from_label("5.4");
  Approximant ax(chi, TruncationLevel(11), P);  // origin order 2
  BigComplex v0 = ax.xi_reg(BigComplex(P)).value;
  Precision hi(520, 0);
  BigComplex vnear = ax.xi_reg(BigComplex(pow2(-95, hi), pow2(-96, hi))).value;
  REQUIRE(abs(v0 - vnear) < pow2(-(P.bits - 80), P));
}

TEST_CASE("u = 1, kappa = 1: xi_reg(0) = g(0) - pp(0) is finite and plain") {
  auto chi = DirichletCharacter::from_label("3.2");
  Approximant ax(chi, TruncationLevel(1), P);
  // kappa = 1: Gamma((s+1)/2) is regular at 0, no origin pole, poles at -1,-3..
  BigComplex v = ax.xi_reg(BigComplex(P)).value;
  BigComplex g0 = euler::g_factor(BigComplex(P), chi);
  PrincipalPart pp(chi, TruncationLevel(1), P);
  BigComplex p0 = pp.eval(BigComplex(P), pow2(-220, P));
  REQUIRE(close_bits(v, g0 - p0, P.bits - 32));
}

TEST_CASE("benchmark cells: u = 5 and u = 7 for chi 5.4") {
  auto chi = DirichletCharacter::from_label("5.4");
  BigComplex s0 = cplx(1, 2, 8, 1);
  BigComplex lref = reference::l_reference(s0, chi);
  {
    Approximant ax(chi, TruncationLevel(5), P);
    BigFloat err = abs(lref - ax.l_approx(s0).value);
    REQUIRE(err > BigFloat(7.157e-13 / 1.02, P));
    REQUIRE(err < BigFloat(7.157e-13 * 1.02, P));
  }
  {
    Approximant ax(chi, TruncationLevel(7), P);
    BigFloat err = abs(lref - ax.l_approx(s0).value);
    REQUIRE(err > BigFloat(6.70e-33 / 1.05, P));
    REQUIRE(err < BigFloat(6.70e-33 * 1.05, P));
  }
}

TEST_CASE("degenerate truncation: L~_5 and L~_7 coincide bit for bit for chi 7.6") {
  auto chi = DirichletCharacter::from_label("7.6");
  Approximant a5(chi, TruncationLevel(5), P);
  Approximant a7(chi, TruncationLevel(7), P);
  for (int t : {8, 10, 12}) {
    BigComplex s0 = cplx(1, 2, t, 1);
    BigComplex v5 = a5.l_approx(s0).value;
    BigComplex v7 = a7.l_approx(s0).value;
    REQUIRE(v5 == v7);  // chi(7) = 0: identical products, identical bits
  }
}

TEST_CASE("error decreases strictly as u passes primes with chi(p) != 0") {
  auto chi = DirichletCharacter::from_label("5.4");
  BigComplex s0 = cplx(1, 2, 8, 1);
  BigComplex lref = reference::l_reference(s0, chi);
  std::vector<double> us = {2.0, 3.0, 5.0, 7.0, 11.0};
  BigFloat prev(P);
  double prev_u = 0;
  bool have_prev = false;
  for (double u : us) {
    Approximant ax(chi, TruncationLevel(u), P);
    BigFloat err = abs(lref - ax.l_approx(s0).value);
    if (have_prev) {
      // does the step prev_u -> u add a prime the character does not kill?
      bool live_prime = false;
      for (long pr : TruncationLevel(u).primes)
        if (static_cast<double>(pr) > prev_u && chi.value_exponent(pr) >= 0) live_prime = true;
      if (live_prime)
        REQUIRE(err < prev);
      else
        REQUIRE(err == prev);  // chi(p) = 0 step: bit-identical product
    }
    have_prev = true;
    prev_u = u;
    prev = err;
  }
}

TEST_CASE("entirety probe: mean-value property around a former pole") {
  auto chi = DirichletCharacter::from_label("5.4");
  Approximant ax(chi, TruncationLevel(3), P);
  PrincipalPart pp(chi, TruncationLevel(3), P);
  BigComplex center = pp.pole_location({PrincipalPart::PoleId::euler, 2, 0}, P);
  BigFloat r = ratio(3, 10);
  int n = 64;
  BigComplex mean(P);
  BigFloat two_pi = mul_2si(const_pi(P), 1);
  for (int k = 0; k < n; ++k) {
    BigFloat th = two_pi * BigFloat::from_ratio(k, n, P);
    BigFloat sn(P), cn(P);
    sin_cos(th, sn, cn);
    mean = mean + ax.xi_approx(center + BigComplex(r * cn, r * sn)).value;
  }
  mean = mean / n;
  BigComplex at = ax.xi_approx(center).value;
  REQUIRE(abs(mean - at) < pow2(-100, P));
}

TEST_CASE("l_approx refuses the gamma-factor poles") {
  auto chi54 = DirichletCharacter::from_label("5.4");
  Approximant ax(chi54, TruncationLevel(3), P);
  REQUIRE_THROWS_AS(ax.l_approx(BigComplex(-2L, P)), domain_error);
  auto chi76 = DirichletCharacter::from_label("7.6");
  Approximant ax76(chi76, TruncationLevel(3), P);
  REQUIRE_THROWS_AS(ax76.l_approx(BigComplex(-1L, P)), domain_error);
}

TEST_CASE("reported est_err bounds the actual deviation at a benchmark point") {
  auto chi = DirichletCharacter::from_label("8.5");
  Approximant ax(chi, TruncationLevel(7), P);
  Approximant hi(chi, TruncationLevel(7), Precision(384, 32));
  BigComplex s0 = cplx(1, 2, 10, 1);
  ApproxResult r = ax.l_approx(s0);
  BigComplex better = hi.l_approx(s0.at_precision(Precision(384, 32))).value;
  REQUIRE(abs(r.value - better.at_precision(P)) < r.est_err + pow2(-(P.bits - 8), P));
}
