#include <catch_amalgamated.hpp>

#include "test_util.hpp"

using namespace lapprox;
using namespace lapprox::testing;

namespace {

const Precision P = prec256();

// numeric limit (s - rho) xi_u(s) as s -> rho, at a boosted precision so the
// tiny offset costs no accuracy
BigComplex residue_limit(const DirichletCharacter& chi, const TruncationLevel& t,
                         const BigComplex& rho, long delta_exp) {
  Precision hi(640, 32);
  BigComplex rho_hi = rho.at_precision(hi);
  BigComplex s = rho_hi + BigComplex(pow2(delta_exp, hi), pow2(delta_exp, hi));
  return (s - rho_hi) * euler::detail::xi_truncated_raw(s, chi, t, hi);
}

}  // namespace

TEST_CASE("pole catalogue structure for chi 5.4, u = 3") {
  auto chi = DirichletCharacter::from_label("5.4");
  TruncationLevel t(3);
  PrincipalPart pp(chi, t, P);

  // kappa = 0, no chi(p) = 1 for p <= 3: single simple origin pole
  REQUIRE(pp.origin_order() == 1);

  auto poles = pp.enumerate_poles({20, 10});
  bool saw_p2 = false;
  for (const auto& pl : poles) {
    if (pl.source != PoleSource::euler_factor) continue;
    REQUIRE(pl.order == 1);
    if (pl.p == 2 && pl.h == 0) {
      saw_p2 = true;
      // chi(2) = -1: first pole of the p=2 factor at (2 pi i / log 2)(1/2)
      BigFloat expect = const_pi(P) / log(BigFloat(2L, P));
      REQUIRE(nearly_equal(pl.location.imag(), expect, P.bits - 8));
      REQUIRE(pl.location.real().is_zero());
    }
  }
  REQUIRE(saw_p2);
}

TEST_CASE("gamma-factor poles for the odd character sit at -1, -3, -5") {
  auto chi = DirichletCharacter::from_label("7.6");
  PrincipalPart pp(chi, TruncationLevel(3), P);
  auto poles = pp.enumerate_poles({5, 6});
  std::vector<long> gamma_locs;
  for (const auto& pl : poles)
    if (pl.source == PoleSource::gamma_factor)
      gamma_locs.push_back(pl.location.real().to_long());
  REQUIRE(gamma_locs == std::vector<long>{-1, -3, -5});
}

TEST_CASE("origin orders across characters and truncation levels") {
  auto chi54 = DirichletCharacter::from_label("5.4");
  auto chi76 = DirichletCharacter::from_label("7.6");
  auto chi85 = DirichletCharacter::from_label("8.5");
  auto chi32 = DirichletCharacter::from_label("3.2");
  REQUIRE(PrincipalPart(chi54, TruncationLevel(3), P).origin_order() == 1);
  REQUIRE(PrincipalPart(chi54, TruncationLevel(11), P).origin_order() == 2);  // chi(11) = 1
  REQUIRE(PrincipalPart(chi76, TruncationLevel(3), P).origin_order() == 1);   // chi(2) = 1, kappa=1
  REQUIRE(PrincipalPart(chi85, TruncationLevel(7), P).origin_order() == 2);   // chi(7) = 1, kappa=0
  // odd character, no chi(p) = 1 retained: no origin pole at all
  REQUIRE(PrincipalPart(chi32, TruncationLevel(2), P).origin_order() == 0);
  REQUIRE(PrincipalPart(chi32, TruncationLevel(2), P).origin_laurent().empty());
}

TEST_CASE("h = -n_j/phi(q) is routed to the origin, never emitted as a pole") {
  auto chi76 = DirichletCharacter::from_label("7.6");  // chi(2) = 1: n_j = 0
  PrincipalPart pp(chi76, TruncationLevel(3), P);
  auto poles = pp.enumerate_poles({10, 5});
  for (const auto& pl : poles) {
    if (pl.source == PoleSource::euler_factor) REQUIRE_FALSE(abs(pl.location) < 0.01);
    if (pl.source == PoleSource::origin) REQUIRE(pl.order == 1);
  }
}

TEST_CASE("catalogued residues match the numeric limit at shrinking radii") {
  auto chi = DirichletCharacter::from_label("5.4");
  TruncationLevel t(3);
  PrincipalPart pp(chi, t, P);
  auto poles = pp.enumerate_poles({12, 8});
  for (const auto& pl : poles) {
    if (pl.source == PoleSource::origin) continue;
    BigFloat prev_err(P);
    bool first = true;
    for (long de : {-90, -110, -130}) {
      BigComplex lim = residue_limit(chi, t, pl.location, de).at_precision(P);
      BigFloat err = abs(lim - pl.residue);
      REQUIRE(err < mul_2si(abs(pl.residue) + pow2(-40, P), de + 24));
      if (!first) REQUIRE(err < prev_err);  // converging as the radius shrinks
      first = false;
      prev_err = err;
    }
  }
}

TEST_CASE("order-1 origin: contour agrees with the direct residue formula") {
  auto chi = DirichletCharacter::from_label("5.4");
  TruncationLevel t(3);
  PrincipalPart pp(chi, t, P);
  auto cs = pp.origin_laurent();
  REQUIRE(cs.size() == 1);
  // sole origin pole comes from Gamma(s/2): c1 = 2 L_u(0, chi)
  BigComplex expect = 2L * euler::l_truncated(BigComplex(P), chi, t);
  REQUIRE(close_bits(cs[0], expect, P.bits - 16));
}

TEST_CASE("order-2 origin: contour coefficients vs direct limits") {
  auto chi = DirichletCharacter::from_label("5.4");
  TruncationLevel t(11);
  PrincipalPart pp(chi, t, P);
  auto cs = pp.origin_laurent();
  REQUIRE(cs.size() == 2);

  // c2 = lim s^2 xi(s); c1 = lim (s^2 xi(s) - c2)/s
  Precision hi(700, 32);
  BigComplex s(pow2(-60, hi), pow2(-61, hi));
  BigComplex s2xi = s * s * euler::detail::xi_truncated_raw(s, chi, t, hi);
  REQUIRE(abs(s2xi - cs[1].at_precision(hi)) < pow2(-50, hi));
  BigComplex c1lim = (s2xi - cs[1].at_precision(hi)) / s;
  REQUIRE(abs(c1lim - cs[0].at_precision(hi)) < pow2(-45, hi));
}

TEST_CASE("pole locations are pairwise distinct inside the window") {
  auto chi = DirichletCharacter::from_label("8.5");
  PrincipalPart pp(chi, TruncationLevel(11), P);
  auto poles = pp.enumerate_poles({25, 25});
  for (size_t i = 0; i < poles.size(); ++i)
    for (size_t j = i + 1; j < poles.size(); ++j)
      REQUIRE(abs(poles[i].location - poles[j].location) > pow2(-40, P));
}

TEST_CASE("conjugate symmetry of poles and residues for real characters") {
  auto chi = DirichletCharacter::from_label("7.6");
  PrincipalPart pp(chi, TruncationLevel(5), P);
  auto poles = pp.enumerate_poles({15, 4});
  for (const auto& pl : poles) {
    if (pl.source != PoleSource::euler_factor) continue;
    bool matched = false;
    for (const auto& other : poles) {
      if (other.source != PoleSource::euler_factor || other.p != pl.p) continue;
      if (nearly_equal(other.location, conj(pl.location), P.bits - 16)) {
        REQUIRE(close_bits(other.residue, conj(pl.residue), P.bits - 24));
        matched = true;
        break;
      }
    }
    REQUIRE(matched);
  }
}

TEST_CASE("principal part decays like 1/|s| along the real axis") {
  auto chi = DirichletCharacter::from_label("5.4");
  PrincipalPart pp(chi, TruncationLevel(5), P);
  BigFloat target = pow2(-200, P);
  BigFloat v3 = abs(pp.eval(BigComplex(1000L, P), target));
  BigFloat v6 = abs(pp.eval(BigComplex(1000000L, P), target));
  // |pp| ~ C/|s|: three decades of s shrink it by >= 100*(1 - margin)
  REQUIRE(v6 * 800L < v3);
}

TEST_CASE("pp structure with an empty Euler product (u = 1, kappa = 0)") {
  auto chi = DirichletCharacter::from_label("5.4");
  PrincipalPart pp(chi, TruncationLevel(1), P);
  REQUIRE(pp.origin_order() == 1);
  BigComplex s(10L, P);
  // no euler lines: the whole sum is the gamma line plus c1/s
  BigFloat target = pow2(-200, P);
  BigComplex whole = pp.eval(s, target);
  auto poles = pp.enumerate_poles({2, 40});
  BigComplex manual(P);
  for (const auto& pl : poles) {
    if (pl.source == PoleSource::origin)
      manual = manual + pl.laurent[0] / s;
    else
      manual = manual + pl.residue / (s - pl.location);
  }
  REQUIRE(abs(whole - manual) < pow2(-120, P));
}

TEST_CASE("xi - pp extends regularly across a pole (drift is O(delta))") {
  auto chi = DirichletCharacter::from_label("5.4");
  TruncationLevel t(3);
  PrincipalPart pp(chi, t, P);
  BigComplex rho = pp.pole_location({PrincipalPart::PoleId::euler, 2, 0}, Precision(400, 32));
  BigFloat target = pow2(-180, P);
  std::vector<BigComplex> vals;
  for (double de : {1e-3, 1e-6, 1e-9}) {
    BigComplex s = rho + BigComplex(BigFloat(de, Precision(400, 32)), BigFloat(de, Precision(400, 32)));
    BigComplex v = euler::detail::xi_truncated_raw(s, chi, t, Precision(400, 32)).at_precision(P) -
                   pp.eval(s.at_precision(P), target);
    vals.push_back(v);
  }
  BigFloat scale = abs(vals[2]) + 1L;
  REQUIRE(abs(vals[0] - vals[2]) < BigFloat(0.1, P) * scale);
  REQUIRE(abs(vals[1] - vals[2]) < BigFloat(1e-4, P) * scale);
}

TEST_CASE("eval rejects the origin itself and bad targets") {
  auto chi = DirichletCharacter::from_label("5.4");
  PrincipalPart pp(chi, TruncationLevel(3), P);
  REQUIRE_THROWS_AS(pp.eval(BigComplex(P), pow2(-100, P)), pole_error);
  REQUIRE_THROWS_AS(pp.eval(BigComplex(2L, P), BigFloat(P)), domain_error);
  REQUIRE_THROWS_AS(pp.enumerate_poles({-1, 5}), domain_error);
}
