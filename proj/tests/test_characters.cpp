#include <catch_amalgamated.hpp>

#include "test_util.hpp"

using namespace lapprox;
using namespace lapprox::testing;

namespace {
const Precision P = prec256();
}

TEST_CASE("conrey construction of the benchmark characters") {
  auto chi54 = DirichletCharacter::from_conrey_label(5, 4);
  REQUIRE(chi54.parity() == 0);
  REQUIRE(chi54.conductor() == 5);
  REQUIRE(chi54.eval(2, P) == BigComplex(-1L, P));  // exact, not approximate
  REQUIRE(chi54.eval(4, P) == BigComplex(1L, P));

  auto chi76 = DirichletCharacter::from_conrey_label(7, 6);
  REQUIRE(chi76.parity() == 1);
  REQUIRE(chi76.eval(3, P) == BigComplex(-1L, P));
  REQUIRE(chi76.eval(-1, P) == BigComplex(-1L, P));

  auto chi85 = DirichletCharacter::from_conrey_label(8, 5);
  REQUIRE(chi85.parity() == 0);
  REQUIRE(chi85.eval(7, P) == BigComplex(1L, P));
  REQUIRE(chi85.eval(3, P) == BigComplex(-1L, P));
  REQUIRE(chi85.eval(5, P) == BigComplex(-1L, P));
}

TEST_CASE("eval reduces mod q and vanishes off the units") {
  auto chi54 = DirichletCharacter::from_label("5.4");
  REQUIRE(chi54.eval(10, P).is_zero());
  REQUIRE(chi54.eval(1, P) == BigComplex(1L, P));
  auto chi76 = DirichletCharacter::from_label("7.6");
  REQUIRE(chi76.eval(6, P) == BigComplex(-1L, P));  // 6 == -1 mod 7, kappa = 1
  REQUIRE(chi76.eval(7 * 3, P).is_zero());
}

TEST_CASE("gauss sums of the real benchmark characters") {
  auto chi54 = DirichletCharacter::from_label("5.4");
  BigComplex tau = chi54.gauss_sum(P);
  REQUIRE(close_bits(tau, BigComplex(sqrt(BigFloat(5L, P))), P.bits - 8));

  auto chi76 = DirichletCharacter::from_label("7.6");
  BigComplex tau7 = chi76.gauss_sum(P);
  REQUIRE(close_bits(tau7, BigComplex(BigFloat(P), sqrt(BigFloat(7L, P))), P.bits - 8));
}

TEST_CASE("|tau|^2 = q for every primitive character of small modulus") {
  for (long q : {3L, 5L, 7L, 8L, 9L, 11L, 12L, 13L, 16L}) {
    for (long n = 1; n < q; ++n) {
      if (gcd(n, q) != 1) continue;
      DirichletCharacter chi = [&] {
        try {
          return DirichletCharacter::from_conrey_label(q, n);
        } catch (const not_primitive_error&) {
          return DirichletCharacter::from_conrey_label(5, 4);  // sentinel, skipped below
        }
      }();
      if (chi.modulus() != q) continue;  // the non-primitive sentinel
      if (chi.conductor() == 1) continue;  // principal (n = 1 with q prime won't reach here)
      BigComplex tau = chi.gauss_sum(P);
      REQUIRE(nearly_equal(abs2(tau), BigFloat(q, P), P.bits - 16));
    }
  }
}

TEST_CASE("root number: epsilon is 1 for the real benchmark characters") {
  for (const char* label : {"5.4", "7.6", "8.5"}) {
    auto chi = DirichletCharacter::from_label(label);
    REQUIRE(close_bits(chi.epsilon(P), BigComplex(1L, P), P.bits - 8));
  }
}

TEST_CASE("epsilon(chi) epsilon(conj chi) = 1 including complex characters") {
  for (auto [q, n] : std::vector<std::pair<long, long>>{{5, 2}, {5, 3}, {7, 3}, {13, 2}, {16, 3}}) {
    auto chi = DirichletCharacter::from_conrey_label(q, n);
    BigComplex prod = chi.epsilon(P) * chi.conjugate().epsilon(P);
    REQUIRE(close_bits(prod, BigComplex(1L, P), P.bits - 16));
    REQUIRE(nearly_equal(abs(chi.epsilon(P)), BigFloat(1L, P), P.bits - 16));
  }
}

TEST_CASE("conjugation is an involution and preserves parity") {
  auto chi54 = DirichletCharacter::from_label("5.4");
  REQUIRE(chi54.conjugate().conrey_index() == 4);  // real: self-conjugate
  auto chi52 = DirichletCharacter::from_label("5.2");
  auto cc = chi52.conjugate().conjugate();
  REQUIRE(cc.conrey_index() == chi52.conrey_index());
  REQUIRE(chi52.conjugate().parity() == chi52.parity());
  for (long n = 0; n < 5; ++n)
    REQUIRE(chi52.conjugate().eval(n, P) == conj(chi52.eval(n, P)));
}

TEST_CASE("complete multiplicativity and periodicity, fuzzed") {
  RandomPoints rng(77002);
  for (auto label : {"5.2", "7.3", "8.5", "13.6"}) {
    auto chi = DirichletCharacter::from_label(label);
    long q = chi.modulus();
    for (int i = 0; i < 40; ++i) {
      long m = rng.integer_in(0, 6 * q);
      long n = rng.integer_in(0, 6 * q);
      BigComplex lhs = chi.eval(m * n, P);
      BigComplex rhs = chi.eval(m, P) * chi.eval(n, P);
      REQUIRE(((lhs.is_zero() && rhs.is_zero()) || close_bits(lhs, rhs, P.bits - 16)));
      REQUIRE(chi.eval(n + q, P) == chi.eval(n, P));
    }
  }
}

TEST_CASE("label and primitivity errors") {
  REQUIRE_THROWS_AS(DirichletCharacter::from_conrey_label(8, 4), label_error);   // gcd != 1
  REQUIRE_THROWS_AS(DirichletCharacter::from_conrey_label(5, 0), label_error);   // out of range
  REQUIRE_THROWS_AS(DirichletCharacter::from_conrey_label(5, 7), label_error);   // out of range
  REQUIRE_THROWS_AS(DirichletCharacter::from_conrey_label(1, 1), label_error);   // q < 3
  REQUIRE_THROWS_AS(DirichletCharacter::from_conrey_label(2, 1), label_error);   // q < 3
  REQUIRE_THROWS_AS(DirichletCharacter::from_conrey_label(9, 8), not_primitive_error);
  REQUIRE_THROWS_AS(DirichletCharacter::from_conrey_label(12, 7), not_primitive_error);
  // q == 2 mod 4 never carries a primitive character
  try {
    DirichletCharacter::from_conrey_label(6, 5);
    FAIL("6.5 must be rejected");
  } catch (const not_primitive_error& e) {
    REQUIRE(std::string(e.what()).find("2 mod 4") != std::string::npos);
    REQUIRE(e.code() == "CHAR_NOT_PRIMITIVE");
  }
  REQUIRE_THROWS_AS(DirichletCharacter::from_label("5,4"), label_error);
  REQUIRE_THROWS_AS(DirichletCharacter::from_label("5.4x"), label_error);
}

TEST_CASE("value exponents expose the pole lattice data n_j") {
  auto chi54 = DirichletCharacter::from_label("5.4");
  REQUIRE(chi54.phi() == 4);
  REQUIRE(chi54.value_exponent(2) == 2);  // chi(2) = e^{2 pi i 2/4} = -1
  REQUIRE(chi54.value_exponent(5) == -1);
  auto chi76 = DirichletCharacter::from_label("7.6");
  REQUIRE(chi76.value_exponent(2) == 0);  // chi(2) = 1: origin contributor
  REQUIRE(chi76.value_exponent(3) == 3);  // chi(3) = -1 over phi = 6
}
