#include <chrono>
#include <cmath>
#include <complex>
#include <random>

#include "akhlab/appendix.hpp"
#include "akhlab/exact_poly.hpp"
#include "doctest.h"

using namespace akhlab;

namespace {

ExactPoly random_poly(std::mt19937_64& gen) {
  std::uniform_int_distribution<int> coef(-9, 9), pow(0, 3), terms(1, 4), den(1, 5);
  const ExactPoly a = ExactPoly::gen_a(), s = ExactPoly::gen_s(), b = ExactPoly::gen_b(), i = ExactPoly::imaginary_unit();
  ExactPoly out;
  for (int k = terms(gen); k > 0; --k) {
    ExactPoly m(Rational(coef(gen), den(gen)));
    for (int e = pow(gen); e > 0; --e) m = m * a;
    for (int e = pow(gen); e > 0; --e) m = m * s;
    for (int e = pow(gen); e > 0; --e) m = m * b;
    if (coef(gen) > 0) m = m * i;
    out = out + m;
  }
  return out;
}

std::complex<double> value(const ExactPoly& p, double a) {
  const auto [re, im] = p.evaluate(a, std::sqrt(2 * a), std::sqrt(8 * a - 16 * a * a));
  return {re, im};
}

}  // namespace

TEST_CASE("generators obey the relations") {
  const ExactPoly a = ExactPoly::gen_a(), s = ExactPoly::gen_s(), b = ExactPoly::gen_b();
  const ExactPoly i = ExactPoly::imaginary_unit();
  CHECK(s * s == 2 * a);
  CHECK(b * b == 8 * a - 16 * a * a);
  CHECK(i * i == ExactPoly(-1));
  CHECK((s * s * s).term_count() == 1);
  CHECK((a - a).is_zero());
  CHECK(ExactPoly().to_string() == "0");
  CHECK(ExactPoly(Rational(3, 2)).to_string() == "3/2");
}

TEST_CASE("ring axioms on random polynomials") {
  std::mt19937_64 gen(2024);
  for (int k = 0; k < 200; ++k) {
    const ExactPoly x = random_poly(gen), y = random_poly(gen), z = random_poly(gen);
    CHECK(x * y == y * x);
    CHECK(x + y == y + x);
    CHECK((x * y) * z == x * (y * z));
    CHECK(x * (y + z) == x * y + x * z);
    CHECK((x - x).is_zero());
    CHECK(x + (-x) == ExactPoly());
    CHECK(x * ExactPoly(1) == x);
    CHECK((x * ExactPoly(0)).is_zero());
  }
}

TEST_CASE("reduction preserves numeric value") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> ua(0.05, 0.45);
  for (int k = 0; k < 200; ++k) {
    const ExactPoly x = random_poly(gen), y = random_poly(gen);
    const double a = ua(gen);
    const auto lhs = value(x * y, a), rhs = value(x, a) * value(y, a);
    CHECK(std::abs(lhs - rhs) <= 1e-11 * (1 + std::abs(rhs)));
  }
}

TEST_CASE("mixing relation sets is an error") {
  Relations other;
  other.b_squared = {0, 8};
  CHECK_THROWS_AS(ExactPoly::gen_b() + ExactPoly::gen_b(other), std::invalid_argument);
  // constants adopt their partner's relations
  const ExactPoly b = ExactPoly::gen_b(other);
  CHECK((ExactPoly(2) * b * b) == ExactPoly::from_poly_in_a({0, 16}, other));
}

TEST_CASE("first coefficient before substitution") {
  CHECK(coefficient_cofactor<Rational>(1, 1, 1, 1) == 0);
  CHECK(coefficient_cofactor<Rational>(1, 4, 1, 1) == Rational(-135, 2));
  CHECK_THROWS_AS(coefficient_cofactor<Rational>(16, 1, 1, 1), std::out_of_range);
}

TEST_CASE("cofactors vanish at rational points on the parameter curve") {
  // independent of the ExactPoly reduction: plain rational evaluation
  for (int num = 1; num < 20; ++num) {
    const Rational a(num, 41);
    const Rational A = 2 * (1 - 2 * a);
    const Rational B = 8 * a * (1 - 2 * a);
    for (int i = 1; i <= 15; ++i) CHECK(coefficient_cofactor<Rational>(i, A, B, a) == 0);
  }
}

TEST_CASE("cofactors do not vanish off the curve") {
  int nonzero = 0;
  for (int i = 1; i <= 15; ++i) nonzero += coefficient_cofactor<Rational>(i, 3, 5, Rational(1, 7)) != 0;
  CHECK(nonzero == 15);
}

TEST_CASE("all fifteen coefficients reduce to exact zero") {
  const auto start = std::chrono::steady_clock::now();
  const auto verdicts = verify_coefficients();
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  REQUIRE(verdicts.size() == 15);
  for (const auto& v : verdicts) {
    CAPTURE(v.index);
    CHECK(v.is_zero);
    CHECK(v.full.is_zero());
    CHECK(v.residual() == "0");
  }
  CHECK(secs < 1.0);
}

TEST_CASE("prefactors follow the table") {
  const auto& t = coefficient_table();
  REQUIRE(t.size() == 15);
  for (int i : {4, 5, 6, 10, 11}) CHECK(t[i - 1].prefactor.i_beta);
  for (int i : {7, 8, 9, 10, 11, 14}) CHECK(t[i - 1].prefactor.sqrt_2a);
  for (int i : {1, 2, 3, 12, 13, 15}) {
    CHECK_FALSE(t[i - 1].prefactor.i_beta);
    CHECK_FALSE(t[i - 1].prefactor.sqrt_2a);
  }
}

TEST_CASE("wrong beta relation leaves a residual") {
  const auto v = verify_coefficient(1, wrong_beta_ring());
  CHECK_FALSE(v.is_zero);
  CHECK(v.residual() != "0");
  // evaluated numerically, (3/2)(A - 1) B (B - 4 a A) with B = 8a, A = 2 - 4a
  const double a = 0.2, A = 2 - 4 * a, B = 8 * a;
  const auto [re, im] = v.full.evaluate(a, std::sqrt(2 * a), std::sqrt(B));
  CHECK(re == doctest::Approx(1.5 * (A - 1) * B * (B - 4 * a * A)));
  CHECK(im == 0.0);
}
