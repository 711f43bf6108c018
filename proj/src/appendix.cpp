#include "akhlab/appendix.hpp"

#include <stdexcept>

namespace akhlab {

namespace {

template <class R>
R power(const R& x, int k) {
  R out = R(Rational(1));
  for (int j = 0; j < k; ++j) out = R(out * x);
  return out;
}

}  // namespace

const std::vector<CoefficientSpec>& coefficient_table() {
  static const std::vector<CoefficientSpec> table{
      {1, {}, "cosh(bt)"},
      {2, {}, "cosh^3(bt)"},
      {3, {}, "cosh^5(bt)"},
      {4, {false, true}, "sinh(bt)"},
      {5, {false, true}, "cosh^2(bt) sinh(bt)"},
      {6, {false, true}, "cosh^4(bt) sinh(bt)"},
      {7, {true, false}, "cos(ax)"},
      {8, {true, false}, "cosh^2(bt) cos(ax)"},
      {9, {true, false}, "cosh^4(bt) cos(ax)"},
      {10, {true, true}, "cosh(bt) sinh(bt) cos(ax)"},
      {11, {true, true}, "cosh^3(bt) sinh(bt) cos(ax)"},
      {12, {}, "cosh(bt) cos^2(ax)"},
      {13, {}, "cosh^3(bt) cos^2(ax)"},
      {14, {true, false}, "cosh^2(bt) cos^3(ax)"},
      {15, {}, "cosh(bt) cos^4(ax)"},
  };
  return table;
}

template <class R>
R coefficient_cofactor(int index, const R& A, const R& B, const R& a) {
  const R half = R(Rational(1, 2));
  const R three_halves = R(Rational(3, 2));
  const R A2 = power(A, 2);
  const R A3 = power(A, 3);
  const R A4 = power(A, 4);
  const R B2 = power(B, 2);
  switch (index) {
    case 1:
      return R(three_halves * (-1 + A) * B * (-4 * a * A + B));
    case 2:
      return R(-(-1 + A) * B * (-5 * A + 3 * A2 + 3 * B) +
               2 * a * (-5 * A3 + 3 * A4 - A * B + 3 * A2 * B));
    case 3:
      return R(half * (-1 + A) * (-10 * A3 + 3 * A4 - 10 * A * B + 3 * B2 + A2 * (8 + 6 * B)));
    case 4:  // (3/2) i beta^3 (...), beta^3 = beta * beta^2
      return R(three_halves * B * (-4 * a * A + B));
    case 5:
      return R(B * (5 * A - 3 * A2 - 3 * B) + a * (-8 * A2 + 6 * A3 + 6 * A * B));
    case 6:
      return R(half * (-10 * A3 + 3 * A4 - 10 * A * B + 3 * B2 + A2 * (8 + 6 * B)));
    case 7:
      return R(three_halves * B * (-4 * a * A + B));
    case 8:
      return R(-(B * (-7 * A + 5 * A2 + 3 * B) + a * (-6 * A3 + 2 * A * B)));
    case 9:
      return R(half * (-24 * A3 + 7 * A4 - 16 * A * B + 3 * B2 + 10 * A2 * (2 + B)));
    case 10:
      return R(2 * A * (4 * a * A - B));
    case 11:
      return R(2 * A * (-2 * A + A2 + B));
    case 12:
      return R(4 * a * A * (-B + 2 * a * (A2 + B)));
    case 13:
      return R(6 * a * A * (-2 * A + A2 + B));
    case 14:
      return R(2 * a * A * (-2 * A + A2 + B));
    case 15:
      return R(-4 * power(a, 2) * A * (-2 * A + A2 + B));
    default:
      throw std::out_of_range("coefficient index must be in 1..15");
  }
}

template Rational coefficient_cofactor<Rational>(int, const Rational&, const Rational&,
                                                 const Rational&);
template ExactPoly coefficient_cofactor<ExactPoly>(int, const ExactPoly&, const ExactPoly&,
                                                   const ExactPoly&);

CoefficientVerdict verify_coefficient(int index, const AppendixRing& ring) {
  const auto& table = coefficient_table();
  if (index < 1 || index > static_cast<int>(table.size())) {
    throw std::out_of_range("coefficient index must be in 1..15");
  }
  const Relations& rel = ring.relations;
  const ExactPoly a = ExactPoly::gen_a(rel);
  const ExactPoly alpha2 = ExactPoly::from_poly_in_a(ring.alpha_squared, rel);
  const ExactPoly beta2 = ExactPoly::from_poly_in_a(rel.b_squared, rel);

  CoefficientVerdict v;
  v.index = index;
  v.prefactor = table[static_cast<std::size_t>(index - 1)].prefactor;
  v.cofactor = coefficient_cofactor<ExactPoly>(index, alpha2, beta2, a);

  ExactPoly pre = ExactPoly::from_poly_in_a({1}, rel);
  if (v.prefactor.sqrt_2a) pre *= ExactPoly::gen_s(rel);
  if (v.prefactor.i_beta) pre *= ExactPoly::imaginary_unit(rel) * ExactPoly::gen_b(rel);
  v.full = pre * v.cofactor;
  v.is_zero = v.full.is_zero() && v.cofactor.is_zero();
  return v;
}

std::vector<CoefficientVerdict> verify_coefficients(const AppendixRing& ring) {
  std::vector<CoefficientVerdict> out;
  for (const auto& spec : coefficient_table()) out.push_back(verify_coefficient(spec.index, ring));
  return out;
}

AppendixRing wrong_beta_ring() {
  AppendixRing ring;
  ring.relations.b_squared = {0, 8};
  return ring;
}

}  // namespace akhlab
