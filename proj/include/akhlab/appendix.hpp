#pragma once

#include <string>
#include <vector>

#include "akhlab/exact_poly.hpp"

namespace akhlab {

/// Substitutions used when reducing the expansion coefficients:
/// alpha^2 -> alpha_squared(a), beta^2 = b^2 -> relations.b_squared(a),
/// s^2 -> relations.s_squared(a).
struct AppendixRing {
  PolyInA alpha_squared{2, -4};
  Relations relations;
};

/// Symbolic prefactor pulled out of a coefficient before entry.
struct Prefactor {
  bool sqrt_2a = false;  // s
  bool i_beta = false;   // i b
};

struct CoefficientSpec {
  int index = 0;            // 1..15
  Prefactor prefactor;
  const char* basis = "";   // trigonometric monomial the coefficient multiplies
};

const std::vector<CoefficientSpec>& coefficient_table();

/// Cofactor of a_i (the coefficient with its prefactor removed), entered as a
/// polynomial in alpha^2, beta^2 and a. Instantiated for Rational (direct
/// evaluation) and ExactPoly (reduction).
template <class R>
R coefficient_cofactor(int index, const R& alpha2, const R& beta2, const R& a);

extern template Rational coefficient_cofactor<Rational>(int, const Rational&, const Rational&,
                                                        const Rational&);
extern template ExactPoly coefficient_cofactor<ExactPoly>(int, const ExactPoly&,
                                                          const ExactPoly&, const ExactPoly&);

struct CoefficientVerdict {
  int index = 0;
  Prefactor prefactor;
  ExactPoly cofactor;  // reduced
  ExactPoly full;      // prefactor * cofactor, reduced
  bool is_zero = false;

  std::string residual() const { return full.to_string(); }
};

CoefficientVerdict verify_coefficient(int index, const AppendixRing& ring = {});
std::vector<CoefficientVerdict> verify_coefficients(const AppendixRing& ring = {});

/// The ring with the deliberately wrong relation beta^2 -> 8a.
AppendixRing wrong_beta_ring();

}  // namespace akhlab
