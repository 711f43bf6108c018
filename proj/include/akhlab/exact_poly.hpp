#pragma once

#include <gmpxx.h>

#include <compare>
#include <map>
#include <string>
#include <vector>

namespace akhlab {

using Rational = mpq_class;

/// Univariate polynomial in a with rational coefficients, lowest degree
/// first. Used to state the ring relations.
using PolyInA = std::vector<Rational>;

/// Rewrite rules s^2 -> s_squared(a), b^2 -> b_squared(a). The defaults are
/// s = sqrt(2a) and b = beta = sqrt(8a(1-2a)).
struct Relations {
  PolyInA s_squared{0, 2};
  PolyInA b_squared{0, 8, -16};

  bool operator==(const Relations&) const = default;
};

/// Exponent of a, s, b. After reduction s and b appear to power 0 or 1.
struct Monomial {
  unsigned a = 0;
  unsigned s = 0;
  unsigned b = 0;

  auto operator<=>(const Monomial&) const = default;
};

/// Polynomial over Q in generators (a, s, b), with separate real and imaginary
/// parts so i * beta prefactors are carried exactly. Relations are applied
/// eagerly on every product, and zero coefficients are never stored: the zero
/// polynomial has no terms at all.
class ExactPoly {
 public:
  using Terms = std::map<Monomial, Rational>;

  ExactPoly() = default;
  ExactPoly(const Rational& c);  // NOLINT: constants mix freely in expressions
  ExactPoly(long c);             // NOLINT

  static ExactPoly gen_a(const Relations& rel = {});
  static ExactPoly gen_s(const Relations& rel = {});
  static ExactPoly gen_b(const Relations& rel = {});
  static ExactPoly imaginary_unit(const Relations& rel = {});
  static ExactPoly from_poly_in_a(const PolyInA& coeffs, const Relations& rel = {});

  const Terms& real_terms() const { return re_; }
  const Terms& imag_terms() const { return im_; }
  const Relations& relations() const { return rel_; }
  bool is_zero() const { return re_.empty() && im_.empty(); }
  std::size_t term_count() const { return re_.size() + im_.size(); }

  friend ExactPoly operator+(const ExactPoly& x, const ExactPoly& y);
  friend ExactPoly operator-(const ExactPoly& x, const ExactPoly& y);
  friend ExactPoly operator*(const ExactPoly& x, const ExactPoly& y);
  ExactPoly operator-() const;
  ExactPoly& operator+=(const ExactPoly& y) { return *this = *this + y; }
  ExactPoly& operator*=(const ExactPoly& y) { return *this = *this * y; }

  friend bool operator==(const ExactPoly& x, const ExactPoly& y) {
    return x.re_ == y.re_ && x.im_ == y.im_;
  }

  /// Numeric value with a, s, b given (s, b ignored where absent).
  std::pair<double, double> evaluate(double a, double s, double b) const;

  /// e.g. "3/2*a*s - 16*a^2 + i*(b)" ; "0" for the zero polynomial.
  std::string to_string() const;

 private:
  explicit ExactPoly(const Relations& rel) : rel_(rel) {}

  static const Relations& pick(const ExactPoly& x, const ExactPoly& y);
  static void add_into(Terms& dst, const Terms& src, bool negate);
  static Terms multiply(const Terms& x, const Terms& y, const Relations& rel);
  static void add_term(Terms& dst, Monomial m, const Rational& c);

  Terms re_;
  Terms im_;
  Relations rel_;
  // Constants carry default relations; a constant adopts its partner's
  // relations in binary operations.
  bool relations_set_ = false;
};

}  // namespace akhlab
