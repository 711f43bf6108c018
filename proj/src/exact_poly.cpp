#include "akhlab/exact_poly.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace akhlab {

ExactPoly::ExactPoly(const Rational& c) { add_term(re_, Monomial{}, c); }

ExactPoly::ExactPoly(long c) : ExactPoly(Rational(c)) {}

ExactPoly ExactPoly::gen_a(const Relations& rel) {
  ExactPoly p(rel);
  p.relations_set_ = true;
  p.re_.emplace(Monomial{1, 0, 0}, 1);
  return p;
}

ExactPoly ExactPoly::gen_s(const Relations& rel) {
  ExactPoly p(rel);
  p.relations_set_ = true;
  p.re_.emplace(Monomial{0, 1, 0}, 1);
  return p;
}

ExactPoly ExactPoly::gen_b(const Relations& rel) {
  ExactPoly p(rel);
  p.relations_set_ = true;
  p.re_.emplace(Monomial{0, 0, 1}, 1);
  return p;
}

ExactPoly ExactPoly::imaginary_unit(const Relations& rel) {
  ExactPoly p(rel);
  p.relations_set_ = true;
  p.im_.emplace(Monomial{}, 1);
  return p;
}

ExactPoly ExactPoly::from_poly_in_a(const PolyInA& coeffs, const Relations& rel) {
  ExactPoly p(rel);
  p.relations_set_ = true;
  for (unsigned k = 0; k < coeffs.size(); ++k) add_term(p.re_, Monomial{k, 0, 0}, coeffs[k]);
  return p;
}

const Relations& ExactPoly::pick(const ExactPoly& x, const ExactPoly& y) {
  if (x.relations_set_ && y.relations_set_ && !(x.rel_ == y.rel_)) {
    throw std::invalid_argument("ExactPoly operands use different ring relations");
  }
  return x.relations_set_ ? x.rel_ : y.rel_;
}

void ExactPoly::add_term(Terms& dst, Monomial m, const Rational& c) {
  Rational v = c;
  v.canonicalize();
  if (v == 0) return;
  auto [it, inserted] = dst.emplace(m, v);
  if (!inserted) {
    it->second += v;
    if (it->second == 0) dst.erase(it);
  }
}

void ExactPoly::add_into(Terms& dst, const Terms& src, bool negate) {
  for (const auto& [m, c] : src) add_term(dst, m, negate ? Rational(-c) : c);
}

ExactPoly::Terms ExactPoly::multiply(const Terms& x, const Terms& y, const Relations& rel) {
  Terms out;
  for (const auto& [mx, cx] : x) {
    for (const auto& [my, cy] : y) {
      // Expand the product monomial, rewriting s^2 and b^2 via the relations.
      Terms partial;
      partial.emplace(Monomial{mx.a + my.a, 0, 0}, cx * cy);
      const auto apply = [&](unsigned power, const PolyInA& square, bool is_s) {
        while (power >= 2) {
          Terms next;
          for (const auto& [m, c] : partial) {
            for (unsigned k = 0; k < square.size(); ++k) add_term(next, Monomial{m.a + k, m.s, m.b}, c * square[k]);
          }
          partial = std::move(next);
          power -= 2;
        }
        if (power == 1) {
          Terms next;
          for (const auto& [m, c] : partial) {
            Monomial shifted = m;
            (is_s ? shifted.s : shifted.b) = 1;
            add_term(next, shifted, c);
          }
          partial = std::move(next);
        }
      };
      apply(mx.s + my.s, rel.s_squared, true);
      apply(mx.b + my.b, rel.b_squared, false);
      add_into(out, partial, false);
    }
  }
  return out;
}

ExactPoly operator+(const ExactPoly& x, const ExactPoly& y) {
  ExactPoly r(ExactPoly::pick(x, y));
  r.relations_set_ = x.relations_set_ || y.relations_set_;
  r.re_ = x.re_;
  r.im_ = x.im_;
  ExactPoly::add_into(r.re_, y.re_, false);
  ExactPoly::add_into(r.im_, y.im_, false);
  return r;
}

ExactPoly operator-(const ExactPoly& x, const ExactPoly& y) {
  ExactPoly r(ExactPoly::pick(x, y));
  r.relations_set_ = x.relations_set_ || y.relations_set_;
  r.re_ = x.re_;
  r.im_ = x.im_;
  ExactPoly::add_into(r.re_, y.re_, true);
  ExactPoly::add_into(r.im_, y.im_, true);
  return r;
}

ExactPoly operator*(const ExactPoly& x, const ExactPoly& y) {
  const Relations& rel = ExactPoly::pick(x, y);
  ExactPoly r(rel);
  r.relations_set_ = x.relations_set_ || y.relations_set_;
  // (xr + i xi)(yr + i yi) = xr yr - xi yi + i (xr yi + xi yr)
  r.re_ = ExactPoly::multiply(x.re_, y.re_, rel);
  ExactPoly::add_into(r.re_, ExactPoly::multiply(x.im_, y.im_, rel), true);
  r.im_ = ExactPoly::multiply(x.re_, y.im_, rel);
  ExactPoly::add_into(r.im_, ExactPoly::multiply(x.im_, y.re_, rel), false);
  return r;
}

ExactPoly ExactPoly::operator-() const { return ExactPoly(0L) - *this; }

std::pair<double, double> ExactPoly::evaluate(double a, double s, double b) const {
  const auto eval = [&](const Terms& t) {
    double sum = 0.0;
    for (const auto& [m, c] : t) {
      sum += c.get_d() * std::pow(a, m.a) * std::pow(s, m.s) * std::pow(b, m.b);
    }
    return sum;
  };
  return {eval(re_), eval(im_)};
}

namespace {

void render(std::ostringstream& os, const ExactPoly::Terms& terms) {
  bool first = true;
  // Highest degree first reads more naturally.
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    const auto& [m, c] = *it;
    Rational mag = abs(c);
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    const bool bare = m.a == 0 && m.s == 0 && m.b == 0;
    if (mag != 1 || bare) os << mag.get_str();
    bool need_star = mag != 1;
    const auto factor = [&](const char* name, unsigned power) {
      if (power == 0) return;
      if (need_star) os << "*";
      os << name;
      if (power > 1) os << "^" << power;
      need_star = true;
    };
    factor("a", m.a);
    factor("s", m.s);
    factor("b", m.b);
  }
}

}  // namespace

std::string ExactPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  if (!re_.empty()) render(os, re_);
  if (!im_.empty()) {
    if (!re_.empty()) os << " + ";
    os << "i*(";
    render(os, im_);
    os << ")";
  }
  return os.str();
}

}  // namespace akhlab
