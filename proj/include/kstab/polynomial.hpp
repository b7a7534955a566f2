#pragma once

#include <map>
#include <string>
#include <vector>

#include "kstab/affine.hpp"
#include "kstab/rational.hpp"

namespace kstab {

using Exponent = std::vector<unsigned>;

/// Sparse polynomial with rational coefficients over `vars` variables.
/// Zero coefficients are never stored.
class Polynomial {
 public:
  explicit Polynomial(std::size_t vars = 0) : vars_(vars) {}

  static Polynomial constant(std::size_t vars, const Rational& c);
  static Polynomial variable(std::size_t vars, std::size_t i);
  static Polynomial monomial(const Exponent& alpha, const Rational& c = Rational(1));
  static Polynomial from_affine(const AffineFunction& f);

  std::size_t vars() const { return vars_; }
  const std::map<Exponent, Rational>& terms() const { return terms_; }
  unsigned degree() const;
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Exponent& alpha, const Rational& c);

  Rational operator()(const Vec& x) const;

  /// Replaces variable i by subs[i]; all subs share one variable count.
  Polynomial substitute(const std::vector<Polynomial>& subs) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& s);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Rational s, Polynomial p) { return p *= s; }
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  std::string str() const;

 private:
  std::size_t vars_;
  std::map<Exponent, Rational> terms_;
};

}  // namespace kstab
