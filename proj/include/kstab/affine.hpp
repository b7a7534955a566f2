#pragma once

#include "kstab/rational.hpp"

namespace kstab {

/// x -> <gradient, x> + constant.
struct AffineFunction {
  Vec gradient;
  Rational constant;

  Rational operator()(const Vec& x) const { return dot(gradient, x) + constant; }
  bool is_constant() const;

  friend bool operator==(const AffineFunction&, const AffineFunction&) = default;
};

AffineFunction operator-(const AffineFunction& a, const AffineFunction& b);
AffineFunction operator+(const AffineFunction& a, const AffineFunction& b);
AffineFunction operator*(const Rational& s, const AffineFunction& f);
std::string to_string(const AffineFunction& f);

}  // namespace kstab
