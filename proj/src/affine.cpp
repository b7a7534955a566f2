#include "kstab/affine.hpp"

namespace kstab {

bool AffineFunction::is_constant() const {
  for (const auto& g : gradient) {
    if (!g.is_zero()) return false;
  }
  return true;
}

AffineFunction operator-(const AffineFunction& a, const AffineFunction& b) {
  return {a.gradient - b.gradient, a.constant - b.constant};
}

AffineFunction operator+(const AffineFunction& a, const AffineFunction& b) {
  return {a.gradient + b.gradient, a.constant + b.constant};
}

AffineFunction operator*(const Rational& s, const AffineFunction& f) {
  return {s * f.gradient, s * f.constant};
}

std::string to_string(const AffineFunction& f) {
  std::string out;
  for (std::size_t i = 0; i < f.gradient.size(); ++i) {
    const Rational& g = f.gradient[i];
    if (g.is_zero()) continue;
    if (!out.empty()) out += g.sign() < 0 ? " - " : " + ";
    else if (g.sign() < 0) out += "-";
    const Rational m = abs(g);
    if (m != Rational(1)) out += m.str() + "*";
    out += "x" + std::to_string(i + 1);
  }
  if (out.empty()) return f.constant.str();
  if (!f.constant.is_zero()) out += (f.constant.sign() < 0 ? " - " : " + ") + abs(f.constant).str();
  return out;
}

}  // namespace kstab
