#pragma once

// Independent reference computations used only by tests. Nothing here calls
// the triangulation or barycentric integration code under test.

#include <vector>

#include "kstab/rational.hpp"

namespace kstab::oracle {

inline Rational R(long p, long q = 1) { return Rational(p, q); }

inline Vec pt(long a, long b) { return {Rational(a), Rational(b)}; }

/// Area and first/second moments of a simple polygon with CCW vertices,
/// from Green's theorem.
struct PolygonMoments {
  Rational area, x, y, xx, yy, xy;
};

inline PolygonMoments polygon_moments(const std::vector<Vec>& poly) {
  PolygonMoments m;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Rational &x0 = poly[i][0], &y0 = poly[i][1];
    const Rational &x1 = poly[(i + 1) % n][0], &y1 = poly[(i + 1) % n][1];
    const Rational c = x0 * y1 - x1 * y0;
    m.area += c / R(2);
    m.x += (x0 + x1) * c / R(6);
    m.y += (y0 + y1) * c / R(6);
    m.xx += c * (x0 * x0 + x0 * x1 + x1 * x1) / R(12);
    m.yy += c * (y0 * y0 + y0 * y1 + y1 * y1) / R(12);
    m.xy += c * (x0 * y1 + R(2) * x0 * y0 + R(2) * x1 * y1 + x1 * y0) / R(24);
  }
  return m;
}

/// Lattice length of the segment a-b for an edge with primitive direction:
/// gcd-free length equals max(|dx|, |dy|) / max(|px|, |py|) for the
/// primitive direction p. Here p is passed explicitly.
inline Rational lattice_length(const Vec& a, const Vec& b, long px, long py) {
  const Rational dx = b[0] - a[0], dy = b[1] - a[1];
  return px != 0 ? abs(dx) / abs(Rational(px)) : abs(dy) / abs(Rational(py));
}

/// Σ over polygon edges of the lattice length times the mean of an affine f
/// at the endpoints (exact for affine integrands). `dirs` holds the
/// primitive direction of each edge i -> i+1.
template <typename F>
Rational polygon_boundary_affine(const std::vector<Vec>& poly, const std::vector<std::pair<long, long>>& dirs, F f) {
  Rational s;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec& a = poly[i];
    const Vec& b = poly[(i + 1) % poly.size()];
    s += lattice_length(a, b, dirs[i].first, dirs[i].second) * (f(a) + f(b)) / R(2);
  }
  return s;
}

}  // namespace kstab::oracle
