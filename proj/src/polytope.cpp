#include "kstab/polytope.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "kstab/error.hpp"
#include "kstab/linalg.hpp"

namespace kstab {

namespace {

// Calls fn on every k-subset of {0..n-1} in lexicographic order.
template <typename Fn>
void for_each_subset(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

Rational abs_det_of_edges(const std::vector<Vec>& pts) {
  Matrix m;
  m.reserve(pts.size() - 1);
  for (std::size_t i = 1; i < pts.size(); ++i) m.push_back(pts[i] - pts[0]);
  return abs(determinant(m));
}

void validate_primitive(const HalfSpace& h) {
  bool nonzero = false;
  mpz_class g = 0;
  for (const auto& c : h.normal) {
    if (!c.is_integer()) throw Error(ErrorKind::NonPrimitiveNormal, "normal has a non-integer entry " + to_string(h.normal));
    if (!c.is_zero()) nonzero = true;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.raw().get_num_mpz_t());
  }
  if (!nonzero) throw Error(ErrorKind::NonPrimitiveNormal, "zero normal");
  if (g != 1) throw Error(ErrorKind::NonPrimitiveNormal, "normal " + to_string(h.normal) + " is not primitive");
}

// Pulling triangulation of the face spanned by `face` (vertex indices, affine
// dimension k): cone from its first vertex over the triangulated subfaces
// that do not contain it.
void triangulate_face(const std::vector<Vec>& verts, const std::vector<std::vector<bool>>& on,
                      const std::vector<std::size_t>& face, int k,
                      std::vector<std::vector<std::size_t>>& out) {
  if (k == 0) {
    out.push_back({face[0]});
    return;
  }
  const std::size_t apex = face[0];
  std::set<std::vector<std::size_t>> seen;
  for (const auto& on_j : on) {
    std::vector<std::size_t> sub;
    for (auto v : face) {
      if (on_j[v]) sub.push_back(v);
    }
    if (sub.size() == face.size() || sub.size() < static_cast<std::size_t>(k)) continue;
    if (on_j[apex]) continue;
    if (!seen.insert(sub).second) continue;
    std::vector<Vec> pts;
    for (auto v : sub) pts.push_back(verts[v]);
    if (affine_dimension(pts) != k - 1) continue;
    std::vector<std::vector<std::size_t>> sub_simplices;
    triangulate_face(verts, on, sub, k - 1, sub_simplices);
    for (auto& s : sub_simplices) {
      s.insert(s.begin(), apex);
      out.push_back(std::move(s));
    }
  }
}

void sort_vertices(std::vector<Vec>& verts, std::size_t n) {
  std::sort(verts.begin(), verts.end());
  if (n != 2 || verts.size() < 3) return;
  // Counter-clockwise from the lexicographically smallest vertex.
  const Vec origin = verts[0];
  std::sort(verts.begin() + 1, verts.end(), [&](const Vec& a, const Vec& b) {
    const Vec da = a - origin;
    const Vec db = b - origin;
    return da[0] * db[1] - da[1] * db[0] > Rational(0);
  });
}

}  // namespace

HalfSpace HalfSpace::make(Vec normal, Rational bound) {
  HalfSpace h{std::move(normal), std::move(bound)};
  validate_primitive(h);
  return h;
}

HalfSpace HalfSpace::from_rational(const Vec& normal, const Rational& bound) {
  mpz_class l = 1;
  for (const auto& c : normal) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.raw().get_den_mpz_t());
  mpz_class g = 0;
  for (const auto& c : normal) {
    mpz_class v = c.raw().get_num() * (l / c.raw().get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  }
  if (g == 0) throw Error(ErrorKind::NonPrimitiveNormal, "zero normal");
  const Rational s(mpq_class(l, g));
  return HalfSpace{s * normal, s * bound};
}

HalfSpace HalfSpace::below(const AffineFunction& f) {
  return from_rational(f.gradient, -f.constant);
}

Rational volume(const Simplex& s) {
  const std::size_t n = s.ambient_dim();
  if (s.vertices.size() != n + 1) throw Error(ErrorKind::DegenerateSimplex, "simplex is not full-dimensional");
  const Rational v = abs_det_of_edges(s.vertices) / factorial(static_cast<unsigned>(n));
  if (v.is_zero()) throw Error(ErrorKind::DegenerateSimplex, "zero volume");
  return v;
}

Rational boundary_measure(const HalfSpace& h, const Simplex& s) {
  const std::size_t n = h.normal.size();
  std::size_t k = 0;
  while (h.normal[k].is_zero()) ++k;
  // Dropping coordinate k maps the hyperplane onto R^{n-1}; the projected
  // volume equals Euclidean volume * |l_k| / |l|, so dσ = projected / |l_k|.
  std::vector<Vec> proj;
  for (const auto& v : s.vertices) {
    Vec p;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != k) p.push_back(v[j]);
    }
    proj.push_back(std::move(p));
  }
  return abs_det_of_edges(proj) / factorial(static_cast<unsigned>(n - 1)) / abs(h.normal[k]);
}

Simplex Polytope::simplex(const std::vector<std::size_t>& idx) const {
  Simplex s;
  for (auto i : idx) s.vertices.push_back(vertices_[i]);
  return s;
}

Rational Polytope::boundary_volume() const {
  Rational s;
  for (const auto& f : facets_) s += f.measure;
  return s;
}

bool Polytope::contains(const Vec& x) const {
  return std::all_of(halfspaces_.begin(), halfspaces_.end(),
                     [&](const HalfSpace& h) { return h.slack(x).sign() >= 0; });
}

bool Polytope::contains_in_interior(const Vec& x) const {
  return std::all_of(halfspaces_.begin(), halfspaces_.end(),
                     [&](const HalfSpace& h) { return h.slack(x).sign() > 0; });
}

std::vector<std::size_t> Polytope::facets_at_vertex(std::size_t v) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < halfspaces_.size(); ++i) {
    if (halfspaces_[i].slack(vertices_[v]).is_zero()) out.push_back(i);
  }
  return out;
}

bool operator==(const Polytope& a, const Polytope& b) {
  return a.dim_ == b.dim_ && a.halfspaces_ == b.halfspaces_ && a.vertices_ == b.vertices_;
}

Polytope build_polytope(std::vector<HalfSpace> input, BuildOptions opts) {
  if (input.empty()) throw Error(ErrorKind::Unbounded, "no half-spaces");
  const std::size_t n = input[0].normal.size();
  if (n == 0) throw Error(ErrorKind::Degenerate, "dimension 0");
  for (const auto& h : input) {
    if (h.normal.size() != n) throw Error(ErrorKind::InvalidArgument, "mixed normal dimensions");
    validate_primitive(h);
  }

  Polytope p;
  p.dim_ = n;

  // Exact duplicates carry no information.
  std::vector<HalfSpace> hs;
  for (auto& h : input) {
    if (std::find(hs.begin(), hs.end(), h) == hs.end()) {
      hs.push_back(std::move(h));
    } else {
      p.redundant_.push_back(h);
    }
  }

  Matrix normals;
  for (const auto& h : hs) normals.push_back(h.normal);
  if (hs.size() < n + 1 || rank(normals) < n) {
    throw Error(ErrorKind::Unbounded, "normals do not positively span R^" + std::to_string(n));
  }

  std::set<Vec> found;
  for_each_subset(hs.size(), n, [&](const std::vector<std::size_t>& idx) {
    Matrix a;
    Vec b;
    for (auto i : idx) {
      a.push_back(hs[i].normal);
      b.push_back(hs[i].bound);
    }
    auto x = solve(a, b);
    if (!x) return;
    for (const auto& h : hs) {
      if (h.slack(*x).sign() < 0) return;
    }
    found.insert(std::move(*x));
  });
  if (found.empty()) throw Error(ErrorKind::Empty, "half-spaces have empty intersection");

  // A nonzero pointed recession cone has an extreme ray cut out by n-1
  // independent normals.
  for_each_subset(hs.size(), n - 1, [&](const std::vector<std::size_t>& idx) {
    Matrix a;
    for (auto i : idx) a.push_back(hs[i].normal);
    const auto ker = kernel(a, n);
    if (ker.size() != 1) return;
    for (int s : {1, -1}) {
      const Vec d = Rational(s) * ker[0];
      bool recedes = true;
      for (const auto& h : hs) {
        if (dot(h.normal, d).sign() > 0) {
          recedes = false;
          break;
        }
      }
      if (recedes) throw Error(ErrorKind::Unbounded, "recession direction " + to_string(d));
    }
  });

  std::vector<Vec> verts(found.begin(), found.end());
  sort_vertices(verts, n);
  if (affine_dimension(verts) < static_cast<int>(n)) {
    throw Error(ErrorKind::Degenerate, "vertex hull has dimension < " + std::to_string(n));
  }

  for (const auto& h : hs) {
    std::vector<Vec> on;
    for (const auto& v : verts) {
      if (h.slack(v).is_zero()) on.push_back(v);
    }
    if (affine_dimension(on) == static_cast<int>(n) - 1) {
      p.halfspaces_.push_back(h);
    } else {
      p.redundant_.push_back(h);
    }
  }
  p.vertices_ = std::move(verts);

  const std::size_t d = p.halfspaces_.size();
  std::vector<std::vector<bool>> on(d, std::vector<bool>(p.vertices_.size(), false));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t v = 0; v < p.vertices_.size(); ++v) {
      on[i][v] = p.halfspaces_[i].slack(p.vertices_[v]).is_zero();
    }
  }
  if (opts.require_simple) {
    for (std::size_t v = 0; v < p.vertices_.size(); ++v) {
      std::size_t count = 0;
      for (std::size_t i = 0; i < d; ++i) count += on[i][v] ? 1 : 0;
      if (count > n) {
        throw Error(ErrorKind::NotSimple, "vertex " + to_string(p.vertices_[v]) + " lies on " +
                                              std::to_string(count) + " facets");
      }
    }
  }

  for (std::size_t i = 0; i < d; ++i) {
    Facet f;
    f.halfspace_index = i;
    for (std::size_t v = 0; v < p.vertices_.size(); ++v) {
      if (on[i][v]) f.vertex_indices.push_back(v);
    }
    triangulate_face(p.vertices_, on, f.vertex_indices, static_cast<int>(n) - 1, f.simplices);
    f.norm_sq = p.halfspaces_[i].norm_sq();
    for (const auto& s : f.simplices) f.measure += boundary_measure(p.halfspaces_[i], p.simplex(s));
    p.facets_.push_back(std::move(f));
  }

  std::vector<std::size_t> all(p.vertices_.size());
  for (std::size_t v = 0; v < all.size(); ++v) all[v] = v;
  triangulate_face(p.vertices_, on, all, static_cast<int>(n), p.triangulation_);
  for (const auto& s : p.triangulation_) p.volume_ += volume(p.simplex(s));

  p.origin_interior_ = std::all_of(p.halfspaces_.begin(), p.halfspaces_.end(),
                                   [](const HalfSpace& h) { return h.bound.sign() > 0; });
  return p;
}

std::optional<Polytope> intersect(const Polytope& p, const std::vector<HalfSpace>& extra) {
  std::vector<HalfSpace> hs = p.halfspaces();
  hs.insert(hs.end(), extra.begin(), extra.end());
  try {
    return build_polytope(std::move(hs), BuildOptions{.require_simple = false});
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Empty || e.kind() == ErrorKind::Degenerate) return std::nullopt;
    throw;
  }
}

DelzantResult delzant_check(const Polytope& p) {
  for (std::size_t v = 0; v < p.vertices().size(); ++v) {
    const auto at = p.facets_at_vertex(v);
    if (at.size() != p.dim()) return {false, v};
    Matrix m;
    for (auto i : at) m.push_back(p.halfspaces()[i].normal);
    if (abs(determinant(m)) != Rational(1)) return {false, v};
  }
  return {};
}

std::vector<Simplex> triangulate(const Polytope& p) {
  std::vector<Simplex> out;
  out.reserve(p.triangulation().size());
  for (const auto& s : p.triangulation()) out.push_back(p.simplex(s));
  return out;
}

ConeDecomposition cone_decomposition(const Polytope& p) {
  if (!p.origin_interior()) throw Error(ErrorKind::OriginNotInterior, "cone decomposition needs 0 in the interior");
  ConeDecomposition out;
  const Vec origin(p.dim());
  for (const auto& f : p.facets()) {
    for (const auto& s : f.simplices) {
      Simplex cone = p.simplex(s);
      cone.vertices.insert(cone.vertices.begin(), origin);
      out.cells.push_back({f.halfspace_index, std::move(cone)});
    }
  }
  return out;
}

std::vector<HalfSpace> simplex_halfspaces(const Simplex& s) {
  const std::size_t n = s.ambient_dim();
  std::vector<HalfSpace> out;
  for (std::size_t skip = 0; skip <= n; ++skip) {
    Matrix a;
    const Vec* base = nullptr;
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == skip) continue;
      if (!base) {
        base = &s.vertices[i];
        continue;
      }
      a.push_back(s.vertices[i] - *base);
    }
    const auto ker = kernel(a, n);
    if (ker.size() != 1) throw Error(ErrorKind::DegenerateSimplex, "simplex is degenerate");
    Vec normal = ker[0];
    // Orient away from the omitted vertex.
    if (dot(normal, s.vertices[skip] - *base).sign() > 0) normal = Rational(-1) * normal;
    out.push_back(HalfSpace::from_rational(normal, dot(normal, *base)));
  }
  return out;
}

std::vector<Polytope> subdivide_by_hyperplanes(const Polytope& p, const std::vector<AffineFunction>& cuts) {
  std::vector<Polytope> cells{p};
  for (const auto& f : cuts) {
    if (f.is_constant()) continue;
    const HalfSpace lo = HalfSpace::below(f);
    const HalfSpace hi = HalfSpace::below(Rational(-1) * f);
    std::vector<Polytope> next;
    for (const auto& c : cells) {
      for (const auto& side : {lo, hi}) {
        if (auto piece = intersect(c, {side})) next.push_back(std::move(*piece));
      }
    }
    cells = std::move(next);
  }
  return cells;
}

Polytope translate(const Polytope& p, const Vec& t) {
  Polytope out = p;
  for (auto& h : out.halfspaces_) h.bound += dot(h.normal, t);
  for (auto& h : out.redundant_) h.bound += dot(h.normal, t);
  for (auto& v : out.vertices_) v = v + t;
  out.origin_interior_ = std::all_of(out.halfspaces_.begin(), out.halfspaces_.end(),
                                     [](const HalfSpace& h) { return h.bound.sign() > 0; });
  return out;
}

}  // namespace kstab
