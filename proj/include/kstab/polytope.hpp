#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "kstab/affine.hpp"
#include "kstab/rational.hpp"

namespace kstab {

/// The closed half-space <normal, x> <= bound. `normal` holds integers with
/// gcd 1 (stored as Rationals so all arithmetic stays in one type).
struct HalfSpace {
  Vec normal;
  Rational bound;

  /// Validates a primitive integer normal; throws NonPrimitiveNormal.
  static HalfSpace make(Vec normal, Rational bound);
  /// Rescales an arbitrary nonzero rational normal to a primitive integer one.
  static HalfSpace from_rational(const Vec& normal, const Rational& bound);
  /// {f <= 0}; f must not be constant.
  static HalfSpace below(const AffineFunction& f);

  Rational slack(const Vec& x) const { return bound - dot(normal, x); }
  /// |normal|_2^2, an integer.
  Rational norm_sq() const { return dot(normal, normal); }

  friend bool operator==(const HalfSpace&, const HalfSpace&) = default;
};

/// k-simplex given by k+1 points in R^n.
struct Simplex {
  std::vector<Vec> vertices;

  std::size_t dim() const { return vertices.size() - 1; }
  std::size_t ambient_dim() const { return vertices.empty() ? 0 : vertices[0].size(); }
};

/// Lebesgue volume of a full-dimensional simplex. Throws DegenerateSimplex.
Rational volume(const Simplex& s);

/// dσ-measure of an (n-1)-simplex lying in the hyperplane of `h`:
/// Euclidean measure divided by |normal|_2, which is always rational.
Rational boundary_measure(const HalfSpace& h, const Simplex& s);

struct Facet {
  std::size_t halfspace_index = 0;
  std::vector<std::size_t> vertex_indices;
  /// (n-1)-simplices tiling the facet, as indices into Polytope::vertices().
  std::vector<std::vector<std::size_t>> simplices;
  Rational norm_sq;
  /// Total dσ-measure of the facet.
  Rational measure;
};

struct BuildOptions {
  /// Reject vertices lying on more than n facet hyperplanes. Cells created
  /// internally (PL cells, cones, cuts) may legitimately be non-simple in 3D.
  bool require_simple = true;
};

/// Bounded full-dimensional convex polytope in half-space form together with
/// its vertices, facets and a triangulation. Immutable once built.
class Polytope {
 public:
  std::size_t dim() const { return dim_; }
  const std::vector<HalfSpace>& halfspaces() const { return halfspaces_; }
  const std::vector<Vec>& vertices() const { return vertices_; }
  const std::vector<Facet>& facets() const { return facets_; }
  /// Half-spaces dropped at construction because they support no facet.
  const std::vector<HalfSpace>& redundant() const { return redundant_; }
  bool origin_interior() const { return origin_interior_; }

  /// n-simplices tiling the polytope, as vertex-index lists.
  const std::vector<std::vector<std::size_t>>& triangulation() const { return triangulation_; }
  Simplex simplex(const std::vector<std::size_t>& idx) const;

  const Rational& volume() const { return volume_; }
  /// Σ over facets of the dσ-measure.
  Rational boundary_volume() const;

  bool contains(const Vec& x) const;
  bool contains_in_interior(const Vec& x) const;
  /// Indices of facets whose hyperplane passes through vertex v.
  std::vector<std::size_t> facets_at_vertex(std::size_t v) const;

  friend bool operator==(const Polytope& a, const Polytope& b);

 private:
  friend Polytope build_polytope(std::vector<HalfSpace>, BuildOptions);
  friend Polytope translate(const Polytope&, const Vec&);

  std::size_t dim_ = 0;
  std::vector<HalfSpace> halfspaces_;
  std::vector<Vec> vertices_;
  std::vector<Facet> facets_;
  std::vector<HalfSpace> redundant_;
  std::vector<std::vector<std::size_t>> triangulation_;
  Rational volume_;
  bool origin_interior_ = false;
};

/// Builds the polytope {x : <l_i, x> <= λ_i}. Vertices come from exhaustive
/// n-subsets of hyperplanes; redundant half-spaces are dropped and recorded.
/// Throws Error{Unbounded, NotSimple, NonPrimitiveNormal, Degenerate, Empty}.
Polytope build_polytope(std::vector<HalfSpace> halfspaces, BuildOptions opts = {});

/// P ∩ {extra}, or nullopt when the intersection is empty or lower-dimensional.
std::optional<Polytope> intersect(const Polytope& p, const std::vector<HalfSpace>& extra);

struct DelzantResult {
  bool ok = true;
  std::optional<std::size_t> violating_vertex;
};

/// True iff the facet normals at every vertex form a unimodular basis.
DelzantResult delzant_check(const Polytope& p);

std::vector<Simplex> triangulate(const Polytope& p);

struct ConeCell {
  std::size_t facet_index = 0;
  Simplex simplex;  // apex at the origin
};

struct ConeDecomposition {
  std::vector<ConeCell> cells;
};

/// Cones from the origin over each facet simplex. Throws OriginNotInterior.
ConeDecomposition cone_decomposition(const Polytope& p);

/// Half-space description of a full-dimensional simplex (its n+1 facets).
std::vector<HalfSpace> simplex_halfspaces(const Simplex& s);

/// Cells of P cut along {f = 0} for every f in `cuts`; lower-dimensional
/// pieces are discarded.
std::vector<Polytope> subdivide_by_hyperplanes(const Polytope& p,
                                               const std::vector<AffineFunction>& cuts);

/// Shift by t: λ_i += <l_i, t>, vertices += t.
Polytope translate(const Polytope& p, const Vec& t);

}  // namespace kstab
