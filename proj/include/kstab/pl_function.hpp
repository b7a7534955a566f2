#pragma once

#include <vector>

#include "kstab/affine.hpp"
#include "kstab/polytope.hpp"

namespace kstab {

/// Region of the domain where one piece attains the maximum.
struct PLCell {
  Polytope region;
  std::size_t piece = 0;
};

/// Convex piecewise-linear function max_λ u^λ on a polytope.
///
/// Construction deduplicates pieces and drops every piece that is not the
/// maximizer on a full-dimensional region, so the cells tile the domain and
/// `pieces()` contains only active pieces.
class PLFunction {
 public:
  const std::vector<AffineFunction>& pieces() const { return pieces_; }
  const Polytope& domain() const { return domain_; }
  const std::vector<PLCell>& cells() const { return cells_; }

  /// Max over pieces; no domain check (see evaluate()).
  Rational value(const Vec& x) const;

 private:
  friend PLFunction make_pl(std::vector<AffineFunction>, const Polytope&);

  std::vector<AffineFunction> pieces_;
  Polytope domain_;
  std::vector<PLCell> cells_;
};

/// Throws EmptyPieceList.
PLFunction make_pl(std::vector<AffineFunction> pieces, const Polytope& domain);

/// Throws OutsideDomain if x is not in the closed domain.
Rational evaluate(const PLFunction& u, const Vec& x);

/// u - (<s, x - p> + u(p)) where s averages the gradients of the pieces active
/// at p. The result is >= 0 on the domain and vanishes at p.
/// Throws PointNotInterior.
PLFunction normalize_at(const PLFunction& u, const Vec& p);

bool is_affine(const PLFunction& u);

/// Always true: every constructible PLFunction has rational data.
bool is_rational(const PLFunction& u);

/// max{0, crease}.
struct SimplePL {
  AffineFunction crease;

  PLFunction to_pl(const Polytope& domain) const;
};

/// Restriction of a PL function to the facets of its domain: one entry per
/// (cell, boundary facet) pair, sharing the facet's dσ scale.
struct BoundaryPiece {
  std::size_t domain_facet = 0;
  std::size_t piece = 0;
  std::vector<Simplex> simplices;  // (n-1)-simplices on the facet
};

std::vector<BoundaryPiece> boundary_pieces(const PLFunction& u);

}  // namespace kstab
