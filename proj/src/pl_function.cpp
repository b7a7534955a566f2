#include "kstab/pl_function.hpp"

#include <algorithm>

#include "kstab/error.hpp"

namespace kstab {

Rational PLFunction::value(const Vec& x) const {
  Rational best = pieces_[0](x);
  for (std::size_t i = 1; i < pieces_.size(); ++i) best = std::max(best, pieces_[i](x));
  return best;
}

PLFunction make_pl(std::vector<AffineFunction> pieces, const Polytope& domain) {
  if (pieces.empty()) throw Error(ErrorKind::EmptyPieceList, "a PL function needs at least one piece");
  for (const auto& f : pieces) {
    if (f.gradient.size() != domain.dim()) throw Error(ErrorKind::InvalidArgument, "piece dimension does not match domain");
  }

  std::vector<AffineFunction> unique;
  for (auto& f : pieces) {
    if (std::find(unique.begin(), unique.end(), f) == unique.end()) unique.push_back(std::move(f));
  }

  PLFunction u;
  u.domain_ = domain;
  for (std::size_t i = 0; i < unique.size(); ++i) {
    std::vector<HalfSpace> sides;
    bool dominated = false;
    for (std::size_t j = 0; j < unique.size() && !dominated; ++j) {
      if (j == i) continue;
      const AffineFunction diff = unique[j] - unique[i];  // region: diff <= 0
      if (diff.is_constant()) {
        dominated = diff.constant.sign() > 0;
        continue;
      }
      sides.push_back(HalfSpace::below(diff));
    }
    if (dominated) continue;
    auto region = intersect(domain, sides);
    if (!region) continue;
    u.cells_.push_back({std::move(*region), u.pieces_.size()});
    u.pieces_.push_back(unique[i]);
  }
  return u;
}

Rational evaluate(const PLFunction& u, const Vec& x) {
  if (x.size() != u.domain().dim() || !u.domain().contains(x)) {
    throw Error(ErrorKind::OutsideDomain, "point " + to_string(x) + " is outside the domain");
  }
  return u.value(x);
}

PLFunction normalize_at(const PLFunction& u, const Vec& p) {
  if (p.size() != u.domain().dim() || !u.domain().contains_in_interior(p)) {
    throw Error(ErrorKind::PointNotInterior, "normalization point " + to_string(p) + " is not interior");
  }
  const Rational up = u.value(p);
  Vec s(p.size());
  long active = 0;
  for (const auto& f : u.pieces()) {
    if (f(p) == up) {
      s = s + f.gradient;
      ++active;
    }
  }
  s = Rational(1, active) * s;
  const AffineFunction support{s, up - dot(s, p)};
  std::vector<AffineFunction> shifted;
  for (const auto& f : u.pieces()) shifted.push_back(f - support);
  return make_pl(std::move(shifted), u.domain());
}

bool is_affine(const PLFunction& u) { return u.cells().size() == 1; }

bool is_rational(const PLFunction&) { return true; }

PLFunction SimplePL::to_pl(const Polytope& domain) const {
  return make_pl({AffineFunction{Vec(domain.dim()), Rational(0)}, crease}, domain);
}

std::vector<BoundaryPiece> boundary_pieces(const PLFunction& u) {
  const auto& dom = u.domain();
  std::vector<BoundaryPiece> out;
  for (const auto& cell : u.cells()) {
    const auto& region = cell.region;
    for (const auto& f : region.facets()) {
      const auto& h = region.halfspaces()[f.halfspace_index];
      const auto& dhs = dom.halfspaces();
      const auto it = std::find(dhs.begin(), dhs.end(), h);
      if (it == dhs.end()) continue;
      BoundaryPiece bp;
      bp.domain_facet = static_cast<std::size_t>(it - dhs.begin());
      bp.piece = cell.piece;
      for (const auto& s : f.simplices) bp.simplices.push_back(region.simplex(s));
      out.push_back(std::move(bp));
    }
  }
  return out;
}

}  // namespace kstab
