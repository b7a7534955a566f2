#include "kstab/invariants.hpp"

#include <algorithm>
#include <set>

#include "kstab/error.hpp"
#include "kstab/integration.hpp"
#include "kstab/polynomial.hpp"

namespace kstab {

namespace {

Polynomial centered_coordinate(std::size_t n, std::size_t i, const Rational& ci) {
  return Polynomial::variable(n, i) + Polynomial::constant(n, ci);
}

void require_origin_interior(const Polytope& p, const char* what) {
  if (!p.origin_interior()) throw Error(ErrorKind::OriginNotInterior, std::string(what) + " needs 0 in the interior of P");
}

// Integrand of the cone form of L on the cone over facet i for one affine piece.
Polynomial cone_integrand(const AffineFunction& piece, const ExtremalData& e, const Rational& lambda_i,
                          const Rational& volume_coeff) {
  const std::size_t n = piece.gradient.size();
  const Polynomial u = Polynomial::from_affine(piece);
  const Polynomial x_dot_grad = Polynomial::from_affine({piece.gradient, Rational(0)});
  const Polynomial weight = Polynomial::constant(n, volume_coeff / lambda_i - e.rbar) - Polynomial::from_affine(e.theta);
  return (Rational(1) / lambda_i) * x_dot_grad + weight * u;
}

}  // namespace

const char* to_string(Condition c) {
  switch (c) {
    case Condition::c02: return "c02";
    case Condition::c02prime: return "c02prime";
    case Condition::c02doubleprime: return "c02doubleprime";
    case Condition::c43: return "c43";
    case Condition::c04: return "c04";
    case Condition::c61: return "c61";
  }
  return "?";
}

Condition condition_from_string(const std::string& name) {
  for (auto c : {Condition::c02, Condition::c02prime, Condition::c02doubleprime, Condition::c43, Condition::c04,
                 Condition::c61}) {
    if (name == to_string(c)) return c;
  }
  throw Error(ErrorKind::UnknownName, "unknown condition '" + name + "'");
}

std::vector<HalfSpace> hexagon_halfspaces(const HexagonParams& h) {
  return {
      HalfSpace::make({1, 0}, h.lambda),  HalfSpace::make({0, -1}, h.mu),    HalfSpace::make({-1, -1}, h.lambda),
      HalfSpace::make({-1, 0}, h.mu),     HalfSpace::make({0, 1}, h.lambda), HalfSpace::make({1, 1}, h.mu),
  };
}

Rational average_scalar_curvature(const Polytope& p) {
  const std::size_t n = p.dim();
  const Polynomial one = Polynomial::constant(n, Rational(1));
  return boundary_integral(p, one) / integrate_polynomial(p, one);
}

Vec centering_constants(const Polytope& p) {
  const std::size_t n = p.dim();
  const Rational vol = integrate_polynomial(p, Polynomial::constant(n, Rational(1)));
  Vec c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = -integrate_polynomial(p, Polynomial::variable(n, i)) / vol;
  return c;
}

Vec futaki_vector(const Polytope& p) {
  const std::size_t n = p.dim();
  const Vec c = centering_constants(p);
  const Rational rbar = average_scalar_curvature(p);
  Vec b(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Polynomial f = centered_coordinate(n, j, c[j]);
    b[j] = boundary_integral(p, f) - rbar * integrate_polynomial(p, f);
  }
  return b;
}

Matrix moment_matrix(const Polytope& p, const Vec& c) {
  const std::size_t n = p.dim();
  Matrix m(n, Vec(n));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j; k < n; ++k) {
      m[j][k] = integrate_polynomial(p, centered_coordinate(n, j, c[j]) * centered_coordinate(n, k, c[k]));
      m[k][j] = m[j][k];
    }
  }
  return m;
}

ExtremalData extremal_field(const Polytope& p) {
  ExtremalData e;
  e.c = centering_constants(p);
  e.rbar = average_scalar_curvature(p);
  const Vec b = futaki_vector(p);
  auto a = solve(moment_matrix(p, e.c), b);
  if (!a) throw Error(ErrorKind::SingularMoment, "moment matrix is singular");
  e.a = std::move(*a);
  e.theta.gradient = e.a;
  e.theta.constant = dot(e.a, e.c);
  e.theta_min = e.theta(p.vertices()[0]);
  e.theta_max = e.theta_min;
  for (const auto& v : p.vertices()) {
    const Rational t = e.theta(v);
    e.theta_min = std::min(e.theta_min, t);
    e.theta_max = std::max(e.theta_max, t);
  }
  e.norm = std::max(abs(e.theta_min), abs(e.theta_max));
  return e;
}

Rational theta_norm(const ExtremalData& e, const Polytope& p) {
  Rational best;
  for (const auto& v : p.vertices()) best = std::max(best, abs(e.theta(v)));
  return best;
}

Rational linear_functional_L(const PLFunction& u, const ExtremalData& e) {
  const std::size_t n = u.domain().dim();
  const Polynomial weight = Polynomial::constant(n, e.rbar) + Polynomial::from_affine(e.theta);
  return boundary_integral(u) - integrate_pl(u, weight);
}

namespace {

// Σ over cones P_i and u-cells of ∫ integrand(piece, λ_i).
template <typename Integrand>
Rational integrate_over_cones(const PLFunction& u, Integrand&& integrand) {
  const Polytope& p = u.domain();
  const ConeDecomposition cones = cone_decomposition(p);
  Rational total;
  for (const auto& cone : cones.cells) {
    const Rational& lambda = p.halfspaces()[cone.facet_index].bound;
    const auto sides = simplex_halfspaces(cone.simplex);
    if (u.cells().size() == 1) {
      total += integrate_simplex(cone.simplex, integrand(u.pieces()[u.cells()[0].piece], lambda), volume(cone.simplex));
      continue;
    }
    for (const auto& cell : u.cells()) {
      auto piece = intersect(cell.region, sides);
      if (!piece) continue;
      total += integrate_polynomial(*piece, integrand(u.pieces()[cell.piece], lambda));
    }
  }
  return total;
}

}  // namespace

Rational linear_functional_L_cone(const PLFunction& u, const ExtremalData& e) {
  require_origin_interior(u.domain(), "cone form of L");
  const Rational n(static_cast<long>(u.domain().dim()));
  return integrate_over_cones(u, [&](const AffineFunction& piece, const Rational& lambda) {
    return cone_integrand(piece, e, lambda, n);
  });
}

Rational cone_lower_bound(const PLFunction& u, const ExtremalData& e) {
  require_origin_interior(u.domain(), "cone lower bound");
  const std::size_t dim = u.domain().dim();
  const Rational n1(static_cast<long>(dim + 1));
  return integrate_over_cones(u, [&](const AffineFunction& piece, const Rational& lambda) {
    const Polynomial weight =
        Polynomial::constant(dim, n1 / lambda - e.rbar) - Polynomial::from_affine(e.theta);
    return weight * Polynomial::from_affine(piece);
  });
}

DegenerationReport relative_futaki(const PLFunction& u, const ExtremalData& e) {
  const Polytope& p = u.domain();
  const Rational two_vol = Rational(2) * p.volume();
  const Polynomial theta = Polynomial::from_affine(e.theta);
  DegenerationReport r;
  r.L_value = linear_functional_L(u, e);
  r.rel_futaki = -r.L_value / two_vol;
  r.gen_futaki_alpha = -(boundary_integral(u) - e.rbar * integrate_pl(u)) / two_vol;
  r.ip_ab = -integrate_pl(u, theta);
  r.ip_bb = -integrate_polynomial(p, theta * theta);
  r.trivial = is_affine(u);
  return r;
}

EhrhartBridge ehrhart_bridge(const PLFunction& u, const ExtremalData& e, long k) {
  const Polytope& p = u.domain();
  Rational roof = u.value(p.vertices()[0]);
  for (const auto& v : p.vertices()) roof = std::max(roof, u.value(v));
  roof += Rational(1);
  const Rational kk(k);
  const auto a = [&](const Vec& x) { return kk * (roof - u.value(x)); };
  const auto b = [&](const Vec& x) { return kk * e.theta(x); };
  const LatticeSum ab = lattice_sum(p, k, [&](const Vec& x) { return a(x) * b(x); });
  const LatticeSum ta = lattice_sum(p, k, a);
  const LatticeSum tb = lattice_sum(p, k, b);
  EhrhartBridge r;
  r.k = k;
  r.points = ab.count;
  const Rational d(static_cast<long>(ab.count));
  r.value = (ab.weighted_sum - ta.weighted_sum * tb.weighted_sum / d) /
            pow(kk, static_cast<unsigned>(p.dim() + 2));
  return r;
}

std::vector<Rational> cone_volumes(const Polytope& p) {
  const ConeDecomposition cones = cone_decomposition(p);
  std::vector<Rational> vol(p.halfspaces().size());
  for (const auto& cell : cones.cells) vol[cell.facet_index] += volume(cell.simplex);
  return vol;
}

Rational hexagon_condition_margin(const HexagonParams& h) {
  if (h.lambda.sign() <= 0 || h.mu.sign() <= 0) {
    throw Error(ErrorKind::InvalidHexagonParams, "hexagon parameters must be positive");
  }
  const Rational r = h.mu / h.lambda;
  auto excess = [](const Rational& t) {
    const Rational d = t - Rational(1);
    return d.sign() > 0 ? d * d : Rational(0);
  };
  return Rational(2, 5) - std::max(excess(r), excess(Rational(1) / r));
}

ConditionVerdict check_condition(const Polytope& p, const ExtremalData& e, Condition which,
                                 const std::optional<HexagonParams>& hexagon) {
  ConditionVerdict v;
  v.name = which;
  const Rational n1(static_cast<long>(p.dim() + 1));
  const auto& hs = p.halfspaces();

  // min over facets of rhs_i − lhs, with rhs_i = (n+1)/λ_i.
  auto facet_margin = [&](const Rational& lhs) {
    for (std::size_t i = 0; i < hs.size(); ++i) {
      const Rational m = n1 / hs[i].bound - lhs;
      if (i == 0 || m < v.margin) {
        v.margin = m;
        v.witness_kind = WitnessKind::facet;
        v.witness = i;
      }
    }
  };

  switch (which) {
    case Condition::c02:
      require_origin_interior(p, "condition c02");
      facet_margin(e.rbar + e.norm);
      break;
    case Condition::c02prime:
      v.margin = n1 - (e.rbar + e.norm);
      break;
    case Condition::c02doubleprime:
      require_origin_interior(p, "condition c02doubleprime");
      facet_margin(e.rbar);
      break;
    case Condition::c43: {
      require_origin_interior(p, "condition c43");
      // R̄ + θ_X is affine, so its maximum over P is attained at a vertex.
      std::size_t arg = 0;
      for (std::size_t k = 1; k < p.vertices().size(); ++k) {
        if (e.theta(p.vertices()[k]) > e.theta(p.vertices()[arg])) arg = k;
      }
      facet_margin(e.rbar + e.theta(p.vertices()[arg]));
      break;
    }
    case Condition::c04: {
      require_origin_interior(p, "condition c04");
      const auto vol = cone_volumes(p);
      Rational total, weighted;
      for (std::size_t j = 0; j < hs.size(); ++j) {
        total += vol[j];
        weighted += vol[j] / hs[j].bound;
      }
      std::size_t arg = 0;
      for (std::size_t i = 1; i < hs.size(); ++i) {
        if (hs[i].bound > hs[arg].bound) arg = i;
      }
      const Rational value = hs[arg].bound / total * weighted;
      v.margin = n1 / Rational(static_cast<long>(p.dim())) - value;
      v.witness_kind = WitnessKind::facet;
      v.witness = arg;
      break;
    }
    case Condition::c61: {
      if (!hexagon) throw Error(ErrorKind::WrongFamily, "c61 needs hexagon parameters (λ, μ)");
      const auto expected = hexagon_halfspaces(*hexagon);
      std::set<std::pair<Vec, Rational>> a, b;
      for (const auto& h : hs) a.insert({h.normal, h.bound});
      for (const auto& h : p.redundant()) a.insert({h.normal, h.bound});
      for (const auto& h : expected) b.insert({h.normal, h.bound});
      if (a != b) throw Error(ErrorKind::WrongFamily, "polytope is not hexagon(λ, μ)");
      v.margin = hexagon_condition_margin(*hexagon);
      break;
    }
  }
  v.holds = v.margin.sign() >= 0;
  return v;
}

}  // namespace kstab
