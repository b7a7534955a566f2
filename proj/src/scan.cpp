#include "kstab/scan.hpp"

#include <cmath>
#include <numbers>

#include "kstab/error.hpp"
#include "kstab/integration.hpp"

namespace kstab {

namespace {

constexpr long kTangentDenominator = 10'000;
constexpr long kOffsetDenominator = 1'000'000;
constexpr int kRefineHalfWidth = 10;

struct Vertex2 {
  Vec x;
  long facet;  // facet carrying the edge that starts here, -1 on the crease
};

// Rational direction at angle phi: ±(1 − t², 2t) with t = tan(ψ/2), |t| <= 1.
Vec rational_direction(double phi) {
  const double pi = std::numbers::pi;
  phi = std::fmod(phi, 2 * pi);
  if (phi < 0) phi += 2 * pi;
  long sign = 1;
  if (phi > pi / 2 && phi <= 3 * pi / 2) {
    phi -= pi;
    sign = -1;
  } else if (phi > 3 * pi / 2) {
    phi -= 2 * pi;
  }
  const Rational t = snap(std::tan(phi / 2), kTangentDenominator);
  return {Rational(sign) * (Rational(1) - t * t), Rational(sign) * Rational(2) * t};
}

void direction_range(const Polytope& p, const Vec& d, Rational* lo, Rational* hi) {
  *lo = dot(d, p.vertices()[0]);
  *hi = *lo;
  for (const auto& v : p.vertices()) {
    const Rational s = dot(d, v);
    if (s < *lo) *lo = s;
    if (s > *hi) *hi = s;
  }
}

ScanCandidate candidate_at(const Polytope& p, double phi, const Rational& fraction) {
  ScanCandidate c;
  c.direction = rational_direction(phi);
  Rational lo, hi;
  direction_range(p, c.direction, &lo, &hi);
  c.offset = lo + (hi - lo) * fraction;
  return c;
}

AffineFunction crease_of(const ScanCandidate& c) { return {c.direction, -c.offset}; }

struct GridPoint {
  double phi;
  Rational fraction;
};

std::vector<GridPoint> coarse_grid(const ScanConfig& cfg) {
  const double two_pi = 2 * std::numbers::pi;
  std::vector<GridPoint> grid;
  for (int j = 0; j < cfg.direction_count; ++j) {
    for (int m = 0; m < cfg.offset_count; ++m) {
      grid.push_back({two_pi * j / cfg.direction_count, Rational(2 * m + 1, 2L * cfg.offset_count)});
    }
  }
  return grid;
}

using Evaluated = std::vector<std::optional<SimpleTerms>>;

Evaluated evaluate_serial(const Polytope& p, const ExtremalData& e, const std::vector<ScanCandidate>& cands) {
  Evaluated out(cands.size());
  for (std::size_t i = 0; i < cands.size(); ++i) out[i] = simple_pl_terms(p, e, crease_of(cands[i]));
  return out;
}

Evaluated evaluate_parallel(const Polytope& p, const ExtremalData& e, const std::vector<ScanCandidate>& cands) {
  Evaluated out(cands.size());
  const auto count = static_cast<long long>(cands.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (long long i = 0; i < count; ++i) {
    out[static_cast<std::size_t>(i)] = simple_pl_terms(p, e, crease_of(cands[static_cast<std::size_t>(i)]));
  }
  return out;
}

template <typename Evaluate>
ScanResult run_scan(const Polytope& p, const ExtremalData& e, const ScanConfig& cfg, Evaluate&& evaluate) {
  if (p.dim() != 2) throw Error(ErrorKind::InvalidArgument, "scan supports 2-dimensional polytopes only");
  if (cfg.direction_count < 1 || cfg.offset_count < 1 || cfg.refine_rounds < 0) {
    throw Error(ErrorKind::InvalidArgument, "scan grid counts must be >= 1");
  }
  ScanResult result;
  result.rbar_theta_nonnegative = true;
  for (const auto& v : p.vertices()) {
    if ((e.rbar + e.theta(v)).sign() < 0) result.rbar_theta_nonnegative = false;
  }

  const double two_pi = 2 * std::numbers::pi;
  std::vector<GridPoint> grid = coarse_grid(cfg);

  std::optional<GridPoint> best_point;
  std::optional<SimpleTerms> best;
  ScanCandidate best_candidate;
  auto better = [](const SimpleTerms& a, const SimpleTerms& b) {
    // a.L / a.boundary < b.L / b.boundary with positive denominators.
    return a.L * b.boundary < b.L * a.boundary;
  };

  double angle_step = two_pi / cfg.direction_count;
  double offset_step = 1.0 / cfg.offset_count;
  for (int round = 0; round <= cfg.refine_rounds; ++round) {
    if (round > 0) {
      if (!best_point) break;
      angle_step /= 10;
      offset_step /= 10;
      grid.clear();
      const double f0 = best_point->fraction.to_double();
      for (int i = -kRefineHalfWidth; i <= kRefineHalfWidth; ++i) {
        for (int k = -kRefineHalfWidth; k <= kRefineHalfWidth; ++k) {
          const Rational f = snap(f0 + k * offset_step, kOffsetDenominator);
          if (f.sign() <= 0 || f >= Rational(1)) continue;
          grid.push_back({best_point->phi + i * angle_step, f});
        }
      }
    }
    std::vector<ScanCandidate> cands;
    cands.reserve(grid.size());
    for (const auto& g : grid) cands.push_back(candidate_at(p, g.phi, g.fraction));
    const Evaluated values = evaluate(p, e, cands);
    result.candidates_evaluated += cands.size();
    // Sequential reduction keeps ties on the earliest grid index.
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (!values[i]) continue;
      if (!best || better(*values[i], *best)) {
        best = values[i];
        best_point = grid[i];
        best_candidate = cands[i];
      }
    }
    if (best) result.round_minima.push_back(best->L / best->boundary);
  }
  if (!best) throw Error(ErrorKind::NoInteriorCrease, "no scanned crease meets the interior; widen the offsets");

  // Re-verify the incumbent through the general PL machinery.
  result.worst_u = SimplePL{crease_of(best_candidate)};
  const PLFunction u = result.worst_u.to_pl(p);
  result.worst_L = linear_functional_L(u, e);
  result.worst_boundary = boundary_integral(u);
  if (result.worst_L != best->L || result.worst_boundary != best->boundary) {
    throw std::logic_error("scan: fast kernel disagrees with exact re-verification");
  }
  result.lambda_star_estimate = result.worst_L / result.worst_boundary;
  result.destabilizer_found = result.worst_L.sign() < 0;
  return result;
}

}  // namespace

std::optional<SimpleTerms> simple_pl_terms(const Polytope& p, const ExtremalData& e, const AffineFunction& crease) {
  const auto& verts = p.vertices();
  const auto& hs = p.halfspaces();
  const std::size_t nv = verts.size();

  std::vector<Vertex2> poly;
  poly.reserve(nv);
  for (std::size_t i = 0; i < nv; ++i) {
    const Vec& a = verts[i];
    const Vec& b = verts[(i + 1) % nv];
    long facet = -1;
    for (std::size_t h = 0; h < hs.size(); ++h) {
      if (hs[h].slack(a).is_zero() && hs[h].slack(b).is_zero()) {
        facet = static_cast<long>(h);
        break;
      }
    }
    poly.push_back({a, facet});
  }

  // Sutherland–Hodgman clip against crease >= 0, tracking edge provenance.
  std::vector<Vertex2> clipped;
  bool any_positive = false;
  for (std::size_t i = 0; i < nv; ++i) {
    const Vertex2& a = poly[i];
    const Vertex2& b = poly[(i + 1) % nv];
    const Rational ga = crease(a.x);
    const Rational gb = crease(b.x);
    if (ga.sign() > 0) any_positive = true;
    if (ga.sign() >= 0) {
      if (gb.sign() >= 0) {
        clipped.push_back(a);
      } else {
        clipped.push_back(a);
        const Rational t = ga / (ga - gb);
        clipped.push_back({a.x + t * (b.x - a.x), -1});
      }
    } else if (gb.sign() > 0) {
      const Rational t = ga / (ga - gb);
      clipped.push_back({a.x + t * (b.x - a.x), a.facet});
    }
  }
  if (!any_positive || clipped.size() < 3) return std::nullopt;

  SimpleTerms out;
  const std::size_t nc = clipped.size();
  for (std::size_t i = 0; i < nc; ++i) {
    const Vertex2& a = clipped[i];
    if (a.facet < 0) continue;
    const Vec& b = clipped[(i + 1) % nc].x;
    const Vec& l = hs[static_cast<std::size_t>(a.facet)].normal;
    // dσ-length: drop a coordinate with nonzero normal entry, divide by it.
    const std::size_t k = l[1].is_zero() ? 0 : 1;
    const Rational len = abs(b[1 - k] - a.x[1 - k]) / abs(l[k]);
    out.boundary += len * (crease(a.x) + crease(b)) / Rational(2);
  }
  if (out.boundary.sign() <= 0) return std::nullopt;

  // ∫ (R̄ + θ) g over the clipped polygon by a fan of triangles:
  // ∫_T f h = A/12 (Σ f_i h_i + Σ f_i Σ h_i).
  Rational volume_term;
  const Vec& o = clipped[0].x;
  const Rational wo = e.rbar + e.theta(o), go = crease(o);
  for (std::size_t i = 1; i + 1 < nc; ++i) {
    const Vec& b = clipped[i].x;
    const Vec& c = clipped[i + 1].x;
    const Vec db = b - o, dc = c - o;
    const Rational area = abs(db[0] * dc[1] - db[1] * dc[0]) / Rational(2);
    if (area.is_zero()) continue;
    const Rational wb = e.rbar + e.theta(b), wc = e.rbar + e.theta(c);
    const Rational gb = crease(b), gc = crease(c);
    volume_term += area / Rational(12) * (wo * go + wb * gb + wc * gc + (wo + wb + wc) * (go + gb + gc));
  }
  out.L = out.boundary - volume_term;
  return out;
}

std::vector<ScanCandidate> scan_grid(const Polytope& p, const ScanConfig& cfg) {
  std::vector<ScanCandidate> out;
  for (const auto& g : coarse_grid(cfg)) out.push_back(candidate_at(p, g.phi, g.fraction));
  return out;
}

ScanResult scan(const Polytope& p, const ExtremalData& e, const ScanConfig& cfg) {
  return run_scan(p, e, cfg, evaluate_parallel);
}

ScanResult scan_serial(const Polytope& p, const ExtremalData& e, const ScanConfig& cfg) {
  return run_scan(p, e, cfg, evaluate_serial);
}

}  // namespace kstab
