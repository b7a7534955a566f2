#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "kstab/invariants.hpp"
#include "kstab/pl_function.hpp"

namespace kstab {

struct ScanConfig {
  int direction_count = 360;
  int offset_count = 100;
  int refine_rounds = 2;
};

/// Exact pieces of the ratio L(u) / ∫_{∂P} u dσ for one simple PL candidate.
struct SimpleTerms {
  Rational L;
  Rational boundary;
};

/// One grid point: u = max{0, <direction, x> − offset}.
struct ScanCandidate {
  Vec direction;
  Rational offset;
};

struct ScanResult {
  /// Upper bound on λ* from the sampled simple PL family.
  Rational lambda_star_estimate;
  SimplePL worst_u;
  Rational worst_L;
  Rational worst_boundary;
  bool destabilizer_found = false;
  /// Whether R̄ + θ_X >= 0 on P (hypothesis of the simple-PL reduction).
  bool rbar_theta_nonnegative = false;
  std::size_t candidates_evaluated = 0;
  /// Incumbent value after the coarse grid and after each refine round.
  std::vector<Rational> round_minima;
};

/// L(u) and ∫_{∂P} u dσ for u = max{0, crease} on a polygon, by exact
/// clipping; nullopt when {crease > 0} misses the interior.
std::optional<SimpleTerms> simple_pl_terms(const Polytope& p, const ExtremalData& e,
                                           const AffineFunction& crease);

/// Coarse grid of creases: `direction_count` rational directions around the
/// circle and `offset_count` offsets strictly inside each direction's range.
std::vector<ScanCandidate> scan_grid(const Polytope& p, const ScanConfig& cfg);

/// Scans simple PL functions on a 2D polytope for the smallest ratio
/// L(u) / ∫_{∂P} u dσ, refining around the incumbent. Candidates are
/// evaluated in parallel; the incumbent is re-verified through the general
/// PL integrators. Throws NoInteriorCrease.
ScanResult scan(const Polytope& p, const ExtremalData& e, const ScanConfig& cfg = {});

/// Single-threaded reference for scan().
ScanResult scan_serial(const Polytope& p, const ExtremalData& e, const ScanConfig& cfg = {});

}  // namespace kstab
