#pragma once

#include <random>

#include "kstab/pl_function.hpp"

namespace kstab {

/// p/q with |p| <= max_num and 1 <= q <= max_den.
Rational random_rational(std::mt19937_64& rng, long max_num = 6, long max_den = 4);

AffineFunction random_affine(std::size_t n, std::mt19937_64& rng);

/// max of `min_pieces`..`max_pieces` random affine pieces on `domain`.
PLFunction random_convex_pl(const Polytope& domain, std::mt19937_64& rng, int min_pieces = 2, int max_pieces = 4);

}  // namespace kstab
