#pragma once

#include <optional>
#include <vector>

#include "kstab/rational.hpp"

namespace kstab {

/// Dense row-major matrix of rationals.
using Matrix = std::vector<Vec>;

// Fraction-free (Bareiss) elimination after scaling each row to integers.
Rational determinant(const Matrix& a);

/// Unique solution of a x = b for square a, or nullopt if a is singular.
std::optional<Vec> solve(const Matrix& a, const Vec& b);

std::size_t rank(const Matrix& a);

/// Basis of {x : a x = 0}; `cols` is needed when `a` has no rows.
std::vector<Vec> kernel(const Matrix& a, std::size_t cols);

/// Affine dimension of a point set (-1 for an empty set).
int affine_dimension(const std::vector<Vec>& points);

/// Leading principal minors, top-left 1x1 first.
std::vector<Rational> leading_minors(const Matrix& a);

}  // namespace kstab
