#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "kstab/pl_function.hpp"
#include "kstab/polynomial.hpp"
#include "kstab/polytope.hpp"

namespace kstab {

/// Highest total degree accepted by the integrators.
inline constexpr unsigned kMaxIntegrandDegree = 4;

/// Default cap on the number of bounding-box cells a lattice scan may visit.
inline constexpr std::uint64_t kDefaultCellBudget = 100'000'000;

/// ∫_S x^α dx over a full-dimensional simplex. Throws DegenerateSimplex.
Rational integrate_monomial_simplex(const Simplex& s, const Exponent& alpha);

/// ∫_S f over a k-simplex whose k-dimensional measure is `measure`, via
/// barycentric coordinates: ∫ Πλ^β = k!·measure·Πβ!/(k+|β|)!.
Rational integrate_simplex(const Simplex& s, const Polynomial& f, const Rational& measure);

Rational integrate_polynomial(const Polytope& p, const Polynomial& f);

/// Σ over facets of ∫_{E_i} f dσ, with dσ = dσ₀/|l_i|.
Rational boundary_integral(const Polytope& p, const Polynomial& f);

/// ∫_P w·u dx with u piecewise linear, integrated cell by cell.
Rational integrate_pl(const PLFunction& u, const Polynomial& weight);
Rational integrate_pl(const PLFunction& u);

/// ∫_{∂P} w·u dσ; facet restrictions inherit the cell structure of u.
Rational boundary_integral(const PLFunction& u, const Polynomial& weight);
Rational boundary_integral(const PLFunction& u);

/// ∫_P φψ dx over the common refinement of both cell structures.
Rational integrate_product(const PLFunction& phi, const PLFunction& psi);

/// All I ∈ Z^n with <l_i, I> <= kλ_i. Throws ScaleOverflow when the integer
/// bounding box of kP has more than `cell_budget` cells.
std::vector<std::vector<long>> lattice_points(const Polytope& p, long k,
                                              std::uint64_t cell_budget = kDefaultCellBudget);

struct LatticeSum {
  long k = 0;
  std::uint64_t count = 0;
  Rational weighted_sum;
};

using LatticeWeight = std::function<Rational(const Vec&)>;

/// Σ_{I ∈ Z^n ∩ kP} w(I/k). Rows of the bounding box are processed in
/// parallel (OpenMP) and combined by exact summation.
LatticeSum lattice_sum(const Polytope& p, long k, const LatticeWeight& w,
                       std::uint64_t cell_budget = kDefaultCellBudget);

/// Single-threaded reference for lattice_sum.
LatticeSum lattice_sum_serial(const Polytope& p, long k, const LatticeWeight& w,
                              std::uint64_t cell_budget = kDefaultCellBudget);

/// Σ_{I ∈ Z^n ∩ kP} φ(I/k).
LatticeSum pl_lattice_sum(const PLFunction& phi, long k,
                          std::uint64_t cell_budget = kDefaultCellBudget);

/// Σφ(I/k) − k^n∫_P φ dx − (k^{n−1}/2)∫_{∂P} φ dσ; O(k^{n−2}) for lattice P.
Rational ehrhart_residual(const PLFunction& phi, long k,
                          std::uint64_t cell_budget = kDefaultCellBudget);

}  // namespace kstab
