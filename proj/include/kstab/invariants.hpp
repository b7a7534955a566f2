#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kstab/affine.hpp"
#include "kstab/linalg.hpp"
#include "kstab/pl_function.hpp"
#include "kstab/polytope.hpp"

namespace kstab {

/// Centering constants, extremal coefficients and the affine potential
/// θ_X = Σ a_i (x_i + c_i) of the extremal field, with its range on P.
struct ExtremalData {
  Vec c;
  Vec a;
  AffineFunction theta;
  Rational theta_min;
  Rational theta_max;
  Rational norm;  // max(|theta_min|, |theta_max|)
  Rational rbar;  // average scalar curvature of the class
};

struct DegenerationReport {
  Rational L_value;
  Rational rel_futaki;
  Rational gen_futaki_alpha;
  Rational ip_ab;
  Rational ip_bb;
  bool trivial = false;
};

enum class Condition { c02, c02prime, c02doubleprime, c43, c04, c61 };

const char* to_string(Condition c);
Condition condition_from_string(const std::string& name);

enum class WitnessKind { none, facet, vertex };

struct ConditionVerdict {
  Condition name = Condition::c02;
  bool holds = false;
  Rational margin;
  WitnessKind witness_kind = WitnessKind::none;
  std::size_t witness = 0;
};

/// Parameters (λ, μ) of the three-blowup hexagon family.
struct HexagonParams {
  Rational lambda;
  Rational mu;
};

/// x1 <= λ, −x2 <= μ, −x1−x2 <= λ, −x1 <= μ, x2 <= λ, x1+x2 <= μ.
std::vector<HalfSpace> hexagon_halfspaces(const HexagonParams& h);

/// Vol_dσ(∂P) / Vol(P).
Rational average_scalar_curvature(const Polytope& p);

/// c_i = −∫ x_i dx / Vol(P), so that ∫ (x_i + c_i) dx = 0.
Vec centering_constants(const Polytope& p);

/// b_j = ∫_{∂P}(x_j + c_j) dσ − R̄ ∫_P (x_j + c_j) dx.
Vec futaki_vector(const Polytope& p);

/// M_jk = ∫_P (x_j + c_j)(x_k + c_k) dx.
Matrix moment_matrix(const Polytope& p, const Vec& c);

/// Solves M a = b exactly (the equations L(x_i + c_i) = 0).
ExtremalData extremal_field(const Polytope& p);

/// max over vertices of |θ_X|.
Rational theta_norm(const ExtremalData& e, const Polytope& p);

/// ∫_{∂P} u dσ − ∫_P (R̄ + θ_X) u dx.
Rational linear_functional_L(const PLFunction& u, const ExtremalData& e);

/// Σ_i ∫_{P_i} [<x, ∇u>/λ_i + (n/λ_i − R̄ − θ_X) u] dx over the cones P_i
/// from the origin. Throws OriginNotInterior.
Rational linear_functional_L_cone(const PLFunction& u, const ExtremalData& e);

/// Σ_i ∫_{P_i} ((n+1)/λ_i − R̄ − θ_X) u dx; a lower bound for L(u) when u is
/// normalized at the origin.
Rational cone_lower_bound(const PLFunction& u, const ExtremalData& e);

DegenerationReport relative_futaki(const PLFunction& u, const ExtremalData& e);

/// Lattice analog of the inner product: with A_k = diag k(R − u(I/k)) and
/// B_k = diag k θ_X(I/k) over I ∈ Z^n ∩ kP and R = max u + 1,
/// (Tr(A_k B_k) − Tr(A_k) Tr(B_k)/d_k) / k^{n+2}. Tends to −∫ θ_X u dx.
struct EhrhartBridge {
  long k = 0;
  std::uint64_t points = 0;
  Rational value;
};

EhrhartBridge ehrhart_bridge(const PLFunction& u, const ExtremalData& e, long k);

/// Cone volumes ∫_{P_j} dx, one per facet. Throws OriginNotInterior.
std::vector<Rational> cone_volumes(const Polytope& p);

ConditionVerdict check_condition(const Polytope& p, const ExtremalData& e, Condition which,
                                 const std::optional<HexagonParams>& hexagon = std::nullopt);

/// 2/5 − max((μ/λ − 1)₊², (λ/μ − 1)₊²); nonnegative exactly when
/// λ/(1+√10/5) ≤ μ ≤ (1+√10/5)λ.
Rational hexagon_condition_margin(const HexagonParams& h);

}  // namespace kstab
