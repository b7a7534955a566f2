#pragma once

#include <cstdint>
#include <json.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kstab/invariants.hpp"
#include "kstab/io.hpp"
#include "kstab/scan.hpp"

namespace kstab {

inline constexpr const char* kToolName = "kstab";
inline constexpr const char* kToolVersion = "1.0.0";

using Json = nlohmann::ordered_json;

/// 64-bit FNV-1a, printed as 16 hex digits.
std::string fnv1a_hex(std::string_view data);

/// {"exact": "p/q", "decimal": double}
Json to_json(const Rational& r);
Json to_json(const Vec& v);
Json to_json(const AffineFunction& f);
Json to_json(const ConditionVerdict& v, const Polytope& p);
Json to_json(const DegenerationReport& d);
Json to_json(const ScanResult& s);
Json provenance(std::string_view input);

/// One "key: value" line per leaf, nested keys joined by '.'.
std::string render_table(const Json& doc);

/// Coefficient a1 = a2 stated in the literature for the one- and two-point
/// blowups; nullopt for other names.
std::optional<Rational> published_coefficient(const std::string& name);

/// Checks of a diagonal coefficient α, with θ = α Σ (x_i + c_i).
struct CoefficientCheck {
  Rational coefficient;
  Rational theta_min;
  Rational theta_max;
  bool within_bounds = false;  // −2 < θ < 1 on P
  ConditionVerdict c02;
  bool identity_holds = false;  // ∫_{∂P} θ dσ = ∫_P θ² dx
  Rational equation_residual;   // max_j |(M a − b)_j|
};

struct PublishedAudit {
  std::string polytope;
  CoefficientCheck computed;
  CoefficientCheck published;
  bool agree = false;
};

CoefficientCheck check_coefficient(const Polytope& p, const ExtremalData& e, const Rational& alpha);

/// Throws UnknownName if no published value exists for `np`.
PublishedAudit audit_published(const NamedPolytope& np);

Json to_json(const PublishedAudit& a, const Polytope& p);

struct DegenerationEntry {
  std::string expression;
  DegenerationReport report;
};

struct StabilityReport {
  std::string name;
  std::string input;
  Polytope polytope;
  std::optional<HexagonParams> hexagon;
  Rational volume;
  Rational boundary_volume;
  Vec futaki;
  ExtremalData extremal;
  std::vector<ConditionVerdict> verdicts;
  std::vector<std::string> skipped;
  std::vector<DegenerationEntry> degenerations;
  std::optional<ScanResult> scan;
  std::optional<PublishedAudit> audit;

  /// All verdicts hold, no degeneration has L < 0 and no destabilizer.
  bool all_hold() const;
};

/// Invariants plus the applicable sufficient conditions. c02 and c43 are
/// always checked, c02prime when every λ_i = 1, c02doubleprime and c04 when
/// the Futaki vector vanishes, c61 for catalog hexagons. Conditions that need
/// the origin inside P are listed in `skipped` when it is not.
StabilityReport build_report(const NamedPolytope& np, std::string input);

Json to_json(const StabilityReport& r);

}  // namespace kstab
