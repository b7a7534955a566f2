#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kstab/affine.hpp"
#include "kstab/invariants.hpp"
#include "kstab/polytope.hpp"

namespace kstab {

/// Raw contents of a polytope spec file before geometric validation.
struct PolytopeSpec {
  std::size_t dim = 0;
  std::string name;
  std::vector<HalfSpace> halfspaces;
};

/// Parses the JSON spec format:
///   {"dim": 2, "name": "cp2",
///    "halfspaces": [{"normal": [-1, 0], "bound": "1"}, ...]}
/// Bounds are rational strings ("7/2", "1") or integers. Throws
/// Error{ParseError} naming the offending field.
PolytopeSpec parse_spec_text(std::string_view text);

/// parse_spec_text followed by build_polytope; geometry errors propagate.
Polytope parse_spec(std::string_view text);

std::string emit_spec(const Polytope& p, const std::string& name);

/// A catalog entry together with its family parameters, when it has any.
struct NamedPolytope {
  std::string name;
  Polytope polytope;
  std::optional<HexagonParams> hexagon;
};

/// cp2, cp1xcp1, cp2_1blowup, cp2_2blowup, cp2_3blowup, hexagon(λ,μ).
/// Throws UnknownName or InvalidHexagonParams (needs λ/2 <= μ <= 2λ).
NamedPolytope catalog(const std::string& name);

std::vector<std::string> catalog_names();

/// Parses `max(e1, e2, ...)` or a single `e`, where each e is a sum of
/// rational terms `c` and `c*xi` (or `xi`). Variables are x1..x{dim}.
std::vector<AffineFunction> parse_pl_expression(std::string_view text, std::size_t dim);

}  // namespace kstab
