#include <doctest.h>

#include <string>

#include "kstab/error.hpp"
#include "kstab/invariants.hpp"
#include "kstab/io.hpp"
#include "oracles.hpp"

using namespace kstab;
using oracle::pt;
using oracle::R;

namespace {

ErrorKind kind_of(const auto& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no kstab::Error thrown");
  return ErrorKind::InvalidArgument;
}

bool message_contains(const auto& f, const std::string& needle) {
  try {
    f();
  } catch (const Error& e) {
    return std::string(e.what()).find(needle) != std::string::npos;
  }
  return false;
}

}  // namespace

TEST_CASE("parse_spec") {
  const auto p = parse_spec(R"({"dim": 2, "name": "cp2", "halfspaces": [
      {"normal": [-1, 0], "bound": "1"}, {"normal": [0, -1], "bound": 1},
      {"normal": [1, 1], "bound": "1"}]})");
  CHECK(p.vertices().size() == 3);
  CHECK(p.volume() == R(9, 2));
  CHECK(p == catalog("cp2").polytope);

  const auto s = parse_spec_text(R"({"dim": 2, "halfspaces": [{"normal": [1, 0], "bound": "7/2"}]})");
  CHECK(s.halfspaces[0].bound == R(7, 2));
  CHECK(s.name.empty());
}

TEST_CASE("parse_spec errors") {
  const auto bad_normal = [] { parse_spec_text(R"({"dim": 2, "halfspaces": [{"normal": [1], "bound": "1"}]})"); };
  CHECK(kind_of(bad_normal) == ErrorKind::ParseError);
  CHECK(message_contains(bad_normal, "halfspaces[0].normal"));

  CHECK(kind_of([] { parse_spec_text("{\"dim\": 2,"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_spec_text(R"({"halfspaces": []})"); }) == ErrorKind::ParseError);
  const auto bad_bound = [] {
    parse_spec_text(R"({"dim": 2, "halfspaces": [{"normal": [1, 0], "bound": "x/2"}]})");
  };
  CHECK(kind_of(bad_bound) == ErrorKind::ParseError);
  CHECK(message_contains(bad_bound, "halfspaces[0].bound"));

  // Geometry errors surface unchanged.
  CHECK(kind_of([] { parse_spec(R"({"dim": 2, "halfspaces": [{"normal": [1, 0], "bound": "1"}]})"); }) ==
        ErrorKind::Unbounded);
  CHECK(kind_of([] { parse_spec(R"({"dim": 2, "halfspaces": [{"normal": [2, 0], "bound": "1"}]})"); }) ==
        ErrorKind::NonPrimitiveNormal);
}

TEST_CASE("emit_spec round-trips every catalog polytope") {
  for (const auto& name : catalog_names()) {
    if (name.find('(') != std::string::npos) continue;
    const auto p = catalog(name).polytope;
    const std::string text = emit_spec(p, name);
    CHECK(parse_spec(text) == p);
    CHECK(parse_spec_text(text).name == name);
    CHECK(emit_spec(parse_spec(text), name) == text);
  }
  const auto h = catalog("hexagon(3/2,2)").polytope;
  CHECK(parse_spec(emit_spec(h, "h")) == h);
}

TEST_CASE("catalog") {
  const auto pent = catalog("cp2_2blowup").polytope;
  CHECK(pent.vertices().size() == 5);
  CHECK(pent.volume() == R(7, 2));
  for (const auto& v : {pt(-1, -1), pt(1, -1), pt(1, 0), pt(0, 1), pt(-1, 1)}) CHECK(pent.contains(v));

  const auto quad = catalog("cp2_1blowup").polytope;
  CHECK(quad.vertices().size() == 4);
  CHECK(quad.volume() == R(4));

  const auto hex = catalog("hexagon(1,1)");
  CHECK(hex.polytope.vertices().size() == 6);
  CHECK(futaki_vector(hex.polytope) == Vec{R(0), R(0)});
  REQUIRE(hex.hexagon);
  CHECK(hex.hexagon->lambda == R(1));
  CHECK(catalog("cp2_3blowup").polytope == hex.polytope);
  CHECK(catalog("hexagon(2, 3)").hexagon->mu == R(3));

  // Boundary of the closed range: three sides shrink to points.
  CHECK(catalog("hexagon(1,2)").polytope.vertices().size() == 3);

  CHECK(kind_of([] { catalog("cp3"); }) == ErrorKind::UnknownName);
  CHECK(kind_of([] { catalog("hexagon(1,3)"); }) == ErrorKind::InvalidHexagonParams);
  CHECK(kind_of([] { catalog("hexagon(3,1)"); }) == ErrorKind::InvalidHexagonParams);
  CHECK(kind_of([] { catalog("hexagon(-1,1)"); }) == ErrorKind::InvalidHexagonParams);
  CHECK(kind_of([] { catalog("hexagon(1)"); }) == ErrorKind::UnknownName);
  CHECK(catalog_names().size() == 6);
}

TEST_CASE("parse_pl_expression") {
  const auto a = parse_pl_expression("max(0, x1)", 2);
  REQUIRE(a.size() == 2);
  CHECK(a[0] == AffineFunction{{R(0), R(0)}, R(0)});
  CHECK(a[1] == AffineFunction{{R(1), R(0)}, R(0)});

  const auto b = parse_pl_expression("1/2 - 3/4*x2 + x1", 2);
  REQUIRE(b.size() == 1);
  CHECK(b[0] == AffineFunction{{R(1), R(-3, 4)}, R(1, 2)});

  const auto c = parse_pl_expression("max(x1 + x2 - 1, 0, -x1 - x2 - 1)", 2);
  CHECK(c.size() == 3);
  CHECK(c[2] == AffineFunction{{R(-1), R(-1)}, R(-1)});

  CHECK(parse_pl_expression("2*x3 - x1", 3)[0] == AffineFunction{{R(-1), R(0), R(2)}, R(0)});
  CHECK(parse_pl_expression("x1 + x1", 2)[0] == AffineFunction{{R(2), R(0)}, R(0)});

  CHECK(kind_of([] { parse_pl_expression("max(0, x3)", 2); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_pl_expression("max(0, x1", 2); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_pl_expression("x1*x2", 2); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_pl_expression("", 2); }) == ErrorKind::ParseError);
  CHECK(message_contains([] { parse_pl_expression("max(0, y1)", 2); }, "column"));
}

TEST_CASE("affine to_string parses back") {
  for (const auto& f : {AffineFunction{{R(-168, 409), R(-168, 409)}, R(-32, 409)}, AffineFunction{{R(1), R(0)}, R(0)},
                        AffineFunction{{R(0), R(0)}, R(-3, 2)}, AffineFunction{{R(0), R(-1)}, R(5)}}) {
    const auto back = parse_pl_expression(to_string(f), 2);
    REQUIRE(back.size() == 1);
    CHECK(back[0] == f);
  }
  CHECK(to_string(AffineFunction{{R(-168, 409), R(-168, 409)}, R(-32, 409)}) == "-168/409*x1 - 168/409*x2 - 32/409");
}
