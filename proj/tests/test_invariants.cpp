#include <doctest.h>

#include <random>

#include "kstab/error.hpp"
#include "kstab/integration.hpp"
#include "kstab/invariants.hpp"
#include "kstab/io.hpp"
#include "kstab/random.hpp"
#include "oracles.hpp"

using namespace kstab;
using oracle::pt;
using oracle::R;

namespace {

Polytope poly(const std::string& name) { return catalog(name).polytope; }

AffineFunction aff(Rational a, Rational b, Rational c) { return AffineFunction{{a, b}, c}; }

PLFunction max0x1(const Polytope& p) { return make_pl({aff(0, 0, 0), aff(1, 0, 0)}, p); }

Polytope hexagon(const Rational& l, const Rational& m) { return build_polytope(hexagon_halfspaces({l, m})); }

const std::vector<std::string> kCatalog{"cp2", "cp1xcp1", "cp2_1blowup", "cp2_2blowup", "cp2_3blowup"};

}  // namespace

TEST_CASE("average_scalar_curvature") {
  CHECK(average_scalar_curvature(poly("cp2")) == R(2));
  CHECK(average_scalar_curvature(poly("cp2_2blowup")) == R(2));
  for (const auto& [l, m] : std::vector<std::pair<Rational, Rational>>{{R(2), R(3)}, {R(3), R(2)}, {R(1), R(1)},
                                                                       {R(5), R(7)}, {R(3, 2), R(2)}}) {
    const auto h = hexagon(l, m);
    CHECK(average_scalar_curvature(h) == R(2) * (m + l) / (R(4) * l * m - m * m - l * l));
    // Cross-module consistency.
    CHECK(average_scalar_curvature(h) ==
          boundary_integral(h, Polynomial::constant(2, R(1))) / integrate_polynomial(h, Polynomial::constant(2, R(1))));
  }
}

TEST_CASE("centering_constants") {
  CHECK(centering_constants(poly("cp1xcp1")) == Vec{R(0), R(0)});
  CHECK(centering_constants(poly("cp2_2blowup")) == Vec{R(2, 21), R(2, 21)});
  // 1/(3 Vol) with Vol = 7/2.
  CHECK(R(1) / (R(3) * poly("cp2_2blowup").volume()) == R(2, 21));
  CHECK(centering_constants(poly("cp2_1blowup")) == Vec{R(-1, 12), R(-1, 12)});
  CHECK(poly("cp2_1blowup").volume() == R(4));
}

TEST_CASE("futaki_vector") {
  CHECK(futaki_vector(hexagon(R(2), R(3))) == Vec{R(0), R(0)});
  CHECK(futaki_vector(hexagon(R(5), R(4))) == Vec{R(0), R(0)});
  CHECK(futaki_vector(poly("cp2_2blowup")) == Vec{R(-1, 3), R(-1, 3)});
  // −1 from the edge sums plus (2/21)·7.
  CHECK(R(-1) + R(2, 21) * R(7) == R(-1, 3));
  CHECK(futaki_vector(poly("cp1xcp1")) == Vec{R(0), R(0)});
  CHECK(futaki_vector(poly("cp2_1blowup")) == Vec{R(1, 3), R(1, 3)});
}

TEST_CASE("moment_matrix and extremal_field") {
  const auto pent = poly("cp2_2blowup");
  const auto m = moment_matrix(pent, centering_constants(pent));
  CHECK(m == Matrix{{R(265, 252), R(-121, 504)}, {R(-121, 504), R(265, 252)}});
  const auto e = extremal_field(pent);
  CHECK(e.a == Vec{R(-168, 409), R(-168, 409)});

  const auto q = poly("cp2_1blowup");
  CHECK(moment_matrix(q, centering_constants(q)) == Matrix{{R(71, 36), R(-49, 36)}, {R(-49, 36), R(71, 36)}});
  // Independent 2×2 solve: a = b / (M11 + M12) by symmetry.
  CHECK(R(1, 3) / (R(71, 36) + R(-49, 36)) == R(6, 11));
  const auto eq = extremal_field(q);
  CHECK(eq.a == Vec{R(6, 11), R(6, 11)});
  CHECK(eq.theta_min == R(-7, 11));
  CHECK(eq.theta_max == R(5, 11));

  const auto eh = extremal_field(hexagon(R(2), R(3)));
  CHECK(eh.a == Vec{R(0), R(0)});
  CHECK(eh.theta.gradient == Vec{R(0), R(0)});
  CHECK(eh.theta.constant == R(0));
}

TEST_CASE("theta_norm") {
  const auto h = hexagon(R(2), R(3));
  CHECK(theta_norm(extremal_field(h), h) == R(0));
  const auto pent = poly("cp2_2blowup");
  const auto e = extremal_field(pent);
  CHECK(theta_norm(e, pent) == R(304, 409));
  CHECK(e.theta_min == R(-200, 409));
  CHECK(e.theta_max == R(304, 409));
  CHECK(e.norm == R(304, 409));
  // Centered vertex sums −38/21 and 25/21.
  CHECK(R(-168, 409) * R(-38, 21) == R(304, 409));
  CHECK(R(-168, 409) * R(25, 21) == R(-200, 409));
}

TEST_CASE("θ_X stays in (−2, 1) on the one- and two-point blowups") {
  for (const auto& name : {"cp2_1blowup", "cp2_2blowup"}) {
    const auto e = extremal_field(poly(name));
    CHECK(e.theta_min > R(-2));
    CHECK(e.theta_max < R(1));
  }
}

TEST_CASE("linear_functional_L, both forms") {
  const auto t = poly("cp2");
  const auto sq = poly("cp1xcp1");
  const auto et = extremal_field(t);
  const auto es = extremal_field(sq);
  CHECK(et.theta.gradient == Vec{R(0), R(0)});
  CHECK(linear_functional_L(max0x1(t), et) == R(4, 3));
  CHECK(boundary_integral(max0x1(t)) == R(4));
  CHECK(integrate_pl(max0x1(t)) == R(4, 3));
  CHECK(linear_functional_L(max0x1(sq), es) == R(1));
  CHECK(linear_functional_L_cone(max0x1(t), et) == R(4, 3));
  CHECK(linear_functional_L_cone(max0x1(sq), es) == R(1));
  CHECK(linear_functional_L(make_pl({aff(2, -3, 5)}, t), et) == R(0));
  CHECK(linear_functional_L_cone(make_pl({aff(2, -3, 5)}, t), et) == R(0));

  const auto shifted = translate(sq, pt(2, 0));
  try {
    linear_functional_L_cone(max0x1(shifted), extremal_field(shifted));
    FAIL("expected OriginNotInterior");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OriginNotInterior);
  }
}

TEST_CASE("relative_futaki") {
  const auto t = poly("cp2");
  const auto et = extremal_field(t);
  const auto r = relative_futaki(max0x1(t), et);
  CHECK(r.rel_futaki == R(-4, 27));
  CHECK(r.L_value == R(4, 3));
  CHECK_FALSE(r.trivial);
  // θ_X = 0 here, so the relative invariant is the plain one.
  CHECK(r.gen_futaki_alpha == r.rel_futaki);
  CHECK(r.ip_ab == R(0));
  CHECK(r.ip_bb == R(0));

  const auto a = relative_futaki(make_pl({aff(1, 1, 1)}, t), et);
  CHECK(a.rel_futaki == R(0));
  CHECK(a.trivial);
}

TEST_CASE("extremal identities") {
  for (const auto& name : kCatalog) {
    const auto p = poly(name);
    const auto e = extremal_field(p);
    const Polynomial theta = Polynomial::from_affine(e.theta);
    CHECK(integrate_polynomial(p, theta) == R(0));
    CHECK(boundary_integral(p, theta) == integrate_polynomial(p, theta * theta));
    for (std::size_t i = 0; i < 2; ++i)
      CHECK(integrate_polynomial(p, Polynomial::variable(2, i) + Polynomial::constant(2, e.c[i])) == R(0));
    CHECK(e.theta_min <= R(0));
    CHECK(e.theta_max >= R(0));
    const auto minors = leading_minors(moment_matrix(p, e.c));
    for (const auto& m : minors) CHECK(m > R(0));
    const auto mm = moment_matrix(p, e.c);
    CHECK(mm[0][1] == mm[1][0]);
  }
}

TEST_CASE("check_condition") {
  const auto pent = poly("cp2_2blowup");
  const auto e = extremal_field(pent);
  const auto c02 = check_condition(pent, e, Condition::c02);
  CHECK(c02.holds);
  CHECK(c02.margin == R(105, 409));
  CHECK(R(3) - (R(2) + R(304, 409)) == R(105, 409));
  CHECK(check_condition(pent, e, Condition::c02prime).margin == R(105, 409));

  for (const auto& name : {"cp2", "cp1xcp1", "cp2_3blowup"}) {
    const auto p = poly(name);
    const auto v = check_condition(p, extremal_field(p), Condition::c02);
    CHECK(v.holds);
    CHECK(v.margin == R(1));
  }

  const auto sq = poly("cp1xcp1");
  const auto c04 = check_condition(sq, extremal_field(sq), Condition::c04);
  CHECK(c04.holds);
  CHECK(c04.margin == R(1, 2));
  CHECK(cone_volumes(sq) == std::vector<Rational>{R(1), R(1), R(1), R(1)});

  const HexagonParams h23{R(2), R(3)}, h32{R(3), R(2)};
  for (const auto& h : {h23, h32}) {
    const auto p = hexagon(h.lambda, h.mu);
    const auto v = check_condition(p, extremal_field(p), Condition::c61, h);
    CHECK(v.holds);
    CHECK(v.margin == R(3, 20));  // 2/5 − (1/2)²
  }
  // 25(μ−λ)² ≤ 10λ² is the squared form of μ ≤ (1+√10/5)λ.
  CHECK(R(25) * R(1) <= R(10) * R(4));

  try {
    check_condition(sq, extremal_field(sq), Condition::c61, h23);
    FAIL("expected WrongFamily");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::WrongFamily);
  }
  CHECK_THROWS_AS(check_condition(sq, extremal_field(sq), Condition::c61), Error);

  const auto shifted = translate(sq, Vec{R(3, 2), R(0)});
  try {
    check_condition(shifted, extremal_field(shifted), Condition::c04);
    FAIL("expected OriginNotInterior");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::OriginNotInterior);
  }
  CHECK(condition_from_string("c43") == Condition::c43);
  CHECK_THROWS_AS(condition_from_string("c99"), Error);
}

TEST_CASE("property: c61 and c02doubleprime agree on hexagons") {
  std::mt19937_64 rng(19);
  int checked = 0;
  while (checked < 60) {
    const Rational l = abs(random_rational(rng, 12, 5)) + R(1, 5);
    const Rational m = abs(random_rational(rng, 12, 5)) + R(1, 5);
    if (m * R(2) <= l || l * R(2) <= m) continue;
    const auto p = hexagon(l, m);
    const auto e = extremal_field(p);
    CHECK(check_condition(p, e, Condition::c61, HexagonParams{l, m}).holds ==
          check_condition(p, e, Condition::c02doubleprime).holds);
    ++checked;
  }
}

TEST_CASE("property: L vanishes on affine functions") {
  std::mt19937_64 rng(23);
  for (const auto& name : kCatalog) {
    const auto p = poly(name);
    const auto e = extremal_field(p);
    for (int i = 0; i < 100; ++i) CHECK(linear_functional_L(make_pl({random_affine(2, rng)}, p), e) == R(0));
  }
}

TEST_CASE("property: boundary form equals cone form and bounds it below") {
  std::mt19937_64 rng(29);
  for (const auto& name : kCatalog) {
    const auto p = poly(name);
    const auto e = extremal_field(p);
    for (int i = 0; i < 50; ++i) {
      const auto u = random_convex_pl(p, rng);
      CHECK(linear_functional_L(u, e) == linear_functional_L_cone(u, e));
      const auto t = normalize_at(u, pt(0, 0));
      CHECK(linear_functional_L(t, e) >= cone_lower_bound(t, e));
    }
  }
}

TEST_CASE("property: positivity under c43 and the sign of the relative invariant") {
  std::mt19937_64 rng(31);
  int polytopes = 0;
  for (const auto& name : kCatalog) {
    const auto p = poly(name);
    const auto e = extremal_field(p);
    if (!check_condition(p, e, Condition::c43).holds) continue;
    ++polytopes;
    for (int i = 0; i < 200; ++i) {
      const auto u = random_convex_pl(p, rng);
      const auto r = relative_futaki(u, e);
      CHECK(r.L_value >= R(0));
      if (r.L_value == R(0)) CHECK(r.trivial);
      if (r.L_value > R(0)) CHECK(r.rel_futaki < R(0));
      CHECK((r.rel_futaki == R(0)) == r.trivial);
    }
  }
  CHECK(polytopes >= 4);
}

TEST_CASE("Ehrhart bridge converges to ip_ab at O(1/k)") {
  const auto pent = poly("cp2_2blowup");
  const auto e = extremal_field(pent);
  const auto u = make_pl({aff(0, 0, 0), aff(1, 0, 0), aff(0, 1, R(-1, 2))}, pent);
  const Rational target = relative_futaki(u, e).ip_ab;
  CHECK(target == -integrate_pl(u, Polynomial::from_affine(e.theta)));
  Rational prev;
  for (long k : {5L, 10L, 20L, 40L}) {
    const auto b = ehrhart_bridge(u, e, k);
    const Rational err = abs(b.value - target);
    CHECK(err * Rational(k) < R(1));
    if (k > 5) CHECK(err < prev);
    prev = err;
  }
}
