#include <doctest.h>

#include <algorithm>
#include <random>

#include "kstab/error.hpp"
#include "kstab/integration.hpp"
#include "kstab/io.hpp"
#include "kstab/pl_function.hpp"
#include "kstab/random.hpp"
#include "oracles.hpp"

using namespace kstab;
using oracle::pt;
using oracle::R;

namespace {

Polytope poly(const std::string& name) { return catalog(name).polytope; }

AffineFunction aff(Rational a, Rational b, Rational c) { return AffineFunction{{a, b}, c}; }

std::vector<Vec> cell_vertices(const PLFunction& u) {
  std::vector<Vec> out;
  for (const auto& cell : u.cells())
    for (const auto& v : cell.region.vertices()) out.push_back(v);
  return out;
}

Vec random_point(const Polytope& p, std::mt19937_64& rng) {
  // Convex combination of vertices with random rational weights.
  Vec x(p.dim());
  Rational total;
  std::vector<Rational> w;
  for (std::size_t i = 0; i < p.vertices().size(); ++i) {
    w.push_back(abs(random_rational(rng)) + R(1, 10));
    total += w.back();
  }
  for (std::size_t i = 0; i < w.size(); ++i) x = x + (w[i] / total) * p.vertices()[i];
  return x;
}

}  // namespace

TEST_CASE("make_pl") {
  const auto sq = poly("cp1xcp1");
  const auto u = make_pl({aff(1, 0, 0), aff(0, 0, 0)}, sq);
  REQUIRE(u.cells().size() == 2);
  CHECK(u.cells()[0].region.volume() == R(2));
  CHECK(u.cells()[1].region.volume() == R(2));

  const auto band = make_pl({aff(1, 1, -1), aff(0, 0, 0), aff(-1, -1, -1)}, sq);
  REQUIRE(band.cells().size() == 3);
  for (const auto& cell : band.cells()) {
    if (band.pieces()[cell.piece] == aff(0, 0, 0)) CHECK(cell.region.volume() == R(3));
    else CHECK(cell.region.volume() == R(1, 2));
  }

  const auto dup = make_pl({aff(1, 0, 0), aff(1, 0, 0)}, sq);
  CHECK(dup.pieces().size() == 1);
  CHECK(dup.cells().size() == 1);

  try {
    make_pl({}, sq);
    FAIL("expected EmptyPieceList");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EmptyPieceList);
  }
}

TEST_CASE("cells tile the domain") {
  std::mt19937_64 rng(7);
  for (const auto& name : {"cp2", "cp1xcp1", "cp2_2blowup", "hexagon(2,3)"}) {
    const auto p = poly(name);
    for (int trial = 0; trial < 20; ++trial) {
      const auto u = random_convex_pl(p, rng);
      Rational total;
      for (const auto& cell : u.cells()) {
        total += cell.region.volume();
        for (const auto& v : cell.region.vertices()) CHECK(u.pieces()[cell.piece](v) == u.value(v));
      }
      CHECK(total == p.volume());
    }
  }
}

TEST_CASE("evaluate") {
  const auto sq = poly("cp1xcp1");
  const auto u = make_pl({aff(0, 0, 0), aff(1, 0, 0)}, sq);
  CHECK(evaluate(u, Vec{R(1, 2), R(-1)}) == R(1, 2));
  CHECK(evaluate(u, pt(-1, 0)) == R(0));
  const auto pent = poly("cp2_2blowup");
  CHECK(evaluate(make_pl({aff(1, 1, -1), aff(0, 0, 0)}, pent), pt(1, 0)) == R(0));
  try {
    evaluate(u, pt(2, 0));
    FAIL("expected OutsideDomain");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OutsideDomain);
  }
}

TEST_CASE("normalize_at") {
  const auto sq = poly("cp1xcp1");
  const auto a = normalize_at(make_pl({aff(1, 0, 3)}, sq), pt(0, 0));
  REQUIRE(a.pieces().size() == 1);
  CHECK(a.pieces()[0] == aff(0, 0, 0));

  const auto u = make_pl({aff(0, 0, 0), aff(1, 0, 0)}, sq);
  const auto left = normalize_at(u, Vec{R(-1, 2), R(0)});
  CHECK(left.pieces() == u.pieces());

  const auto mid = normalize_at(u, pt(0, 0));
  std::vector<AffineFunction> got = mid.pieces();
  std::vector<AffineFunction> want{aff(R(-1, 2), 0, 0), aff(R(1, 2), 0, 0)};
  auto less = [](const AffineFunction& x, const AffineFunction& y) { return x.gradient < y.gradient; };
  std::sort(got.begin(), got.end(), less);
  CHECK(got == want);

  try {
    normalize_at(u, pt(1, 0));
    FAIL("expected PointNotInterior");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PointNotInterior);
  }
}

TEST_CASE("is_affine and is_rational") {
  const auto sq = poly("cp1xcp1");
  CHECK(is_affine(make_pl({aff(1, 0, 0), aff(1, 0, -1)}, sq)));
  CHECK_FALSE(is_affine(make_pl({aff(0, 0, 0), aff(1, 0, 0)}, sq)));
  CHECK(is_affine(make_pl({aff(0, 0, 0), aff(1, 0, -2)}, sq)));
  CHECK(is_rational(make_pl({aff(1, 2, 3)}, sq)));
  CHECK(is_rational(SimplePL{aff(1, 0, 0)}.to_pl(sq)));
  CHECK(is_rational(make_pl({aff(1, 1, -1), aff(0, 0, 0), aff(-1, -1, -1)}, sq)));
}

TEST_CASE("SimplePL and boundary pieces") {
  const auto sq = poly("cp1xcp1");
  const auto u = SimplePL{aff(1, 0, 0)}.to_pl(sq);
  CHECK(u.pieces().size() == 2);
  // Facets x2 = ±1 are split by the crease; x1 = ±1 are not.
  const auto bp = boundary_pieces(u);
  CHECK(bp.size() == 6);
  CHECK(boundary_integral(u) == R(3));
}

TEST_CASE("property: convexity") {
  std::mt19937_64 rng(11);
  for (const auto& name : {"cp2", "cp2_1blowup", "cp2_2blowup", "cp2_3blowup"}) {
    const auto p = poly(name);
    for (int trial = 0; trial < 30; ++trial) {
      const auto u = random_convex_pl(p, rng);
      const Vec x = random_point(p, rng), y = random_point(p, rng);
      const Rational t(static_cast<long>(rng() % 11), 10);
      const Vec z = t * x + (R(1) - t) * y;
      CHECK(evaluate(u, z) <= t * evaluate(u, x) + (R(1) - t) * evaluate(u, y));
    }
  }
}

TEST_CASE("property: normalization") {
  std::mt19937_64 rng(17);
  for (const auto& name : {"cp2", "cp1xcp1", "cp2_1blowup", "cp2_2blowup", "cp2_3blowup"}) {
    const auto p = poly(name);
    for (int trial = 0; trial < 30; ++trial) {
      const auto u = random_convex_pl(p, rng);
      const auto t = normalize_at(u, pt(0, 0));
      CHECK(t.value(pt(0, 0)) == R(0));
      for (const auto& v : cell_vertices(t)) CHECK(t.value(v) >= R(0));
      for (const auto& cell : t.cells()) {
        const auto& piece = t.pieces()[cell.piece];
        CHECK(piece.constant <= R(0));
        // Σ x_j ∂_j ũ − ũ on the cell is the constant −c̃.
        for (const auto& v : cell.region.vertices()) {
          const Rational legendre = dot(v, piece.gradient) - piece(v);
          CHECK(legendre == -piece.constant);
          CHECK(legendre >= R(0));
        }
      }
      const Vec q = random_point(p, rng);
      if (p.contains_in_interior(q)) {
        const auto s = normalize_at(u, q);
        CHECK(s.value(q) == R(0));
        for (const auto& v : cell_vertices(s)) CHECK(s.value(v) >= R(0));
      }
    }
  }
}
