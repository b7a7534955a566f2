#include "kstab/acceptance.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "kstab/cli.hpp"
#include "kstab/error.hpp"
#include "kstab/integration.hpp"
#include "kstab/random.hpp"
#include "kstab/report.hpp"

namespace kstab {

namespace {

const std::vector<std::string> kFano{"cp2", "cp1xcp1", "cp2_1blowup", "cp2_2blowup", "cp2_3blowup"};

struct CliRun {
  int code = 0;
  Json doc;
};

CliRun run_structured(std::vector<std::string> args) {
  args.push_back("--format");
  args.push_back("structured");
  std::ostringstream out, err;
  CliRun r;
  r.code = run_command(args, out, err);
  if (r.code != 2) r.doc = Json::parse(out.str());
  return r;
}

std::string exact(const Json& j) { return j.at("exact").get<std::string>(); }

Polytope poly(const std::string& name) { return catalog(name).polytope; }

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += "failed: " + what;
    }
  }
};

using Body = std::function<Check()>;

Check c1_extremal() {
  Check c;
  const auto run = run_structured({"analyze", "--catalog", "cp2_2blowup"});
  c.require(run.code == 0, "analyze exit code 0");
  const auto& a = run.doc.at("extremal").at("a");
  c.require(exact(a[0]) == "-168/409" && exact(a[1]) == "-168/409", "a = (-168/409, -168/409)");
  c.require(extremal_field(poly("cp2_2blowup")).a == Vec{Rational(-168, 409), Rational(-168, 409)}, "library a");
  if (c.ok) c.detail = "a1 = a2 = " + exact(a[0]);
  return c;
}

Check c2_centering() {
  Check c;
  const auto p = poly("cp2_2blowup");
  const Rational expected = Rational(1) / (Rational(3) * p.volume());
  const Vec got = centering_constants(p);
  c.require(expected == Rational(2, 21), "1/(3 Vol) = 2/21");
  c.require(got == Vec{expected, expected}, "c = (2/21, 2/21)");
  if (c.ok) c.detail = "c = " + to_string(got);
  return c;
}

Check c3_rbar() {
  Check c;
  for (const auto& name : kFano)
    c.require(average_scalar_curvature(poly(name)) == Rational(2), "R̄(" + name + ") = 2");
  for (const auto& [l, m] : std::vector<std::pair<long, long>>{{1, 1}, {2, 3}, {3, 2}, {1, 2}}) {
    const auto np = catalog("hexagon(" + std::to_string(l) + "," + std::to_string(m) + ")");
    const Rational L(l), M(m);
    const Rational formula = Rational(2) * (M + L) / (Rational(4) * L * M - M * M - L * L);
    c.require(average_scalar_curvature(np.polytope) == formula,
              "hexagon(" + std::to_string(l) + "," + std::to_string(m) + ") matches the formula");
  }
  if (c.ok) c.detail = "R̄ = 2 on 5 Fano polygons; 4 hexagons match 2(μ+λ)/(4λμ−μ²−λ²)";
  return c;
}

Check c4_conditions() {
  Check c;
  for (const auto& name : {"cp2", "cp1xcp1", "cp2_3blowup"}) {
    const auto p = poly(name);
    const auto e = extremal_field(p);
    c.require(e.theta.gradient == Vec{Rational(0), Rational(0)} && e.rbar == Rational(2),
              std::string(name) + " has θ = 0, R̄ = 2");
    c.require(check_condition(p, e, Condition::c02).holds, std::string("c02 on ") + name);
  }
  const auto pent = poly("cp2_2blowup");
  const auto pv = check_condition(pent, extremal_field(pent), Condition::c02);
  c.require(pv.holds && pv.margin == Rational(105, 409), "c02 margin 105/409 on cp2_2blowup");
  for (const auto& name : {"cp2_1blowup", "cp2_2blowup"}) {
    const auto e = extremal_field(poly(name));
    c.require(e.theta_min > Rational(-2) && e.theta_max < Rational(1), std::string("−2 < θ < 1 on ") + name);
  }
  for (const auto& name : {"hexagon(2,3)", "hexagon(3,2)"}) {
    const auto np = catalog(name);
    c.require(check_condition(np.polytope, extremal_field(np.polytope), Condition::c61, np.hexagon).holds,
              std::string("c61 on ") + name);
  }
  bool rejected = false;
  try {
    catalog("hexagon(1,3)");
  } catch (const Error& e) {
    rejected = e.kind() == ErrorKind::InvalidHexagonParams;
  }
  c.require(rejected, "hexagon(1,3) rejected");
  c.require(hexagon_condition_margin({Rational(1), Rational(3)}).sign() < 0, "c61 fails for (1,3)");
  if (c.ok) c.detail = "c02 margin 105/409 on cp2_2blowup; c61 holds (2,3),(3,2); (1,3) rejected";
  return c;
}

Check c5_affine() {
  Check c;
  std::mt19937_64 rng(105);
  int failures = 0, total = 0;
  for (const auto& name : kFano) {
    const auto p = poly(name);
    const auto e = extremal_field(p);
    for (int i = 0; i < 100; ++i, ++total)
      if (!linear_functional_L(make_pl({random_affine(2, rng)}, p), e).is_zero()) ++failures;
  }
  c.require(failures == 0, std::to_string(failures) + " nonzero L(affine)");
  c.detail = std::to_string(failures) + " failures in " + std::to_string(total);
  return c;
}

Check c6_cone_form() {
  Check c;
  std::mt19937_64 rng(106);
  int failures = 0, total = 0;
  for (const auto& name : kFano) {
    const auto p = poly(name);
    const auto e = extremal_field(p);
    for (int i = 0; i < 50; ++i, ++total) {
      const auto u = random_convex_pl(p, rng);
      if (linear_functional_L(u, e) != linear_functional_L_cone(u, e)) ++failures;
    }
  }
  c.require(failures == 0, std::to_string(failures) + " mismatches");
  c.detail = std::to_string(failures) + " mismatches in " + std::to_string(total);
  return c;
}

Check c7_sign() {
  Check c;
  std::mt19937_64 rng(107);
  const auto p = poly("cp2_2blowup");
  const auto e = extremal_field(p);
  int negative = 0, zero_nonaffine = 0, bad_futaki = 0, affine = 0;
  for (int i = 0; i < 200; ++i) {
    const auto u = random_convex_pl(p, rng);
    const auto r = relative_futaki(u, e);
    if (r.L_value.sign() < 0) ++negative;
    if (r.L_value.is_zero() && !r.trivial) ++zero_nonaffine;
    if (!r.trivial && r.rel_futaki.sign() >= 0) ++bad_futaki;
    if (r.trivial) ++affine;
  }
  c.require(negative == 0, "L(u) >= 0");
  c.require(zero_nonaffine == 0, "L(u) = 0 only for affine u");
  c.require(bad_futaki == 0, "relative Futaki < 0 for non-affine u");
  c.detail = "200 samples (" + std::to_string(affine) + " affine): " + std::to_string(negative) + " with L<0, " +
             std::to_string(bad_futaki) + " with F>=0";
  return c;
}

Check c8_relative_futaki() {
  Check c;
  const auto run = run_structured({"relative-futaki", "--catalog", "cp2", "--pl", "max(0, x1)"});
  c.require(run.code == 0, "exit code 0");
  c.require(exact(run.doc.at("relative_futaki")) == "-4/27", "F = -4/27");
  c.require(exact(run.doc.at("L")) == "4/3", "L = 4/3");
  if (c.ok) c.detail = "F = -4/27, L = 4/3";
  return c;
}

Check c9_ehrhart() {
  Check c;
  const auto sq = poly("cp1xcp1");
  const auto u = make_pl({AffineFunction{{0, 0}, 0}, AffineFunction{{1, 0}, 0}}, sq);
  for (long k : {10L, 25L, 50L})
    c.require(ehrhart_residual(u, k) == Rational(1, 2), "square residual 1/2 at k=" + std::to_string(k));
  const auto run = run_structured({"ehrhart", "--catalog", "cp1xcp1", "--pl", "max(0, x1)", "--k", "10"});
  c.require(run.code == 0 && exact(run.doc.at("scales")[0].at("residual")) == "1/2", "CLI residual 1/2");
  const auto t = poly("cp2");
  const auto v = make_pl({AffineFunction{{0, 0}, 0}, AffineFunction{{1, 0}, 0}}, t);
  Rational worst;
  for (long k = 1; k <= 50; ++k) worst = std::max(worst, abs(ehrhart_residual(v, k)));
  c.require(worst <= Rational(2), "cp2 |residual| <= 2");
  c.detail = "square residual 1/2 at k=10,25,50; cp2 max |residual| = " + worst.str();
  return c;
}

Check c10_identity() {
  Check c;
  for (const auto& name : {"cp2_2blowup", "cp2_1blowup"}) {
    const auto p = poly(name);
    const Polynomial theta = Polynomial::from_affine(extremal_field(p).theta);
    c.require(boundary_integral(p, theta) == integrate_polynomial(p, theta * theta),
              std::string("∫∂θ dσ = ∫θ² dx on ") + name);
  }
  if (c.ok) c.detail = "exact equality on cp2_2blowup and cp2_1blowup";
  return c;
}

Check c11_audit() {
  Check c;
  const auto a = audit_published(catalog("cp2_1blowup"));
  c.require(a.computed.coefficient == Rational(6, 11), "computed a = 6/11");
  c.require(a.published.coefficient == Rational(5, 29), "published a = 5/29 reported");
  c.require(a.computed.within_bounds && a.published.within_bounds, "both satisfy −2 < θ < 1");
  c.require(a.computed.c02.holds && a.published.c02.holds, "both satisfy c02");
  c.require(a.computed.identity_holds, "identity for the computed value");
  c.require(a.computed.equation_residual.is_zero(), "computed a solves the moment equations");
  c.detail = "computed 6/11, published 5/29 (moment-equation residual " + a.published.equation_residual.str() +
             "); bounds and c02 hold for both";
  return c;
}

Check c12_scan() {
  Check c;
  const auto start = std::chrono::steady_clock::now();
  const auto run = run_structured({"scan", "--catalog", "cp1xcp1"});
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.require(run.code == 0, "exit code 0");
  const auto& est = run.doc.at("lambda_star_estimate");
  c.require(est.at("decimal").get<double>() > 0 && exact(est)[0] != '-' && exact(est) != "0", "estimate > 0");
  c.require(!run.doc.at("destabilizer_found").get<bool>(), "no destabilizer");
  c.require(secs < 10, "default grid under 10 s");
  char buf[96];
  std::snprintf(buf, sizeof buf, "estimate ~%.3g, %zu candidates", est.at("decimal").get<double>(),
                run.doc.at("candidates_evaluated").get<std::size_t>());
  c.detail = buf;
  return c;
}

}  // namespace

std::vector<CriterionResult> run_acceptance() {
  struct Entry {
    const char* title;
    Body body;
    double limit;  // seconds, 0 = none
  };
  const std::vector<Entry> entries{
      {"extremal field exactness", c1_extremal, 1},
      {"centering exactness", c2_centering, 1},
      {"average scalar curvature", c3_rbar, 0},
      {"condition suite", c4_conditions, 0},
      {"L vanishes on affine functions", c5_affine, 0},
      {"boundary form equals cone form", c6_cone_form, 0},
      {"sign of L and relative Futaki", c7_sign, 0},
      {"relative Futaki spot value", c8_relative_futaki, 0},
      {"Ehrhart residuals", c9_ehrhart, 0},
      {"inner-product identity", c10_identity, 0},
      {"published-value audit (CP2#1)", c11_audit, 0},
      {"scan sanity", c12_scan, 0},
  };
  std::vector<CriterionResult> out;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    CriterionResult r;
    r.id = static_cast<int>(i + 1);
    r.title = entries[i].title;
    const auto start = std::chrono::steady_clock::now();
    try {
      const Check c = entries[i].body();
      r.passed = c.ok;
      r.detail = c.detail;
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (entries[i].limit > 0 && r.seconds >= entries[i].limit) {
      r.passed = false;
      r.detail += "; exceeded time limit";
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::string format_line(const CriterionResult& r) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s  %2d  ", r.passed ? "PASS" : "FAIL", r.id);
  char secs[32];
  std::snprintf(secs, sizeof secs, "  (%.3f s)  ", r.seconds);
  return buf + r.title + secs + r.detail;
}

}  // namespace kstab
