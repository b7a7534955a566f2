#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "kstab/cli.hpp"
#include "kstab/report.hpp"

using namespace kstab;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

Json structured(std::vector<std::string> args) {
  args.push_back("--format");
  args.push_back("structured");
  return Json::parse(run(args).out);
}

std::string exact(const Json& j) { return j.at("exact").get<std::string>(); }

std::string temp_path(const std::string& name) { return "kstab_test_" + name; }

}  // namespace

TEST_CASE("fnv1a_hex") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}

TEST_CASE("render_table") {
  Json j;
  j["x"] = to_json(Rational(1, 4));
  j["v"] = to_json(Vec{Rational(1), Rational(-1, 2)});
  j["nested"]["flag"] = true;
  j["list"] = Json::array({Json{{"k", 1}}});
  CHECK(render_table(j) == "x: 1/4  (~0.25)\nv: [1, -1/2]  (~[1, -0.5])\nnested.flag: true\nlist[0].k: 1\n");
}

TEST_CASE("analyze") {
  const auto r = run({"analyze", "--catalog", "cp2_2blowup"});
  CHECK(r.code == 0);
  CHECK(r.out.find("extremal.a: [-168/409, -168/409]") != std::string::npos);
  const auto j = structured({"analyze", "--catalog", "cp2_2blowup"});
  CHECK(exact(j["extremal"]["a"][0]) == "-168/409");
  CHECK(exact(j["conditions"][0]["margin"]) == "105/409");
  CHECK(j["conditions"][0]["condition"] == "c02");
  CHECK(j["provenance"]["tool"] == "kstab");
  CHECK(j["published_value_audit"]["agree"] == true);

  const auto q = structured({"analyze", "--catalog", "cp2_1blowup"});
  CHECK(exact(q["published_value_audit"]["computed"]["coefficient"]) == "6/11");
  CHECK(exact(q["published_value_audit"]["published"]["coefficient"]) == "5/29");
  CHECK(q["published_value_audit"]["agree"] == false);

  const auto h = structured({"analyze", "--catalog", "hexagon(2,3)"});
  bool saw_c61 = false;
  for (const auto& v : h["conditions"]) saw_c61 = saw_c61 || v["condition"] == "c61";
  CHECK(saw_c61);

  const auto d = structured({"analyze", "--catalog", "cp2", "--pl", "max(0, x1)"});
  CHECK(exact(d["degenerations"][0]["report"]["relative_futaki"]) == "-4/27");
}

TEST_CASE("reports are deterministic") {
  CHECK(run({"analyze", "--catalog", "cp2_2blowup", "--format", "structured"}).out ==
        run({"analyze", "--catalog", "cp2_2blowup", "--format", "structured"}).out);
  CHECK(run({"analyze", "--catalog", "cp2"}).out == run({"analyze", "--catalog", "cp2"}).out);
}

TEST_CASE("analyze exits 1 when a reported condition fails") {
  // hexagon(1,2) degenerates to a triangle with R̄ = 2 > 3/2.
  const auto r = run({"analyze", "--catalog", "hexagon(1,2)"});
  CHECK(r.code == 1);
  CHECK(r.out.find("holds: false") != std::string::npos);
}

TEST_CASE("lfun and relative-futaki") {
  const auto l = structured({"lfun", "--catalog", "cp1xcp1", "--pl", "max(0, x1)"});
  CHECK(exact(l["L"]) == "1");
  CHECK(exact(l["L_cone_form"]) == "1");
  CHECK(exact(l["boundary_integral"]) == "3");
  CHECK(l["affine"] == false);

  const auto r = structured({"relative-futaki", "--catalog", "cp2", "--pl", "max(0, x1)"});
  CHECK(exact(r["relative_futaki"]) == "-4/27");
  CHECK(run({"relative-futaki", "--catalog", "cp2", "--pl", "max(0, x1)"}).code == 0);
  CHECK(structured({"relative-futaki", "--catalog", "cp2", "--pl", "x1 + 2"})["trivial"] == true);
}

TEST_CASE("ehrhart") {
  const auto j = structured({"ehrhart", "--catalog", "cp1xcp1", "--pl", "max(0, x1)", "--k", "10", "50"});
  REQUIRE(j["scales"].size() == 2);
  CHECK(exact(j["scales"][0]["residual"]) == "1/2");
  CHECK(exact(j["scales"][0]["lattice_sum"]) == "231/2");
  CHECK(j["scales"][0]["points"] == 441);
  CHECK(exact(j["scales"][1]["residual"]) == "1/2");
}

TEST_CASE("scan") {
  const auto j = structured({"scan", "--catalog", "cp1xcp1", "--directions", "24", "--offsets", "10"});
  CHECK(j["destabilizer_found"] == false);
  CHECK(j["lambda_star_estimate"]["decimal"].get<double>() > 0);
  CHECK(j["estimate_kind"] == "upper bound from sampled simple PL family");
}

TEST_CASE("catalog") {
  const auto list = run({"catalog"});
  CHECK(list.code == 0);
  CHECK(list.out.find("cp2_2blowup\n") != std::string::npos);
  const auto spec = run({"catalog", "--catalog", "cp2"});
  CHECK(spec.code == 0);
  CHECK(parse_spec(spec.out) == catalog("cp2").polytope);
}

TEST_CASE("--spec and --out") {
  const std::string spec = temp_path("spec.json");
  const std::string out = temp_path("out.json");
  {
    std::ofstream f(spec);
    f << run({"catalog", "--catalog", "cp2_2blowup"}).out;
  }
  const auto r = run({"analyze", "--spec", spec, "--format", "structured", "--out", out});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream f(out);
  const Json j = Json::parse(f);
  CHECK(exact(j["extremal"]["a"][0]) == "-168/409");
  CHECK(j["polytope"]["name"] == "cp2_2blowup");
  std::remove(spec.c_str());
  std::remove(out.c_str());
}

TEST_CASE("input errors exit 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"analyze"}).code == 2);
  CHECK(run({"analyze", "--catalog", "cp3"}).code == 2);
  CHECK(run({"analyze", "--catalog", "hexagon(1,3)"}).code == 2);
  CHECK(run({"analyze", "--catalog", "cp2", "--spec", "x.json"}).code == 2);
  CHECK(run({"analyze", "--spec", "/nonexistent/spec.json"}).code == 2);
  CHECK(run({"lfun", "--catalog", "cp2"}).code == 2);
  CHECK(run({"lfun", "--catalog", "cp2", "--pl", "max(0, x9)"}).code == 2);
  CHECK(run({"analyze", "--catalog", "cp2", "--format", "xml"}).code == 2);
  CHECK(run({"ehrhart", "--catalog", "cp2", "--pl", "x1", "--k", "0"}).code == 2);
  const auto e = run({"analyze", "--catalog", "cp3"});
  CHECK(e.err.find("UnknownName") != std::string::npos);
  CHECK(run({"--help"}).code == 0);
}
