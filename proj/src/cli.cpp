#include "kstab/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <sstream>

#include "kstab/acceptance.hpp"
#include "kstab/error.hpp"
#include "kstab/integration.hpp"
#include "kstab/report.hpp"

namespace kstab {

namespace {

struct Options {
  std::string catalog;
  std::string spec;
  std::string pl;
  std::vector<long> k{10};
  std::string out;
  std::string format = "table";
  bool with_scan = false;
  ScanConfig scan;
};

struct Loaded {
  NamedPolytope named;
  std::string input;
};

Loaded load(const Options& o) {
  if (o.catalog.empty() == o.spec.empty()) {
    throw Error(ErrorKind::InvalidArgument, "exactly one of --catalog or --spec is required");
  }
  Loaded l;
  if (!o.catalog.empty()) {
    l.named = catalog(o.catalog);
    l.input = "catalog:" + o.catalog;
  } else {
    std::ifstream in(o.spec);
    if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read spec file '" + o.spec + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    l.input = buf.str();
    const PolytopeSpec s = parse_spec_text(l.input);
    l.named.name = s.name.empty() ? o.spec : s.name;
    l.named.polytope = build_polytope(s.halfspaces);
  }
  if (!o.pl.empty()) l.input += "\npl:" + o.pl;
  return l;
}

PLFunction load_pl(const Options& o, const Polytope& p) {
  if (o.pl.empty()) throw Error(ErrorKind::InvalidArgument, "--pl is required");
  return make_pl(parse_pl_expression(o.pl, p.dim()), p);
}

void write_text(const std::string& text, const Options& o, std::ostream& out) {
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write '" + o.out + "'");
  f << text;
}

void emit(const Json& doc, const Options& o, std::ostream& out) {
  write_text(o.format == "structured" ? doc.dump(2) + "\n" : render_table(doc), o, out);
}

Json header(const std::string& command, const Loaded& l) {
  Json j;
  j["command"] = command;
  j["polytope"] = l.named.name;
  return j;
}

int cmd_analyze(const Options& o, std::ostream& out) {
  const Loaded l = load(o);
  StabilityReport r = build_report(l.named, l.input);
  if (!o.pl.empty()) r.degenerations.push_back({o.pl, relative_futaki(load_pl(o, r.polytope), r.extremal)});
  if (o.with_scan) r.scan = scan(r.polytope, r.extremal, o.scan);
  emit(to_json(r), o, out);
  return r.all_hold() ? 0 : 1;
}

int cmd_lfun(const Options& o, std::ostream& out) {
  const Loaded l = load(o);
  const Polytope& p = l.named.polytope;
  const PLFunction u = load_pl(o, p);
  const ExtremalData e = extremal_field(p);
  const Polynomial weight = Polynomial::constant(p.dim(), e.rbar) + Polynomial::from_affine(e.theta);
  const Rational L = linear_functional_L(u, e);
  Json j = header("lfun", l);
  j["pl"] = o.pl;
  j["L"] = to_json(L);
  if (p.origin_interior()) j["L_cone_form"] = to_json(linear_functional_L_cone(u, e));
  j["boundary_integral"] = to_json(boundary_integral(u));
  j["weighted_volume_integral"] = to_json(integrate_pl(u, weight));
  j["affine"] = is_affine(u);
  j["provenance"] = provenance(l.input);
  emit(j, o, out);
  return L.sign() < 0 ? 1 : 0;
}

int cmd_relative_futaki(const Options& o, std::ostream& out) {
  const Loaded l = load(o);
  const Polytope& p = l.named.polytope;
  const DegenerationReport d = relative_futaki(load_pl(o, p), extremal_field(p));
  Json j = header("relative-futaki", l);
  j["pl"] = o.pl;
  const Json body = to_json(d);
  for (const auto& [k, v] : body.items()) j[k] = v;
  j["provenance"] = provenance(l.input);
  emit(j, o, out);
  return d.L_value.sign() < 0 ? 1 : 0;
}

int cmd_scan(const Options& o, std::ostream& out) {
  const Loaded l = load(o);
  const Polytope& p = l.named.polytope;
  const ScanResult s = scan(p, extremal_field(p), o.scan);
  Json j = header("scan", l);
  j["grid"] = {{"directions", o.scan.direction_count},
               {"offsets", o.scan.offset_count},
               {"refine_rounds", o.scan.refine_rounds}};
  const Json body = to_json(s);
  for (const auto& [k, v] : body.items()) j[k] = v;
  j["provenance"] = provenance(l.input);
  emit(j, o, out);
  return s.destabilizer_found ? 1 : 0;
}

int cmd_ehrhart(const Options& o, std::ostream& out) {
  const Loaded l = load(o);
  const Polytope& p = l.named.polytope;
  const PLFunction u = load_pl(o, p);
  const ExtremalData e = extremal_field(p);
  Json j = header("ehrhart", l);
  j["pl"] = o.pl;
  j["integral"] = to_json(integrate_pl(u));
  j["boundary_integral"] = to_json(boundary_integral(u));
  j["inner_product_ab"] = to_json(-integrate_pl(u, Polynomial::from_affine(e.theta)));
  Json rows = Json::array();
  for (long k : o.k) {
    if (k < 1) throw Error(ErrorKind::InvalidArgument, "--k must be >= 1");
    const LatticeSum s = pl_lattice_sum(u, k);
    Json row;
    row["k"] = k;
    row["points"] = s.count;
    row["lattice_sum"] = to_json(s.weighted_sum);
    row["residual"] = to_json(ehrhart_residual(u, k));
    row["trace_inner_product"] = to_json(ehrhart_bridge(u, e, k).value);
    rows.push_back(row);
  }
  j["scales"] = rows;
  j["provenance"] = provenance(l.input);
  emit(j, o, out);
  return 0;
}

int cmd_catalog(const Options& o, std::ostream& out) {
  if (o.catalog.empty()) {
    std::string text;
    for (const auto& n : catalog_names()) text += n + "\n";
    if (o.format == "structured") text = Json(catalog_names()).dump(2) + "\n";
    write_text(text, o, out);
    return 0;
  }
  const NamedPolytope np = catalog(o.catalog);
  const std::string text = emit_spec(np.polytope, np.name) + "\n";
  write_text(text, o, out);
  return 0;
}

int cmd_reproduce(const Options& o, std::ostream& out) {
  const auto results = run_acceptance();
  bool ok = true;
  Json doc = Json::array();
  std::string text;
  for (const auto& r : results) {
    ok = ok && r.passed;
    text += format_line(r) + "\n";
    doc.push_back({{"criterion", r.id}, {"title", r.title}, {"passed", r.passed}, {"detail", r.detail},
                   {"seconds", r.seconds}});
  }
  if (o.format == "structured") {
    emit(doc, o, out);
  } else {
    text += ok ? "all criteria passed\n" : "some criteria FAILED\n";
    write_text(text, o, out);
  }
  return ok ? 0 : 1;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact toric K-stability toolkit"};
  app.name("kstab");
  app.require_subcommand(1);
  Options o;

  auto input = [&](CLI::App* sub) {
    auto* c = sub->add_option("--catalog", o.catalog, "Built-in polytope name");
    auto* s = sub->add_option("--spec", o.spec, "Polytope spec file (JSON)");
    c->excludes(s);
  };
  auto output = [&](CLI::App* sub) {
    sub->add_option("--out", o.out, "Write output to a file");
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"table", "structured"}));
  };
  auto grid = [&](CLI::App* sub) {
    sub->add_option("--directions", o.scan.direction_count, "Crease directions")->check(CLI::PositiveNumber);
    sub->add_option("--offsets", o.scan.offset_count, "Crease offsets per direction")->check(CLI::PositiveNumber);
    sub->add_option("--rounds", o.scan.refine_rounds, "Refinement rounds")->check(CLI::NonNegativeNumber);
  };

  auto* analyze = app.add_subcommand("analyze", "Invariants, extremal field and sufficient conditions");
  input(analyze);
  output(analyze);
  analyze->add_option("--pl", o.pl, "Convex PL function, e.g. \"max(0, x1)\"");
  analyze->add_flag("--scan", o.with_scan, "Also scan simple PL functions");
  grid(analyze);

  auto* lfun = app.add_subcommand("lfun", "The functional L(u) in boundary and cone form");
  input(lfun);
  output(lfun);
  lfun->add_option("--pl", o.pl, "Convex PL function")->required();

  auto* rel = app.add_subcommand("relative-futaki", "Relative Futaki invariant of a toric degeneration");
  input(rel);
  output(rel);
  rel->add_option("--pl", o.pl, "Convex PL function")->required();

  auto* sc = app.add_subcommand("scan", "Search simple PL functions for small L(u)/boundary ratios");
  input(sc);
  output(sc);
  grid(sc);

  auto* eh = app.add_subcommand("ehrhart", "Lattice sums against the Ehrhart-type expansion");
  input(eh);
  output(eh);
  eh->add_option("--pl", o.pl, "Convex PL function")->required();
  eh->add_option("--k", o.k, "Scale factor(s)")->expected(1, -1);

  auto* cat = app.add_subcommand("catalog", "List built-in polytopes or print one as a spec file");
  cat->add_option("--catalog", o.catalog, "Built-in polytope name");
  output(cat);

  auto* rep = app.add_subcommand("reproduce", "Run the acceptance suite");
  output(rep);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*analyze) return cmd_analyze(o, out);
    if (*lfun) return cmd_lfun(o, out);
    if (*rel) return cmd_relative_futaki(o, out);
    if (*sc) return cmd_scan(o, out);
    if (*eh) return cmd_ehrhart(o, out);
    if (*cat) return cmd_catalog(o, out);
    return cmd_reproduce(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace kstab
