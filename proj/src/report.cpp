#include "kstab/report.hpp"

#include <cstdio>
#include <sstream>

#include "kstab/error.hpp"
#include "kstab/integration.hpp"

namespace kstab {

namespace {

std::string decimal(double d) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", d);
  return buf;
}

bool is_rational_leaf(const Json& j) {
  return j.is_object() && j.size() == 2 && j.contains("exact") && j.contains("decimal");
}

std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

bool is_flat_array(const Json& j) {
  if (!j.is_array() || j.empty()) return false;
  for (const auto& x : j)
    if (!is_rational_leaf(x) && x.is_structured()) return false;
  return true;
}

void render(const Json& j, const std::string& key, std::ostringstream& out) {
  if (is_rational_leaf(j)) {
    out << key << ": " << j["exact"].get<std::string>() << "  (~" << decimal(j["decimal"].get<double>()) << ")\n";
  } else if (is_flat_array(j)) {
    std::string exact, approx;
    bool any_rational = false;
    for (const auto& x : j) {
      if (!exact.empty()) {
        exact += ", ";
        approx += ", ";
      }
      if (is_rational_leaf(x)) {
        any_rational = true;
        exact += x["exact"].get<std::string>();
        approx += decimal(x["decimal"].get<double>());
      } else {
        exact += scalar_text(x);
        approx += scalar_text(x);
      }
    }
    out << key << ": [" << exact << "]";
    if (any_rational) out << "  (~[" << approx << "])";
    out << "\n";
  } else if (j.is_object()) {
    for (const auto& [k, v] : j.items()) render(v, key.empty() ? k : key + "." + k, out);
  } else if (j.is_array()) {
    if (j.empty()) out << key << ": []\n";
    for (std::size_t i = 0; i < j.size(); ++i) render(j[i], key + "[" + std::to_string(i) + "]", out);
  } else {
    out << key << ": " << scalar_text(j) << "\n";
  }
}

Json halfspace_json(const HalfSpace& h) {
  Json j;
  j["normal"] = to_json(h.normal);
  j["bound"] = to_json(h.bound);
  return j;
}

bool bounds_all_one(const Polytope& p) {
  for (const auto& h : p.halfspaces())
    if (h.bound != Rational(1)) return false;
  return true;
}

}  // namespace

std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json to_json(const Rational& r) {
  Json j;
  j["exact"] = r.str();
  j["decimal"] = r.to_double();
  return j;
}

Json to_json(const Vec& v) {
  Json j = Json::array();
  for (const auto& x : v) j.push_back(to_json(x));
  return j;
}

Json to_json(const AffineFunction& f) {
  Json j;
  j["expression"] = to_string(f);
  j["gradient"] = to_json(f.gradient);
  j["constant"] = to_json(f.constant);
  return j;
}

Json to_json(const ConditionVerdict& v, const Polytope& p) {
  Json j;
  j["condition"] = to_string(v.name);
  j["holds"] = v.holds;
  j["margin"] = to_json(v.margin);
  if (v.witness_kind == WitnessKind::facet) {
    j["witness"] = {{"kind", "facet"}, {"index", v.witness}};
    j["witness"]["halfspace"] = halfspace_json(p.halfspaces()[v.witness]);
  } else if (v.witness_kind == WitnessKind::vertex) {
    j["witness"] = {{"kind", "vertex"}, {"index", v.witness}};
    j["witness"]["point"] = to_json(p.vertices()[v.witness]);
  }
  return j;
}

Json to_json(const DegenerationReport& d) {
  Json j;
  j["L"] = to_json(d.L_value);
  j["relative_futaki"] = to_json(d.rel_futaki);
  j["generalized_futaki_alpha"] = to_json(d.gen_futaki_alpha);
  j["inner_product_ab"] = to_json(d.ip_ab);
  j["inner_product_bb"] = to_json(d.ip_bb);
  j["trivial"] = d.trivial;
  return j;
}

Json to_json(const ScanResult& s) {
  Json j;
  j["lambda_star_estimate"] = to_json(s.lambda_star_estimate);
  j["estimate_kind"] = "upper bound from sampled simple PL family";
  j["worst_crease"] = to_json(s.worst_u.crease);
  j["worst_L"] = to_json(s.worst_L);
  j["worst_boundary_integral"] = to_json(s.worst_boundary);
  j["destabilizer_found"] = s.destabilizer_found;
  j["rbar_plus_theta_nonnegative"] = s.rbar_theta_nonnegative;
  j["candidates_evaluated"] = s.candidates_evaluated;
  j["round_minima"] = to_json(Vec(s.round_minima.begin(), s.round_minima.end()));
  return j;
}

Json provenance(std::string_view input) {
  Json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["input_hash"] = "fnv1a64:" + fnv1a_hex(input);
  return j;
}

std::string render_table(const Json& doc) {
  std::ostringstream out;
  render(doc, "", out);
  return out.str();
}

std::optional<Rational> published_coefficient(const std::string& name) {
  if (name == "cp2_1blowup") return Rational(5, 29);
  if (name == "cp2_2blowup") return Rational(-168, 409);
  return std::nullopt;
}

CoefficientCheck check_coefficient(const Polytope& p, const ExtremalData& e, const Rational& alpha) {
  const std::size_t n = p.dim();
  ExtremalData t = e;
  t.a = Vec(n, alpha);
  t.theta.gradient = t.a;
  t.theta.constant = dot(t.a, t.c);
  t.theta_min = t.theta(p.vertices()[0]);
  t.theta_max = t.theta_min;
  for (const auto& v : p.vertices()) {
    t.theta_min = std::min(t.theta_min, t.theta(v));
    t.theta_max = std::max(t.theta_max, t.theta(v));
  }
  t.norm = std::max(abs(t.theta_min), abs(t.theta_max));

  CoefficientCheck c;
  c.coefficient = alpha;
  c.theta_min = t.theta_min;
  c.theta_max = t.theta_max;
  c.within_bounds = t.theta_min > Rational(-2) && t.theta_max < Rational(1);
  c.c02 = check_condition(p, t, Condition::c02);
  const Polynomial theta = Polynomial::from_affine(t.theta);
  c.identity_holds = boundary_integral(p, theta) == integrate_polynomial(p, theta * theta);
  const Matrix m = moment_matrix(p, t.c);
  const Vec b = futaki_vector(p);
  for (std::size_t j = 0; j < n; ++j) {
    Rational row = -b[j];
    for (std::size_t k = 0; k < n; ++k) row += m[j][k] * alpha;
    c.equation_residual = std::max(c.equation_residual, abs(row));
  }
  return c;
}

PublishedAudit audit_published(const NamedPolytope& np) {
  const auto pub = published_coefficient(np.name);
  if (!pub) throw Error(ErrorKind::UnknownName, "no published extremal coefficient for '" + np.name + "'");
  const ExtremalData e = extremal_field(np.polytope);
  PublishedAudit a;
  a.polytope = np.name;
  a.computed = check_coefficient(np.polytope, e, e.a[0]);
  a.published = check_coefficient(np.polytope, e, *pub);
  a.agree = e.a[0] == *pub && e.a[1] == *pub;
  return a;
}

Json to_json(const PublishedAudit& a, const Polytope& p) {
  auto one = [&](const CoefficientCheck& c) {
    Json j;
    j["coefficient"] = to_json(c.coefficient);
    j["theta_range"] = to_json(Vec{c.theta_min, c.theta_max});
    j["within_minus2_1"] = c.within_bounds;
    j["c02"] = to_json(c.c02, p);
    j["boundary_theta_equals_volume_theta_sq"] = c.identity_holds;
    j["equation_residual"] = to_json(c.equation_residual);
    return j;
  };
  Json j;
  j["polytope"] = a.polytope;
  j["computed"] = one(a.computed);
  j["published"] = one(a.published);
  j["agree"] = a.agree;
  return j;
}

bool StabilityReport::all_hold() const {
  for (const auto& v : verdicts)
    if (!v.holds) return false;
  for (const auto& d : degenerations)
    if (d.report.L_value.sign() < 0) return false;
  if (scan && scan->destabilizer_found) return false;
  return true;
}

StabilityReport build_report(const NamedPolytope& np, std::string input) {
  StabilityReport r;
  r.name = np.name;
  r.input = std::move(input);
  r.polytope = np.polytope;
  r.hexagon = np.hexagon;
  const Polytope& p = r.polytope;
  r.volume = p.volume();
  r.boundary_volume = p.boundary_volume();
  r.futaki = futaki_vector(p);
  r.extremal = extremal_field(p);

  bool futaki_zero = true;
  for (const auto& b : r.futaki) futaki_zero = futaki_zero && b.is_zero();

  std::vector<Condition> wanted{Condition::c02};
  if (bounds_all_one(p)) wanted.push_back(Condition::c02prime);
  if (futaki_zero) wanted.push_back(Condition::c02doubleprime);
  wanted.push_back(Condition::c43);
  if (futaki_zero) wanted.push_back(Condition::c04);
  for (auto c : wanted) {
    if (c != Condition::c02prime && !p.origin_interior()) {
      r.skipped.push_back(std::string(to_string(c)) + ": origin not interior");
      continue;
    }
    r.verdicts.push_back(check_condition(p, r.extremal, c));
  }
  if (np.hexagon) r.verdicts.push_back(check_condition(p, r.extremal, Condition::c61, np.hexagon));
  if (published_coefficient(np.name)) r.audit = audit_published(np);
  return r;
}

Json to_json(const StabilityReport& r) {
  const Polytope& p = r.polytope;
  Json j;
  j["polytope"]["name"] = r.name;
  j["polytope"]["dim"] = p.dim();
  j["polytope"]["volume"] = to_json(r.volume);
  j["polytope"]["boundary_measure"] = to_json(r.boundary_volume);
  Json verts = Json::array();
  for (const auto& v : p.vertices()) verts.push_back(to_string(v));
  j["polytope"]["vertices"] = verts;
  const auto d = delzant_check(p);
  j["polytope"]["delzant"] = d.ok;
  j["polytope"]["origin_interior"] = p.origin_interior();
  if (r.hexagon) {
    j["polytope"]["hexagon"]["lambda"] = to_json(r.hexagon->lambda);
    j["polytope"]["hexagon"]["mu"] = to_json(r.hexagon->mu);
  }
  j["rbar"] = to_json(r.extremal.rbar);
  j["centering"] = to_json(r.extremal.c);
  j["futaki"] = to_json(r.futaki);
  j["extremal"]["a"] = to_json(r.extremal.a);
  j["extremal"]["theta"] = to_json(r.extremal.theta);
  j["extremal"]["theta_range"] = to_json(Vec{r.extremal.theta_min, r.extremal.theta_max});
  j["extremal"]["theta_norm"] = to_json(r.extremal.norm);
  Json verdicts = Json::array();
  for (const auto& v : r.verdicts) verdicts.push_back(to_json(v, p));
  j["conditions"] = verdicts;
  if (!r.skipped.empty()) j["skipped_conditions"] = r.skipped;
  if (!r.degenerations.empty()) {
    Json degs = Json::array();
    for (const auto& e : r.degenerations) {
      Json x;
      x["pl"] = e.expression;
      x["report"] = to_json(e.report);
      degs.push_back(x);
    }
    j["degenerations"] = degs;
  }
  if (r.scan) j["scan"] = to_json(*r.scan);
  if (r.audit) j["published_value_audit"] = to_json(*r.audit, p);
  j["all_conditions_hold"] = r.all_hold();
  j["provenance"] = provenance(r.input);
  return j;
}

}  // namespace kstab
