#include "kstab/io.hpp"

#include <cctype>
#include <json.hpp>

#include "kstab/error.hpp"

namespace kstab {

namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(const std::string& field, const std::string& msg) {
  throw Error(ErrorKind::ParseError, field + ": " + msg);
}

Rational rational_field(const json& v, const std::string& field) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (!v.is_string()) parse_fail(field, "expected a rational string such as \"7/2\"");
  try {
    return Rational::parse(v.get<std::string>());
  } catch (const std::exception& e) {
    parse_fail(field, e.what());
  }
}

Rational integer_field(const json& v, const std::string& field) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_string()) {
    const Rational r = rational_field(v, field);
    if (r.is_integer()) return r;
  }
  parse_fail(field, "expected an integer");
}

}  // namespace

PolytopeSpec parse_spec_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, std::string("malformed JSON at byte ") + std::to_string(e.byte) + ": " + e.what());
  }
  if (!doc.is_object()) parse_fail("<root>", "expected an object");
  PolytopeSpec spec;
  if (!doc.contains("dim") || !doc["dim"].is_number_integer() || doc["dim"].get<long>() < 1) {
    parse_fail("dim", "expected a positive integer");
  }
  spec.dim = doc["dim"].get<std::size_t>();
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) parse_fail("name", "expected a string");
    spec.name = doc["name"].get<std::string>();
  }
  if (!doc.contains("halfspaces") || !doc["halfspaces"].is_array()) parse_fail("halfspaces", "expected an array");
  const auto& hs = doc["halfspaces"];
  for (std::size_t i = 0; i < hs.size(); ++i) {
    const std::string at = "halfspaces[" + std::to_string(i) + "]";
    if (!hs[i].is_object()) parse_fail(at, "expected an object with normal and bound");
    if (!hs[i].contains("normal") || !hs[i]["normal"].is_array()) parse_fail(at + ".normal", "expected an array");
    const auto& nj = hs[i]["normal"];
    if (nj.size() != spec.dim) {
      parse_fail(at + ".normal", "expected " + std::to_string(spec.dim) + " entries, got " + std::to_string(nj.size()));
    }
    Vec normal;
    for (std::size_t k = 0; k < nj.size(); ++k) {
      normal.push_back(integer_field(nj[k], at + ".normal[" + std::to_string(k) + "]"));
    }
    if (!hs[i].contains("bound")) parse_fail(at + ".bound", "missing");
    spec.halfspaces.push_back({std::move(normal), rational_field(hs[i]["bound"], at + ".bound")});
  }
  return spec;
}

Polytope parse_spec(std::string_view text) { return build_polytope(parse_spec_text(text).halfspaces); }

std::string emit_spec(const Polytope& p, const std::string& name) {
  nlohmann::ordered_json doc;
  doc["dim"] = p.dim();
  doc["name"] = name;
  doc["halfspaces"] = nlohmann::ordered_json::array();
  for (const auto& h : p.halfspaces()) {
    nlohmann::ordered_json entry;
    auto normal = nlohmann::ordered_json::array();
    for (const auto& c : h.normal) normal.push_back(c.numerator().get_si());
    entry["normal"] = normal;
    entry["bound"] = h.bound.str();
    doc["halfspaces"].push_back(entry);
  }
  return doc.dump(2) + "\n";
}

std::vector<std::string> catalog_names() {
  return {"cp2", "cp1xcp1", "cp2_1blowup", "cp2_2blowup", "cp2_3blowup", "hexagon(lambda,mu)"};
}

NamedPolytope catalog(const std::string& name) {
  auto hs = [](std::initializer_list<std::pair<Vec, long>> list) {
    std::vector<HalfSpace> out;
    for (const auto& [n, b] : list) out.push_back(HalfSpace::make(n, Rational(b)));
    return out;
  };
  if (name == "cp2") return {name, build_polytope(hs({{{-1, 0}, 1}, {{0, -1}, 1}, {{1, 1}, 1}})), std::nullopt};
  if (name == "cp1xcp1") {
    return {name, build_polytope(hs({{{1, 0}, 1}, {{0, 1}, 1}, {{-1, 0}, 1}, {{0, -1}, 1}})), std::nullopt};
  }
  if (name == "cp2_1blowup") {
    return {name, build_polytope(hs({{{-1, -1}, 1}, {{-1, 0}, 1}, {{0, -1}, 1}, {{1, 1}, 1}})), std::nullopt};
  }
  if (name == "cp2_2blowup") {
    return {name, build_polytope(hs({{{1, 0}, 1}, {{0, 1}, 1}, {{-1, 0}, 1}, {{0, -1}, 1}, {{1, 1}, 1}})),
            std::nullopt};
  }
  if (name == "cp2_3blowup") {
    const HexagonParams h{Rational(1), Rational(1)};
    return {name, build_polytope(hexagon_halfspaces(h)), h};
  }
  if (name.rfind("hexagon(", 0) == 0 && name.back() == ')') {
    const std::string args = name.substr(8, name.size() - 9);
    const auto comma = args.find(',');
    if (comma == std::string::npos) throw Error(ErrorKind::UnknownName, "expected hexagon(lambda,mu), got " + name);
    HexagonParams h;
    try {
      h.lambda = Rational::parse(args.substr(0, comma));
      h.mu = Rational::parse(args.substr(comma + 1));
    } catch (const std::invalid_argument& e) {
      throw Error(ErrorKind::InvalidHexagonParams, e.what());
    }
    if (h.lambda.sign() <= 0 || h.mu.sign() <= 0 || h.mu * Rational(2) < h.lambda || h.mu > Rational(2) * h.lambda) {
      throw Error(ErrorKind::InvalidHexagonParams,
                  "hexagon(" + h.lambda.str() + "," + h.mu.str() + ") needs lambda/2 <= mu <= 2*lambda");
    }
    return {name, build_polytope(hexagon_halfspaces(h)), h};
  }
  throw Error(ErrorKind::UnknownName, "no catalog polytope named '" + name + "'");
}

namespace {

class PLParser {
 public:
  PLParser(std::string_view text, std::size_t dim) : s_(text), dim_(dim) {}

  std::vector<AffineFunction> parse() {
    std::vector<AffineFunction> pieces;
    skip();
    if (s_.substr(pos_, 3) == "max") {
      pos_ += 3;
      expect('(');
      pieces.push_back(expr());
      while (peek() == ',') {
        ++pos_;
        pieces.push_back(expr());
      }
      expect(')');
    } else {
      pieces.push_back(expr());
    }
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return pieces;
  }

 private:
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw Error(ErrorKind::ParseError, "pl expression at column " + std::to_string(pos_ + 1) + ": " + msg);
  }

  // Unsigned rational literal: digits with optional /digits.
  Rational number() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ < s_.size() && s_[pos_] == '/') {
      ++pos_;
      const std::size_t den = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (den == pos_) fail("expected a denominator");
    }
    if (start == pos_) fail("expected a number");
    try {
      return Rational::parse(s_.substr(start, pos_ - start));
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
  }

  std::size_t variable() {
    skip();
    if (pos_ >= s_.size() || s_[pos_] != 'x') fail("expected a variable x1..x" + std::to_string(dim_));
    ++pos_;
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a variable index");
    const auto idx = std::stoul(std::string(s_.substr(start, pos_ - start)));
    if (idx < 1 || idx > dim_) fail("variable x" + std::to_string(idx) + " out of range");
    return idx - 1;
  }

  AffineFunction expr() {
    AffineFunction f{Vec(dim_), Rational(0)};
    bool first = true;
    while (true) {
      Rational sign(1);
      char c = peek();
      if (c == '+' || c == '-') {
        if (c == '-') sign = Rational(-1);
        ++pos_;
      } else if (!first) {
        break;
      }
      first = false;
      c = peek();
      if (c == 'x') {
        f.gradient[variable()] += sign;
        continue;
      }
      const Rational coef = sign * number();
      if (peek() == '*') {
        ++pos_;
        f.gradient[variable()] += coef;
      } else {
        f.constant += coef;
      }
    }
    return f;
  }

  std::string_view s_;
  std::size_t dim_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<AffineFunction> parse_pl_expression(std::string_view text, std::size_t dim) {
  return PLParser(text, dim).parse();
}

}  // namespace kstab
