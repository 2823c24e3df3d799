#include "funcval/io.hpp"

#include "funcval/errors.hpp"

#include <fstream>
#include <sstream>

namespace funcval::io {

namespace {

[[noreturn]] void fail(const std::string& what) { throw FuncvalError(ErrorCode::ParseError, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::size_t dim_from(const Json& j) {
  const Json& n = field(j, "n");
  if (!n.is_number_unsigned() || n.get<std::size_t>() < 1) fail("\"n\" must be a positive integer");
  return n.get<std::size_t>();
}

double number_from(const Json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  const Json& x = j.at(key);
  if (!x.is_number()) fail(std::string("\"") + key + "\" must be a number");
  return x.get<double>();
}

std::vector<AffinePiece> pieces_from(const Json& j) {
  if (!j.is_array() || j.empty()) fail("\"pieces\" must be a non-empty array");
  std::vector<AffinePiece> out;
  for (const auto& p : j) out.push_back({vec_from(field(p, "a")), rational_from(field(p, "b"))});
  return out;
}

Json pieces_to(const std::vector<AffinePiece>& pieces) {
  Json arr = Json::array();
  for (const auto& p : pieces) {
    Json a = Json::array();
    for (const auto& x : p.a) a.push_back(rational_to(x));
    arr.push_back({{"a", a}, {"b", rational_to(p.b)}});
  }
  return arr;
}

ZetaRole role_from(const Json& j) {
  const std::string r = j.contains("role") ? j.at("role").get<std::string>() : "zeta1";
  if (r == "zeta0") return ZetaRole::Zeta0;
  if (r == "zeta1") return ZetaRole::Zeta1;
  if (r == "zeta2") return ZetaRole::Zeta2;
  fail("unknown role \"" + r + "\"");
}

const char* role_name(ZetaRole r) {
  switch (r) {
    case ZetaRole::Zeta0: return "zeta0";
    case ZetaRole::Zeta1: return "zeta1";
    case ZetaRole::Zeta2: return "zeta2";
  }
  return "zeta1";
}

}  // namespace

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, column = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::ostringstream os;
    os << source << ":" << line << ":" << column << ": malformed JSON";
    fail(os.str());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str(), path);
}

Rational rational_from(const Json& j) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::exception&) {
      fail("not a rational: \"" + j.get<std::string>() + "\"");
    }
  }
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_number_float()) return from_double(j.get<double>());
  fail("expected a number or a rational string");
}

Json rational_to(const Rational& r) {
  if (denominator(r) == 1 && abs(numerator(r)) < Integer(1LL << 53)) return numerator(r).convert_to<long long>();
  return to_string(r);
}

Vec vec_from(const Json& j) {
  if (!j.is_array() || j.empty()) fail("expected a non-empty array of numbers");
  Vec out;
  for (const auto& x : j) out.push_back(rational_from(x));
  return out;
}

PolytopeV body_from(const Json& j) {
  if (j.contains("points")) {
    const Json& pts = j.at("points");
    if (!pts.is_array() || pts.empty()) fail("\"points\" must be a non-empty array");
    std::vector<Vec> points;
    for (const auto& p : pts) points.push_back(vec_from(p));
    for (const auto& p : points)
      if (p.size() != points.front().size()) fail("points have different dimensions");
    return hull(points);
  }
  const std::string kind = field(j, "kind").get<std::string>();
  const std::size_t n = dim_from(j);
  if (kind == "simplex") return standard_body(BodyKind::Simplex, n);
  if (kind == "cube") return standard_body(BodyKind::Cube, n);
  if (kind == "cross") return standard_body(BodyKind::Cross, n);
  if (kind == "tdelta") return standard_body(BodyKind::TDelta, n, {rational_from(field(j, "delta"))});
  if (kind == "box") return standard_body(BodyKind::Box, n, {rational_from(field(j, "lambda"))});
  if (kind == "ball") {
    Rational k = j.contains("vertices") ? rational_from(j.at("vertices")) : Rational(64);
    return standard_body(BodyKind::Ball, n, {k});
  }
  fail("unknown body kind \"" + kind + "\"");
}

Function function_from(const Json& j) {
  const std::string type = field(j, "type").get<std::string>();
  if (type == "finite") {
    auto pieces = pieces_from(field(j, "pieces"));
    const std::size_t n = j.contains("n") ? dim_from(j) : pieces.front().a.size();
    for (const auto& p : pieces)
      if (p.a.size() != n) fail("piece slope has the wrong dimension");
    return make_finite(n, std::move(pieces));
  }
  if (type == "restricted") return make_restricted(pieces_from(field(j, "pieces")), body_from(field(j, "domain")));
  if (type == "cone") {
    Rational shift = j.contains("shift") ? rational_from(j.at("shift")) : Rational(0);
    return cone_function(body_from(field(j, "body")), shift);
  }
  fail("unknown function type \"" + type + "\"");
}

Json function_to(const PacfFinite& u) {
  return {{"type", "finite"}, {"n", u.n}, {"pieces", pieces_to(u.pieces)}};
}

Json function_to(const PacfRestricted& w) {
  Json pts = Json::array();
  for (const auto& p : w.domain.vertices()) {
    Json a = Json::array();
    for (const auto& x : p) a.push_back(rational_to(x));
    pts.push_back(a);
  }
  return {{"type", "restricted"}, {"pieces", pieces_to(w.pieces)}, {"domain", {{"points", pts}}}};
}

ZetaSpec zeta_from(const Json& j) {
  const std::string kind = field(j, "kind").get<std::string>();
  const ZetaRole role = role_from(j);
  ZetaSpec out;
  if (kind == "exp") {
    out = ZetaSpec::exp_decay(number_from(j, "alpha", 1.0), role);
  } else if (kind == "bump") {
    out = ZetaSpec::bump(number_from(j, "c", 0.0), number_from(j, "w", 1.0), number_from(j, "h", 1.0), role);
  } else if (kind == "poly") {
    double p = number_from(j, "p", 3.0);
    if (p != static_cast<int>(p)) fail("\"p\" must be an integer");
    out = ZetaSpec::poly_cutoff(number_from(j, "T", 1.0), static_cast<int>(p), role);
  } else {
    fail("unknown weight kind \"" + kind + "\"");
  }
  validate(out);
  return out;
}

Json zeta_to(const ZetaSpec& z) {
  Json j;
  if (const auto* e = std::get_if<ExpDecay>(&z.kind)) {
    j = {{"kind", "exp"}, {"alpha", e->alpha}};
  } else if (const auto* b = std::get_if<Bump>(&z.kind)) {
    j = {{"kind", "bump"}, {"c", b->c}, {"w", b->w}, {"h", b->h}};
  } else {
    const auto& p = std::get<PolyCutoff>(z.kind);
    j = {{"kind", "poly"}, {"T", p.T}, {"p", p.p}};
  }
  j["role"] = role_name(z.role);
  return j;
}

ValuationSpec valuation_spec_from(const Json& j) {
  ValuationSpec spec;
  spec.n = dim_from(j);
  auto read = [&](const char* key, ZetaRole role) -> std::optional<ZetaSpec> {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    Json entry = j.at(key);
    if (!entry.contains("role")) entry["role"] = role_name(role);
    return zeta_from(entry);
  };
  spec.zeta0 = read("zeta0", ZetaRole::Zeta0);
  spec.zeta1 = read("zeta1", ZetaRole::Zeta1);
  spec.zeta2 = read("zeta2", ZetaRole::Zeta2);
  validate(spec);
  return spec;
}

Json valuation_spec_to(const ValuationSpec& spec) {
  auto put = [](const std::optional<ZetaSpec>& z) { return z ? zeta_to(*z) : Json(nullptr); };
  return {{"n", spec.n}, {"zeta0", put(spec.zeta0)}, {"zeta1", put(spec.zeta1)}, {"zeta2", put(spec.zeta2)}};
}

}  // namespace funcval::io
