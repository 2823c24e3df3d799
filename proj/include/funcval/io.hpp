#pragma once

#include "funcval/convexfn.hpp"
#include "funcval/valuations.hpp"

#include <json.hpp>

#include <string>
#include <variant>

namespace funcval::io {

using Json = nlohmann::ordered_json;

/// Parses JSON text; syntax errors become ParseError with line and column.
Json parse_json(const std::string& text, const std::string& source = "input");
Json read_json_file(const std::string& path);

/// A rational from a JSON string ("3/4") or number (read as an exact binary fraction).
Rational rational_from(const Json& j);
Json rational_to(const Rational& r);
Vec vec_from(const Json& j);

/// {"points": [[...], ...]} or a named body such as {"kind": "tdelta", "n": 2, "delta": "1/4"}.
PolytopeV body_from(const Json& j);

/// {"type": "finite", "n": 2, "pieces": [{"a": [...], "b": ...}, ...]},
/// {"type": "restricted", "pieces": [...], "domain": <body>} or
/// {"type": "cone", "body": <body>, "shift": ...}.
using Function = std::variant<PacfFinite, PacfRestricted>;
Function function_from(const Json& j);
Json function_to(const PacfFinite& u);
Json function_to(const PacfRestricted& w);

/// {"kind": "exp", "alpha": 1.0, "role": "zeta1"}, {"kind": "bump", "c", "w", "h"},
/// {"kind": "poly", "T", "p"}.
ZetaSpec zeta_from(const Json& j);
Json zeta_to(const ZetaSpec& z);
/// {"n": 2, "zeta0": {...} | null, "zeta1": ..., "zeta2": ...}
ValuationSpec valuation_spec_from(const Json& j);
Json valuation_spec_to(const ValuationSpec& spec);

}  // namespace funcval::io
