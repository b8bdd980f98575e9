#pragma once

#include <string>

#include <json.hpp>

#include "akf/params.hpp"

namespace akf {

// Family descriptor schema (strict: unknown fields are rejected):
//   { "alpha": RULE, "beta": RULE, "sigma": RULE }
// RULE is one of
//   {"kind":"const",  "value": v}
//   {"kind":"power",  "c": c, "s": s}        // c * j^{-s}
//   {"kind":"affine", "a": a, "b": b}        // a + b*j
//   {"kind":"geom",   "c": c, "rho": rho}    // c * rho^j
//   {"kind":"table",  "values": [..]}
ParameterFamily family_from_json(const nlohmann::json& doc);
nlohmann::json family_to_json(const ParameterFamily& family);

ParameterFamily load_family_file(const std::string& path);

}  // namespace akf
