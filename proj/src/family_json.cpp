#include "akf/family_json.hpp"

#include <fstream>
#include <set>

#include "akf/errors.hpp"

namespace akf {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) {
      throw validation_error("unknown field \"" + it.key() + "\" in " + where);
    }
  }
}

double number_field(const json& obj, const std::string& key,
                    const std::string& where) {
  if (!obj.contains(key)) {
    throw validation_error("missing field \"" + key + "\" in " + where);
  }
  if (!obj[key].is_number()) {
    throw validation_error("field \"" + key + "\" in " + where +
                           " must be a number");
  }
  return obj[key].get<double>();
}

SequenceRule rule_from_json(const json& obj, const std::string& where) {
  if (!obj.is_object()) {
    throw validation_error(where + " must be an object with a \"kind\"");
  }
  if (!obj.contains("kind") || !obj["kind"].is_string()) {
    throw validation_error(where + " needs a string \"kind\"");
  }
  std::string kind = obj["kind"].get<std::string>();
  if (kind == "const") {
    reject_unknown(obj, {"kind", "value"}, where);
    return SequenceRule::constant(number_field(obj, "value", where));
  }
  if (kind == "power") {
    reject_unknown(obj, {"kind", "c", "s"}, where);
    return SequenceRule::power(number_field(obj, "c", where),
                               number_field(obj, "s", where));
  }
  if (kind == "affine") {
    reject_unknown(obj, {"kind", "a", "b"}, where);
    return SequenceRule::affine(number_field(obj, "a", where),
                                number_field(obj, "b", where));
  }
  if (kind == "geom") {
    reject_unknown(obj, {"kind", "c", "rho"}, where);
    return SequenceRule::geometric(number_field(obj, "c", where),
                                   number_field(obj, "rho", where));
  }
  if (kind == "table") {
    reject_unknown(obj, {"kind", "values"}, where);
    if (!obj.contains("values") || !obj["values"].is_array()) {
      throw validation_error(where + " table needs a \"values\" array");
    }
    std::vector<double> values;
    for (const auto& v : obj["values"]) {
      if (!v.is_number()) {
        throw validation_error(where + " table entries must be numbers");
      }
      values.push_back(v.get<double>());
    }
    return SequenceRule::table(std::move(values));
  }
  throw validation_error(where + " has unknown kind \"" + kind + "\"");
}

json rule_to_json(const SequenceRule& rule) {
  switch (rule.kind()) {
    case RuleKind::Const:
      return {{"kind", "const"}, {"value", rule.param_a()}};
    case RuleKind::Power:
      return {{"kind", "power"}, {"c", rule.param_a()}, {"s", rule.param_b()}};
    case RuleKind::Affine:
      return {{"kind", "affine"}, {"a", rule.param_a()}, {"b", rule.param_b()}};
    case RuleKind::Geom:
      return {{"kind", "geom"}, {"c", rule.param_a()}, {"rho", rule.param_b()}};
    case RuleKind::Table:
      return {{"kind", "table"}, {"values", rule.table_values()}};
  }
  throw validation_error("corrupt rule kind");
}

}  // namespace

ParameterFamily family_from_json(const json& doc) {
  if (!doc.is_object()) {
    throw validation_error("family descriptor must be a JSON object");
  }
  reject_unknown(doc, {"alpha", "beta", "sigma"}, "family descriptor");
  for (const char* key : {"alpha", "beta", "sigma"}) {
    if (!doc.contains(key)) {
      throw validation_error(std::string("family descriptor is missing \"") +
                             key + "\"");
    }
  }
  return ParameterFamily{rule_from_json(doc["alpha"], "alpha"),
                         rule_from_json(doc["beta"], "beta"),
                         rule_from_json(doc["sigma"], "sigma")};
}

json family_to_json(const ParameterFamily& family) {
  return {{"alpha", rule_to_json(family.alpha)},
          {"beta", rule_to_json(family.beta)},
          {"sigma", rule_to_json(family.sigma)}};
}

ParameterFamily load_family_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open family file: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw validation_error("family file " + path + ": " + e.what());
  }
  return family_from_json(doc);
}

}  // namespace akf
