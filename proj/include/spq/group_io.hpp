#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "spq/builtin.hpp"
#include "spq/group.hpp"

namespace spq {

/// Reads a group description:
/// {"label": str, "kind": "cayley"|"permutation"|"builtin",
///  "table": [[int]]?, "degree": int?, "generators": [[int]]?, "spec": str?}
inline FiniteGroup group_from_json(const nlohmann::json& j, const Limits& limits = {}) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    const std::string label = j.value("label", std::string{});
    if (kind == "cayley") {
      auto t = j.at("table").get<std::vector<std::vector<Element>>>();
      if (t.size() > limits.order_cap)
        throw Error(Errc::OrderCapExceeded, "table exceeds order cap " + std::to_string(limits.order_cap));
      return FiniteGroup::from_cayley_table(std::move(t), label, limits);
    }
    if (kind == "permutation") {
      auto degree = j.at("degree").get<std::size_t>();
      auto gens = j.value("generators", std::vector<std::vector<std::size_t>>{});
      return FiniteGroup::from_permutation_generators(degree, gens, label, limits);
    }
    if (kind == "builtin") {
      auto g = builtin(j.at("spec").get<std::string>(), limits);
      return label.empty() ? g : g.with_label(label);
    }
    throw Error(Errc::UnknownSpec, "unknown group kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::UnknownSpec, std::string("malformed group JSON: ") + e.what());
  }
}

inline nlohmann::json group_to_json(const FiniteGroup& g) {
  return {{"label", g.label()}, {"kind", "cayley"}, {"table", g.table()}};
}

/// A builtin spec, or "@path" naming a group JSON file.
inline FiniteGroup resolve_group(const std::string& spec, const Limits& limits = {}) {
  if (!spec.empty() && spec[0] == '@') {
    std::ifstream in(spec.substr(1));
    if (!in) throw Error(Errc::UnknownSpec, "cannot open '" + spec.substr(1) + "'");
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw Error(Errc::UnknownSpec, std::string("invalid JSON: ") + e.what());
    }
    return group_from_json(j, limits);
  }
  return builtin(spec, limits);
}

}  // namespace spq
