#pragma once

#include <algorithm>
#include <unordered_set>
#include <utility>
#include <vector>

#include "spq/group.hpp"

namespace spq {

/// Every subgroup exactly once, sorted by the canonical key.
///
/// Layered closure: start from the cyclic subgroups, then keep joining each
/// newly found subgroup with every cyclic subgroup it does not contain until
/// nothing new appears. Every subgroup is a join of cyclic ones, so this
/// reaches all of them.
inline std::vector<Subgroup> all_subgroups(const FiniteGroup& g) {
  struct Found {
    Subgroup sub;
    std::vector<Element> gens;
  };
  std::unordered_set<ElementSet, ElementSetHash> seen;
  std::vector<Found> cyclic;
  for (Element x = 0; x < g.order(); ++x) {
    auto c = generated_subgroup(g, {x});
    if (seen.insert(c.members).second) cyclic.push_back({c, {x}});
  }

  std::vector<Found> all = cyclic;
  std::vector<Found> layer = cyclic;
  while (!layer.empty()) {
    std::vector<Found> next;
    for (const auto& s : layer) {
      for (const auto& c : cyclic) {
        if (c.sub.is_subgroup_of(s.sub)) continue;
        auto gens = s.gens;
        gens.push_back(c.gens.front());
        auto j = generated_subgroup(g, gens);
        if (seen.insert(j.members).second) next.push_back({std::move(j), std::move(gens)});
      }
    }
    all.insert(all.end(), next.begin(), next.end());
    layer = std::move(next);
  }

  std::vector<Subgroup> out;
  out.reserve(all.size());
  for (auto& f : all) out.push_back(std::move(f.sub));
  std::sort(out.begin(), out.end());
  return out;
}

struct SubgroupClass {
  Subgroup representative;
  std::vector<Subgroup> orbit;  // sorted by canonical key; front() == representative
};

/// Conjugation orbits on the subgroup list, ordered by representative.
inline std::vector<SubgroupClass> conjugacy_classes_of_subgroups(const FiniteGroup& g) {
  auto subs = all_subgroups(g);
  std::vector<bool> done(subs.size(), false);
  std::vector<SubgroupClass> out;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (done[i]) continue;
    std::vector<Subgroup> orbit;
    for (Element x = 0; x < g.order(); ++x) {
      auto c = conjugate(g, x, subs[i]);
      if (std::find(orbit.begin(), orbit.end(), c) == orbit.end()) orbit.push_back(std::move(c));
    }
    std::sort(orbit.begin(), orbit.end());
    for (const auto& c : orbit) {
      auto it = std::lower_bound(subs.begin(), subs.end(), c);
      done[static_cast<std::size_t>(it - subs.begin())] = true;
    }
    out.push_back({orbit.front(), std::move(orbit)});
  }
  return out;
}

}  // namespace spq
