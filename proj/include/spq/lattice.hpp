#pragma once

// The subgroup lattice of a finite group, its conjugation action, chains of
// subgroups filtered by total index, and the chain complexes built on
// conjugacy classes of chains.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "spq/group.hpp"
#include "spq/sparse_matrix.hpp"
#include "spq/subgroups.hpp"

namespace spq {

using SubgroupId = std::uint32_t;

/// A sequence of subgroup ids H_0 <= H_1 <= ... <= H_k. Basis chains are
/// strict; non-strict (degenerate) chains only appear in intermediate
/// global-functor computations.
using Chain = std::vector<SubgroupId>;

class SubgroupLattice {
 public:
  explicit SubgroupLattice(FiniteGroup g) : group_(std::move(g)), subgroups_(all_subgroups(group_)) {
    const std::size_t s = subgroups_.size();
    for (SubgroupId i = 0; i < s; ++i) lookup_.emplace(subgroups_[i].members, i);

    contains_.assign(s * s, 0);
    supers_.resize(s);
    for (SubgroupId i = 0; i < s; ++i)
      for (SubgroupId j = 0; j < s; ++j)
        if (subgroups_[i].is_subgroup_of(subgroups_[j])) {
          contains_[i * s + j] = 1;
          if (i != j) supers_[i].push_back(j);
        }

    conj_.resize(group_.order() * s);
    for (Element x = 0; x < group_.order(); ++x)
      for (SubgroupId i = 0; i < s; ++i) conj_[x * s + i] = id_of(spq::conjugate(group_, x, subgroups_[i]));

    class_of_.assign(s, static_cast<std::size_t>(-1));
    for (SubgroupId i = 0; i < s; ++i) {
      if (class_of_[i] != static_cast<std::size_t>(-1)) continue;
      std::vector<SubgroupId> orbit;
      for (Element x = 0; x < group_.order(); ++x) {
        auto c = conjugate(x, i);
        if (class_of_[c] == static_cast<std::size_t>(-1)) {
          class_of_[c] = classes_.size();
          orbit.push_back(c);
        }
      }
      std::sort(orbit.begin(), orbit.end());
      classes_.push_back(std::move(orbit));
    }
  }

  static std::shared_ptr<const SubgroupLattice> make(FiniteGroup g) {
    return std::make_shared<const SubgroupLattice>(std::move(g));
  }

  const FiniteGroup& group() const { return group_; }
  std::size_t size() const { return subgroups_.size(); }
  const Subgroup& subgroup(SubgroupId i) const { return subgroups_.at(i); }
  const std::vector<Subgroup>& subgroups() const { return subgroups_; }
  std::size_t order_of(SubgroupId i) const { return subgroups_[i].order; }

  SubgroupId bottom() const { return 0; }
  SubgroupId top() const { return static_cast<SubgroupId>(subgroups_.size() - 1); }

  std::optional<SubgroupId> find(const ElementSet& s) const {
    auto it = lookup_.find(s);
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
  }

  SubgroupId id_of(const Subgroup& h) const {
    auto id = find(h.members);
    if (!id) throw Error(Errc::InvalidArgument, "not a subgroup of " + group_.label());
    return *id;
  }

  /// small <= big as subgroups.
  bool contains(SubgroupId small, SubgroupId big) const { return contains_[small * size() + big]; }

  /// Strictly larger subgroups, in increasing id order.
  const std::vector<SubgroupId>& proper_supergroups(SubgroupId i) const { return supers_[i]; }

  SubgroupId conjugate(Element x, SubgroupId i) const { return conj_[x * size() + i]; }

  std::size_t class_of(SubgroupId i) const { return class_of_[i]; }
  const std::vector<std::vector<SubgroupId>>& classes() const { return classes_; }

  std::size_t index(SubgroupId small, SubgroupId big) const {
    if (!contains(small, big)) throw Error(Errc::NotASubgroupInclusion, "not an inclusion");
    return order_of(big) / order_of(small);
  }

  Chain conjugate(Element x, const Chain& c) const {
    Chain out(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) out[i] = conjugate(x, c[i]);
    return out;
  }

  /// Least conjugate of the chain (componentwise subgroup key, lexicographic).
  Chain canonical(const Chain& c) const {
    Chain best = c;
    Chain cur(c.size());
    for (Element x = 1; x < group_.order(); ++x) {
      bool smaller = false, decided = false;
      for (std::size_t i = 0; i < c.size(); ++i) {
        cur[i] = conjugate(x, c[i]);
        if (!decided && cur[i] != best[i]) {
          smaller = cur[i] < best[i];
          decided = true;
          if (!smaller) break;
        }
      }
      if (smaller) best = cur;
    }
    return best;
  }

  std::size_t orbit_size(const Chain& c) const {
    std::vector<Chain> seen;
    for (Element x = 0; x < group_.order(); ++x) {
      auto d = conjugate(x, c);
      if (std::find(seen.begin(), seen.end(), d) == seen.end()) seen.push_back(std::move(d));
    }
    return seen.size();
  }

  /// [H_k : H_0].
  std::size_t total_index(const Chain& c) const {
    return c.empty() ? 1 : order_of(c.back()) / order_of(c.front());
  }

  bool is_chain(const Chain& c) const {
    for (std::size_t i = 0; i + 1 < c.size(); ++i)
      if (!contains(c[i], c[i + 1])) return false;
    return true;
  }

  bool is_strict(const Chain& c) const {
    for (std::size_t i = 0; i + 1 < c.size(); ++i)
      if (c[i] == c[i + 1] || !contains(c[i], c[i + 1])) return false;
    return true;
  }

 private:
  FiniteGroup group_;
  std::vector<Subgroup> subgroups_;
  std::unordered_map<ElementSet, SubgroupId, ElementSetHash> lookup_;
  std::vector<char> contains_;
  std::vector<std::vector<SubgroupId>> supers_;
  std::vector<SubgroupId> conj_;
  std::vector<std::size_t> class_of_;
  std::vector<std::vector<SubgroupId>> classes_;
};

using LatticePtr = std::shared_ptr<const SubgroupLattice>;

/// Rejects n < 1 and clamps to |G| (larger n changes nothing).
inline std::size_t effective_level(const SubgroupLattice& lat, std::size_t n) {
  if (n < 1) throw Error(Errc::InvalidArgument, "filtration level must be at least 1");
  return std::min(n, lat.group().order());
}

/// All strict chains with total index at most n, depth-first from each
/// bottom subgroup in id order.
inline std::vector<Chain> chains_up_to(const SubgroupLattice& lat, std::size_t n, bool require_top_G) {
  const std::size_t level = effective_level(lat, n);
  std::vector<Chain> out;
  Chain cur;
  auto dfs = [&](auto&& self, SubgroupId last) -> void {
    if (!require_top_G || last == lat.top()) out.push_back(cur);
    for (auto next : lat.proper_supergroups(last)) {
      if (lat.order_of(next) / lat.order_of(cur.front()) > level) continue;
      cur.push_back(next);
      self(self, next);
      cur.pop_back();
    }
  };
  for (SubgroupId h = 0; h < lat.size(); ++h) {
    cur.assign(1, h);
    dfs(dfs, h);
  }
  return out;
}

enum class Flavor { Coinvariant, Reduced };

inline const char* flavor_name(Flavor f) { return f == Flavor::Coinvariant ? "coinvariant" : "reduced"; }

struct ChainClass {
  Chain representative;
  std::size_t orbit_size = 1;
  friend bool operator==(const ChainClass&, const ChainClass&) = default;
};

/// Conjugacy classes of chains per degree. Coinvariant: all chains of total
/// index <= n; Reduced: only those ending at G.
inline std::vector<std::vector<ChainClass>> chain_classes(const SubgroupLattice& lat, std::size_t n,
                                                          Flavor flavor) {
  auto chains = chains_up_to(lat, n, flavor == Flavor::Reduced);
  std::vector<std::map<Chain, std::size_t>> reps;
  for (const auto& c : chains) {
    const std::size_t k = c.size() - 1;
    if (reps.size() <= k) reps.resize(k + 1);
    auto canon = lat.canonical(c);
    reps[k].try_emplace(canon, 0);
    if (canon == c) reps[k][canon] = lat.orbit_size(c);
  }
  std::vector<std::vector<ChainClass>> out(reps.size());
  for (std::size_t k = 0; k < reps.size(); ++k)
    for (auto& [chain, size] : reps[k]) out[k].push_back({chain, size});
  return out;
}

/// Chain complex on conjugacy classes of chains with integer boundaries.
struct FilteredChainComplex {
  LatticePtr lattice;
  std::size_t n = 1;            // effective (clamped) level
  std::size_t n_requested = 1;  // as asked for
  Flavor flavor = Flavor::Coinvariant;
  std::vector<std::vector<ChainClass>> bases;
  std::vector<SparseIntMatrix> boundaries;  // boundaries[k] : degree k -> degree k-1; [0] is 0 x dim0

  std::size_t top_degree() const { return bases.empty() ? 0 : bases.size() - 1; }
  std::size_t dim(std::size_t k) const { return k < bases.size() ? bases[k].size() : 0; }

  std::optional<std::size_t> find(const Chain& canonical_chain) const {
    const std::size_t k = canonical_chain.size() - 1;
    if (k >= bases.size()) return std::nullopt;
    const auto& b = bases[k];
    auto it = std::lower_bound(b.begin(), b.end(), canonical_chain,
                               [](const ChainClass& c, const Chain& x) { return c.representative < x; });
    if (it == b.end() || it->representative != canonical_chain) return std::nullopt;
    return static_cast<std::size_t>(it - b.begin());
  }
};

/// Faces included in the boundary: all of them for Coinvariant, all but the
/// last (deleting G) for Reduced, where that face lies in the collapsed part.
inline FilteredChainComplex build_complex(LatticePtr lat, std::size_t n, Flavor flavor) {
  FilteredChainComplex cx;
  cx.n_requested = n;
  cx.n = effective_level(*lat, n);
  cx.flavor = flavor;
  cx.bases = chain_classes(*lat, cx.n, flavor);
  cx.lattice = std::move(lat);
  const auto& L = *cx.lattice;

  cx.boundaries.resize(cx.bases.size());
  cx.boundaries[0] = SparseIntMatrix(0, cx.dim(0));
  for (std::size_t k = 1; k < cx.bases.size(); ++k) {
    SparseIntMatrix d(cx.dim(k - 1), cx.dim(k));
    const std::size_t faces = flavor == Flavor::Coinvariant ? k + 1 : k;
    for (std::size_t j = 0; j < cx.dim(k); ++j) {
      const auto& rep = cx.bases[k][j].representative;
      std::vector<SparseIntMatrix::Entry> col;
      for (std::size_t i = 0; i < faces; ++i) {
        Chain face = rep;
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
        if (L.total_index(face) > L.total_index(rep))
          throw Error(Errc::FiltrationViolation, "face leaves the filtration");
        auto row = cx.find(L.canonical(face));
        if (!row) throw Error(Errc::NotAComplex, "face missing from basis");
        col.emplace_back(*row, mpz_class(i % 2 == 0 ? 1 : -1));
      }
      d.set_column(j, std::move(col));
    }
    cx.boundaries[k] = std::move(d);
  }
  return cx;
}

/// Realised total indices [K:H] over all inclusions H <= K.
inline std::vector<std::size_t> filtration_levels(const SubgroupLattice& lat) {
  std::vector<std::size_t> out;
  for (SubgroupId i = 0; i < lat.size(); ++i) {
    out.push_back(1);
    for (auto j : lat.proper_supergroups(i)) out.push_back(lat.order_of(j) / lat.order_of(i));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Debug serialisation: bases as member lists of each subgroup in the
/// representative chain, boundaries as (row, col, value) triples.
inline nlohmann::json complex_to_json(const FilteredChainComplex& cx) {
  const auto& L = *cx.lattice;
  nlohmann::json j;
  j["group"] = L.group().label();
  j["n"] = cx.n;
  j["flavor"] = flavor_name(cx.flavor);
  j["bases"] = nlohmann::json::array();
  for (const auto& deg : cx.bases) {
    auto arr = nlohmann::json::array();
    for (const auto& cls : deg) {
      auto chain = nlohmann::json::array();
      for (auto id : cls.representative) chain.push_back(L.subgroup(id).elements());
      arr.push_back({{"chain", chain}, {"orbit_size", cls.orbit_size}});
    }
    j["bases"].push_back(arr);
  }
  j["boundaries"] = nlohmann::json::array();
  for (std::size_t k = 1; k < cx.boundaries.size(); ++k) {
    auto arr = nlohmann::json::array();
    for (const auto& t : cx.boundaries[k].triples()) arr.push_back({t.row, t.col, t.value.get_str()});
    j["boundaries"].push_back({{"degree", k}, {"entries", arr}});
  }
  return j;
}

}  // namespace spq
