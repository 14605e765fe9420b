#pragma once

// Finite G-sets, their posets of invariant partitions, subgroup intervals,
// and rational homology of order complexes.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "spq/homology.hpp"
#include "spq/homomorphism.hpp"
#include "spq/lattice.hpp"

namespace spq {

/// A finite set with a left action of a group, stored as one permutation
/// per group element.
class GSet {
 public:
  GSet(FiniteGroup g, std::vector<std::vector<std::size_t>> action) : group_(std::move(g)), action_(std::move(action)) {
    if (action_.size() != group_.order()) throw Error(Errc::InvalidArgument, "one permutation per element required");
    size_ = action_.empty() ? 0 : action_[0].size();
    for (const auto& p : action_) {
      if (p.size() != size_) throw Error(Errc::InvalidArgument, "permutations of unequal length");
      std::vector<bool> hit(size_, false);
      for (auto x : p) {
        if (x >= size_ || hit[x]) throw Error(Errc::InvalidPermutation, "action is not by bijections");
        hit[x] = true;
      }
    }
    for (std::size_t x = 0; x < size_; ++x)
      if (action_[0][x] != x) throw Error(Errc::InvalidArgument, "identity does not act trivially");
    for (Element a = 0; a < group_.order(); ++a)
      for (Element b = 0; b < group_.order(); ++b)
        for (std::size_t x = 0; x < size_; ++x)
          if (action_[group_.mul(a, b)][x] != action_[a][action_[b][x]])
            throw Error(Errc::InvalidArgument, "not an action");

    orbit_of_.assign(size_, static_cast<std::size_t>(-1));
    for (std::size_t x = 0; x < size_; ++x) {
      if (orbit_of_[x] != static_cast<std::size_t>(-1)) continue;
      for (Element a = 0; a < group_.order(); ++a) orbit_of_[action_[a][x]] = orbit_count_;
      ++orbit_count_;
    }
  }

  /// Disjoint union of coset spaces G/H_i; cosets of each H_i are numbered
  /// by their least element.
  static GSet from_cosets(const FiniteGroup& g, const std::vector<Subgroup>& stabilizers) {
    std::vector<std::vector<std::size_t>> action(g.order());
    std::size_t offset = 0;
    for (const auto& h : stabilizers) {
      std::vector<std::size_t> coset_of(g.order(), static_cast<std::size_t>(-1));
      std::size_t count = 0;
      for (Element a = 0; a < g.order(); ++a) {
        if (coset_of[a] != static_cast<std::size_t>(-1)) continue;
        for (auto x : h.elements()) coset_of[g.mul(a, x)] = count;
        ++count;
      }
      std::vector<Element> rep(count);
      for (Element a = g.order(); a-- > 0;) rep[coset_of[a]] = a;
      for (Element a = 0; a < g.order(); ++a)
        for (std::size_t c = 0; c < count; ++c) action[a].push_back(offset + coset_of[g.mul(a, rep[c])]);
      offset += count;
    }
    return GSet(g, std::move(action));
  }

  const FiniteGroup& group() const { return group_; }
  std::size_t size() const { return size_; }
  std::size_t act(Element g, std::size_t x) const { return action_[g][x]; }
  const std::vector<std::size_t>& permutation(Element g) const { return action_[g]; }
  std::size_t orbit_count() const { return orbit_count_; }
  std::size_t orbit_of(std::size_t x) const { return orbit_of_[x]; }

  Subgroup stabilizer(std::size_t x) const {
    ElementSet s(group_.order());
    for (Element a = 0; a < group_.order(); ++a)
      if (action_[a][x] == x) s.insert(a);
    return Subgroup(std::move(s));
  }

  /// All point stabilizers are conjugate.
  bool is_isotypical() const {
    if (size_ == 0) return true;
    const auto first = stabilizer(0);
    for (std::size_t x = 1; x < size_; ++x) {
      const auto s = stabilizer(x);
      bool conj = false;
      for (Element a = 0; a < group_.order() && !conj; ++a) conj = conjugate(group_, a, first) == s;
      if (!conj) return false;
    }
    return true;
  }

  bool is_transitive() const { return orbit_count_ == 1; }

 private:
  FiniteGroup group_;
  std::vector<std::vector<std::size_t>> action_;
  std::size_t size_ = 0;
  std::vector<std::size_t> orbit_of_;
  std::size_t orbit_count_ = 0;
};

/// Parses "regular", "trivial:<k>" and "G/<i,j,...>" terms joined by '+'.
/// The subgroup in G/<...> is generated by the listed element indices.
inline GSet parse_gset(const FiniteGroup& g, const std::string& spec) {
  std::vector<Subgroup> stabs;
  std::stringstream ss(spec);
  std::string term;
  auto bad = [&](const std::string& why) { return Error(Errc::UnknownSpec, "G-set '" + spec + "': " + why); };
  while (std::getline(ss, term, '+')) {
    term.erase(std::remove_if(term.begin(), term.end(), [](unsigned char c) { return std::isspace(c); }), term.end());
    if (term == "regular") {
      stabs.push_back(trivial_subgroup(g));
    } else if (term.rfind("trivial:", 0) == 0) {
      const auto num = term.substr(8);
      if (num.empty() || !std::all_of(num.begin(), num.end(), [](unsigned char c) { return std::isdigit(c); }))
        throw bad("bad count in '" + term + "'");
      for (std::size_t i = 0, k = std::stoul(num); i < k; ++i) stabs.push_back(whole_group(g));
    } else if (term.rfind("G/<", 0) == 0 && term.back() == '>') {
      std::vector<Element> gens;
      std::stringstream inner(term.substr(3, term.size() - 4));
      std::string tok;
      while (std::getline(inner, tok, ',')) {
        if (tok.empty()) continue;
        if (!std::all_of(tok.begin(), tok.end(), [](unsigned char c) { return std::isdigit(c); }))
          throw bad("bad element '" + tok + "'");
        auto e = std::stoul(tok);
        if (e >= g.order()) throw bad("element " + tok + " out of range");
        gens.push_back(static_cast<Element>(e));
      }
      stabs.push_back(generated_subgroup(g, gens));
    } else {
      throw bad("unknown term '" + term + "'");
    }
  }
  if (stabs.empty()) throw bad("empty");
  return GSet::from_cosets(g, stabs);
}

/// Strict order relation on elements 0..size-1.
struct Poset {
  std::size_t size = 0;
  std::vector<char> lt;  // lt[a * size + b] : a < b

  explicit Poset(std::size_t n = 0) : size(n), lt(n * n, 0) {}
  bool less(std::size_t a, std::size_t b) const { return lt[a * size + b]; }
  bool comparable(std::size_t a, std::size_t b) const { return less(a, b) || less(b, a); }
  std::size_t below(std::size_t a) const {
    std::size_t c = 0;
    for (std::size_t b = 0; b < size; ++b) c += less(b, a);
    return c;
  }
  std::size_t above(std::size_t a) const {
    std::size_t c = 0;
    for (std::size_t b = 0; b < size; ++b) c += less(a, b);
    return c;
  }
  bool is_antichain() const { return std::none_of(lt.begin(), lt.end(), [](char c) { return c != 0; }); }
};

/// Set partition in restricted-growth form: block[x] is the index of x's
/// block, blocks numbered by first occurrence.
using SetPartition = std::vector<std::uint32_t>;

inline SetPartition restricted_growth(const std::vector<std::size_t>& labels) {
  std::map<std::size_t, std::uint32_t> renum;
  SetPartition out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto it = renum.try_emplace(labels[i], static_cast<std::uint32_t>(renum.size())).first;
    out[i] = it->second;
  }
  return out;
}

inline std::size_t block_count(const SetPartition& p) {
  return p.empty() ? 0 : *std::max_element(p.begin(), p.end()) + 1;
}

/// a refines b (every block of a inside a block of b).
inline bool refines(const SetPartition& a, const SetPartition& b) {
  std::vector<std::int64_t> image(block_count(a), -1);
  for (std::size_t x = 0; x < a.size(); ++x) {
    auto& slot = image[a[x]];
    if (slot == -1) slot = b[x];
    else if (slot != static_cast<std::int64_t>(b[x])) return false;
  }
  return true;
}

inline bool is_invariant(const GSet& m, const SetPartition& p) {
  for (Element g = 0; g < m.group().order(); ++g)
    for (std::size_t x = 0; x < m.size(); ++x)
      for (std::size_t y = x + 1; y < m.size(); ++y)
        if ((p[x] == p[y]) != (p[m.act(g, x)] == p[m.act(g, y)])) return false;
  return true;
}

struct PartitionPoset {
  std::vector<SetPartition> elements;  // sorted
  Poset order;                         // refinement
};

/// G-invariant partitions of M other than the discrete and indiscrete ones,
/// ordered by refinement.
///
/// Starting from the discrete partition, repeatedly merges two blocks and
/// closes up under the generators of G (an equivalence relation invariant
/// under generators is invariant), collecting everything reachable. Every
/// invariant partition is reached since it is obtained from any invariant
/// refinement by merging its blocks one pair at a time.
inline PartitionPoset fixed_partition_poset(const GSet& m, const Limits& limits = {}) {
  if (m.size() > limits.gset_cap)
    throw Error(Errc::SizeCapExceeded, "G-set of size " + std::to_string(m.size()) + " exceeds cap " +
                                           std::to_string(limits.gset_cap));
  const std::size_t size = m.size();
  const auto gens = generating_set(m.group());

  auto close = [&](std::vector<std::size_t> parent) {
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    bool changed = true;
    while (changed) {
      changed = false;
      for (auto g : gens)
        for (std::size_t x = 0; x < size; ++x) {
          auto a = find(m.act(g, x)), b = find(m.act(g, find(x)));
          if (a != b) {
            parent[std::max(a, b)] = std::min(a, b);
            changed = true;
          }
        }
    }
    std::vector<std::size_t> labels(size);
    for (std::size_t x = 0; x < size; ++x) labels[x] = find(x);
    return restricted_growth(labels);
  };

  std::set<SetPartition> found;
  std::vector<SetPartition> frontier;
  {
    std::vector<std::size_t> id(size);
    std::iota(id.begin(), id.end(), 0);
    auto discrete = close(id);
    found.insert(discrete);
    frontier.push_back(discrete);
  }
  while (!frontier.empty()) {
    std::vector<SetPartition> next;
    for (const auto& p : frontier) {
      const auto blocks = block_count(p);
      std::vector<std::size_t> first(blocks, size);
      for (std::size_t x = size; x-- > 0;) first[p[x]] = x;
      for (std::size_t a = 0; a < blocks; ++a)
        for (std::size_t b = a + 1; b < blocks; ++b) {
          std::vector<std::size_t> parent(size);
          for (std::size_t x = 0; x < size; ++x) parent[x] = first[p[x]];
          parent[first[b]] = first[a];
          auto q = close(parent);
          if (found.insert(q).second) next.push_back(std::move(q));
        }
    }
    frontier = std::move(next);
  }

  PartitionPoset out;
  for (const auto& p : found) {
    const auto b = block_count(p);
    if (b == size || b <= 1) continue;  // discrete or indiscrete
    out.elements.push_back(p);
  }
  out.order = Poset(out.elements.size());
  for (std::size_t a = 0; a < out.elements.size(); ++a)
    for (std::size_t b = 0; b < out.elements.size(); ++b)
      if (a != b && refines(out.elements[a], out.elements[b])) out.order.lt[a * out.order.size + b] = 1;
  return out;
}

enum class Openness { Open, ClosedBelow, ClosedAbove, Closed };

struct SubgroupPoset {
  std::vector<SubgroupId> ids;
  Poset order;  // proper inclusion
};

/// Subgroups K with lower (<|<=) K (<|<=) upper, ordered by inclusion.
inline SubgroupPoset interval_poset(const SubgroupLattice& lat, SubgroupId lower, SubgroupId upper,
                                    Openness openness = Openness::Open) {
  if (!lat.contains(lower, upper)) throw Error(Errc::NotASubgroupInclusion, "lower bound not below upper bound");
  const bool incl_lo = openness == Openness::ClosedBelow || openness == Openness::Closed;
  const bool incl_hi = openness == Openness::ClosedAbove || openness == Openness::Closed;
  SubgroupPoset p;
  for (SubgroupId k = 0; k < lat.size(); ++k) {
    if (!lat.contains(lower, k) || !lat.contains(k, upper)) continue;
    if ((k == lower && !incl_lo) || (k == upper && !incl_hi)) continue;
    p.ids.push_back(k);
  }
  p.order = Poset(p.ids.size());
  for (std::size_t a = 0; a < p.ids.size(); ++a)
    for (std::size_t b = 0; b < p.ids.size(); ++b)
      if (a != b && lat.contains(p.ids[a], p.ids[b])) p.order.lt[a * p.order.size + b] = 1;
  return p;
}

/// Backtracking search for an order isomorphism, pruned by the number of
/// elements below and above each element. Returns the map a -> f(a).
inline std::optional<std::vector<std::size_t>> find_poset_isomorphism(const Poset& a, const Poset& b) {
  if (a.size != b.size) return std::nullopt;
  const std::size_t n = a.size;
  std::vector<std::pair<std::size_t, std::size_t>> sig_a(n), sig_b(n);
  for (std::size_t i = 0; i < n; ++i) {
    sig_a[i] = {a.below(i), a.above(i)};
    sig_b[i] = {b.below(i), b.above(i)};
  }
  {
    auto sa = sig_a, sb = sig_b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return std::nullopt;
  }
  std::vector<std::size_t> f(n, 0);
  std::vector<bool> used(n, false);
  auto search = [&](auto&& self, std::size_t i) -> bool {
    if (i == n) return true;
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j] || sig_a[i] != sig_b[j]) continue;
      bool ok = true;
      for (std::size_t p = 0; p < i && ok; ++p)
        ok = a.less(p, i) == b.less(f[p], j) && a.less(i, p) == b.less(j, f[p]);
      if (!ok) continue;
      f[i] = j;
      used[j] = true;
      if (self(self, i + 1)) return true;
      used[j] = false;
    }
    return false;
  };
  if (!search(search, 0)) return std::nullopt;
  return f;
}

/// Reduced Betti numbers; values[d + 1] is the rank of reduced H_d, so
/// values[0] is 1 exactly for the empty poset.
struct ReducedBetti {
  std::vector<std::size_t> values;
  std::size_t at(int degree) const {
    auto i = static_cast<std::size_t>(degree + 1);
    return i < values.size() ? values[i] : 0;
  }
  bool all_zero() const {
    return std::all_of(values.begin(), values.end(), [](std::size_t v) { return v == 0; });
  }
  /// Highest degree with a nonzero value, or -2 if none.
  int top_degree() const {
    for (std::size_t i = values.size(); i-- > 0;)
      if (values[i]) return static_cast<int>(i) - 1;
    return -2;
  }
};

namespace detail {

// Augmented complex from per-degree chain lists (degree d at index d) with
// faces resolved by `face_index(d, chain_without_one)`.
template <class ChainT, class Locate>
ReducedBetti augmented_homology(const std::vector<std::vector<ChainT>>& chains, Locate locate) {
  std::vector<SparseIntMatrix> bd;
  bd.emplace_back(0, 1);  // degree -1: the empty chain
  const std::size_t v = chains.empty() ? 0 : chains[0].size();
  {
    SparseIntMatrix d0(1, v);
    for (std::size_t j = 0; j < v; ++j) d0.set_column(j, {{0, mpz_class(1)}});
    bd.push_back(std::move(d0));
  }
  for (std::size_t k = 1; k < chains.size(); ++k) {
    SparseIntMatrix d(chains[k - 1].size(), chains[k].size());
    for (std::size_t j = 0; j < chains[k].size(); ++j) {
      std::vector<SparseIntMatrix::Entry> col;
      for (std::size_t i = 0; i <= k; ++i) {
        auto f = chains[k][j];
        f.erase(f.begin() + static_cast<std::ptrdiff_t>(i));
        col.emplace_back(locate(k - 1, f), mpz_class(i % 2 == 0 ? 1 : -1));
      }
      d.set_column(j, std::move(col));
    }
    bd.push_back(std::move(d));
  }
  return {homology(bd).betti};
}

}  // namespace detail

/// Reduced rational homology of the order complex (strict chains) of a poset.
inline ReducedBetti reduced_betti_of_order_complex(const Poset& p, const Limits& limits = {}) {
  using PChain = std::vector<std::size_t>;
  std::vector<std::vector<PChain>> chains;
  std::size_t total = 0;
  PChain cur;
  auto dfs = [&](auto&& self) -> void {
    const std::size_t k = cur.size() - 1;
    if (chains.size() <= k) chains.resize(k + 1);
    chains[k].push_back(cur);
    if (++total > limits.basis_cap) throw Error(Errc::BasisCapExceeded, "order complex exceeds basis cap");
    for (std::size_t b = 0; b < p.size; ++b)
      if (p.less(cur.back(), b)) {
        cur.push_back(b);
        self(self);
        cur.pop_back();
      }
  };
  for (std::size_t a = 0; a < p.size; ++a) {
    cur.assign(1, a);
    dfs(dfs);
  }
  for (auto& c : chains) std::sort(c.begin(), c.end());
  return detail::augmented_homology(chains, [&](std::size_t d, const PChain& f) {
    const auto& b = chains[d];
    return static_cast<std::size_t>(std::lower_bound(b.begin(), b.end(), f) - b.begin());
  });
}

inline ReducedBetti reduced_betti_of_order_complex(const PartitionPoset& p, const Limits& limits = {}) {
  return reduced_betti_of_order_complex(p.order, limits);
}

inline ReducedBetti reduced_betti_of_order_complex(const SubgroupPoset& p, const Limits& limits = {}) {
  return reduced_betti_of_order_complex(p.order, limits);
}

/// Reduced homology of the order complex of a conjugation-stable subgroup
/// interval, taken on conjugacy classes of chains.
inline ReducedBetti reduced_betti_of_interval_quotient(const SubgroupLattice& lat, SubgroupId lower, SubgroupId upper,
                                                       Openness openness = Openness::Open) {
  const auto& g = lat.group();
  for (Element x = 0; x < g.order(); ++x)
    if (lat.conjugate(x, lower) != lower || lat.conjugate(x, upper) != upper)
      throw Error(Errc::NotNormal, "interval bounds must be normal");
  auto iv = interval_poset(lat, lower, upper, openness);
  std::vector<std::set<Chain>> classes;
  Chain cur;
  auto dfs = [&](auto&& self, std::size_t last) -> void {
    const std::size_t k = cur.size() - 1;
    if (classes.size() <= k) classes.resize(k + 1);
    classes[k].insert(lat.canonical(cur));
    for (std::size_t b = 0; b < iv.ids.size(); ++b)
      if (iv.order.less(last, b)) {
        cur.push_back(iv.ids[b]);
        self(self, b);
        cur.pop_back();
      }
  };
  for (std::size_t a = 0; a < iv.ids.size(); ++a) {
    cur.assign(1, iv.ids[a]);
    dfs(dfs, a);
  }
  std::vector<std::vector<Chain>> chains;
  for (auto& s : classes) chains.emplace_back(s.begin(), s.end());
  return detail::augmented_homology(chains, [&](std::size_t d, const Chain& f) {
    const auto& b = chains[d];
    return static_cast<std::size_t>(std::lower_bound(b.begin(), b.end(), lat.canonical(f)) - b.begin());
  });
}

/// For M = G/H: the invariant-partition poset of M is isomorphic to the
/// open subgroup interval (H, G).
inline bool check_transitive_iso(const SubgroupLattice& lat, SubgroupId h, const Limits& limits = {}) {
  const auto& g = lat.group();
  const std::size_t idx = g.order() / lat.order_of(h);
  if (idx > limits.gset_cap)
    throw Error(Errc::SizeCapExceeded, "[G:H] = " + std::to_string(idx) + " exceeds cap");
  auto m = GSet::from_cosets(g, {lat.subgroup(h)});
  auto parts = fixed_partition_poset(m, limits);
  auto iv = interval_poset(lat, h, lat.top(), Openness::Open);
  return find_poset_isomorphism(parts.order, iv.order).has_value();
}

}  // namespace spq
