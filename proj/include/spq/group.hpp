#pragma once

// Finite groups given by a total multiplication table.
//
// Elements are indexed 0..order-1 and element 0 is always the identity.
// Groups are immutable; copies share the underlying tables.

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spq/element_set.hpp"
#include "spq/error.hpp"

namespace spq {

class FiniteGroup {
 public:
  static constexpr Element identity = 0;

  FiniteGroup() : FiniteGroup(trivial_data()) {}

  std::size_t order() const { return d_->order; }
  Element mul(Element a, Element b) const { return d_->mul[a * d_->order + b]; }
  Element inv(Element a) const { return d_->inv[a]; }
  const std::string& label() const { return d_->label; }
  const std::vector<Element>& generators() const { return d_->generators; }

  Element conjugate(Element g, Element x) const { return mul(mul(g, x), inv(g)); }

  std::size_t element_order(Element g) const {
    std::size_t k = 1;
    for (Element x = g; x != identity; x = mul(x, g)) ++k;
    return k;
  }

  /// Whether two handles refer to the same group object.
  bool same_as(const FiniteGroup& other) const { return d_ == other.d_; }

  /// Whether the multiplication tables coincide (same presentation).
  bool same_table(const FiniteGroup& other) const {
    return d_ == other.d_ || (d_->order == other.d_->order && d_->mul == other.d_->mul);
  }

  std::vector<std::vector<Element>> table() const {
    std::vector<std::vector<Element>> t(order(), std::vector<Element>(order()));
    for (Element a = 0; a < order(); ++a)
      for (Element b = 0; b < order(); ++b) t[a][b] = mul(a, b);
    return t;
  }

  /// Validates and wraps a Cayley table. If the identity is not at index 0
  /// the elements are relabelled by swapping it into position 0.
  static FiniteGroup from_cayley_table(std::vector<std::vector<Element>> table, std::string label,
                                       const Limits& limits = {}) {
    const std::size_t n = table.size();
    if (n == 0) throw Error(Errc::NotAGroup, "empty table");
    if (n > limits.order_cap)
      throw Error(Errc::OrderCapExceeded,
                  "order " + std::to_string(n) + " exceeds cap " + std::to_string(limits.order_cap));
    for (const auto& row : table) {
      if (row.size() != n) throw Error(Errc::NotAGroup, "table is not square");
      for (auto x : row)
        if (x >= n) throw Error(Errc::NotAGroup, "entry out of range");
    }

    std::optional<Element> e;
    for (Element c = 0; c < n && !e; ++c) {
      bool ok = true;
      for (Element g = 0; g < n && ok; ++g) ok = table[c][g] == g && table[g][c] == g;
      if (ok) e = c;
    }
    if (!e) throw Error(Errc::NotAGroup, "no two-sided identity");

    if (*e != 0) {
      // relabel by the transposition (0 e)
      auto swap_label = [&](Element x) -> Element { return x == 0 ? *e : (x == *e ? 0 : x); };
      std::vector<std::vector<Element>> t(n, std::vector<Element>(n));
      for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b) t[a][b] = swap_label(table[swap_label(a)][swap_label(b)]);
      table = std::move(t);
    }

    auto d = std::make_shared<Data>();
    d->order = n;
    d->label = std::move(label);
    d->mul.resize(n * n);
    for (Element a = 0; a < n; ++a)
      for (Element b = 0; b < n; ++b) d->mul[a * n + b] = table[a][b];

    d->inv.assign(n, 0);
    for (Element a = 0; a < n; ++a) {
      std::optional<Element> ia;
      for (Element b = 0; b < n; ++b)
        if (table[a][b] == 0 && table[b][a] == 0) {
          ia = b;
          break;
        }
      if (!ia) throw Error(Errc::NotAGroup, "element " + std::to_string(a) + " has no inverse", {a});
      d->inv[a] = *ia;
    }

    for (Element a = 0; a < n; ++a)
      for (Element b = 0; b < n; ++b) {
        const Element ab = table[a][b];
        for (Element c = 0; c < n; ++c)
          if (table[ab][c] != table[a][table[b][c]])
            throw Error(Errc::NotAGroup,
                        "associativity fails at (" + std::to_string(a) + ", " + std::to_string(b) +
                            ", " + std::to_string(c) + ")",
                        {a, b, c});
      }
    return FiniteGroup(std::move(d));
  }

  /// Enumerates the group generated by `gens` inside some ambient structure
  /// with multiplication `op`. Elements are numbered in breadth-first order
  /// from the identity, trying generators in the given order.
  template <class T, class Op>
  static FiniteGroup from_generators(const std::vector<T>& gens, const T& one, Op op,
                                     std::string label, const Limits& limits = {}) {
    std::vector<T> elems{one};
    std::map<T, Element> index{{one, 0}};
    for (std::size_t head = 0; head < elems.size(); ++head) {
      for (const auto& s : gens) {
        T y = op(elems[head], s);
        if (index.emplace(y, static_cast<Element>(elems.size())).second) {
          elems.push_back(std::move(y));
          if (elems.size() > limits.order_cap)
            throw Error(Errc::OrderCapExceeded,
                        "generated group exceeds order cap " + std::to_string(limits.order_cap));
        }
      }
    }
    const std::size_t n = elems.size();
    auto d = std::make_shared<Data>();
    d->order = n;
    d->label = std::move(label);
    d->mul.resize(n * n);
    d->inv.assign(n, 0);
    for (Element a = 0; a < n; ++a)
      for (Element b = 0; b < n; ++b) {
        auto it = index.find(op(elems[a], elems[b]));
        if (it == index.end()) throw Error(Errc::NotAGroup, "generated set is not closed");
        d->mul[a * n + b] = it->second;
        if (it->second == 0) d->inv[a] = b;
      }
    for (const auto& s : gens) d->generators.push_back(index.at(s));
    dedupe_generators(d->generators);
    return FiniteGroup(std::move(d));
  }

  /// Group generated by permutations of {0..degree-1}; the product p*q
  /// applies q first, then p.
  static FiniteGroup from_permutation_generators(std::size_t degree,
                                                 const std::vector<std::vector<std::size_t>>& gens,
                                                 std::string label, const Limits& limits = {}) {
    if (degree == 0) throw Error(Errc::InvalidPermutation, "degree must be positive");
    for (const auto& p : gens) {
      if (p.size() != degree) throw Error(Errc::InvalidPermutation, "generator has wrong length");
      std::vector<bool> seen(degree, false);
      for (auto x : p) {
        if (x >= degree || seen[x]) throw Error(Errc::InvalidPermutation, "generator is not a bijection");
        seen[x] = true;
      }
    }
    std::vector<std::size_t> id(degree);
    for (std::size_t i = 0; i < degree; ++i) id[i] = i;
    auto compose = [](const std::vector<std::size_t>& p, const std::vector<std::size_t>& q) {
      std::vector<std::size_t> r(p.size());
      for (std::size_t i = 0; i < p.size(); ++i) r[i] = p[q[i]];
      return r;
    };
    return from_generators(gens, id, compose, std::move(label), limits);
  }

  FiniteGroup with_label(std::string label) const {
    auto d = std::make_shared<Data>(*d_);
    d->label = std::move(label);
    return FiniteGroup(std::move(d));
  }

  FiniteGroup with_generators(std::vector<Element> gens) const {
    auto d = std::make_shared<Data>(*d_);
    d->generators = std::move(gens);
    return FiniteGroup(std::move(d));
  }

 private:
  struct Data {
    std::size_t order = 1;
    std::vector<Element> mul{0};
    std::vector<Element> inv{0};
    std::string label = "C1";
    std::vector<Element> generators;
  };

  explicit FiniteGroup(std::shared_ptr<const Data> d) : d_(std::move(d)) {}

  static std::shared_ptr<const Data> trivial_data() {
    static const auto t = std::make_shared<const Data>();
    return t;
  }

  static void dedupe_generators(std::vector<Element>& gens) {
    std::vector<Element> out;
    for (auto g : gens)
      if (g != identity && std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
    gens = std::move(out);
  }

  std::shared_ptr<const Data> d_;
};

/// Direct product; element (a, b) gets index a * |B| + b.
inline FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b, std::string label,
                                  const Limits& limits = {}) {
  const std::size_t na = a.order(), nb = b.order();
  if (na * nb > limits.order_cap)
    throw Error(Errc::OrderCapExceeded, "product order " + std::to_string(na * nb) + " exceeds cap");
  std::vector<std::vector<Element>> t(na * nb, std::vector<Element>(na * nb));
  for (Element x = 0; x < na * nb; ++x)
    for (Element y = 0; y < na * nb; ++y)
      t[x][y] = static_cast<Element>(a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb));
  auto g = FiniteGroup::from_cayley_table(std::move(t), std::move(label), limits);
  std::vector<Element> gens;
  for (auto s : a.generators()) gens.push_back(static_cast<Element>(s * nb));
  for (auto s : b.generators()) gens.push_back(s);
  return g.with_generators(std::move(gens));
}

/// A subgroup, stored as its member set together with the cached order.
struct Subgroup {
  ElementSet members;
  std::size_t order = 0;

  Subgroup() = default;
  explicit Subgroup(ElementSet m) : members(std::move(m)), order(members.count()) {}

  bool contains(Element g) const { return members.contains(g); }
  bool is_subgroup_of(const Subgroup& other) const { return members.is_subset_of(other.members); }
  std::vector<Element> elements() const { return members.elements(); }

  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.members == b.members; }
  friend bool operator<(const Subgroup& a, const Subgroup& b) {
    return canonical_less(a.members, b.members);
  }
};

/// Closure of a set of elements under multiplication (finite, so inverses come free).
inline Subgroup generated_subgroup(const FiniteGroup& g, const std::vector<Element>& gens) {
  ElementSet s(g.order());
  std::vector<Element> elems{FiniteGroup::identity};
  s.insert(FiniteGroup::identity);
  for (std::size_t head = 0; head < elems.size(); ++head)
    for (auto x : gens) {
      Element y = g.mul(elems[head], x);
      if (!s.contains(y)) {
        s.insert(y);
        elems.push_back(y);
      }
    }
  return Subgroup(std::move(s));
}

inline Subgroup trivial_subgroup(const FiniteGroup& g) {
  ElementSet s(g.order());
  s.insert(FiniteGroup::identity);
  return Subgroup(std::move(s));
}

inline Subgroup whole_group(const FiniteGroup& g) { return Subgroup(ElementSet::full(g.order())); }

/// Checks the subgroup axioms on an arbitrary member set.
inline bool is_subgroup(const FiniteGroup& g, const ElementSet& s) {
  if (!s.contains(FiniteGroup::identity)) return false;
  auto el = s.elements();
  for (auto a : el) {
    if (!s.contains(g.inv(a))) return false;
    for (auto b : el)
      if (!s.contains(g.mul(a, b))) return false;
  }
  return true;
}

inline Subgroup conjugate(const FiniteGroup& g, Element x, const Subgroup& h) {
  ElementSet s(g.order());
  for (auto e : h.elements()) s.insert(g.conjugate(x, e));
  return Subgroup(std::move(s));
}

/// [K : H] for H contained in K.
inline std::size_t index(const Subgroup& h, const Subgroup& k) {
  if (!h.is_subgroup_of(k)) throw Error(Errc::NotASubgroupInclusion, "H is not contained in K");
  return k.order / h.order;
}

inline Subgroup normalizer(const FiniteGroup& g, const Subgroup& h) {
  ElementSet s(g.order());
  for (Element x = 0; x < g.order(); ++x)
    if (conjugate(g, x, h) == h) s.insert(x);
  return Subgroup(std::move(s));
}

inline bool is_normal(const FiniteGroup& g, const Subgroup& h) {
  return normalizer(g, h).order == g.order();
}

/// Intersection of all K-conjugates of H (H contained in K).
inline Subgroup core_in(const FiniteGroup& g, const Subgroup& h, const Subgroup& k) {
  if (!h.is_subgroup_of(k)) throw Error(Errc::NotASubgroupInclusion, "H is not contained in K");
  ElementSet s = h.members;
  for (auto x : k.elements()) s &= conjugate(g, x, h).members;
  return Subgroup(std::move(s));
}

/// Greedy generating set: repeatedly adjoin the element that enlarges the
/// generated subgroup most (ties broken by smallest index).
inline std::vector<Element> greedy_generating_set(const FiniteGroup& g) {
  std::vector<Element> gens;
  Subgroup cur = trivial_subgroup(g);
  while (cur.order < g.order()) {
    Element best = 0;
    std::size_t best_size = 0;
    for (Element x = 1; x < g.order(); ++x) {
      if (cur.contains(x)) continue;
      auto trial = gens;
      trial.push_back(x);
      auto sz = generated_subgroup(g, trial).order;
      if (sz > best_size) {
        best_size = sz;
        best = x;
        if (sz == g.order()) break;
      }
    }
    gens.push_back(best);
    cur = generated_subgroup(g, gens);
  }
  return gens;
}

/// The group's own generators if it carries them, otherwise a greedy set.
inline std::vector<Element> generating_set(const FiniteGroup& g) {
  if (!g.generators().empty() && generated_subgroup(g, g.generators()).order == g.order())
    return g.generators();
  return greedy_generating_set(g);
}

}  // namespace spq
