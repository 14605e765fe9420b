#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "spq/group.hpp"

namespace spq {

/// A homomorphism between finite groups, validated on construction.
class GroupHom {
 public:
  GroupHom(FiniteGroup source, FiniteGroup target, std::vector<Element> image_of)
      : source_(std::move(source)), target_(std::move(target)), image_of_(std::move(image_of)) {
    if (image_of_.size() != source_.order())
      throw Error(Errc::NotAHomomorphism, "image table has wrong length");
    for (auto y : image_of_)
      if (y >= target_.order()) throw Error(Errc::NotAHomomorphism, "image out of range");
    if (image_of_[0] != FiniteGroup::identity)
      throw Error(Errc::NotAHomomorphism, "identity not preserved");
    for (Element a = 0; a < source_.order(); ++a)
      for (Element b = 0; b < source_.order(); ++b)
        if (image_of_[source_.mul(a, b)] != target_.mul(image_of_[a], image_of_[b]))
          throw Error(Errc::NotAHomomorphism,
                      "multiplicativity fails at (" + std::to_string(a) + ", " + std::to_string(b) + ")",
                      {a, b});
    ElementSet img(target_.order()), ker(source_.order());
    for (Element a = 0; a < source_.order(); ++a) {
      img.insert(image_of_[a]);
      if (image_of_[a] == FiniteGroup::identity) ker.insert(a);
    }
    surjective_ = img.count() == target_.order();
    kernel_ = Subgroup(std::move(ker));
  }

  static GroupHom identity(const FiniteGroup& g) {
    std::vector<Element> id(g.order());
    for (Element a = 0; a < g.order(); ++a) id[a] = a;
    return GroupHom(g, g, std::move(id));
  }

  const FiniteGroup& source() const { return source_; }
  const FiniteGroup& target() const { return target_; }
  Element operator()(Element a) const { return image_of_[a]; }
  const std::vector<Element>& image_of() const { return image_of_; }
  bool surjective() const { return surjective_; }
  bool injective() const { return kernel_.order == 1; }
  const Subgroup& kernel() const { return kernel_; }

  Subgroup image(const Subgroup& h) const {
    ElementSet s(target_.order());
    for (auto a : h.elements()) s.insert(image_of_[a]);
    return Subgroup(std::move(s));
  }

  Subgroup preimage(const Subgroup& h) const {
    ElementSet s(source_.order());
    for (Element a = 0; a < source_.order(); ++a)
      if (h.contains(image_of_[a])) s.insert(a);
    return Subgroup(std::move(s));
  }

  /// this ∘ first: apply `first`, then this map.
  GroupHom after(const GroupHom& first) const {
    if (!first.target_.same_table(source_))
      throw Error(Errc::NotAHomomorphism, "maps are not composable");
    std::vector<Element> im(first.source_.order());
    for (Element a = 0; a < im.size(); ++a) im[a] = image_of_[first.image_of_[a]];
    return GroupHom(first.source_, target_, std::move(im));
  }

  friend bool operator==(const GroupHom& a, const GroupHom& b) {
    return a.source_.same_table(b.source_) && a.target_.same_table(b.target_) &&
           a.image_of_ == b.image_of_;
  }

 private:
  FiniteGroup source_;
  FiniteGroup target_;
  std::vector<Element> image_of_;
  bool surjective_ = false;
  Subgroup kernel_;
};

/// Inner automorphism x -> g x g^-1.
inline GroupHom conjugation_map(const FiniteGroup& g, Element by) {
  std::vector<Element> im(g.order());
  for (Element a = 0; a < g.order(); ++a) im[a] = g.conjugate(by, a);
  return GroupHom(g, g, std::move(im));
}

/// G/N on coset representatives (the least element of each coset, cosets
/// ordered by representative) together with the projection.
inline std::pair<FiniteGroup, GroupHom> quotient(const FiniteGroup& g, const Subgroup& n,
                                                 const Limits& limits = {}) {
  if (!is_normal(g, n)) throw Error(Errc::NotNormal, "subgroup is not normal");
  const auto nel = n.elements();
  std::vector<Element> coset_of(g.order(), static_cast<Element>(-1));
  std::vector<Element> reps;
  for (Element a = 0; a < g.order(); ++a) {
    if (coset_of[a] != static_cast<Element>(-1)) continue;
    auto idx = static_cast<Element>(reps.size());
    reps.push_back(a);
    for (auto x : nel) coset_of[g.mul(a, x)] = idx;
  }
  const std::size_t q = reps.size();
  std::vector<std::vector<Element>> t(q, std::vector<Element>(q));
  for (Element i = 0; i < q; ++i)
    for (Element j = 0; j < q; ++j) t[i][j] = coset_of[g.mul(reps[i], reps[j])];
  auto qg = FiniteGroup::from_cayley_table(std::move(t), g.label() + "/N", limits);
  std::vector<Element> qgens;
  for (auto s : generating_set(g))
    if (coset_of[s] != 0 && std::find(qgens.begin(), qgens.end(), coset_of[s]) == qgens.end())
      qgens.push_back(coset_of[s]);
  qg = qg.with_generators(std::move(qgens));
  GroupHom proj(g, qg, coset_of);
  return {std::move(qg), std::move(proj)};
}

/// H as a group in its own right (elements numbered in increasing parent
/// index order) and its inclusion into G.
inline std::pair<FiniteGroup, GroupHom> subgroup_as_group(const FiniteGroup& g, const Subgroup& h,
                                                          std::string label = {}) {
  auto el = h.elements();
  std::vector<Element> local(g.order(), 0);
  for (Element i = 0; i < el.size(); ++i) local[el[i]] = i;
  std::vector<std::vector<Element>> t(el.size(), std::vector<Element>(el.size()));
  for (Element i = 0; i < el.size(); ++i)
    for (Element j = 0; j < el.size(); ++j) {
      auto p = g.mul(el[i], el[j]);
      if (!h.contains(p)) throw Error(Errc::NotASubgroupInclusion, "set is not closed");
      t[i][j] = local[p];
    }
  if (label.empty()) label = g.label() + "<" + std::to_string(el.size()) + ">";
  Limits unlimited;
  unlimited.order_cap = el.size();
  auto hg = FiniteGroup::from_cayley_table(std::move(t), std::move(label), unlimited);
  GroupHom inc(hg, g, el);
  return {std::move(hg), std::move(inc)};
}

/// A homomorphism up to postcomposition with inner automorphisms of the target.
struct HomClass {
  GroupHom representative;
  std::size_t class_size = 1;  // number of distinct target conjugates
};

/// Homomorphisms G -> K up to conjugacy in K.
///
/// Backtracks over images of a generating set; after each assignment the
/// partial map is extended to the subgroup generated so far, which prunes
/// assignments violating a relation early. Classes are keyed by the least
/// conjugate of the generator images and returned in key order.
inline std::vector<HomClass> enumerate_homomorphisms(const FiniteGroup& g, const FiniteGroup& k,
                                                     bool surjective_only, const Limits& limits = {}) {
  if (g.order() * k.order() > limits.product_cap)
    throw Error(Errc::ProductCapExceeded, "|G|*|K| = " + std::to_string(g.order() * k.order()) +
                                              " exceeds cap " + std::to_string(limits.product_cap));
  const auto gens = generating_set(g);
  const std::size_t r = gens.size();
  std::vector<std::size_t> gen_order(r);
  for (std::size_t i = 0; i < r; ++i) gen_order[i] = g.element_order(gens[i]);
  std::vector<std::size_t> k_order(k.order());
  for (Element y = 0; y < k.order(); ++y) k_order[y] = k.element_order(y);

  constexpr Element unset = static_cast<Element>(-1);
  std::map<std::vector<Element>, HomClass> found;
  std::vector<Element> img(r, 0);

  // Extends the first `upto` generator images to the generated subgroup; false on a clash.
  auto extend = [&](std::size_t upto, std::vector<Element>& map) {
    std::fill(map.begin(), map.end(), unset);
    map[0] = 0;
    std::vector<Element> queue{0};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      Element x = queue[head];
      for (std::size_t i = 0; i < upto; ++i) {
        Element y = g.mul(x, gens[i]);
        Element fy = k.mul(map[x], img[i]);
        if (map[y] == unset) {
          map[y] = fy;
          queue.push_back(y);
        } else if (map[y] != fy) {
          return false;
        }
      }
    }
    return true;
  };

  std::vector<Element> map(g.order());
  auto recurse = [&](auto&& self, std::size_t j) -> void {
    if (j == r) {
      if (!extend(r, map)) return;
      if (surjective_only) {
        ElementSet im(k.order());
        for (auto y : map) im.insert(y);
        if (im.count() != k.order()) return;
      }
      std::vector<Element> best = img;
      std::size_t conj_count = 0;
      std::vector<std::vector<Element>> conjugates;
      for (Element c = 0; c < k.order(); ++c) {
        std::vector<Element> cimg(r);
        for (std::size_t i = 0; i < r; ++i) cimg[i] = k.conjugate(c, img[i]);
        if (std::find(conjugates.begin(), conjugates.end(), cimg) == conjugates.end()) {
          conjugates.push_back(cimg);
          ++conj_count;
        }
        if (cimg < best) best = cimg;
      }
      if (found.count(best)) return;
      // materialise the least conjugate as the class representative
      std::vector<Element> saved = img;
      img = best;
      extend(r, map);
      found.emplace(best, HomClass{GroupHom(g, k, map), conj_count});
      img = saved;
      return;
    }
    for (Element y = 0; y < k.order(); ++y) {
      if (gen_order[j] % k_order[y] != 0) continue;
      img[j] = y;
      if (!extend(j + 1, map)) continue;
      self(self, j + 1);
    }
  };
  recurse(recurse, 0);

  std::vector<HomClass> out;
  out.reserve(found.size());
  for (auto& [key, hc] : found) out.push_back(std::move(hc));
  return out;
}

}  // namespace spq
