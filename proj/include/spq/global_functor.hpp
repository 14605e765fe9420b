#pragma once

// Transfers and restrictions on rational chains of subgroup lattices, and
// the decomposition of chains into simple chains pulled back along
// quotient maps.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "spq/homomorphism.hpp"
#include "spq/lattice.hpp"

namespace spq {

/// A rational combination of conjugacy classes of chains of one degree.
/// Keys are canonical chains; zero coefficients are never stored.
struct ChainVector {
  LatticePtr lattice;
  std::size_t n = 1;
  std::size_t degree = 0;
  std::map<Chain, mpq_class> coeffs;

  ChainVector() = default;
  ChainVector(LatticePtr lat, std::size_t level, std::size_t deg)
      : lattice(std::move(lat)), n(level), degree(deg) {}

  /// coefficient * [chain]; the chain is canonicalised here.
  static ChainVector of(LatticePtr lat, std::size_t level, const Chain& chain, const mpq_class& coefficient = 1) {
    ChainVector v(lat, level, chain.size() - 1);
    v.add(chain, coefficient);
    return v;
  }

  void add(const Chain& chain, const mpq_class& c) {
    if (c == 0) return;
    if (chain.size() != degree + 1) throw Error(Errc::InvalidArgument, "chain has the wrong degree");
    if (lattice->total_index(chain) > n)
      throw Error(Errc::FiltrationViolation, "chain of total index " + std::to_string(lattice->total_index(chain)) +
                                                 " exceeds level " + std::to_string(n));
    auto key = lattice->canonical(chain);
    auto& slot = coeffs[key];
    slot += c;
    if (slot == 0) coeffs.erase(key);
  }

  ChainVector& operator+=(const ChainVector& o) {
    for (const auto& [c, x] : o.coeffs) add(c, x);
    return *this;
  }

  ChainVector scaled(const mpq_class& s) const {
    ChainVector v(lattice, n, degree);
    if (s == 0) return v;
    for (const auto& [c, x] : coeffs) v.coeffs.emplace(c, x * s);
    return v;
  }

  bool is_zero() const { return coeffs.empty(); }

  friend bool operator==(const ChainVector& a, const ChainVector& b) {
    return a.lattice->group().same_table(b.lattice->group()) && a.n == b.n && a.degree == b.degree &&
           a.coeffs == b.coeffs;
  }
};

inline std::string to_string(const ChainVector& v) {
  std::string s;
  for (const auto& [c, x] : v.coeffs) {
    if (!s.empty()) s += " + ";
    s += x.get_str() + "*[";
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) s += "<";
      s += std::to_string(v.lattice->order_of(c[i])) + "#" + std::to_string(c[i]);
    }
    s += "]";
  }
  return s.empty() ? "0" : s;
}

/// Face d_i (delete H_i) applied termwise; works on degenerate chains too.
inline ChainVector face(const ChainVector& v, std::size_t i) {
  if (v.degree == 0) throw Error(Errc::InvalidArgument, "no faces in degree 0");
  ChainVector out(v.lattice, v.n, v.degree - 1);
  for (const auto& [c, x] : v.coeffs) {
    Chain f = c;
    f.erase(f.begin() + static_cast<std::ptrdiff_t>(i));
    out.add(f, x);
  }
  return out;
}

/// Drops degenerate chains (zero in the normalized complex).
inline ChainVector normalized(const ChainVector& v) {
  ChainVector out(v.lattice, v.n, v.degree);
  for (const auto& [c, x] : v.coeffs)
    if (v.lattice->is_strict(c)) out.coeffs.emplace(c, x);
  return out;
}

/// Alternating sum of all faces, in the normalized complex.
inline ChainVector boundary(const ChainVector& v) {
  if (v.degree == 0) return ChainVector(v.lattice, v.n, 0);
  ChainVector out(v.lattice, v.n, v.degree - 1);
  for (std::size_t i = 0; i <= v.degree; ++i) out += face(v, i).scaled(i % 2 == 0 ? 1 : -1);
  return normalized(out);
}

inline void require_same_group(const FiniteGroup& a, const FiniteGroup& b, const char* what) {
  if (!a.same_table(b)) throw Error(Errc::InvalidArgument, std::string(what) + ": groups do not match");
}

/// Transfer along an injective homomorphism H -> G: each chain of
/// subgroups of H becomes [G:H] times its image chain in G.
inline ChainVector transfer(const GroupHom& inclusion, const ChainVector& v, LatticePtr target) {
  if (!inclusion.injective()) throw Error(Errc::InvalidArgument, "transfer needs an injective map");
  require_same_group(inclusion.source(), v.lattice->group(), "transfer source");
  require_same_group(inclusion.target(), target->group(), "transfer target");
  const mpq_class factor(static_cast<long>(target->group().order() / inclusion.source().order()));
  ChainVector out(target, v.n, v.degree);
  for (const auto& [c, x] : v.coeffs) {
    Chain img(c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
      img[i] = target->id_of(inclusion.image(v.lattice->subgroup(c[i])));
    out.add(img, x * factor);
  }
  return out;
}

/// Views a chain of subgroups of G that lies inside the image of an
/// injective map H -> G as a chain in the lattice of H.
inline Chain lift_to_subgroup(const GroupHom& inclusion, const SubgroupLattice& source,
                              const SubgroupLattice& target, const Chain& chain) {
  const auto image = inclusion.image(whole_group(inclusion.source()));
  Chain out(chain.size());
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const auto& s = target.subgroup(chain[i]);
    if (!s.is_subgroup_of(image))
      throw Error(Errc::ChainNotInSubgroup, "chain member " + std::to_string(i) + " is not inside the subgroup");
    out[i] = source.id_of(inclusion.preimage(s));
  }
  return out;
}

/// Orbits of G x H0^op acting on K by (g, h) . k = psi(g) k h.
struct DoubleCosetDecomposition {
  Subgroup base_subgroup;                   // H0 <= K
  std::vector<Element> representatives;     // least element of each orbit, increasing
  std::vector<std::size_t> orbit_sizes;     // matching representatives
  std::vector<std::size_t> pulled_back_orders;  // |psi^-1(k H0 k^-1)| per representative
};

inline DoubleCosetDecomposition double_cosets(const GroupHom& psi, const Subgroup& h0) {
  const auto& k = psi.target();
  ElementSet image(k.order());
  for (auto y : psi.image_of()) image.insert(y);
  const auto img = image.elements();
  const auto hel = h0.elements();

  DoubleCosetDecomposition d;
  d.base_subgroup = h0;
  std::vector<bool> seen(k.order(), false);
  for (Element x = 0; x < k.order(); ++x) {
    if (seen[x]) continue;
    std::size_t size = 0;
    for (auto a : img)
      for (auto h : hel) {
        auto y = k.mul(k.mul(a, x), h);
        if (!seen[y]) {
          seen[y] = true;
          ++size;
        }
      }
    d.representatives.push_back(x);
    d.orbit_sizes.push_back(size);
    d.pulled_back_orders.push_back(psi.preimage(conjugate(k, x, h0)).order);
  }
  return d;
}

/// Restriction along psi : G -> K before normalization, i.e. the sum over
/// double coset representatives k of
///   [G : psi^-1(k H0 k^-1)] / [K : H0] * [psi^-1(k H0 k^-1) <= ... <= psi^-1(k Hm k^-1)]
/// keeping degenerate chains.
inline ChainVector restrict_simplicial(const GroupHom& psi, const ChainVector& v, LatticePtr source) {
  require_same_group(psi.target(), v.lattice->group(), "restriction target");
  require_same_group(psi.source(), source->group(), "restriction source");
  const auto& K = psi.target();
  const std::size_t g_order = psi.source().order();
  ChainVector out(source, v.n, v.degree);
  for (const auto& [c, x] : v.coeffs) {
    const auto& h0 = v.lattice->subgroup(c.front());
    const auto dc = double_cosets(psi, h0);
    const std::size_t k_index = K.order() / h0.order;
    for (std::size_t r = 0; r < dc.representatives.size(); ++r) {
      const Element k = dc.representatives[r];
      Chain pulled(c.size());
      for (std::size_t i = 0; i < c.size(); ++i)
        pulled[i] = source->id_of(psi.preimage(conjugate(K, k, v.lattice->subgroup(c[i]))));
      if (source->total_index(pulled) > v.n)
        throw Error(Errc::FiltrationViolation, "pulled-back chain leaves the filtration");
      mpq_class coefficient(static_cast<long>(g_order / dc.pulled_back_orders[r]),
                            static_cast<long>(k_index));
      coefficient.canonicalize();
      out.add(pulled, x * coefficient);
    }
  }
  return out;
}

/// Restriction along psi : G -> K on normalized chains.
inline ChainVector restrict(const GroupHom& psi, const ChainVector& v, LatticePtr source) {
  return normalized(restrict_simplicial(psi, v, std::move(source)));
}

/// Compares psi^*(d_0 c) with d_0(psi^* c) for a chain c of degree >= 1.
/// The comparison is made before normalization, where d_0 alone is defined.
inline bool verify_d0_compatibility(const GroupHom& psi, LatticePtr target, LatticePtr source, const Chain& c,
                                    std::size_t n) {
  if (c.size() < 2) throw Error(Errc::InvalidArgument, "d0 compatibility needs degree >= 1");
  const auto v = ChainVector::of(target, n, c);
  const auto lhs = restrict_simplicial(psi, face(v, 0), source);
  const auto rhs = face(restrict_simplicial(psi, v, source), 0);
  return lhs == rhs;
}

/// H_0 contains no nontrivial normal subgroup of H_k.
inline bool is_simple(const SubgroupLattice& lat, const Chain& c) {
  const auto& g = lat.group();
  return core_in(g, lat.subgroup(c.front()), lat.subgroup(c.back())).order == 1;
}

struct SimpleDecomposition {
  Subgroup core;
  FiniteGroup quotient;
  GroupHom projection;
  LatticePtr quotient_lattice;
  Chain image;  // canonical chain in the quotient lattice
};

/// Splits a chain ending at G into its core N (largest subgroup of H_0
/// normal in G) and the simple chain H_0/N < ... < G/N.
inline SimpleDecomposition simple_decomposition(const SubgroupLattice& lat, const Chain& c,
                                                const Limits& limits = {}) {
  if (c.empty() || c.back() != lat.top())
    throw Error(Errc::ChainNotEndingAtTop, "chain does not end at the whole group");
  const auto& g = lat.group();
  auto core = core_in(g, lat.subgroup(c.front()), whole_group(g));
  auto [q, proj] = quotient(g, core, limits);
  auto qlat = SubgroupLattice::make(q);
  Chain img(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) img[i] = qlat->id_of(proj.image(lat.subgroup(c[i])));
  img = qlat->canonical(img);
  if (!is_simple(*qlat, img)) throw Error(Errc::InvalidArgument, "image chain is not simple");
  return {std::move(core), std::move(q), std::move(proj), std::move(qlat), std::move(img)};
}

/// Checks the decomposition of degree-k chains ending at G into pairs
/// (simple chain in a quotient, surjection onto it):
///  - each class pulls back from its simple image (bijection round trip);
///  - the classes with core N are as many as the simple k-chain classes of G/N;
///  - normal subgroups group by isomorphism type of G/N exactly as the
///    kernels of surjections G ->> G/N do, with equal fiber sizes, so the
///    total equals the sum over quotient types of
///    (#simple chain classes) * (#kernels of surjections).
inline bool verify_projective_decomposition(LatticePtr lat, std::size_t n, std::size_t k, const Limits& limits = {}) {
  const auto& g = lat->group();
  const auto level = effective_level(*lat, n);
  auto bases = chain_classes(*lat, level, Flavor::Reduced);
  const std::vector<ChainClass> empty;
  const auto& classes = k < bases.size() ? bases[k] : empty;

  std::map<SubgroupId, std::size_t> fiber;
  for (const auto& cls : classes) {
    auto dec = simple_decomposition(*lat, cls.representative, limits);
    Chain back(cls.representative.size());
    for (std::size_t i = 0; i < back.size(); ++i)
      back[i] = lat->id_of(dec.projection.preimage(dec.quotient_lattice->subgroup(dec.image[i])));
    if (lat->canonical(back) != cls.representative) return false;
    ++fiber[lat->id_of(dec.core)];
  }

  std::vector<SubgroupId> normals;
  for (SubgroupId i = 0; i < lat->size(); ++i)
    if (lat->classes()[lat->class_of(i)].size() == 1) normals.push_back(i);

  std::map<SubgroupId, std::size_t> simple_count;
  std::map<SubgroupId, std::set<SubgroupId>> kernels;
  for (auto nid : normals) {
    auto [q, proj] = quotient(g, lat->subgroup(nid), limits);
    auto qlat = SubgroupLattice::make(q);
    auto qb = chain_classes(*qlat, level, Flavor::Reduced);
    std::size_t count = 0;
    if (k < qb.size())
      for (const auto& cls : qb[k])
        if (is_simple(*qlat, cls.representative)) ++count;
    simple_count[nid] = count;
    if (count != (fiber.count(nid) ? fiber[nid] : 0)) return false;
    for (const auto& hc : enumerate_homomorphisms(g, q, true, limits))
      kernels[nid].insert(lat->id_of(hc.representative.kernel()));
    if (!kernels[nid].count(nid)) return false;
  }

  std::size_t total = 0;
  std::set<SubgroupId> covered;
  for (auto nid : normals) {
    if (covered.count(nid)) continue;
    for (auto other : kernels[nid]) {
      if (!kernels[other].count(nid) || simple_count[other] != simple_count[nid]) return false;
      covered.insert(other);
    }
    total += simple_count[nid] * kernels[nid].size();
  }
  return total == classes.size();
}

}  // namespace spq
