#pragma once

// Verification suites: the worked tables, boundary cases and the
// structural identities, each as a named criterion made of exact checks.

#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "spq/builtin.hpp"
#include "spq/global_functor.hpp"
#include "spq/homology.hpp"
#include "spq/partition.hpp"
#include "spq/report.hpp"

namespace spq {

struct Check {
  std::string name;
  bool pass = false;
  std::string expected;
  std::string computed;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<Check> checks;
  bool pass() const {
    return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
  }
};

template <class T>
std::string show(const std::vector<T>& v) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << ']';
  return os.str();
}

inline const std::vector<std::string>& catalog() {
  static const std::vector<std::string> specs = {
      "C1",  "C2",  "C3",    "C4",   "C5",  "C6",  "C7",  "C8",  "C9",  "C27", "C30", "EA(2,2)", "EA(2,3)",
      "EA(3,2)", "C2xC6", "S3", "D8", "D12", "D16", "Q8", "Q16", "A4", "S4", "SL2F3", "A5"};
  return specs;
}

/// Lattices and reports are memoized across criteria.
class Workspace {
 public:
  LatticePtr lattice(const std::string& spec) {
    std::lock_guard lock(mu_);
    auto it = lattices_.find(spec);
    if (it == lattices_.end()) it = lattices_.emplace(spec, SubgroupLattice::make(builtin(spec))).first;
    return it->second;
  }
  const ComputationReport& report(const std::string& spec, std::size_t n) {
    auto lat = lattice(spec);
    const auto level = effective_level(*lat, n);
    std::lock_guard lock(mu_);
    auto key = std::make_pair(spec, level);
    auto it = reports_.find(key);
    if (it == reports_.end()) it = reports_.emplace(key, compute_report(lat, level)).first;
    return it->second;
  }
  const ProfileReport& profile(const std::string& spec) {
    auto lat = lattice(spec);
    std::lock_guard lock(mu_);
    auto it = profiles_.find(spec);
    if (it == profiles_.end()) it = profiles_.emplace(spec, compute_profile(lat)).first;
    return it->second;
  }

 private:
  std::mutex mu_;
  std::map<std::string, LatticePtr> lattices_;
  std::map<std::pair<std::string, std::size_t>, ComputationReport> reports_;
  std::map<std::string, ProfileReport> profiles_;
};

namespace detail {

inline void expect(CriterionResult& r, std::string name, bool pass, std::string expected, std::string computed) {
  r.checks.push_back({std::move(name), pass, std::move(expected), std::move(computed)});
}

template <class T>
void expect_eq(CriterionResult& r, std::string name, const T& expected, const T& computed) {
  std::ostringstream e, c;
  if constexpr (requires { show(expected); }) {
    e << show(expected);
    c << show(computed);
  } else {
    e << expected;
    c << computed;
  }
  expect(r, std::move(name), expected == computed, e.str(), c.str());
}

struct TableColumn {
  std::size_t from;
  std::optional<std::size_t> to;
  std::vector<std::size_t> pi;  // low degrees; all others must vanish
};

// Every n in each column (up to |G| + 1 for the unbounded one) must give
// the listed pi padded with zeros.
inline void check_table(CriterionResult& r, Workspace& ws, const std::string& spec,
                        const std::vector<TableColumn>& columns) {
  const auto order = ws.lattice(spec)->group().order();
  for (const auto& col : columns) {
    const std::size_t hi = col.to ? *col.to : order + 1;
    for (std::size_t n = col.from; n <= hi; ++n) {
      auto pi = ws.report(spec, n).pi;
      auto want = col.pi;
      want.resize(std::max(want.size(), pi.size()), 0);
      pi.resize(want.size(), 0);
      expect_eq(r, spec + " n=" + std::to_string(n) + " pi", want, pi);
    }
  }
}

inline bool is_cyclic_prime_power(const FiniteGroup& g) {
  const auto m = g.order();
  if (m < 2) return false;
  bool cyclic = false;
  for (Element x = 0; x < m && !cyclic; ++x) cyclic = g.element_order(x) == m;
  if (!cyclic) return false;
  std::size_t p = 2;
  while (m % p) ++p;
  auto q = m;
  while (q % p == 0) q /= p;
  return q == 1;
}

inline std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace detail

inline CriterionResult criterion_s3(Workspace& ws) {
  CriterionResult r{1, "S3 table", {}};
  detail::check_table(r, ws, "S3", {{1, 1, {4}}, {2, 2, {2, 0}}, {3, 5, {1, 1}}, {6, std::nullopt, {1, 0}}});
  return r;
}

inline CriterionResult criterion_d16(Workspace& ws) {
  CriterionResult r{2, "dihedral group of order 16 table", {}};
  detail::check_table(r, ws, "D16", {{1, 1, {11}}, {2, 3, {1, 6}}, {4, std::nullopt, {1, 0}}});
  detail::expect_eq<std::size_t>(r, "D16 profile stabilizes", 4, ws.profile("D16").stabilizes_at());
  return r;
}

inline CriterionResult criterion_sl2f3(Workspace& ws) {
  CriterionResult r{3, "SL(2,3) table", {}};
  detail::check_table(r, ws, "SL2F3",
                      {{1, 1, {7}}, {2, 2, {3, 0}}, {3, 3, {1, 1}}, {4, 5, {1, 2}}, {6, 11, {1, 1}},
                       {12, std::nullopt, {1, 0}}});
  std::vector<std::vector<std::size_t>> ranges;
  for (const auto& rg : ws.profile("SL2F3").ranges) ranges.push_back({rg.from, rg.to ? *rg.to : 0});
  const std::vector<std::vector<std::size_t>> want = {{1, 1}, {2, 2}, {3, 3}, {4, 5}, {6, 11}, {12, 0}};
  std::string e, c;
  for (auto& x : want) e += show(x);
  for (auto& x : ranges) c += show(x);
  detail::expect(r, "SL2F3 collapsed ranges", ranges == want, e, c);
  return r;
}

inline CriterionResult criterion_c30(Workspace& ws) {
  CriterionResult r{4, "C30 table", {}};
  detail::check_table(r, ws, "C30",
                      {{1, 1, {8}},
                       {2, 2, {4, 0}},
                       {3, 4, {2, 2}},
                       {5, 5, {1, 5}},
                       {6, 9, {1, 3, 0}},
                       {10, 14, {1, 1, 0}},
                       {15, 29, {1, 0, 1}},
                       {30, std::nullopt, {1, 0, 0}}});
  return r;
}

inline CriterionResult criterion_steinberg(Workspace& ws) {
  CriterionResult r{5, "Steinberg dimensions", {}};
  for (auto [p, k] : std::vector<std::pair<std::size_t, std::size_t>>{{2, 2}, {3, 2}, {2, 3}}) {
    const auto spec = "EA(" + std::to_string(p) + "," + std::to_string(k) + ")";
    const auto& rep = ws.report(spec, detail::ipow(p, k) - 1);
    const std::size_t got = k - 1 < rep.pi.size() ? rep.pi[k - 1] : 0;
    detail::expect_eq(r, spec + " pi_" + std::to_string(k - 1), detail::ipow(p, k * (k - 1) / 2), got);
  }
  return r;
}

inline CriterionResult criterion_boundary_levels(Workspace& ws) {
  CriterionResult r{6, "levels 1 and |G|", {}};
  for (const auto& spec : catalog()) {
    auto lat = ws.lattice(spec);
    const auto order = lat->group().order();
    detail::expect_eq(r, spec + " n=1", std::vector<std::size_t>{lat->classes().size()}, ws.report(spec, 1).pi);
    for (auto n : {order, order + 7}) {
      auto want = std::vector<std::size_t>(report_length(order), 0);
      want[0] = 1;
      detail::expect_eq(r, spec + " n=" + std::to_string(n), want, ws.report(spec, n).pi);
    }
  }
  return r;
}

inline CriterionResult criterion_divisor_jumps(Workspace& ws) {
  CriterionResult r{7, "reports change only at realized levels", {}};
  for (const auto& spec : catalog()) {
    const auto& prof = ws.profile(spec);
    detail::expect(r, spec + " intermediate probes", prof.certified, "agree", prof.certified ? "agree" : "differ");
    const auto order = ws.lattice(spec)->group().order();
    std::size_t bad = 0;
    for (std::size_t n = 1; n <= order + 1; ++n)
      if (!ws.report(spec, n).same_homology(prof.at(n))) ++bad;
    detail::expect_eq<std::size_t>(r, spec + " mismatching n", 0, bad);
  }
  return r;
}

inline CriterionResult criterion_cyclic_p_groups(Workspace& ws) {
  CriterionResult r{8, "cyclic p-groups and only they have pi concentrated in degree 0", {}};
  for (const std::string spec : {"C2", "C3", "C4", "C8", "C9", "C27"}) {
    std::size_t nonzero = 0;
    for (const auto& rep : ws.profile(spec).levels)
      for (std::size_t k = 1; k < rep.pi.size(); ++k) nonzero += rep.pi[k];
    detail::expect_eq<std::size_t>(r, spec + " higher pi total", 0, nonzero);
  }
  for (const auto& spec : catalog()) {
    auto lat = ws.lattice(spec);
    if (lat->group().order() > 24 || lat->group().order() < 2 || detail::is_cyclic_prime_power(lat->group()))
      continue;
    bool found = false;
    for (const auto& rep : ws.profile(spec).levels) found = found || (rep.pi.size() > 1 && rep.pi[1] > 0);
    detail::expect(r, spec + " some pi_1 nonzero", found, "yes", found ? "yes" : "no");
  }
  return r;
}

namespace detail {

inline std::vector<std::string> small_catalog(Workspace& ws, std::size_t max_order) {
  std::vector<std::string> out;
  for (const auto& s : catalog())
    if (ws.lattice(s)->group().order() <= max_order) out.push_back(s);
  return out;
}

// Degree 1 and 2 chain classes of the full complex.
inline std::vector<Chain> low_degree_chains(const SubgroupLattice& lat) {
  std::vector<Chain> out;
  auto cls = chain_classes(lat, lat.group().order(), Flavor::Coinvariant);
  for (std::size_t k = 1; k <= 2 && k < cls.size(); ++k)
    for (const auto& c : cls[k]) out.push_back(c.representative);
  return out;
}

inline bool orbit_sizes_sum(const GroupHom& psi, const SubgroupLattice& target) {
  for (SubgroupId h = 0; h < target.size(); ++h) {
    auto dc = double_cosets(psi, target.subgroup(h));
    std::size_t s = 0;
    for (auto x : dc.orbit_sizes) s += x;
    if (s != target.group().order()) return false;
  }
  return true;
}

}  // namespace detail

inline CriterionResult criterion_properties(Workspace& ws) {
  CriterionResult r{9, "structural identities", {}};

  // Boundary squares to zero and Euler characteristics agree, both flavors.
  {
    std::size_t built = 0, bad_sq = 0, bad_euler = 0;
    for (const auto& spec : catalog()) {
      auto lat = ws.lattice(spec);
      for (auto n : filtration_levels(*lat))
        for (auto f : {Flavor::Coinvariant, Flavor::Reduced}) {
          auto cx = build_complex(lat, n, f);
          ++built;
          try {
            check_complex(cx.boundaries);
          } catch (const Error&) {
            ++bad_sq;
            continue;
          }
          auto h = betti_numbers(cx);
          long long e = 0;
          for (std::size_t k = 0; k < h.dims.size(); ++k) e += (k % 2 ? -1 : 1) * static_cast<long long>(h.dims[k]);
          if (e != h.euler) ++bad_euler;
        }
    }
    detail::expect_eq<std::size_t>(r, "boundary squares to zero on " + std::to_string(built) + " complexes", 0, bad_sq);
    detail::expect_eq<std::size_t>(r, "Euler identity", 0, bad_euler);
  }

  // Homology of coinvariants against coinvariants of homology.
  for (const auto& spec : detail::small_catalog(ws, 24)) {
    auto lat = ws.lattice(spec);
    std::size_t bad = 0;
    for (auto n : filtration_levels(*lat)) {
      auto a = coinvariants_of_homology_oracle(*lat, n);
      auto b = betti_numbers(build_complex(lat, n, Flavor::Coinvariant)).betti;
      a.resize(std::max(a.size(), b.size()), 0);
      b.resize(a.size(), 0);
      bad += a != b;
    }
    detail::expect_eq<std::size_t>(r, spec + " coinvariants oracle mismatches", 0, bad);
  }

  // Restriction along surjections: d0 identity and double cosets.
  {
    const auto specs = detail::small_catalog(ws, 16);
    std::size_t maps = 0, d0_bad = 0, dc_bad = 0, comm_bad = 0;
    for (const auto& gs : specs)
      for (const auto& ks : specs) {
        auto glat = ws.lattice(gs), klat = ws.lattice(ks);
        const auto& g = glat->group();
        const auto& k = klat->group();
        if (g.order() % k.order()) continue;
        const auto chains = detail::low_degree_chains(*klat);
        for (const auto& hc : enumerate_homomorphisms(g, k, true)) {
          const auto& psi = hc.representative;
          ++maps;
          if (!detail::orbit_sizes_sum(psi, *klat)) ++dc_bad;
          for (const auto& c : chains) {
            if (!verify_d0_compatibility(psi, klat, glat, c, k.order())) ++d0_bad;
            auto v = ChainVector::of(klat, k.order(), c);
            if (!(boundary(restrict(psi, v, glat)) == restrict(psi, boundary(v), glat))) ++comm_bad;
          }
        }
      }
    detail::expect_eq<std::size_t>(r, "d0 identity over " + std::to_string(maps) + " surjection classes", 0, d0_bad);
    detail::expect_eq<std::size_t>(r, "restriction along surjections commutes with boundary", 0, comm_bad);
    detail::expect_eq<std::size_t>(r, "double coset orbit sizes sum to |K| (surjections)", 0, dc_bad);
  }

  // Transfer and restriction along subgroup inclusions.
  {
    std::size_t incl = 0, tr_bad = 0, res_bad = 0, dc_bad = 0;
    for (const auto& spec : detail::small_catalog(ws, 16)) {
      auto glat = ws.lattice(spec);
      const auto& g = glat->group();
      for (const auto& cls : glat->classes()) {
        auto [h, inc] = subgroup_as_group(g, glat->subgroup(cls.front()), spec + "_sub");
        auto hlat = SubgroupLattice::make(h);
        ++incl;
        if (!detail::orbit_sizes_sum(inc, *glat)) ++dc_bad;
        for (const auto& c : detail::low_degree_chains(*hlat)) {
          auto v = ChainVector::of(hlat, h.order(), c);
          if (!(boundary(transfer(inc, v, glat)) == transfer(inc, boundary(v), glat))) ++tr_bad;
        }
        for (const auto& c : detail::low_degree_chains(*glat)) {
          auto v = ChainVector::of(glat, g.order(), c);
          if (!(boundary(restrict(inc, v, hlat)) == restrict(inc, boundary(v), hlat))) ++res_bad;
        }
      }
    }
    detail::expect_eq<std::size_t>(r, "transfer commutes with boundary over " + std::to_string(incl) + " inclusions",
                                   0, tr_bad);
    detail::expect_eq<std::size_t>(r, "restriction along inclusions commutes with boundary", 0, res_bad);
    detail::expect_eq<std::size_t>(r, "double coset orbit sizes sum to |K| (inclusions)", 0, dc_bad);
  }

  // Simple-chain decomposition fiber counts.
  for (const std::string spec : {"C4", "C2xC2", "S3", "D8"}) {
    auto lat = SubgroupLattice::make(builtin(spec));
    std::size_t bad = 0;
    for (auto n : filtration_levels(*lat)) {
      const auto top = report_length(n);
      for (std::size_t k = 0; k < top; ++k) bad += !verify_projective_decomposition(lat, n, k);
    }
    detail::expect_eq<std::size_t>(r, spec + " projective decomposition failures", 0, bad);
  }
  return r;
}

namespace detail {

// Disjoint unions of at most three transitive G-sets, total size <= 8,
// with at least two conjugacy classes of stabilizers.
inline std::vector<std::vector<SubgroupId>> non_isotypical_family(const SubgroupLattice& lat) {
  const auto& cls = lat.classes();
  std::vector<std::vector<SubgroupId>> out;
  std::vector<std::size_t> pick;
  auto size_of = [&](std::size_t c) { return lat.group().order() / lat.order_of(cls[c].front()); };
  auto rec = [&](auto&& self, std::size_t from, std::size_t total) -> void {
    if (pick.size() >= 2) {
      std::set<std::size_t> distinct(pick.begin(), pick.end());
      if (distinct.size() >= 2) {
        std::vector<SubgroupId> stabs;
        for (auto c : pick) stabs.push_back(cls[c].front());
        out.push_back(stabs);
      }
    }
    if (pick.size() == 3) return;
    for (std::size_t c = from; c < cls.size(); ++c)
      if (total + size_of(c) <= 8) {
        pick.push_back(c);
        self(self, c, total + size_of(c));
        pick.pop_back();
      }
  };
  rec(rec, 0, 0);
  return out;
}

}  // namespace detail

inline CriterionResult criterion_partitions(Workspace& ws) {
  CriterionResult r{10, "partition posets and subgroup intervals", {}};
  for (const std::string spec : {"S3", "C4", "C2xC2", "Q8"}) {
    auto lat = SubgroupLattice::make(builtin(spec));
    std::size_t tested = 0, bad = 0;
    for (SubgroupId h = 0; h < lat->size(); ++h) {
      if (lat->group().order() / lat->order_of(h) > 8) continue;
      ++tested;
      bad += !check_transitive_iso(*lat, h);
    }
    detail::expect_eq<std::size_t>(r, spec + " transitive isomorphisms failing of " + std::to_string(tested), 0, bad);
  }
  for (const std::string spec : {"C2", "C3", "C4", "C2xC2", "S3"}) {
    auto lat = SubgroupLattice::make(builtin(spec));
    std::size_t tested = 0, bad = 0;
    for (const auto& stabs : detail::non_isotypical_family(*lat)) {
      std::vector<Subgroup> subs;
      for (auto s : stabs) subs.push_back(lat->subgroup(s));
      auto m = GSet::from_cosets(lat->group(), subs);
      if (m.is_isotypical()) continue;
      ++tested;
      bad += !reduced_betti_of_order_complex(fixed_partition_poset(m)).all_zero();
    }
    detail::expect_eq<std::size_t>(r, spec + " non-isotypical G-sets with homology, of " + std::to_string(tested), 0,
                                   bad);
  }
  for (const auto& spec : detail::small_catalog(ws, 24)) {
    auto lat = ws.lattice(spec);
    const auto order = lat->group().order();
    if (order < 2) continue;
    auto pi = betti_numbers(build_complex(lat, order - 1, Flavor::Coinvariant)).betti;
    auto red = reduced_betti_of_interval_quotient(*lat, lat->bottom(), lat->top());
    std::vector<std::size_t> want(std::max<std::size_t>(pi.size(), red.values.size()), 0);
    want[0] = 1 + red.at(-1);
    for (std::size_t d = 1; d < want.size(); ++d) want[d] = red.at(static_cast<int>(d) - 1);
    pi.resize(want.size(), 0);
    detail::expect_eq(r, spec + " suspension relation", want, pi);
  }
  return r;
}

using Criterion = std::function<CriterionResult(Workspace&)>;

inline std::vector<Criterion> all_criteria() {
  return {criterion_s3,           criterion_d16,          criterion_sl2f3,           criterion_c30,
          criterion_steinberg,    criterion_boundary_levels, criterion_divisor_jumps, criterion_cyclic_p_groups,
          criterion_properties,   criterion_partitions};
}

/// "paper": the worked tables and level statements; "properties": the
/// structural identities; "all": both. Throws InvalidArgument otherwise.
inline std::vector<Criterion> suite(const std::string& name) {
  auto all = all_criteria();
  if (name == "all") return all;
  if (name == "paper") return {all.begin(), all.begin() + 8};
  if (name == "properties") return {all.begin() + 8, all.end()};
  throw Error(Errc::InvalidArgument, "unknown suite '" + name + "' (expected paper, properties or all)");
}

}  // namespace spq
