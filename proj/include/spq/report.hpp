#pragma once

// Per-level reports of rational homotopy dimensions and whole-filtration
// profiles.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "spq/homology.hpp"
#include "spq/lattice.hpp"

namespace spq {

inline std::vector<std::size_t> trimmed(std::vector<std::size_t> v) {
  while (v.size() > 1 && v.back() == 0) v.pop_back();
  return v;
}

struct ComputationReport {
  std::string group;
  std::size_t order = 0;
  std::size_t n = 0;            // as requested
  std::size_t n_effective = 0;  // clamped to |G|
  std::vector<std::size_t> pi;
  std::vector<std::size_t> phi;
  std::vector<std::size_t> chains;  // coinvariant chain classes per degree
  long long euler = 0;
  double wall_seconds = 0;  // not serialized

  /// Everything except n, n_effective and timing, ignoring zero padding.
  bool same_homology(const ComputationReport& o) const {
    return group == o.group && order == o.order && trimmed(pi) == trimmed(o.pi) && trimmed(phi) == trimmed(o.phi) &&
           trimmed(chains) == trimmed(o.chains) && euler == o.euler;
  }
  friend bool operator==(const ComputationReport& a, const ComputationReport& b) {
    return a.group == b.group && a.order == b.order && a.n == b.n && a.n_effective == b.n_effective &&
           a.pi == b.pi && a.phi == b.phi && a.chains == b.chains && a.euler == b.euler;
  }
};

/// floor(log2 min(n, |G|)) + 1
inline std::size_t report_length(std::size_t n_effective) {
  std::size_t len = 0;
  for (std::size_t m = n_effective; m; m >>= 1) ++len;
  return std::max<std::size_t>(len, 1);
}

inline ComputationReport compute_report(LatticePtr lat, std::size_t n) {
  const auto t0 = std::chrono::steady_clock::now();
  ComputationReport r;
  r.group = lat->group().label();
  r.order = lat->group().order();
  r.n = n;
  r.n_effective = effective_level(*lat, n);
  const auto len = report_length(r.n_effective);

  const auto co = build_complex(lat, n, Flavor::Coinvariant);
  const auto hc = betti_numbers(co);
  const auto red = build_complex(lat, n, Flavor::Reduced);
  const auto hr = betti_numbers(red);

  auto pad = [len](std::vector<std::size_t> v) {
    if (v.size() > len) throw Error(Errc::InvalidArgument, "homology above the expected degree bound");
    v.resize(len, 0);
    return v;
  };
  r.pi = pad(hc.betti);
  r.phi = pad(hr.betti);
  r.chains = pad(hc.dims);
  r.euler = hc.euler;
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

inline nlohmann::json to_json(const ComputationReport& r) {
  return {{"group", r.group}, {"order", r.order}, {"n", r.n},         {"n_effective", r.n_effective},
          {"pi", r.pi},       {"phi", r.phi},     {"chains", r.chains}, {"euler", r.euler}};
}

inline ComputationReport report_from_json(const nlohmann::json& j) {
  ComputationReport r;
  j.at("group").get_to(r.group);
  j.at("order").get_to(r.order);
  j.at("n").get_to(r.n);
  j.at("n_effective").get_to(r.n_effective);
  j.at("pi").get_to(r.pi);
  j.at("phi").get_to(r.phi);
  j.at("chains").get_to(r.chains);
  j.at("euler").get_to(r.euler);
  return r;
}

/// Runs jobs[i] for every i on up to `threads` workers; results keep the
/// order of the jobs. The first exception (by job index) is rethrown.
template <class T>
std::vector<T> run_ordered(const std::vector<std::function<T()>>& jobs, std::size_t threads) {
  std::vector<std::optional<T>> out(jobs.size());
  std::vector<std::exception_ptr> errs(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < jobs.size();) {
      try {
        out[i] = jobs[i]();
      } catch (...) {
        errs[i] = std::current_exception();
      }
    }
  };
  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(jobs.size(), 1));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
  std::vector<T> res;
  res.reserve(out.size());
  for (auto& o : out) res.push_back(std::move(*o));
  return res;
}

struct ProfileRange {
  std::size_t from = 0;
  std::optional<std::size_t> to;  // empty: unbounded
  std::vector<std::size_t> pi;
};

struct ProfileReport {
  std::string group;
  std::size_t order = 0;
  std::vector<ComputationReport> levels;  // one per realized filtration level
  std::vector<std::size_t> probes;        // intermediate n checked against the level below
  bool certified = true;
  std::vector<ProfileRange> ranges;       // adjacent levels with equal pi merged

  /// Level at which pi last changes.
  std::size_t stabilizes_at() const {
    std::size_t s = levels.empty() ? 1 : levels.front().n;
    for (std::size_t i = 1; i < levels.size(); ++i)
      if (trimmed(levels[i].pi) != trimmed(levels[i - 1].pi)) s = levels[i].n;
    return s;
  }

  /// The report that applies at n: the one of the largest level <= n.
  const ComputationReport& at(std::size_t n) const {
    const ComputationReport* best = &levels.front();
    for (const auto& r : levels)
      if (r.n <= n) best = &r;
    return *best;
  }
};

inline std::vector<ProfileRange> collapse_ranges(const std::vector<ComputationReport>& levels) {
  std::vector<ProfileRange> out;
  for (const auto& r : levels) {
    if (!out.empty() && out.back().pi == trimmed(r.pi)) continue;
    if (!out.empty()) out.back().to = r.n - 1;
    out.push_back({r.n, std::nullopt, trimmed(r.pi)});
  }
  return out;
}

/// Computes every realized level and, for each gap between consecutive
/// levels, one intermediate n (the largest) whose report must agree with the
/// lower level.
inline ProfileReport compute_profile(LatticePtr lat, std::size_t threads = 1) {
  ProfileReport p;
  p.group = lat->group().label();
  p.order = lat->group().order();
  const auto levels = filtration_levels(*lat);
  for (std::size_t i = 0; i + 1 < levels.size(); ++i)
    if (levels[i + 1] - levels[i] > 1) p.probes.push_back(levels[i + 1] - 1);

  std::vector<std::function<ComputationReport()>> jobs;
  for (auto n : levels) jobs.push_back([lat, n] { return compute_report(lat, n); });
  for (auto n : p.probes) jobs.push_back([lat, n] { return compute_report(lat, n); });
  auto res = run_ordered(jobs, threads);

  p.levels.assign(res.begin(), res.begin() + static_cast<std::ptrdiff_t>(levels.size()));
  for (std::size_t i = 0; i < p.probes.size(); ++i) {
    const auto& probe = res[levels.size() + i];
    if (!probe.same_homology(p.at(probe.n))) p.certified = false;
  }
  p.ranges = collapse_ranges(p.levels);
  return p;
}

inline nlohmann::json to_json(const ProfileReport& p) {
  nlohmann::json j;
  j["group"] = p.group;
  j["order"] = p.order;
  j["certified"] = p.certified;
  j["probes"] = p.probes;
  j["stabilizes_at"] = p.stabilizes_at();
  j["levels"] = nlohmann::json::array();
  for (const auto& r : p.levels) j["levels"].push_back(to_json(r));
  j["ranges"] = nlohmann::json::array();
  for (const auto& r : p.ranges) {
    nlohmann::json to = r.to ? nlohmann::json(*r.to) : nlohmann::json(nullptr);
    j["ranges"].push_back({{"from", r.from}, {"to", to}, {"pi", r.pi}});
  }
  return j;
}

}  // namespace spq
