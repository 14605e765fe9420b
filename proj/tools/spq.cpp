// spq: rational homotopy of symmetric products from subgroup lattices.

#include <cstdio>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "spq/group_io.hpp"
#include "spq/spq.hpp"
#include "spq/verify.hpp"

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kUsage = 2, kCap = 3 };

struct Options {
  std::string group;
  std::size_t n = 0;
  bool json = false;
  bool phi = false;
  std::string suite = "all";
  std::size_t cap_order = spq::Limits{}.order_cap;
  std::size_t threads = 1;
  std::string gset = "regular";
};

spq::Limits limits_of(const Options& o) {
  spq::Limits l;
  l.order_cap = o.cap_order;
  return l;
}

spq::LatticePtr load(const Options& o) { return spq::SubgroupLattice::make(spq::resolve_group(o.group, limits_of(o))); }

std::string vec(const std::vector<std::size_t>& v) { return spq::show(v); }

void print_report(const spq::ComputationReport& r, bool phi) {
  std::cout << "group " << r.group << " (order " << r.order << "), n = " << r.n;
  if (r.n_effective != r.n) std::cout << " (clamped to " << r.n_effective << ")";
  std::cout << "\n";
  std::cout << std::setw(4) << "k" << std::setw(8) << "pi";
  if (phi) std::cout << std::setw(8) << "phi";
  std::cout << std::setw(10) << "chains" << "\n";
  for (std::size_t k = 0; k < r.pi.size(); ++k) {
    std::cout << std::setw(4) << k << std::setw(8) << r.pi[k];
    if (phi) std::cout << std::setw(8) << r.phi[k];
    std::cout << std::setw(10) << r.chains[k] << "\n";
  }
  std::cout << "euler " << r.euler << "\n";
}

int cmd_compute(const Options& o) {
  auto r = spq::compute_report(load(o), o.n);
  if (o.json) {
    std::cout << spq::to_json(r).dump() << "\n";
  } else {
    print_report(r, o.phi);
  }
  std::cerr << "wall " << std::fixed << std::setprecision(3) << r.wall_seconds << " s\n";
  return kOk;
}

int cmd_profile(const Options& o) {
  auto p = spq::compute_profile(load(o), o.threads);
  if (o.json) {
    std::cout << spq::to_json(p).dump() << "\n";
  } else {
    std::cout << "group " << p.group << " (order " << p.order << ")\n";
    std::cout << std::setw(6) << "n" << "  pi" << (o.phi ? " / phi" : "") << "\n";
    for (const auto& r : p.levels) {
      std::cout << std::setw(6) << r.n << "  " << vec(r.pi);
      if (o.phi) std::cout << " / " << vec(r.phi);
      std::cout << "\n";
    }
    std::cout << "ranges:";
    for (const auto& rg : p.ranges) {
      std::cout << " [" << rg.from << ",";
      if (rg.to) std::cout << *rg.to;
      else std::cout << "inf";
      std::cout << "]=" << vec(rg.pi);
    }
    std::cout << "\nstabilizes at n = " << p.stabilizes_at() << "\n";
    std::cout << "constancy between levels: " << (p.certified ? "certified" : "VIOLATED") << " (" << p.probes.size()
              << " probes)\n";
  }
  return p.certified ? kOk : kVerifyFailed;
}

int cmd_verify(const Options& o) {
  const auto criteria = spq::suite(o.suite);
  spq::Workspace ws;
  std::vector<std::function<spq::CriterionResult()>> jobs;
  for (const auto& c : criteria) jobs.push_back([&ws, c] { return c(ws); });
  auto results = spq::run_ordered(jobs, o.threads);
  bool ok = true;
  for (const auto& r : results) {
    for (const auto& ch : r.checks)
      std::cout << "  " << (ch.pass ? "PASS" : "FAIL") << " " << ch.name << ": expected " << ch.expected
                << ", computed " << ch.computed << "\n";
    std::cout << (r.pass() ? "PASS" : "FAIL") << " criterion " << r.id << ": " << r.title << "\n";
    ok = ok && r.pass();
  }
  return ok ? kOk : kVerifyFailed;
}

int cmd_subgroups(const Options& o) {
  auto lat = load(o);
  const auto& g = lat->group();
  nlohmann::json out = nlohmann::json::array();
  for (const auto& cls : lat->classes()) {
    const auto rep = cls.front();
    const auto& h = lat->subgroup(rep);
    out.push_back({{"order", h.order},
                   {"index", g.order() / h.order},
                   {"class_size", cls.size()},
                   {"normal", cls.size() == 1},
                   {"members", h.elements()}});
  }
  if (o.json) {
    std::cout << nlohmann::json{{"group", g.label()}, {"order", g.order()}, {"classes", out}}.dump() << "\n";
    return kOk;
  }
  std::cout << "group " << g.label() << " (order " << g.order() << "): " << out.size()
            << " conjugacy classes of subgroups\n";
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto& c = out[i];
    std::cout << std::setw(4) << i << "  order " << std::setw(3) << c["order"].get<std::size_t>() << "  class size "
              << std::setw(2) << c["class_size"].get<std::size_t>() << (c["normal"].get<bool>() ? "  normal" : "")
              << "  " << c["members"].dump() << "\n";
  }
  return kOk;
}

std::string blocks_of(const spq::SetPartition& p) {
  std::vector<std::vector<std::size_t>> blocks(spq::block_count(p));
  for (std::size_t x = 0; x < p.size(); ++x) blocks[p[x]].push_back(x);
  std::string s;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (b) s += " | ";
    for (std::size_t i = 0; i < blocks[b].size(); ++i) s += (i ? " " : "") + std::to_string(blocks[b][i]);
  }
  return s;
}

int cmd_partition(const Options& o) {
  const auto limits = limits_of(o);
  auto g = spq::resolve_group(o.group, limits);
  auto m = spq::parse_gset(g, o.gset);
  auto poset = spq::fixed_partition_poset(m, limits);
  auto betti = spq::reduced_betti_of_order_complex(poset, limits);

  // Covering relations only.
  std::vector<std::pair<std::size_t, std::size_t>> covers;
  const auto& ord = poset.order;
  for (std::size_t a = 0; a < ord.size; ++a)
    for (std::size_t b = 0; b < ord.size; ++b) {
      if (!ord.less(a, b)) continue;
      bool cover = true;
      for (std::size_t c = 0; c < ord.size && cover; ++c) cover = !(ord.less(a, c) && ord.less(c, b));
      if (cover) covers.emplace_back(a, b);
    }

  if (o.json) {
    nlohmann::json j;
    j["group"] = g.label();
    j["gset_size"] = m.size();
    j["orbits"] = m.orbit_count();
    j["isotypical"] = m.is_isotypical();
    j["elements"] = poset.elements;
    j["covers"] = covers;
    j["reduced_betti"] = betti.values;
    std::cout << j.dump() << "\n";
    return kOk;
  }
  std::cout << "G-set of size " << m.size() << " over " << g.label() << ", " << m.orbit_count() << " orbit(s)"
            << (m.is_isotypical() ? ", isotypical" : "") << "\n";
  std::cout << poset.elements.size() << " invariant partitions";
  if (ord.is_antichain() && ord.size > 1) std::cout << " (antichain)";
  std::cout << "\n";
  for (std::size_t i = 0; i < poset.elements.size(); ++i)
    std::cout << std::setw(4) << i << "  " << blocks_of(poset.elements[i]) << "\n";
  for (auto [a, b] : covers) std::cout << "  " << a << " < " << b << "\n";
  std::cout << "reduced betti (from degree -1): " << vec(betti.values) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rational equivariant homotopy of symmetric products via subgroup lattices"};
  app.require_subcommand(1);
  Options o;

  auto add_group = [&](CLI::App* sub) { sub->add_option("-g,--group", o.group, "group spec or @file.json")->required(); };
  auto add_common = [&](CLI::App* sub) {
    sub->add_flag("--json", o.json, "machine-readable output");
    sub->add_option("--cap-order", o.cap_order, "largest accepted group order")->check(CLI::PositiveNumber);
    sub->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
  };

  auto* compute = app.add_subcommand("compute", "dimensions at one filtration level");
  add_group(compute);
  add_common(compute);
  compute->add_option("-n", o.n, "filtration level")->required()->check(CLI::PositiveNumber);
  compute->add_flag("--phi", o.phi, "also show geometric fixed points");

  auto* profile = app.add_subcommand("profile", "dimensions at every realized level");
  add_group(profile);
  add_common(profile);
  profile->add_flag("--phi", o.phi, "also show geometric fixed points");

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", o.suite, "paper, properties or all");
  verify->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);

  auto* subgroups = app.add_subcommand("subgroups", "list conjugacy classes of subgroups");
  add_group(subgroups);
  add_common(subgroups);

  auto* partition = app.add_subcommand("partition", "invariant partitions of a G-set");
  add_group(partition);
  add_common(partition);
  partition->add_option("--gset", o.gset, "terms regular, trivial:<k>, G/<i,j,...> joined by '+'");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*compute) return cmd_compute(o);
    if (*profile) return cmd_profile(o);
    if (*verify) return cmd_verify(o);
    if (*subgroups) return cmd_subgroups(o);
    if (*partition) return cmd_partition(o);
  } catch (const spq::Error& e) {
    std::cerr << "error (" << spq::errc_name(e.code()) << "): " << e.what() << "\n";
    return spq::is_cap_error(e.code()) ? kCap : kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
