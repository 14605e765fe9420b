#include <catch_amalgamated.hpp>

#include "spq/builtin.hpp"
#include "spq/report.hpp"

using namespace spq;

TEST_CASE("report lengths", "[report]") {
  CHECK(report_length(1) == 1);
  CHECK(report_length(2) == 2);
  CHECK(report_length(3) == 2);
  CHECK(report_length(4) == 3);
  CHECK(report_length(7) == 3);
  CHECK(report_length(8) == 4);
  CHECK(report_length(30) == 5);

  auto c7 = SubgroupLattice::make(builtin("C7"));
  auto r = compute_report(c7, 100);
  CHECK(r.n == 100);
  CHECK(r.n_effective == 7);
  CHECK(r.pi == std::vector<std::size_t>{1, 0, 0});
  CHECK(r.phi.size() == 3);
  CHECK(r.chains.size() == 3);
  CHECK(trimmed({1, 0, 0}) == std::vector<std::size_t>{1});
  CHECK(trimmed({0}) == std::vector<std::size_t>{0});
}

TEST_CASE("report examples", "[report]") {
  auto s3 = SubgroupLattice::make(builtin("S3"));
  auto r = compute_report(s3, 3);
  CHECK(r.pi == std::vector<std::size_t>{1, 1});
  CHECK(r.phi == std::vector<std::size_t>{0, 1});
  CHECK(r.euler == 0);
  auto c30 = SubgroupLattice::make(builtin("C30"));
  CHECK(compute_report(c30, 5).pi == std::vector<std::size_t>{1, 5, 0});
}

TEST_CASE("json round trip", "[report]") {
  for (std::string spec : {"C1", "S3", "D8", "A4", "C30"}) {
    auto lat = SubgroupLattice::make(builtin(spec));
    for (auto n : {std::size_t{1}, std::size_t{2}, std::size_t{5}, std::size_t{64}}) {
      auto r = compute_report(lat, n);
      auto j = to_json(r);
      auto back = report_from_json(nlohmann::json::parse(j.dump()));
      CHECK(back == r);
      CHECK(!j.contains("wall_seconds"));
    }
  }
}

TEST_CASE("ordered parallel runs", "[report]") {
  std::vector<std::function<int()>> jobs;
  for (int i = 0; i < 50; ++i) jobs.push_back([i] { return i * i; });
  for (std::size_t t : {1, 2, 7, 100}) {
    auto out = run_ordered(jobs, t);
    REQUIRE(out.size() == 50);
    for (int i = 0; i < 50; ++i) CHECK(out[static_cast<std::size_t>(i)] == i * i);
  }
  jobs[10] = [] () -> int { throw Error(Errc::InvalidArgument, "ten"); };
  jobs[20] = [] () -> int { throw Error(Errc::UnknownSpec, "twenty"); };
  for (std::size_t t : {1, 4}) {
    try {
      run_ordered(jobs, t);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::InvalidArgument);
    }
  }
  CHECK(run_ordered(std::vector<std::function<int()>>{}, 3).empty());
}

TEST_CASE("profiles", "[report]") {
  SECTION("C2") {
    auto p = compute_profile(SubgroupLattice::make(builtin("C2")));
    REQUIRE(p.levels.size() == 2);
    CHECK(p.levels[0].n == 1);
    CHECK(p.levels[1].n == 2);
    CHECK(p.levels[0].pi == std::vector<std::size_t>{2});
    CHECK(p.levels[1].pi == std::vector<std::size_t>{1, 0});
    CHECK(p.stabilizes_at() == 2);
    CHECK(p.probes.empty());
    CHECK(p.certified);
  }
  SECTION("D16") {
    auto p = compute_profile(SubgroupLattice::make(builtin("D16")));
    CHECK(p.stabilizes_at() == 4);
    CHECK(p.certified);
    CHECK(p.ranges.back().from == 4);
    CHECK(!p.ranges.back().to);
  }
  SECTION("at() picks the largest level not above n") {
    auto p = compute_profile(SubgroupLattice::make(builtin("C30")));
    for (std::size_t n = 1; n <= 40; ++n) {
      const auto& r = p.at(n);
      CHECK(r.n <= n);
      for (const auto& l : p.levels)
        if (l.n <= n) CHECK(l.n <= r.n);
    }
  }
  SECTION("every n agrees with the level below it") {
    for (std::string spec : {"C6", "S3", "D8", "Q8", "A4", "C30", "D12", "C2xC6"}) {
      auto lat = SubgroupLattice::make(builtin(spec));
      auto p = compute_profile(lat);
      CHECK(p.certified);
      for (std::size_t n = 1; n <= lat->group().order() + 2; ++n) {
        INFO(spec << " n=" << n);
        CHECK(compute_report(lat, n).same_homology(p.at(n)));
      }
      // ranges partition the levels, adjacent ranges differ
      for (std::size_t i = 0; i + 1 < p.ranges.size(); ++i) {
        CHECK(p.ranges[i].pi != p.ranges[i + 1].pi);
        CHECK(*p.ranges[i].to + 1 == p.ranges[i + 1].from);
      }
      CHECK(p.ranges.front().from == 1);
    }
  }
  SECTION("thread count does not change the result") {
    for (std::string spec : {"S4", "SL2F3", "C30"}) {
      auto lat = SubgroupLattice::make(builtin(spec));
      auto a = compute_profile(lat, 1);
      auto b = compute_profile(lat, 4);
      CHECK(to_json(a) == to_json(b));
    }
  }
}
