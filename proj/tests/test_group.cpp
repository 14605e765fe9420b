#include <catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "spq/builtin.hpp"
#include "spq/homomorphism.hpp"
#include "spq/subgroups.hpp"

using namespace spq;
using Table = std::vector<std::vector<Element>>;

namespace {

Table cyclic_table(std::size_t n) {
  Table t(n, std::vector<Element>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[i][j] = static_cast<Element>((i + j) % n);
  return t;
}

// Closure under multiplication.
std::set<Element> naive_closure(const FiniteGroup& g, std::set<Element> s) {
  s.insert(0);
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<Element> cur(s.begin(), s.end());
    for (auto a : cur)
      for (auto b : cur)
        if (s.insert(g.mul(a, b)).second) grew = true;
  }
  return s;
}

std::set<std::set<Element>> subgroups_by_subsets(const FiniteGroup& g) {
  std::set<std::set<Element>> out;
  const auto n = g.order();
  for (std::uint32_t mask = 1; mask < (1u << n); mask += 2) {  // must contain 0
    std::set<Element> s;
    for (Element i = 0; i < n; ++i)
      if (mask >> i & 1) s.insert(i);
    bool closed = true;
    for (auto a : s)
      for (auto b : s) closed = closed && s.count(g.mul(a, b));
    if (closed) out.insert(s);
  }
  return out;
}

std::set<std::set<Element>> subgroups_by_triples(const FiniteGroup& g) {
  std::set<std::set<Element>> out;
  const auto n = g.order();
  for (Element a = 0; a < n; ++a)
    for (Element b = a; b < n; ++b)
      for (Element c = b; c < n; ++c) out.insert(naive_closure(g, {a, b, c}));
  return out;
}

std::set<std::set<Element>> as_sets(const std::vector<Subgroup>& v) {
  std::set<std::set<Element>> out;
  for (const auto& h : v) {
    auto e = h.elements();
    out.insert({e.begin(), e.end()});
  }
  return out;
}

// Counts homomorphisms by trying every map G -> K on all elements.
std::size_t brute_force_hom_count(const FiniteGroup& g, const FiniteGroup& k, bool surjective_only) {
  std::size_t count = 0;
  const auto n = g.order();
  const auto m = k.order();
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= m;
  std::vector<Element> map(n, 0);
  for (std::size_t code = 0; code < total; ++code) {
    auto c = code;
    for (std::size_t i = 0; i < n; ++i) {
      map[i] = static_cast<Element>(c % m);
      c /= m;
    }
    bool ok = true;
    for (Element a = 0; a < n && ok; ++a)
      for (Element b = 0; b < n && ok; ++b) ok = map[g.mul(a, b)] == k.mul(map[a], map[b]);
    if (!ok) continue;
    if (surjective_only && std::set<Element>(map.begin(), map.end()).size() != m) continue;
    ++count;
  }
  return count;
}

FiniteGroup relabeled(const FiniteGroup& g, std::uint32_t seed) {
  std::vector<Element> perm(g.order());
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937 rng(seed);
  std::shuffle(perm.begin() + 1, perm.end(), rng);
  Table t(g.order(), std::vector<Element>(g.order()));
  for (Element a = 0; a < g.order(); ++a)
    for (Element b = 0; b < g.order(); ++b) t[perm[a]][perm[b]] = perm[g.mul(a, b)];
  return FiniteGroup::from_cayley_table(t, g.label() + "'");
}

}  // namespace

TEST_CASE("cayley tables are validated", "[group]") {
  CHECK(FiniteGroup::from_cayley_table({{0}}, "C1").order() == 1);
  auto c2 = FiniteGroup::from_cayley_table({{0, 1}, {1, 0}}, "C2");
  CHECK(c2.order() == 2);
  CHECK(c2.mul(1, 1) == 0);

  SECTION("identity elsewhere is moved to index 0") {
    // Z/3 with the identity labelled 2.
    Table t = {{1, 2, 0}, {2, 0, 1}, {0, 1, 2}};
    auto g = FiniteGroup::from_cayley_table(t, "Z3");
    REQUIRE(g.order() == 3);
    for (Element a = 0; a < 3; ++a) CHECK(g.mul(0, a) == a);
    CHECK(g.element_order(1) == 3);
  }

  SECTION("perturbed C6 table reports a failing triple") {
    auto t = cyclic_table(6);
    t[2][3] = 4;
    std::set<std::vector<std::size_t>> failing;
    for (std::size_t a = 0; a < 6; ++a)
      for (std::size_t b = 0; b < 6; ++b)
        for (std::size_t c = 0; c < 6; ++c)
          if (t[t[a][b]][c] != t[a][t[b][c]]) failing.insert({a, b, c});
    REQUIRE(!failing.empty());
    try {
      FiniteGroup::from_cayley_table(t, "bad");
      FAIL("expected NotAGroup");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::NotAGroup);
      CHECK(failing.count(e.witness()) == 1);
    }
  }

  SECTION("other failures") {
    CHECK_THROWS_MATCHES(FiniteGroup::from_cayley_table({{1, 1}, {1, 1}}, "x"), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) { return e.code() == Errc::NotAGroup; }));
    CHECK_THROWS_AS(FiniteGroup::from_cayley_table({{0, 1}, {1, 1}}, "x"), Error);
    Limits tiny;
    tiny.order_cap = 4;
    try {
      FiniteGroup::from_cayley_table(cyclic_table(5), "C5", tiny);
      FAIL("expected cap");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::OrderCapExceeded);
    }
  }
}

TEST_CASE("permutation generators", "[group]") {
  auto s3 = FiniteGroup::from_permutation_generators(3, {{1, 2, 0}, {1, 0, 2}}, "S3");
  CHECK(s3.order() == 6);
  auto c4 = FiniteGroup::from_permutation_generators(4, {{1, 2, 3, 0}}, "C4");
  CHECK(c4.order() == 4);
  CHECK(c4.element_order(1) == 4);
  CHECK(FiniteGroup::from_permutation_generators(2, {}, "1").order() == 1);
  try {
    FiniteGroup::from_permutation_generators(3, {{0, 0, 1}}, "bad");
    FAIL("expected InvalidPermutation");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InvalidPermutation);
  }
  Limits tiny;
  tiny.order_cap = 5;
  CHECK_THROWS_AS(FiniteGroup::from_permutation_generators(3, {{1, 2, 0}, {1, 0, 2}}, "S3", tiny), Error);
}

TEST_CASE("builtin catalog", "[group]") {
  const std::vector<std::pair<std::string, std::size_t>> orders = {
      {"C1", 1},   {"C30", 30},       {"D16", 16},      {"SL2F3", 24}, {"Q8", 8},   {"Q16", 16},
      {"S4", 24},  {"A4", 12},        {"A5", 60},       {"S3", 6},     {"D8", 8},   {"EA(2,3)", 8},
      {"EA(3,2)", 9}, {"C2xC6", 12}, {"C2xC2xC2", 8}, {"Q12", 12}};
  for (const auto& [spec, order] : orders) {
    INFO(spec);
    auto g = builtin(spec);
    CHECK(g.order() == order);
    CHECK(g.label() == spec);
  }
  // Q8 has a single involution, D8 has five.
  auto involutions = [](const FiniteGroup& g) {
    std::size_t c = 0;
    for (Element x = 0; x < g.order(); ++x) c += g.element_order(x) == 2;
    return c;
  };
  CHECK(involutions(builtin("Q8")) == 1);
  CHECK(involutions(builtin("D8")) == 5);
  CHECK(involutions(builtin("SL2F3")) == 1);

  for (std::string bad : {"X9", "D7", "S7", "C0", "EA(4,2)", "", "C2x", "Q10"}) {
    INFO(bad);
    try {
      builtin(bad);
      FAIL("expected UnknownSpec");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::UnknownSpec);
    }
  }
  Limits tiny;
  tiny.order_cap = 10;
  try {
    builtin("S4", tiny);
    FAIL("expected cap");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::OrderCapExceeded);
  }
}

TEST_CASE("subgroup enumeration against brute force", "[group]") {
  CHECK(all_subgroups(builtin("C6")).size() == 4);
  CHECK(all_subgroups(builtin("S3")).size() == 6);
  CHECK(all_subgroups(builtin("EA(2,2)")).size() == 5);

  for (std::string spec : {"C1", "C2", "C4", "C6", "S3", "D8", "Q8", "EA(2,2)", "EA(2,3)", "EA(3,2)", "C2xC6",
                           "A4", "D12"}) {
    INFO(spec);
    auto g = builtin(spec);
    auto subs = all_subgroups(g);
    if (g.order() <= 12) CHECK(as_sets(subs) == subgroups_by_subsets(g));
    CHECK(as_sets(subs) == subgroups_by_triples(g));
  }
  for (std::string spec : {"D16", "Q16", "S4", "SL2F3", "C8xC3"}) {
    INFO(spec);
    auto g = builtin(spec);
    auto subs = all_subgroups(g);
    CHECK(as_sets(subs) == subgroups_by_triples(g));
    CHECK(std::is_sorted(subs.begin(), subs.end()));
    for (const auto& h : subs) {
      CHECK(g.order() % h.order == 0);
      CHECK(is_subgroup(g, h.members));
    }
  }
}

TEST_CASE("conjugacy classes of subgroups", "[group]") {
  CHECK(conjugacy_classes_of_subgroups(builtin("S3")).size() == 4);
  CHECK(conjugacy_classes_of_subgroups(builtin("D16")).size() == 11);
  CHECK(conjugacy_classes_of_subgroups(builtin("SL2F3")).size() == 7);
  for (std::string spec : {"S3", "D8", "Q8", "A4", "S4", "D16"}) {
    INFO(spec);
    auto g = builtin(spec);
    auto classes = conjugacy_classes_of_subgroups(g);
    std::size_t total = 0;
    for (const auto& c : classes) {
      total += c.orbit.size();
      CHECK(c.orbit.front() == c.representative);
      CHECK(c.orbit.size() == g.order() / normalizer(g, c.representative).order);
    }
    CHECK(total == all_subgroups(g).size());
  }
}

TEST_CASE("index, normalizer and core", "[group]") {
  auto s3 = builtin("S3");
  const auto subs = all_subgroups(s3);  // e, three order 2, A3, S3
  REQUIRE(subs.size() == 6);
  const auto& e = subs[0];
  const auto& s2 = subs[1];
  const auto& a3 = subs[4];
  const auto& all = subs[5];
  CHECK(index(s2, s2) == 1);
  CHECK(index(e, all) == 6);
  CHECK(index(a3, all) == 2);
  CHECK_THROWS_AS(index(s2, a3), Error);
  CHECK(normalizer(s3, a3) == all);
  CHECK(normalizer(s3, s2) == s2);
  CHECK(core_in(s3, s2, all) == e);
  CHECK(core_in(s3, a3, all) == a3);

  auto c4 = builtin("C4");
  auto c4subs = all_subgroups(c4);
  CHECK(core_in(c4, c4subs[1], c4subs[2]) == c4subs[1]);
}

TEST_CASE("quotients", "[group]") {
  auto s3 = builtin("S3");
  auto [same, id] = quotient(s3, trivial_subgroup(s3));
  CHECK(same.order() == 6);
  CHECK(id.kernel().order == 1);
  CHECK(id.surjective());

  auto c4 = builtin("C4");
  auto [c2, p] = quotient(c4, all_subgroups(c4)[1]);
  CHECK(c2.order() == 2);
  CHECK(p.surjective());

  auto a3 = all_subgroups(s3)[4];
  auto [q, proj] = quotient(s3, a3);
  CHECK(q.order() == 2);
  CHECK(proj.kernel() == a3);
  for (Element a = 0; a < 6; ++a)
    for (Element b = 0; b < 6; ++b) CHECK(proj(s3.mul(a, b)) == q.mul(proj(a), proj(b)));

  try {
    quotient(s3, all_subgroups(s3)[1]);
    FAIL("expected NotNormal");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotNormal);
  }
}

TEST_CASE("homomorphism enumeration", "[group]") {
  auto c2 = builtin("C2"), c4 = builtin("C4"), s3 = builtin("S3");
  CHECK(enumerate_homomorphisms(c2, c2, false).size() == 2);
  CHECK(enumerate_homomorphisms(c4, c2, true).size() == 1);
  auto sign = enumerate_homomorphisms(s3, c2, true);
  REQUIRE(sign.size() == 1);
  CHECK(sign[0].representative.kernel().order == 3);

  SECTION("class sizes add up to the brute-force count") {
    const std::vector<std::pair<std::string, std::string>> pairs = {
        {"S3", "S3"}, {"C4", "C2xC2"}, {"Q8", "C2xC2"}, {"C6", "S3"}, {"D8", "C4"}, {"S3", "C6"}, {"C3", "A4"}};
    for (const auto& [gs, ks] : pairs)
      for (bool surj : {false, true}) {
        INFO(gs << " -> " << ks << " surjective " << surj);
        auto g = builtin(gs), k = builtin(ks);
        std::size_t total = 0;
        for (const auto& c : enumerate_homomorphisms(g, k, surj)) total += c.class_size;
        CHECK(total == brute_force_hom_count(g, k, surj));
      }
  }

  SECTION("invariant under isomorphic presentations") {
    auto c6 = builtin("C6");
    auto c2c3 = builtin("C2xC3");
    auto c6r = relabeled(c6, 7);
    for (std::string ks : {"C2", "C3", "C6", "S3", "C2xC2"}) {
      auto k = builtin(ks);
      for (bool surj : {false, true}) {
        INFO(ks << " surjective " << surj);
        const auto n = enumerate_homomorphisms(c6, k, surj).size();
        CHECK(enumerate_homomorphisms(c2c3, k, surj).size() == n);
        CHECK(enumerate_homomorphisms(c6r, k, surj).size() == n);
      }
    }
  }

  SECTION("product cap") {
    Limits tiny;
    tiny.product_cap = 100;
    try {
      enumerate_homomorphisms(builtin("S4"), builtin("S3"), false, tiny);
      FAIL("expected cap");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::ProductCapExceeded);
    }
  }
}

TEST_CASE("group homomorphisms are validated", "[group]") {
  auto c2 = builtin("C2"), c4 = builtin("C4");
  CHECK_THROWS_AS(GroupHom(c2, c4, {0, 1}), Error);  // 1 has order 4 in C4
  GroupHom ok(c2, c4, {0, 2});
  CHECK(ok.injective());
  CHECK(!ok.surjective());
  auto id = GroupHom::identity(c4);
  CHECK(ok.after(GroupHom::identity(c2)) == ok);
  CHECK(id.after(ok) == ok);
}
