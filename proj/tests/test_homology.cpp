#include <catch_amalgamated.hpp>

#include <numeric>
#include <random>

#include "spq/builtin.hpp"
#include "spq/homology.hpp"

using namespace spq;

namespace {

// Plain Gaussian elimination over Q on a dense copy.
std::size_t dense_rank(const SparseIntMatrix& m) {
  std::vector<std::vector<mpq_class>> a(m.rows(), std::vector<mpq_class>(m.cols()));
  for (const auto& t : m.triples()) a[t.row][t.col] = t.value;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t p = rank;
    while (p < m.rows() && a[p][c] == 0) ++p;
    if (p == m.rows()) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t r = rank + 1; r < m.rows(); ++r) {
      if (a[r][c] == 0) continue;
      mpq_class f = a[r][c] / a[rank][c];
      for (std::size_t j = c; j < m.cols(); ++j) a[r][j] -= f * a[rank][j];
    }
    ++rank;
  }
  return rank;
}

SparseIntMatrix random_sparse(std::mt19937& rng, std::size_t rows, std::size_t cols, double density) {
  std::uniform_real_distribution<double> u(0, 1);
  std::uniform_int_distribution<int> v(-9, 9);
  std::vector<SparseIntMatrix::Triple> t;
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      if (u(rng) < density) t.push_back({r, c, mpz_class(v(rng))});
  return SparseIntMatrix::from_triples(rows, cols, t);
}

// Applies row and column permutations to a matrix.
SparseIntMatrix permuted(const SparseIntMatrix& m, const std::vector<std::size_t>& rows,
                         const std::vector<std::size_t>& cols) {
  std::vector<SparseIntMatrix::Triple> t;
  for (const auto& e : m.triples()) t.push_back({rows[e.row], cols[e.col], e.value});
  return SparseIntMatrix::from_triples(m.rows(), m.cols(), t);
}

std::vector<std::size_t> padded(std::vector<std::size_t> v, std::size_t len) {
  v.resize(std::max(v.size(), len), 0);
  return v;
}

}  // namespace

TEST_CASE("rank examples", "[homology]") {
  auto id = SparseIntMatrix::from_triples(3, 3, {{0, 0, 1}, {1, 1, 1}, {2, 2, 1}});
  CHECK(rank_exact(id) == 3);
  CHECK(rank_exact(SparseIntMatrix(4, 5)) == 0);
  CHECK(rank_exact(SparseIntMatrix(0, 3)) == 0);
  // 4-cycle graph: edges (0,1) (1,2) (2,3) (3,0)
  std::vector<SparseIntMatrix::Triple> t;
  for (std::size_t e = 0; e < 4; ++e) {
    t.push_back({e, e, mpz_class(-1)});
    t.push_back({(e + 1) % 4, e, mpz_class(1)});
  }
  auto cyc = SparseIntMatrix::from_triples(4, 4, t);
  CHECK(rank_exact(cyc) == 3);
  CHECK(dense_rank(cyc) == 3);
}

TEST_CASE("rank agrees with dense elimination on random matrices", "[homology]") {
  std::mt19937 rng(20240611);
  std::uniform_int_distribution<std::size_t> dim(1, 60);
  for (int trial = 0; trial < 60; ++trial) {
    const auto r = dim(rng), c = dim(rng);
    auto m = random_sparse(rng, r, c, trial % 3 == 0 ? 0.05 : trial % 3 == 1 ? 0.2 : 0.6);
    INFO("trial " << trial << " " << r << "x" << c);
    CHECK(rank_exact(m) == dense_rank(m));
  }
  // Low-rank products exercise cancellation.
  for (int trial = 0; trial < 20; ++trial) {
    std::uniform_int_distribution<std::size_t> inner(1, 12);
    const auto k = inner(rng);
    auto a = random_sparse(rng, 50, k, 0.5);
    auto b = random_sparse(rng, k, 55, 0.5);
    auto m = a * b;
    INFO("low rank trial " << trial << " inner " << k);
    CHECK(rank_exact(m) == dense_rank(m));
    CHECK(rank_exact(m) <= k);
  }
  // Large entries survive exactly.
  auto big = SparseIntMatrix::from_triples(
      2, 2, {{0, 0, mpz_class("123456789012345678901234567890")}, {0, 1, mpz_class(2)},
             {1, 0, mpz_class("246913578024691357802469135780")}, {1, 1, mpz_class(4)}});
  CHECK(rank_exact(big) == 1);
}

TEST_CASE("rational matrix helpers", "[homology]") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    auto m = random_sparse(rng, 12, 15, 0.3);
    auto rm = RationalMatrix::from_sparse(m);
    CHECK(rm.rank() == dense_rank(m));
    auto ns = rm.nullspace();
    CHECK(ns.size() == m.cols() - dense_rank(m));
    for (const auto& v : ns)
      for (std::size_t r = 0; r < m.rows(); ++r) {
        mpq_class s = 0;
        for (std::size_t c = 0; c < m.cols(); ++c) s += m.at(r, c) * v[c];
        CHECK(s == 0);
      }
  }
}

TEST_CASE("betti number examples", "[homology]") {
  auto s3 = SubgroupLattice::make(builtin("S3"));
  CHECK(betti_numbers(build_complex(s3, 3, Flavor::Coinvariant)).betti == std::vector<std::size_t>{1, 1});
  CHECK(betti_numbers(build_complex(s3, 3, Flavor::Reduced)).betti == std::vector<std::size_t>{0, 1});
  auto c30 = SubgroupLattice::make(builtin("C30"));
  CHECK(padded(betti_numbers(build_complex(c30, 5, Flavor::Coinvariant)).betti, 3) ==
        std::vector<std::size_t>{1, 5, 0});

  // The reduced S3 cycle is the difference of the two degree-1 classes.
  auto red = build_complex(s3, 3, Flavor::Reduced);
  auto rm = RationalMatrix::from_sparse(red.boundaries[1]);
  auto ns = rm.nullspace();
  REQUIRE(ns.size() == 1);
  CHECK(ns[0][0] == -ns[0][1]);
}

TEST_CASE("coinvariants of homology oracle", "[homology]") {
  auto s3 = SubgroupLattice::make(builtin("S3"));
  CHECK(padded(coinvariants_of_homology_oracle(*s3, 3), 2) == std::vector<std::size_t>{1, 1});
  auto c30 = SubgroupLattice::make(builtin("C30"));
  CHECK(padded(coinvariants_of_homology_oracle(*c30, 2), 2) == std::vector<std::size_t>{4, 0});
  auto c1 = SubgroupLattice::make(builtin("C1"));
  CHECK(coinvariants_of_homology_oracle(*c1, 1) == std::vector<std::size_t>{1});

  for (std::string spec : {"C6", "S3", "D8", "Q8", "A4", "D12", "C2xC6", "EA(2,3)", "D16", "Q16", "S4", "SL2F3"}) {
    auto lat = SubgroupLattice::make(builtin(spec));
    for (auto n : filtration_levels(*lat)) {
      INFO(spec << " n=" << n);
      auto b = betti_numbers(build_complex(lat, n, Flavor::Coinvariant)).betti;
      auto o = coinvariants_of_homology_oracle(*lat, n);
      const auto len = std::max(b.size(), o.size());
      CHECK(padded(b, len) == padded(o, len));
    }
  }

  Limits tiny;
  tiny.basis_cap = 10;
  try {
    coinvariants_of_homology_oracle(*s3, 6, tiny);
    FAIL("expected BasisCapExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::BasisCapExceeded);
  }
}

TEST_CASE("euler identity and basis order independence", "[homology]") {
  std::mt19937 rng(99);
  for (std::string spec : {"S3", "D8", "A4", "C30", "S4", "SL2F3", "EA(2,3)"}) {
    auto lat = SubgroupLattice::make(builtin(spec));
    for (auto n : filtration_levels(*lat))
      for (auto flavor : {Flavor::Coinvariant, Flavor::Reduced}) {
        INFO(spec << " n=" << n << " " << flavor_name(flavor));
        auto cx = build_complex(lat, n, flavor);
        auto h = betti_numbers(cx);
        long long e = 0;
        for (std::size_t k = 0; k < h.dims.size(); ++k) e += (k % 2 ? -1 : 1) * static_cast<long long>(h.dims[k]);
        CHECK(e == h.euler);

        // Shuffle every basis and rebuild the boundary matrices accordingly.
        std::vector<std::vector<std::size_t>> perm(cx.bases.size());
        for (std::size_t k = 0; k < perm.size(); ++k) {
          perm[k].resize(cx.dim(k));
          std::iota(perm[k].begin(), perm[k].end(), 0);
          std::shuffle(perm[k].begin(), perm[k].end(), rng);
        }
        std::vector<SparseIntMatrix> shuffled{cx.boundaries[0]};
        for (std::size_t k = 1; k < cx.boundaries.size(); ++k)
          shuffled.push_back(permuted(cx.boundaries[k], perm[k - 1], perm[k]));
        CHECK(homology(shuffled).betti == h.betti);
      }
  }
}

TEST_CASE("non-complexes are rejected with a witness", "[homology]") {
  std::vector<SparseIntMatrix> bd;
  bd.emplace_back(0, 1);
  bd.push_back(SparseIntMatrix::from_triples(1, 1, {{0, 0, 1}}));
  bd.push_back(SparseIntMatrix::from_triples(1, 2, {{0, 1, 1}}));
  try {
    homology(bd);
    FAIL("expected NotAComplex");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotAComplex);
    CHECK(e.witness() == std::vector<std::size_t>{2, 1});
  }
}
