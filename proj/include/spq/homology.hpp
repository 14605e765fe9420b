#pragma once

// Exact rational homology of integer chain complexes.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "spq/lattice.hpp"
#include "spq/sparse_matrix.hpp"

namespace spq {

/// Rank over Q by fraction-free sparse elimination.
///
/// Pivots are chosen by Markowitz cost (row length - 1) * (column count - 1),
/// preferring unit pivots on ties. Each updated row is p*row - a*pivot_row
/// divided by its content, so entries stay integral and small.
inline std::size_t rank_exact(const SparseIntMatrix& m) {
  using Row = std::vector<std::pair<std::uint32_t, mpz_class>>;
  std::vector<Row> rows(m.rows());
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (const auto& [r, v] : m.column(c)) rows[r].emplace_back(static_cast<std::uint32_t>(c), v);
  // columns were visited in increasing order, so every row is already sorted

  std::vector<std::size_t> col_count(m.cols(), 0);
  std::vector<std::size_t> active;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].empty()) continue;
    active.push_back(r);
    for (const auto& e : rows[r]) ++col_count[e.first];
  }

  auto find_in = [](const Row& row, std::uint32_t c) {
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const auto& e, std::uint32_t col) { return e.first < col; });
    return (it != row.end() && it->first == c) ? it : row.end();
  };

  std::size_t rank = 0;
  Row merged;
  while (!active.empty()) {
    std::size_t best_cost = std::numeric_limits<std::size_t>::max();
    bool best_unit = false;
    std::size_t pr = 0;
    std::uint32_t pc = 0;
    for (auto r : active) {
      const auto len = rows[r].size();
      for (const auto& [c, v] : rows[r]) {
        const std::size_t cost = (len - 1) * (col_count[c] - 1);
        const bool unit = v == 1 || v == -1;
        if (cost < best_cost || (cost == best_cost && unit && !best_unit)) {
          best_cost = cost;
          best_unit = unit;
          pr = r;
          pc = c;
        }
      }
      if (best_cost == 0 && best_unit) break;
    }

    ++rank;
    const Row pivot_row = std::move(rows[pr]);
    rows[pr].clear();
    for (const auto& e : pivot_row) --col_count[e.first];
    const mpz_class pv = find_in(pivot_row, pc)->second;

    std::vector<std::size_t> still_active;
    still_active.reserve(active.size());
    for (auto r : active) {
      if (r == pr) continue;
      auto& row = rows[r];
      auto hit = find_in(row, pc);
      if (hit == row.end()) {
        still_active.push_back(r);
        continue;
      }
      const mpz_class a = hit->second;
      for (const auto& e : row) --col_count[e.first];
      merged.clear();
      auto i = row.begin();
      auto j = pivot_row.begin();
      while (i != row.end() || j != pivot_row.end()) {
        if (j == pivot_row.end() || (i != row.end() && i->first < j->first)) {
          merged.emplace_back(i->first, pv * i->second);
          ++i;
        } else if (i == row.end() || j->first < i->first) {
          merged.emplace_back(j->first, -a * j->second);
          ++j;
        } else {
          mpz_class v = pv * i->second - a * j->second;
          if (v != 0) merged.emplace_back(i->first, std::move(v));
          ++i;
          ++j;
        }
      }
      if (!merged.empty()) {
        mpz_class g = 0;
        for (const auto& e : merged) {
          mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.second.get_mpz_t());
          if (g == 1) break;
        }
        if (g != 1)
          for (auto& e : merged) mpz_divexact(e.second.get_mpz_t(), e.second.get_mpz_t(), g.get_mpz_t());
        for (const auto& e : merged) ++col_count[e.first];
        still_active.push_back(r);
      }
      row.swap(merged);
    }
    active.swap(still_active);
  }
  return rank;
}

/// Dense matrix over Q; used by the independent oracles.
class RationalMatrix {
 public:
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static RationalMatrix from_sparse(const SparseIntMatrix& m) {
    RationalMatrix d(m.rows(), m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c)
      for (const auto& [r, v] : m.column(c)) d(r, c) = v;
    return d;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  mpq_class& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const mpq_class& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  /// In-place reduced row echelon form; returns the pivot columns.
  std::vector<std::size_t> rref() {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
      std::size_t p = r;
      while (p < rows_ && (*this)(p, c) == 0) ++p;
      if (p == rows_) continue;
      if (p != r)
        for (std::size_t k = 0; k < cols_; ++k) std::swap((*this)(p, k), (*this)(r, k));
      const mpq_class inv = 1 / (*this)(r, c);
      for (std::size_t k = c; k < cols_; ++k) (*this)(r, k) *= inv;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == r || (*this)(i, c) == 0) continue;
        const mpq_class f = (*this)(i, c);
        for (std::size_t k = c; k < cols_; ++k)
          if ((*this)(r, k) != 0) (*this)(i, k) -= f * (*this)(r, k);
      }
      pivots.push_back(c);
      ++r;
    }
    return pivots;
  }

  std::size_t rank() const {
    RationalMatrix copy = *this;
    return copy.rref().size();
  }

  /// Basis of {x : A x = 0}.
  std::vector<std::vector<mpq_class>> nullspace() const {
    RationalMatrix r = *this;
    auto pivots = r.rref();
    std::vector<bool> is_pivot(cols_, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::vector<mpq_class>> basis;
    for (std::size_t free = 0; free < cols_; ++free) {
      if (is_pivot[free]) continue;
      std::vector<mpq_class> v(cols_);
      v[free] = 1;
      for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r(i, free);
      basis.push_back(std::move(v));
    }
    return basis;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<mpq_class> a_;
};

struct HomologyResult {
  std::vector<std::size_t> betti;
  long long euler = 0;
  std::vector<std::size_t> dims;
  std::vector<std::size_t> ranks;  // ranks[k] = rank of the boundary out of degree k; ranks[0] = 0
};

/// Checks d_k * d_{k+1} = 0; throws NotAComplex with witness (k+1, column).
inline void check_complex(const std::vector<SparseIntMatrix>& boundaries) {
  for (std::size_t k = 1; k + 1 < boundaries.size(); ++k) {
    const auto& dk = boundaries[k];
    const auto& dk1 = boundaries[k + 1];
    for (std::size_t c = 0; c < dk1.cols(); ++c)
      if (!dk.apply_to_column(dk1, c).empty())
        throw Error(Errc::NotAComplex,
                    "d" + std::to_string(k) + " * d" + std::to_string(k + 1) + " is nonzero on column " +
                        std::to_string(c),
                    {k + 1, c});
  }
}

/// Homology of a complex given by its boundary maps (boundaries[k] maps
/// degree k to degree k-1; boundaries[0] only fixes dims[0]).
inline HomologyResult homology(const std::vector<SparseIntMatrix>& boundaries) {
  check_complex(boundaries);
  HomologyResult h;
  const std::size_t top = boundaries.size();
  h.dims.resize(top);
  h.ranks.assign(top, 0);
  for (std::size_t k = 0; k < top; ++k) h.dims[k] = boundaries[k].cols();
  for (std::size_t k = 1; k < top; ++k) h.ranks[k] = rank_exact(boundaries[k]);
  h.betti.resize(top);
  for (std::size_t k = 0; k < top; ++k) {
    const std::size_t next = k + 1 < top ? h.ranks[k + 1] : 0;
    h.betti[k] = h.dims[k] - h.ranks[k] - next;
    h.euler += (k % 2 == 0 ? 1 : -1) * static_cast<long long>(h.betti[k]);
  }
  return h;
}

/// Rational Betti numbers of a filtered chain complex. Reduced-flavor
/// complexes give the reduced homology of the based quotient directly.
inline HomologyResult betti_numbers(const FilteredChainComplex& cx) { return homology(cx.boundaries); }

/// Independent check of the coinvariant computation: builds the complex on
/// all chains (not classes), computes cycles and boundaries densely over Q,
/// and returns per degree the rank of the averaging idempotent
/// (1/|G|) sum_g g on homology, i.e. dim H_k^G = dim (H_k)_G.
inline std::vector<std::size_t> coinvariants_of_homology_oracle(const SubgroupLattice& lat, std::size_t n,
                                                               const Limits& limits = {}) {
  auto chains = chains_up_to(lat, n, false);
  if (chains.size() > limits.basis_cap)
    throw Error(Errc::BasisCapExceeded, std::to_string(chains.size()) + " chains exceed basis cap " +
                                            std::to_string(limits.basis_cap));
  std::vector<std::vector<Chain>> basis;
  for (auto& c : chains) {
    const std::size_t k = c.size() - 1;
    if (basis.size() <= k) basis.resize(k + 1);
    basis[k].push_back(std::move(c));
  }
  for (auto& b : basis) std::sort(b.begin(), b.end());
  auto locate = [&](const Chain& c) {
    const auto& b = basis[c.size() - 1];
    return static_cast<std::size_t>(std::lower_bound(b.begin(), b.end(), c) - b.begin());
  };

  const std::size_t top = basis.size();
  std::vector<RationalMatrix> d;  // d[k] : C_k -> C_{k-1}, d[0] unused
  d.emplace_back(0, basis[0].size());
  for (std::size_t k = 1; k < top; ++k) {
    RationalMatrix m(basis[k - 1].size(), basis[k].size());
    for (std::size_t j = 0; j < basis[k].size(); ++j)
      for (std::size_t i = 0; i <= k; ++i) {
        Chain face = basis[k][j];
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
        m(locate(face), j) += (i % 2 == 0 ? 1 : -1);
      }
    d.push_back(std::move(m));
  }

  // orbit index of each chain, for the averaging operator
  std::vector<std::vector<std::size_t>> orbit_id(top);
  std::vector<std::vector<std::vector<std::size_t>>> orbits(top);
  for (std::size_t k = 0; k < top; ++k) {
    orbit_id[k].assign(basis[k].size(), static_cast<std::size_t>(-1));
    for (std::size_t j = 0; j < basis[k].size(); ++j) {
      if (orbit_id[k][j] != static_cast<std::size_t>(-1)) continue;
      std::vector<std::size_t> members;
      for (Element x = 0; x < lat.group().order(); ++x) {
        auto idx = locate(lat.conjugate(x, basis[k][j]));
        if (orbit_id[k][idx] == static_cast<std::size_t>(-1)) {
          orbit_id[k][idx] = orbits[k].size();
          members.push_back(idx);
        }
      }
      orbits[k].push_back(std::move(members));
    }
  }

  std::vector<std::size_t> out(top, 0);
  for (std::size_t k = 0; k < top; ++k) {
    const std::size_t dim = basis[k].size();
    std::vector<std::vector<mpq_class>> cycles;
    if (k == 0) {
      for (std::size_t j = 0; j < dim; ++j) {
        std::vector<mpq_class> e(dim);
        e[j] = 1;
        cycles.push_back(std::move(e));
      }
    } else {
      cycles = d[k].nullspace();
    }
    const std::size_t nb = k + 1 < top ? d[k + 1].cols() : 0;
    RationalMatrix stacked(dim, nb + cycles.size());
    for (std::size_t c = 0; c < nb; ++c)
      for (std::size_t r = 0; r < dim; ++r) stacked(r, c) = d[k + 1](r, c);
    for (std::size_t z = 0; z < cycles.size(); ++z) {
      // average over each orbit
      for (const auto& orb : orbits[k]) {
        mpq_class s = 0;
        for (auto i : orb) s += cycles[z][i];
        s /= static_cast<long>(orb.size());
        for (auto i : orb) stacked(i, nb + z) = s;
      }
    }
    std::size_t rank_b = 0;
    if (nb > 0) {
      RationalMatrix b(dim, nb);
      for (std::size_t c = 0; c < nb; ++c)
        for (std::size_t r = 0; r < dim; ++r) b(r, c) = stacked(r, c);
      rank_b = b.rank();
    }
    out[k] = stacked.rank() - rank_b;
  }
  return out;
}

}  // namespace spq
