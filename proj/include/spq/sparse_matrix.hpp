#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace spq {

/// Column-major sparse matrix with arbitrary-precision integer entries.
/// No explicit zeros are stored and each column is sorted by row.
class SparseIntMatrix {
 public:
  using Entry = std::pair<std::size_t, mpz_class>;  // (row, value)
  struct Triple {
    std::size_t row, col;
    mpz_class value;
  };

  SparseIntMatrix() = default;
  SparseIntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), columns_(cols) {}

  /// Sums duplicate positions and drops zeros.
  static SparseIntMatrix from_triples(std::size_t rows, std::size_t cols, const std::vector<Triple>& t) {
    std::vector<std::map<std::size_t, mpz_class>> acc(cols);
    for (const auto& e : t) {
      if (e.row >= rows || e.col >= cols) throw std::out_of_range("sparse entry outside matrix");
      acc[e.col][e.row] += e.value;
    }
    SparseIntMatrix m(rows, cols);
    for (std::size_t c = 0; c < cols; ++c)
      for (auto& [r, v] : acc[c])
        if (v != 0) m.columns_[c].emplace_back(r, v);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const std::vector<Entry>& column(std::size_t c) const { return columns_[c]; }

  /// Replaces column c; `entries` may be unsorted and contain duplicates.
  void set_column(std::size_t c, std::vector<Entry> entries) {
    std::map<std::size_t, mpz_class> acc;
    for (auto& [r, v] : entries) {
      if (r >= rows_) throw std::out_of_range("sparse entry outside matrix");
      acc[r] += v;
    }
    auto& col = columns_.at(c);
    col.clear();
    for (auto& [r, v] : acc)
      if (v != 0) col.emplace_back(r, v);
  }

  std::size_t nnz() const {
    std::size_t n = 0;
    for (const auto& c : columns_) n += c.size();
    return n;
  }

  mpz_class at(std::size_t r, std::size_t c) const {
    const auto& col = columns_.at(c);
    auto it = std::lower_bound(col.begin(), col.end(), r,
                               [](const Entry& e, std::size_t row) { return e.first < row; });
    return (it != col.end() && it->first == r) ? it->second : mpz_class(0);
  }

  std::vector<Triple> triples() const {
    std::vector<Triple> out;
    for (std::size_t c = 0; c < cols_; ++c)
      for (const auto& [r, v] : columns_[c]) out.push_back({r, c, v});
    return out;
  }

  bool is_zero() const { return nnz() == 0; }

  /// Product column `c` of `b` under this matrix (as a sparse column).
  std::vector<Entry> apply_to_column(const SparseIntMatrix& b, std::size_t c) const {
    std::map<std::size_t, mpz_class> acc;
    for (const auto& [k, bv] : b.columns_[c])
      for (const auto& [r, av] : columns_[k]) acc[r] += av * bv;
    std::vector<Entry> out;
    for (auto& [r, v] : acc)
      if (v != 0) out.emplace_back(r, v);
    return out;
  }

  friend SparseIntMatrix operator*(const SparseIntMatrix& a, const SparseIntMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("dimension mismatch in sparse product");
    SparseIntMatrix m(a.rows_, b.cols_);
    for (std::size_t c = 0; c < b.cols_; ++c) m.columns_[c] = a.apply_to_column(b, c);
    return m;
  }

  friend bool operator==(const SparseIntMatrix& a, const SparseIntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.columns_ == b.columns_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::vector<Entry>> columns_;
};

}  // namespace spq
