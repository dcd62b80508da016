// Copyright 2026 The ncpower Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Exact linear algebra over Scalar: a sparse leading-term echelon basis for
// span membership, and dense reduced row echelon form for null spaces.

#include <cstddef>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ncpower/scalar.hpp"

namespace ncpower {

/// Sorted by ascending column, no explicit zeros.
using SparseVector = std::vector<std::pair<std::size_t, Scalar>>;

/// v + c w
inline SparseVector axpy(const SparseVector& v, const Scalar& c, const SparseVector& w) {
  SparseVector out;
  out.reserve(v.size() + w.size());
  std::size_t i = 0, k = 0;
  while (i < v.size() || k < w.size()) {
    if (k == w.size() || (i < v.size() && v[i].first < w[k].first)) {
      out.push_back(v[i++]);
    } else if (i == v.size() || w[k].first < v[i].first) {
      if (c != 0) out.emplace_back(w[k].first, c * w[k].second);
      ++k;
    } else {
      Scalar s = v[i].second + c * w[k].second;
      if (s != 0) out.emplace_back(v[i].first, std::move(s));
      ++i;
      ++k;
    }
  }
  return out;
}

/// Rows keyed by their largest column; every stored row has leading entry 1.
/// A vector lies in the span iff reducing by leading entries reaches zero.
class EchelonBasis {
 public:
  SparseVector reduce(SparseVector v) const {
    while (!v.empty()) {
      auto it = pivots_.find(v.back().first);
      if (it == pivots_.end()) return v;
      const Scalar c = -v.back().second;
      v = axpy(v, c, it->second);
    }
    return v;
  }

  bool contains(const SparseVector& v) const { return reduce(v).empty(); }

  /// Returns true when v was independent of the current rows.
  bool insert(SparseVector v) {
    v = reduce(std::move(v));
    if (v.empty()) return false;
    const Scalar lead = v.back().second;
    if (lead != 1)
      for (auto& [col, c] : v) c /= lead;
    const std::size_t col = v.back().first;
    pivots_.emplace(col, std::move(v));
    return true;
  }

  std::size_t rank() const { return pivots_.size(); }

 private:
  std::unordered_map<std::size_t, SparseVector> pivots_;
};

class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }

 private:
  std::size_t rows_, cols_;
  std::vector<Scalar> data_;
};

struct RowEchelon {
  Matrix reduced;
  std::vector<std::size_t> pivot_cols;  // pivot_cols[r] is the pivot of row r
};

/// Reduced row echelon form; pivots scanned left to right.
inline RowEchelon rref(Matrix m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(r, p);
    const Scalar inv = Scalar(1) / m(r, c);
    for (std::size_t k = c; k < m.cols(); ++k) m(r, k) *= inv;
    for (std::size_t q = 0; q < m.rows(); ++q) {
      if (q == r || m(q, c) == 0) continue;
      const Scalar f = m(q, c);
      for (std::size_t k = c; k < m.cols(); ++k)
        if (m(r, k) != 0) m(q, k) -= f * m(r, k);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

/// Basis of {v : M v = 0}, one vector per free column in ascending order,
/// with a 1 in that column.
inline std::vector<std::vector<Scalar>> null_space(const Matrix& m) {
  const RowEchelon e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : e.pivot_cols) is_pivot[c] = true;
  std::vector<std::vector<Scalar>> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<Scalar> v(m.cols());
    v[f] = 1;
    for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) v[e.pivot_cols[r]] = -e.reduced(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace ncpower
