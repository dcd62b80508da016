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

#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "ncpower/linalg.hpp"

using namespace ncpower;

namespace {

Matrix from_rows(const std::vector<std::vector<int>>& rows) {
  Matrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
  return m;
}

SparseVector row_vector(const Matrix& m, std::size_t r) {
  SparseVector v;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (m(r, c) != 0) v.emplace_back(c, m(r, c));
  return v;
}

bool in_kernel(const Matrix& m, const std::vector<Scalar>& v) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Scalar s;
    for (std::size_t c = 0; c < m.cols(); ++c) s += m(r, c) * v[c];
    if (s != 0) return false;
  }
  return true;
}

Matrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  std::uniform_int_distribution<int> entry(-2, 2), zero(0, 2);
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = zero(rng) ? 0 : entry(rng);
  // duplicate a row combination now and then so the rank drops
  if (rows > 2)
    for (std::size_t c = 0; c < cols; ++c) m(rows - 1, c) = m(0, c) - 2 * m(1, c);
  return m;
}

}  // namespace

TEST_CASE("axpy merges sorted sparse vectors", "[linalg]") {
  const SparseVector v{{0, 1}, {3, 2}};
  const SparseVector w{{1, 5}, {3, 1}};
  CHECK(axpy(v, -2, w) == SparseVector{{0, 1}, {1, -10}});
  CHECK(axpy(v, 0, w) == SparseVector{{0, 1}, {3, 2}});
}

TEST_CASE("null space examples", "[linalg]") {
  const auto ns = null_space(from_rows({{1, 2, 3}, {2, 4, 6}}));
  REQUIRE(ns.size() == 2);
  CHECK(ns[0] == std::vector<Scalar>{-2, 1, 0});
  CHECK(ns[1] == std::vector<Scalar>{-3, 0, 1});
  CHECK(null_space(from_rows({{1, 0}, {0, 1}})).empty());
  CHECK(null_space(Matrix(0, 3)).size() == 3);
}

TEST_CASE("null space dimension matches echelon rank", "[linalg][property]") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t rows = 1 + trial % 6, cols = 1 + (trial * 7) % 8;
    const Matrix m = random_matrix(rng, rows, cols);
    EchelonBasis basis;
    for (std::size_t r = 0; r < rows; ++r) basis.insert(row_vector(m, r));
    const auto ns = null_space(m);
    REQUIRE(ns.size() == cols - basis.rank());
    for (const auto& v : ns) REQUIRE(in_kernel(m, v));
  }
}

TEST_CASE("echelon membership", "[linalg][property]") {
  EchelonBasis b;
  CHECK(b.insert({{0, 2}, {2, 4}}));
  CHECK(b.insert({{1, 1}, {2, 1}}));
  CHECK_FALSE(b.insert({{0, 1}, {1, 3}, {2, 5}}));
  CHECK(b.contains({{0, 4}, {2, 8}}));
  CHECK_FALSE(b.contains({{0, 1}}));
  CHECK(b.rank() == 2);

  std::mt19937_64 rng(43);
  std::uniform_int_distribution<int> coeff(-3, 3);
  for (int trial = 0; trial < 30; ++trial) {
    const Matrix m = random_matrix(rng, 4, 6);
    EchelonBasis basis;
    for (std::size_t r = 0; r < 4; ++r) basis.insert(row_vector(m, r));
    SparseVector combo;
    for (std::size_t r = 0; r < 4; ++r) combo = axpy(combo, coeff(rng), row_vector(m, r));
    REQUIRE(basis.contains(combo));
  }
}
