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

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ncpower {

/// Exact rational coefficient. GMP keeps the value canonical (den > 0, lowest
/// terms) after every arithmetic operation.
using Scalar = mpq_class;

inline Scalar parse_scalar(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  if (!s.empty() && s.front() == '+') s.erase(s.begin());
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  Scalar q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational literal '" + s + "'");
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

/// "p/q", or "p" for integers.
inline std::string to_string(const Scalar& q) { return q.get_str(); }

inline Scalar factorial(int k) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(k));
  return Scalar(f);
}

inline Scalar binomial(int top, int k) {
  if (k < 0 || k > top) return Scalar(0);
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(top), static_cast<unsigned long>(k));
  return Scalar(b);
}

/// top * (top-1) * ... * (top-k+1)
inline Scalar falling_factorial(int top, int k) {
  Scalar r(1);
  for (int i = 0; i < k; ++i) r *= top - i;
  return r;
}

inline Scalar pow(const Scalar& base, int e) {
  Scalar r(1);
  if (e < 0) return Scalar(1) / pow(base, -e);
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

inline int sign_power(int e) { return (e % 2 == 0) ? 1 : -1; }

/// Exponent vector in N^n with |alpha| (sum) and [alpha] (max).
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::size_t n) : e_(n, 0) {}
  explicit MultiIndex(std::vector<int> e) : e_(std::move(e)) {
    for (int v : e_)
      if (v < 0) throw std::invalid_argument("multi-index entries must be non-negative");
  }

  std::size_t size() const { return e_.size(); }
  int operator[](std::size_t i) const { return e_[i]; }
  int& operator[](std::size_t i) { return e_[i]; }
  const std::vector<int>& values() const { return e_; }

  int total() const { return std::accumulate(e_.begin(), e_.end(), 0); }
  int max() const { return e_.empty() ? 0 : *std::max_element(e_.begin(), e_.end()); }

  auto operator<=>(const MultiIndex&) const = default;
  bool operator==(const MultiIndex&) const = default;

 private:
  std::vector<int> e_;
};

/// All multi-indices of length n with |alpha| = k, lexicographically descending.
inline std::vector<MultiIndex> compositions(std::size_t n, int k) {
  std::vector<MultiIndex> out;
  if (n == 0) {
    if (k == 0) out.emplace_back(0);
    return out;
  }
  std::vector<int> cur(n, 0);
  auto rec = [&](auto&& self, std::size_t pos, int left) -> void {
    if (pos + 1 == n) {
      cur[pos] = left;
      out.emplace_back(cur);
      return;
    }
    for (int v = left; v >= 0; --v) {
      cur[pos] = v;
      self(self, pos + 1, left - v);
    }
  };
  rec(rec, 0, k);
  return out;
}

}  // namespace ncpower
