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

#include <cstddef>
#include <map>
#include <nlohmann/json.hpp>
#include <stdexcept>
#include <string>
#include <vector>

#include "ncpower/dist.hpp"
#include "ncpower/scalar.hpp"
#include "ncpower/weyl.hpp"

namespace ncpower {

/// Truncated Laurent series sum_{d=-n}^{J} eps^d u_d in eps = lambda + 1.
class LaurentDist {
 public:
  LaurentDist(std::size_t n, int order) : n_(n), order_(order) {
    if (order < 0) throw std::invalid_argument("truncation order J must be >= 0");
    coeffs_.assign(static_cast<std::size_t>(order + static_cast<int>(n) + 1), Dist(n));
  }

  std::size_t dim() const { return n_; }
  int order() const { return order_; }
  int lowest() const { return -static_cast<int>(n_); }

  /// u_d for d in [-n, J]; zero below -n.
  const Dist& coefficient(int d) const {
    if (d > order_) throw std::out_of_range("degree " + std::to_string(d) + " beyond truncation order");
    if (d < lowest()) return zero_;
    return coeffs_[static_cast<std::size_t>(d - lowest())];
  }
  Dist& coefficient(int d) {
    if (d > order_ || d < lowest()) throw std::out_of_range("degree " + std::to_string(d) + " outside series window");
    return coeffs_[static_cast<std::size_t>(d - lowest())];
  }

  friend bool operator==(const LaurentDist& a, const LaurentDist& b) {
    return a.n_ == b.n_ && a.order_ == b.order_ && a.coeffs_ == b.coeffs_;
  }

 private:
  std::size_t n_;
  int order_;
  std::vector<Dist> coeffs_;
  Dist zero_{n_};
};

/// sigma in {1,-1}^n.
struct SignVector {
  std::vector<int> signs;

  std::size_t dim() const { return signs.size(); }
  int product() const {
    int p = 1;
    for (int s : signs) p *= s;
    return p;
  }
  bool in_sign_set() const { return product() == 1; }
  bool operator==(const SignVector&) const = default;
};

/// S(n): sign vectors with product +1, in binary order of the -1 positions
/// (bit i set means sigma_{i+1} = -1).
inline std::vector<SignVector> sign_set(std::size_t n) {
  if (n < 1) throw std::invalid_argument("sign_set needs n >= 1");
  if (n > 20) throw std::invalid_argument("sign_set dimension too large");
  std::vector<SignVector> out;
  for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
    if (__builtin_popcountl(mask) % 2 != 0) continue;
    SignVector s{std::vector<int>(n, 1)};
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1ul << i)) s.signs[i] = -1;
    out.push_back(std::move(s));
  }
  return out;
}

/// h_j(sigma t): h_0 = delta, h_j = Pf(-1, j-1, side) / (j-1)! for j >= 1.
inline AtomCombination h_atom(int j, Side side) {
  if (j < 0) throw std::invalid_argument("h_j needs j >= 0");
  if (j == 0) return {{Atom1D::delta(0), Scalar(1)}};
  return {{Atom1D::pf(-1, j - 1, side), Scalar(1) / factorial(j - 1)}};
}

/// (sigma t)_+^lambda = eps^-1 delta + sum_{j>=1} eps^(j-1) h_j(sigma t).
inline LaurentDist expand_one_var(Side side, int order) {
  LaurentDist out(1, order);
  out.coefficient(-1) = from_atoms(h_atom(0, side));
  for (int j = 1; j <= order + 1; ++j) out.coefficient(j - 1) = from_atoms(h_atom(j, side));
  return out;
}

/// Cauchy product of truncated series with tensor-product coefficients.
/// Terms past the smaller of the two orders are discarded.
inline LaurentDist series_tensor(const LaurentDist& a, const LaurentDist& b, int order) {
  LaurentDist out(a.dim() + b.dim(), order);
  for (int da = a.lowest(); da <= a.order(); ++da) {
    const Dist& ua = a.coefficient(da);
    if (ua.is_zero()) continue;
    for (int db = b.lowest(); db <= b.order(); ++db) {
      const int d = da + db;
      if (d > order) break;
      const Dist& ub = b.coefficient(db);
      if (ub.is_zero()) continue;
      out.coefficient(d) += tensor(ua, ub);
    }
  }
  return out;
}

/// Laurent expansion of (x_1...x_n)_+^lambda at lambda = -1 as the sum over
/// S(n) of products of one-variable expansions.
inline LaurentDist expand_product(std::size_t n, int order = 2) {
  if (n < 1) throw std::invalid_argument("expand_product needs n >= 1");
  if (order < 0) throw std::invalid_argument("truncation order J must be >= 0");
  // each factor contributes eps^-1, so factors are needed through order + n - 1
  const int factor_order = order + static_cast<int>(n) - 1;
  const LaurentDist plus = expand_one_var(Side::plus, factor_order);
  const LaurentDist minus = expand_one_var(Side::minus, factor_order);
  LaurentDist out(n, order);
  for (const SignVector& sigma : sign_set(n)) {
    LaurentDist acc = sigma.signs[0] > 0 ? plus : minus;
    for (std::size_t i = 1; i < n; ++i) {
      const int partial_order = factor_order - static_cast<int>(i);  // remaining factors add -1 each
      acc = series_tensor(acc, sigma.signs[i] > 0 ? plus : minus, partial_order);
    }
    for (int d = -static_cast<int>(n); d <= order; ++d) out.coefficient(d) += acc.coefficient(d);
  }
  return out;
}

/// Same expansion from u_{-n+k} = sum_{sigma in S(n)} sum_{|alpha|=k} h_alpha(sigma x).
inline LaurentDist expand_product_direct(std::size_t n, int order = 2) {
  if (n < 1) throw std::invalid_argument("expand_product needs n >= 1");
  LaurentDist out(n, order);
  const auto signs = sign_set(n);
  for (int d = -static_cast<int>(n); d <= order; ++d) {
    Dist& u = out.coefficient(d);
    const int k = d + static_cast<int>(n);
    for (const SignVector& sigma : signs) {
      for (const MultiIndex& alpha : compositions(n, k)) {
        Dist term = Dist::unit();
        for (std::size_t i = 0; i < n; ++i)
          term = tensor(term, from_atoms(h_atom(alpha[i], sigma.signs[i] > 0 ? Side::plus : Side::minus)));
        u += term;
      }
    }
  }
  return out;
}

/// 1 = Y(t) + Y(-t) in one variable.
inline Dist constant_one() {
  return from_atoms({{Atom1D::heaviside(Side::plus), Scalar(1)}, {Atom1D::heaviside(Side::minus), Scalar(1)}});
}

/// u(x_1..x_m) viewed on R^n, constant in x_{m+1}..x_n.
inline Dist embed(const Dist& u, std::size_t n) {
  if (n < u.dim()) throw std::invalid_argument("cannot embed into fewer variables");
  Dist out = u;
  for (std::size_t i = u.dim(); i < n; ++i) out = tensor(out, constant_one());
  return out;
}

/// d_i x_i u_d == u_{d-1} for every i (u_{-n-1} = 0).
inline bool shift_holds(const LaurentDist& series, int d) {
  for (std::size_t i = 1; i <= series.dim(); ++i)
    if (apply(theta(series.dim(), i), series.coefficient(d)) != series.coefficient(d - 1)) return false;
  return true;
}

/// d_i x_i u_{-k} == u_{-k-1} for all i, with 0 <= k <= n-1.
inline bool shift_check(std::size_t n, int k) {
  if (k < 0 || k > static_cast<int>(n) - 1) throw std::invalid_argument("shift_check needs 0 <= k <= n-1");
  return shift_holds(expand_product(n, 0), -k);
}

/// x_i d_i u_d == -u_d + u_{d-1} for every i.
inline bool euler_holds(const LaurentDist& series, int d) {
  const std::size_t n = series.dim();
  const Dist expected = series.coefficient(d - 1) - series.coefficient(d);
  for (std::size_t i = 1; i <= n; ++i)
    if (apply(multiply(WeylOp::x(n, i), WeylOp::d(n, i)), series.coefficient(d)) != expected) return false;
  return true;
}

// {"n":2, "J":1, "coeffs": {"-2": <Dist>, "-1": <Dist>, ...}}
inline nlohmann::json to_json(const LaurentDist& s) {
  nlohmann::json coeffs = nlohmann::json::object();
  for (int d = s.lowest(); d <= s.order(); ++d) coeffs[std::to_string(d)] = to_json(s.coefficient(d));
  return {{"n", s.dim()}, {"J", s.order()}, {"coeffs", coeffs}};
}

inline LaurentDist laurent_from_json(const nlohmann::json& j) {
  LaurentDist s(j.at("n").get<std::size_t>(), j.at("J").get<int>());
  for (const auto& [key, value] : j.at("coeffs").items()) {
    Dist u = dist_from_json(value);
    u.check_same_dim(Dist(s.dim()));
    s.coefficient(std::stoi(key)) = std::move(u);
  }
  return s;
}

}  // namespace ncpower
