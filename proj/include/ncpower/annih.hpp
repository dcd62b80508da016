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

#include <algorithm>
#include <cstddef>
#include <map>
#include <nlohmann/json.hpp>
#include <stdexcept>
#include <string>
#include <vector>

#include "ncpower/dist.hpp"
#include "ncpower/laurent.hpp"
#include "ncpower/linalg.hpp"
#include "ncpower/weyl.hpp"

namespace ncpower {

enum class GeneratorKind { subset_product, euler_difference, transversal_derivative };

inline std::string to_string(GeneratorKind k) {
  switch (k) {
    case GeneratorKind::subset_product: return "subset-product";
    case GeneratorKind::euler_difference: return "euler-difference";
    case GeneratorKind::transversal_derivative: return "transversal-derivative";
  }
  return "?";
}

struct GeneratorSet {
  std::size_t n = 0;
  std::vector<WeylOp> ops;
  std::vector<GeneratorKind> kinds;

  void add(WeylOp op, GeneratorKind kind) {
    if (op.dim() != n) throw std::invalid_argument("generator dimension does not match set");
    ops.push_back(std::move(op));
    kinds.push_back(kind);
  }
  std::size_t size() const { return ops.size(); }
};

/// k-subsets of {1..pool} in lexicographic order.
inline std::vector<std::vector<std::size_t>> subsets(std::size_t pool, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t next) -> void {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t v = next; v + (k - cur.size()) <= pool + 1; ++v) {
      cur.push_back(v);
      self(self, v + 1);
      cur.pop_back();
    }
  };
  rec(rec, 1);
  return out;
}

/// Normal-crossing generators in monomialized coordinates (f_j = x_j, v_j = d_j):
/// x_{j_1}...x_{j_{k+1}} over {1..m}, x_1 d_1 - x_i d_i for 2 <= i <= m,
/// d_j for m < j <= n.
inline GeneratorSet generators_nc(std::size_t n, std::size_t m, int k) {
  if (m < 1 || m > n) throw std::invalid_argument("generators need 1 <= m <= n");
  if (k < 0 || k > static_cast<int>(m) - 1) throw std::invalid_argument("generators need 0 <= k <= m-1");
  GeneratorSet g{n, {}, {}};
  for (const auto& subset : subsets(m, static_cast<std::size_t>(k) + 1)) {
    WeylOp p = WeylOp::identity(n);
    for (std::size_t j : subset) p = multiply(p, WeylOp::x(n, j));
    g.add(std::move(p), GeneratorKind::subset_product);
  }
  const WeylOp euler1 = multiply(WeylOp::x(n, 1), WeylOp::d(n, 1));
  for (std::size_t i = 2; i <= m; ++i)
    g.add(euler1 - multiply(WeylOp::x(n, i), WeylOp::d(n, i)), GeneratorKind::euler_difference);
  for (std::size_t j = m + 1; j <= n; ++j) g.add(WeylOp::d(n, j), GeneratorKind::transversal_derivative);
  return g;
}

inline GeneratorSet generators(std::size_t n, int k) { return generators_nc(n, n, k); }

/// u_{-n+k} of (x_1...x_n)_+^lambda at lambda = -1.
inline Dist principal_coefficient(std::size_t n, int k) {
  if (n < 1 || k < 0 || k > static_cast<int>(n) - 1) throw std::invalid_argument("need n >= 1 and 0 <= k <= n-1");
  return expand_product(n, 0).coefficient(-static_cast<int>(n) + k);
}

inline bool annihilates_all(const GeneratorSet& g, const Dist& u) {
  return std::all_of(g.ops.begin(), g.ops.end(), [&](const WeylOp& p) { return apply(p, u).is_zero(); });
}

inline bool verify(std::size_t n, int k) { return annihilates_all(generators(n, k), principal_coefficient(n, k)); }

/// Normal-crossing generators against the m-variable coefficient embedded in R^n.
inline bool verify_nc(std::size_t n, std::size_t m, int k) {
  const GeneratorSet g = generators_nc(n, m, k);
  return annihilates_all(g, embed(principal_coefficient(m, k), n));
}

/// Basis of {P : deg P <= d, P u = 0} from the reduced echelon form of the
/// map (monomial coefficients) -> (atom coefficients of P u).
inline std::vector<WeylOp> annihilator_space(const Dist& u, int d) {
  if (d < 0) throw std::invalid_argument("degree bound must be non-negative");
  const std::size_t n = u.dim();
  const std::vector<Monomial> basis = monomial_basis(n, d);
  std::vector<Dist> images;
  images.reserve(basis.size());
  std::map<DistTensor, std::size_t> rows;
  for (const Monomial& m : basis) {
    images.push_back(apply(WeylOp::monomial(m), u));
    for (const auto& [t, c] : images.back().terms()) rows.try_emplace(t, rows.size());
  }
  Matrix a(rows.size(), basis.size());
  for (std::size_t col = 0; col < basis.size(); ++col)
    for (const auto& [t, c] : images[col].terms()) a(rows.at(t), col) = c;
  std::vector<WeylOp> out;
  for (const auto& v : null_space(a)) {
    WeylOp p(n);
    for (std::size_t col = 0; col < v.size(); ++col) p.add_term(basis[col], v[col]);
    out.push_back(std::move(p));
  }
  return out;
}

/// Span of { M g : g in G, M monomial, deg M + deg g <= bound }, grown
/// incrementally. Since deg(M g) = deg M + deg g, the span for a bound is
/// exactly the degree-truncated slice of the left ideal generated by G
/// that is reachable without cancellation above the bound.
class MembershipSolver {
 public:
  explicit MembershipSolver(GeneratorSet g) : gens_(std::move(g)) {}

  int bound() const { return bound_; }
  std::size_t rank() const { return basis_.rank(); }

  void extend_to(int bound) {
    if (bound <= bound_) return;
    const std::size_t n = gens_.n;
    const std::vector<Monomial> monos = monomial_basis(n, bound);
    for (std::size_t i = index_.size(); i < monos.size(); ++i) index_.emplace(monos[i], i);
    for (const WeylOp& g : gens_.ops) {
      if (g.is_zero()) continue;
      const int dg = g.degree();
      for (const Monomial& m : monos) {
        const int dm = m.degree();
        if (dm + dg <= bound_) continue;
        if (dm + dg > bound) break;
        basis_.insert(to_vector(multiply(WeylOp::monomial(m), g)));
      }
    }
    bound_ = bound;
  }

  /// P must have degree <= bound().
  bool contains(const WeylOp& p) const {
    if (p.is_zero()) return true;
    if (p.degree() > bound_) return false;
    return basis_.contains(to_vector(p));
  }

 private:
  SparseVector to_vector(const WeylOp& p) const {
    SparseVector v;
    v.reserve(p.size());
    for (const auto& [m, c] : p.terms()) v.emplace_back(index_.at(m), c);
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return v;
  }

  GeneratorSet gens_;
  int bound_ = -1;
  std::map<Monomial, std::size_t, GradedOrder> index_;
  EchelonBasis basis_;
};

/// True iff P lies in span{ M g : deg(M g) <= deg P + slack }. False only
/// means no certificate was found within the slack.
inline bool ideal_membership(const WeylOp& p, const GeneratorSet& g, int slack) {
  if (slack < 0) throw std::invalid_argument("slack must be non-negative");
  if (p.dim() != g.n) throw std::invalid_argument("operator and generators live in different dimensions");
  if (p.is_zero()) return true;
  MembershipSolver solver(g);
  solver.extend_to(p.degree() + slack);
  return solver.contains(p);
}

enum class Membership { member, refuted, unresolved };

inline std::string to_string(Membership m) {
  switch (m) {
    case Membership::member: return "member";
    case Membership::refuted: return "refuted";
    case Membership::unresolved: return "unresolved";
  }
  return "?";
}

/// Refuted when P does not annihilate a distribution that every generator
/// annihilates; such P can never be an ideal member.
inline Membership classify_membership(const WeylOp& p, const GeneratorSet& g, const Dist& target, int slack) {
  if (!apply(p, target).is_zero()) return Membership::refuted;
  return ideal_membership(p, g, slack) ? Membership::member : Membership::unresolved;
}

struct CompletenessReport {
  std::size_t n = 0;
  int k = 0;
  int degree_bound = 0;
  int slack_requested = 0;
  int slack_used = 0;
  std::vector<int> slack_trace;
  bool generators_annihilate = false;
  std::size_t generator_count = 0;
  std::size_t annihilator_dim = 0;
  std::size_t members = 0;
  std::vector<WeylOp> unresolved;

  bool passes() const { return generators_annihilate && unresolved.empty(); }
};

/// Every basis element of the degree <= d annihilator of u_{-n+k} is tested
/// for membership in generators(n, k), first at `slack`, then the leftovers
/// again at `max_slack`.
inline CompletenessReport completeness_report(std::size_t n, int k, int d, int slack, int max_slack = 4) {
  if (d < 1) throw std::invalid_argument("completeness needs degree bound d >= 1");
  if (slack < 0) throw std::invalid_argument("slack must be non-negative");
  const Dist u = principal_coefficient(n, k);
  const GeneratorSet g = generators(n, k);

  CompletenessReport r;
  r.n = n;
  r.k = k;
  r.degree_bound = d;
  r.slack_requested = slack;
  r.generator_count = g.size();
  r.generators_annihilate = annihilates_all(g, u);

  std::vector<WeylOp> pending = annihilator_space(u, d);
  r.annihilator_dim = pending.size();
  std::stable_sort(pending.begin(), pending.end(),
                   [](const WeylOp& a, const WeylOp& b) { return a.degree() < b.degree(); });

  MembershipSolver solver(g);
  int s = slack;
  while (true) {
    r.slack_trace.push_back(s);
    r.slack_used = s;
    std::vector<WeylOp> left;
    for (WeylOp& p : pending) {
      solver.extend_to(p.degree() + s);
      if (solver.contains(p))
        ++r.members;
      else
        left.push_back(std::move(p));
    }
    pending = std::move(left);
    if (pending.empty() || s >= max_slack) break;
    s = max_slack;
  }
  r.unresolved = std::move(pending);
  return r;
}

inline nlohmann::json to_json(const GeneratorSet& g) {
  nlohmann::json items = nlohmann::json::array();
  for (std::size_t i = 0; i < g.size(); ++i)
    items.push_back({{"kind", to_string(g.kinds[i])}, {"text", to_string(g.ops[i])}, {"op", to_json(g.ops[i])}});
  return {{"n", g.n}, {"generators", items}};
}

inline nlohmann::json to_json(const CompletenessReport& r) {
  nlohmann::json unresolved = nlohmann::json::array();
  for (const auto& p : r.unresolved) unresolved.push_back({{"text", to_string(p)}, {"op", to_json(p)}});
  return {{"n", r.n},
          {"k", r.k},
          {"d", r.degree_bound},
          {"slack_requested", r.slack_requested},
          {"slack_trace", r.slack_trace},
          {"slack_used", r.slack_used},
          {"generators_annihilate", r.generators_annihilate},
          {"generator_count", r.generator_count},
          {"annihilator_dim", r.annihilator_dim},
          {"members", r.members},
          {"unresolved", unresolved},
          {"passes", r.passes()}};
}

}  // namespace ncpower
