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

#include <compare>
#include <cstddef>
#include <map>
#include <nlohmann/json.hpp>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ncpower/scalar.hpp"
#include "ncpower/weyl.hpp"

namespace ncpower {

enum class Side { plus, minus };

inline Side flip(Side s) { return s == Side::plus ? Side::minus : Side::plus; }

/// One-variable basis distribution.
///
/// Delta(m) is delta^(m)(t). Pf(a, j, +) is the canonical finite part of
/// t^a (log t)^j on t > 0: j! times the coefficient of (lambda - a)^j in the
/// Laurent expansion of t_+^lambda at lambda = a. Pf(a, j, -) is its image
/// under t -> -t. With that normalization t * Pf(a,j,+) = Pf(a+1,j,+) holds
/// without correction terms, and Pf(0,0,+) is the Heaviside function Y(t).
struct Atom1D {
  enum class Kind { delta, pf };

  Kind kind = Kind::delta;
  int m = 0;  // derivative order (delta only)
  int a = 0;  // power (pf only)
  int j = 0;  // log power (pf only)
  Side side = Side::plus;

  static Atom1D delta(int order = 0) {
    if (order < 0) throw std::invalid_argument("delta derivative order must be >= 0");
    return Atom1D{Kind::delta, order, 0, 0, Side::plus};
  }
  static Atom1D pf(int power, int log_power, Side s = Side::plus) {
    if (log_power < 0) throw std::invalid_argument("log power must be >= 0");
    return Atom1D{Kind::pf, 0, power, log_power, s};
  }
  static Atom1D heaviside(Side s = Side::plus) { return pf(0, 0, s); }

  bool is_delta() const { return kind == Kind::delta; }

  auto operator<=>(const Atom1D&) const = default;
  bool operator==(const Atom1D&) const = default;
};

/// Finite linear combination of atoms in one variable.
using AtomCombination = std::vector<std::pair<Atom1D, Scalar>>;

/// F(-t) for the atom F: delta^(m)(-t) = (-1)^m delta^(m)(t); Pf flips side.
inline std::pair<Atom1D, Scalar> reflect(const Atom1D& u) {
  if (u.is_delta()) return {u, Scalar(sign_power(u.m))};
  return {Atom1D::pf(u.a, u.j, flip(u.side)), Scalar(1)};
}

/// Residue of t_+^lambda at lambda = b for b <= -1:
/// (-1)^(k-1) delta^(k-1) / (k-1)! with k = -b.
inline std::pair<Atom1D, Scalar> residue_atom(int b) {
  const int k = -b;
  return {Atom1D::delta(k - 1), Scalar(sign_power(k - 1)) / factorial(k - 1)};
}

/// t * u
inline AtomCombination times_t(const Atom1D& u) {
  if (u.is_delta()) {
    if (u.m == 0) return {};
    return {{Atom1D::delta(u.m - 1), Scalar(-u.m)}};
  }
  const Scalar s = u.side == Side::plus ? 1 : -1;
  return {{Atom1D::pf(u.a + 1, u.j, u.side), s}};
}

/// d/dt u
///   d Pf(a,j,+) = a Pf(a-1,j,+) + j Pf(a-1,j-1,+) + [j=0] res(a-1)
/// and side - follows from d[F(-t)] = -(F')(-t).
inline AtomCombination derivative(const Atom1D& u) {
  if (u.is_delta()) return {{Atom1D::delta(u.m + 1), Scalar(1)}};
  const bool minus = u.side == Side::minus;
  const Scalar s = minus ? -1 : 1;
  AtomCombination out;
  if (u.a != 0) out.emplace_back(Atom1D::pf(u.a - 1, u.j, u.side), s * u.a);
  if (u.j > 0) out.emplace_back(Atom1D::pf(u.a - 1, u.j - 1, u.side), s * u.j);
  if (u.j == 0 && u.a - 1 <= -1) {
    auto [r, c] = residue_atom(u.a - 1);
    if (minus) {
      auto [rr, cr] = reflect(r);
      r = rr;
      c *= cr;
    }
    out.emplace_back(r, s * c);
  }
  return out;
}

/// x^p d^q applied to a single atom.
inline AtomCombination apply_monomial(const Atom1D& u, int p, int q) {
  std::map<Atom1D, Scalar> cur{{u, Scalar(1)}};
  auto step = [&](auto&& rule) {
    std::map<Atom1D, Scalar> next;
    for (const auto& [atom, c] : cur)
      for (const auto& [b, cb] : rule(atom)) {
        Scalar& slot = next[b];
        slot += c * cb;
        if (slot == 0) next.erase(b);
      }
    cur = std::move(next);
  };
  for (int r = 0; r < q && !cur.empty(); ++r) step([](const Atom1D& b) { return derivative(b); });
  for (int r = 0; r < p && !cur.empty(); ++r) step([](const Atom1D& b) { return times_t(b); });
  return {cur.begin(), cur.end()};
}

/// h_alpha(x) style product: slot i carries the atom in x_i.
struct DistTensor {
  std::vector<Atom1D> atoms;

  DistTensor() = default;
  explicit DistTensor(std::vector<Atom1D> a) : atoms(std::move(a)) {}

  std::size_t dim() const { return atoms.size(); }
  int delta_count() const {
    int c = 0;
    for (const auto& a : atoms) c += a.is_delta() ? 1 : 0;
    return c;
  }
  auto operator<=>(const DistTensor&) const = default;
  bool operator==(const DistTensor&) const = default;
};

/// Exact finite linear combination of DistTensors in n variables.
class Dist {
 public:
  using TermMap = std::map<DistTensor, Scalar>;

  Dist() = default;
  explicit Dist(std::size_t n) : n_(n) {}

  static Dist atom(const DistTensor& t, const Scalar& c = Scalar(1)) {
    Dist u(t.dim());
    u.add_term(t, c);
    return u;
  }
  /// The constant 1 in zero variables; the unit for tensor().
  static Dist unit() { return atom(DistTensor{}); }

  std::size_t dim() const { return n_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Scalar coefficient(const DistTensor& t) const {
    auto it = terms_.find(t);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  void add_term(const DistTensor& t, const Scalar& c) {
    if (t.dim() != n_) throw std::invalid_argument("tensor dimension does not match distribution");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(t, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Dist& operator+=(const Dist& o) {
    check_same_dim(o);
    for (const auto& [t, c] : o.terms_) add_term(t, c);
    return *this;
  }
  Dist& operator-=(const Dist& o) {
    check_same_dim(o);
    for (const auto& [t, c] : o.terms_) add_term(t, -c);
    return *this;
  }
  Dist& operator*=(const Scalar& s) {
    if (s == 0) terms_.clear();
    for (auto& [t, c] : terms_) c *= s;
    return *this;
  }
  friend Dist operator+(Dist a, const Dist& b) { return a += b; }
  friend Dist operator-(Dist a, const Dist& b) { return a -= b; }
  friend Dist operator-(Dist a) { return a *= Scalar(-1); }
  friend Dist operator*(const Scalar& s, Dist a) { return a *= s; }
  friend Dist operator*(Dist a, const Scalar& s) { return a *= s; }
  friend bool operator==(const Dist& a, const Dist& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }

  void check_same_dim(const Dist& o) const {
    if (o.n_ != n_)
      throw std::invalid_argument("distribution dimension mismatch: " + std::to_string(n_) + " vs " +
                                  std::to_string(o.n_));
  }

 private:
  std::size_t n_ = 0;
  TermMap terms_;
};

inline bool is_zero(const Dist& u) { return u.is_zero(); }
inline bool equal(const Dist& u, const Dist& v) { return u == v; }

/// u(x_1..x_p) v(x_{p+1}..x_{p+q})
inline Dist tensor(const Dist& u, const Dist& v) {
  Dist out(u.dim() + v.dim());
  for (const auto& [tu, cu] : u.terms())
    for (const auto& [tv, cv] : v.terms()) {
      DistTensor t = tu;
      t.atoms.insert(t.atoms.end(), tv.atoms.begin(), tv.atoms.end());
      out.add_term(t, cu * cv);
    }
  return out;
}

/// One-variable distribution from an atom combination.
inline Dist from_atoms(const AtomCombination& comb) {
  Dist out(1);
  for (const auto& [a, c] : comb) out.add_term(DistTensor({a}), c);
  return out;
}

namespace detail {

template <class Rule>
Dist act_on_slot(std::size_t i, const Dist& u, Rule&& rule) {
  const std::size_t k = WeylOp::check_index(u.dim(), i);
  Dist out(u.dim());
  for (const auto& [t, c] : u.terms()) {
    for (const auto& [a, ca] : rule(t.atoms[k])) {
      DistTensor next = t;
      next.atoms[k] = a;
      out.add_term(next, c * ca);
    }
  }
  return out;
}

}  // namespace detail

/// x_i u (1-based i)
inline Dist act_x(std::size_t i, const Dist& u) {
  return detail::act_on_slot(i, u, [](const Atom1D& a) { return times_t(a); });
}

/// d_i u (1-based i)
inline Dist act_d(std::size_t i, const Dist& u) {
  return detail::act_on_slot(i, u, [](const Atom1D& a) { return derivative(a); });
}

/// P u, each term x^alpha d^beta acting slot by slot (derivatives first).
inline Dist apply(const WeylOp& p, const Dist& u) {
  if (p.dim() != u.dim())
    throw std::invalid_argument("operator acts in " + std::to_string(p.dim()) + " variables, distribution has " +
                                std::to_string(u.dim()));
  const std::size_t n = u.dim();
  Dist out(n);
  std::vector<AtomCombination> per_slot(n);
  DistTensor cur;
  cur.atoms.resize(n);
  for (const auto& [m, cm] : p.terms()) {
    for (const auto& [t, cu] : u.terms()) {
      bool vanishes = false;
      for (std::size_t i = 0; i < n && !vanishes; ++i) {
        per_slot[i] = apply_monomial(t.atoms[i], m.x[i], m.d[i]);
        vanishes = per_slot[i].empty();
      }
      if (vanishes) continue;
      auto rec = [&](auto&& self, std::size_t i, const Scalar& c) -> void {
        if (i == n) {
          out.add_term(cur, c);
          return;
        }
        for (const auto& [a, ca] : per_slot[i]) {
          cur.atoms[i] = a;
          self(self, i + 1, c * ca);
        }
      };
      rec(rec, 0, cm * cu);
    }
  }
  return out;
}

/// Relabel coordinates: slot i of the result is slot perm[i] of u (0-based).
inline Dist permute(const Dist& u, const std::vector<std::size_t>& perm) {
  if (perm.size() != u.dim()) throw std::invalid_argument("permutation length does not match dimension");
  Dist out(u.dim());
  for (const auto& [t, c] : u.terms()) {
    DistTensor p;
    p.atoms.reserve(perm.size());
    for (std::size_t i : perm) p.atoms.push_back(t.atoms.at(i));
    out.add_term(p, c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Text: "2 d(x1) d(x2)", "Pf(x1_+^-1) d(x2)", "Pf(x1_-^-1 log^2)".

inline std::string atom_string(const Atom1D& a, std::size_t slot, bool unicode = false) {
  const std::string var = "x" + std::to_string(slot + 1);
  if (a.is_delta()) {
    std::string s = unicode ? "δ" : "d";
    if (a.m == 1)
      s += "'";
    else if (a.m > 1)
      s += "^(" + std::to_string(a.m) + ")";
    return s + "(" + var + ")";
  }
  std::string s = "Pf(" + var + (a.side == Side::plus ? "_+" : "_-") + "^" + std::to_string(a.a);
  if (a.j > 0) s += " log^" + std::to_string(a.j);
  return s + ")";
}

inline std::string to_string(const Dist& u, bool unicode = false) {
  if (u.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [t, c] : u.terms()) {
    const bool neg = c < 0;
    const Scalar mag = neg ? Scalar(-c) : c;
    out += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
    std::string body;
    for (std::size_t i = 0; i < t.dim(); ++i) {
      if (!body.empty()) body += ' ';
      body += atom_string(t.atoms[i], i, unicode);
    }
    if (body.empty())
      out += to_string(mag);
    else
      out += (mag == 1 ? "" : to_string(mag) + " ") + body;
    first = false;
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const Dist& u) { return os << to_string(u); }

// JSON: {"n": int, "terms": [{"c": "p/q", "atoms": [{"k":"delta","m":0} |
// {"k":"pf","a":-1,"j":0,"s":"+"}]}]}

inline nlohmann::json to_json(const Atom1D& a) {
  if (a.is_delta()) return {{"k", "delta"}, {"m", a.m}};
  return {{"k", "pf"}, {"a", a.a}, {"j", a.j}, {"s", a.side == Side::plus ? "+" : "-"}};
}

inline Atom1D atom_from_json(const nlohmann::json& j) {
  const auto kind = j.at("k").get<std::string>();
  if (kind == "delta") return Atom1D::delta(j.at("m").get<int>());
  if (kind == "pf") {
    const auto s = j.at("s").get<std::string>();
    if (s != "+" && s != "-") throw std::invalid_argument("pf side must be \"+\" or \"-\"");
    return Atom1D::pf(j.at("a").get<int>(), j.at("j").get<int>(), s == "+" ? Side::plus : Side::minus);
  }
  throw std::invalid_argument("unknown atom kind '" + kind + "'");
}

inline nlohmann::json to_json(const Dist& u) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [t, c] : u.terms()) {
    nlohmann::json atoms = nlohmann::json::array();
    for (const auto& a : t.atoms) atoms.push_back(to_json(a));
    terms.push_back({{"c", to_string(c)}, {"atoms", atoms}});
  }
  return {{"n", u.dim()}, {"terms", terms}};
}

inline Dist dist_from_json(const nlohmann::json& j) {
  const auto n = j.at("n").get<std::size_t>();
  Dist u(n);
  for (const auto& t : j.at("terms")) {
    DistTensor tensor_term;
    for (const auto& a : t.at("atoms")) tensor_term.atoms.push_back(atom_from_json(a));
    if (tensor_term.dim() != n) throw std::invalid_argument("tensor length does not match n");
    u.add_term(tensor_term, parse_scalar(t.at("c").get<std::string>()));
  }
  return u;
}

}  // namespace ncpower
