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
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ncpower/scalar.hpp"

namespace ncpower {

/// Normal-ordered monomial x^alpha d^beta.
struct Monomial {
  MultiIndex x;
  MultiIndex d;

  Monomial() = default;
  explicit Monomial(std::size_t n) : x(n), d(n) {}
  Monomial(MultiIndex alpha, MultiIndex beta) : x(std::move(alpha)), d(std::move(beta)) {
    if (x.size() != d.size()) throw std::invalid_argument("monomial exponent lengths differ");
  }

  std::size_t dim() const { return x.size(); }
  int degree() const { return x.total() + d.total(); }
  bool operator==(const Monomial&) const = default;
};

/// Degree first (|alpha|+|beta|), then lexicographically larger (alpha, beta)
/// first within a degree. With n = 1 this lists 1, x, d, x^2, x d, d^2, ...
struct GradedOrder {
  bool operator()(const Monomial& a, const Monomial& b) const {
    const int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    if (a.x != b.x) return a.x > b.x;
    return a.d > b.d;
  }
};

class WeylOp {
 public:
  using TermMap = std::map<Monomial, Scalar, GradedOrder>;

  WeylOp() = default;
  explicit WeylOp(std::size_t n) : n_(n) {}

  static WeylOp constant(std::size_t n, const Scalar& c) {
    WeylOp p(n);
    p.add_term(Monomial(n), c);
    return p;
  }
  static WeylOp identity(std::size_t n) { return constant(n, Scalar(1)); }

  /// Coordinates are 1-based: x(n, 1) is x_1.
  static WeylOp x(std::size_t n, std::size_t i) {
    Monomial m(n);
    m.x[check_index(n, i)] = 1;
    return monomial(std::move(m));
  }
  static WeylOp d(std::size_t n, std::size_t i) {
    Monomial m(n);
    m.d[check_index(n, i)] = 1;
    return monomial(std::move(m));
  }
  static WeylOp monomial(Monomial m, const Scalar& c = Scalar(1)) {
    WeylOp p(m.dim());
    p.add_term(std::move(m), c);
    return p;
  }

  std::size_t dim() const { return n_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Largest |alpha|+|beta| over the terms; -1 for the zero operator.
  int degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.degree(); }

  Scalar coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  void add_term(Monomial m, const Scalar& c) {
    if (m.dim() != n_) throw std::invalid_argument("monomial dimension does not match operator");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(std::move(m), c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  WeylOp& operator+=(const WeylOp& o) {
    check_same_dim(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  WeylOp& operator-=(const WeylOp& o) {
    check_same_dim(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  WeylOp& operator*=(const Scalar& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend WeylOp operator+(WeylOp a, const WeylOp& b) { return a += b; }
  friend WeylOp operator-(WeylOp a, const WeylOp& b) { return a -= b; }
  friend WeylOp operator-(WeylOp a) { return a *= Scalar(-1); }
  friend WeylOp operator*(WeylOp a, const Scalar& s) { return a *= s; }
  friend WeylOp operator*(const Scalar& s, WeylOp a) { return a *= s; }
  friend bool operator==(const WeylOp& a, const WeylOp& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }

  void check_same_dim(const WeylOp& o) const {
    if (o.n_ != n_)
      throw std::invalid_argument("operator dimension mismatch: " + std::to_string(n_) + " vs " +
                                  std::to_string(o.n_));
  }

  static std::size_t check_index(std::size_t n, std::size_t i) {
    if (i < 1 || i > n)
      throw std::out_of_range("coordinate index " + std::to_string(i) + " outside 1.." + std::to_string(n));
    return i - 1;
  }

 private:
  std::size_t n_ = 0;
  TermMap terms_;
};

namespace detail {

// d^b x^c in one variable = sum_k C(b,k) c!/(c-k)! x^(c-k) d^(b-k)
inline void multiply_monomials(const Monomial& left, const Scalar& cl, const Monomial& right, const Scalar& cr,
                               WeylOp& out) {
  const std::size_t n = left.dim();
  Monomial cur(n);
  auto rec = [&](auto&& self, std::size_t i, const Scalar& coeff) -> void {
    if (i == n) {
      out.add_term(cur, coeff);
      return;
    }
    const int b = left.d[i], c = right.x[i];
    for (int k = 0; k <= std::min(b, c); ++k) {
      cur.x[i] = left.x[i] + c - k;
      cur.d[i] = b + right.d[i] - k;
      self(self, i + 1, coeff * binomial(b, k) * falling_factorial(c, k));
    }
  };
  rec(rec, 0, cl * cr);
}

}  // namespace detail

inline WeylOp multiply(const WeylOp& p, const WeylOp& q) {
  p.check_same_dim(q);
  WeylOp out(p.dim());
  for (const auto& [mp, cp] : p.terms())
    for (const auto& [mq, cq] : q.terms()) detail::multiply_monomials(mp, cp, mq, cq, out);
  return out;
}

inline WeylOp operator*(const WeylOp& p, const WeylOp& q) { return multiply(p, q); }

/// A generator symbol x_i or d_i (1-based index).
struct Generator {
  enum class Kind { x, d };
  Kind kind;
  std::size_t index;
};

/// coeff * s_1 s_2 ... s_r, read left to right.
struct Word {
  Scalar coeff{1};
  std::vector<Generator> symbols;
};

inline WeylOp normal_order(std::size_t n, const Word& w) {
  WeylOp acc = WeylOp::constant(n, w.coeff);
  for (const Generator& g : w.symbols) {
    const std::size_t i = WeylOp::check_index(n, g.index);
    WeylOp next(n);
    for (const auto& [m, c] : acc.terms()) {
      Monomial shifted = m;
      if (g.kind == Generator::Kind::d) {
        ++shifted.d[i];
        next.add_term(std::move(shifted), c);
      } else {
        // x^a d^b x_i = x^(a+e_i) d^b + b_i x^a d^(b-e_i)
        ++shifted.x[i];
        next.add_term(std::move(shifted), c);
        if (m.d[i] > 0) {
          Monomial lowered = m;
          --lowered.d[i];
          next.add_term(std::move(lowered), c * m.d[i]);
        }
      }
    }
    acc = std::move(next);
  }
  return acc;
}

inline WeylOp normal_order(std::size_t n, std::span<const Word> words) {
  WeylOp out(n);
  for (const Word& w : words) out += normal_order(n, w);
  return out;
}

/// Formal transpose: x^alpha d^beta -> (-d)^beta x^alpha.
inline WeylOp transpose(const WeylOp& p) {
  const std::size_t n = p.dim();
  WeylOp out(n);
  for (const auto& [m, c] : p.terms()) {
    Monomial dpart(n), xpart(n);
    dpart.d = m.d;
    xpart.x = m.x;
    detail::multiply_monomials(dpart, c * sign_power(m.d.total()), xpart, Scalar(1), out);
  }
  return out;
}

/// theta_i = d_i x_i = x_i d_i + 1.
inline WeylOp theta(std::size_t n, std::size_t i) { return multiply(WeylOp::d(n, i), WeylOp::x(n, i)); }

struct ThetaDivision {
  std::vector<WeylOp> quotients;  // Q_1..Q_n
  WeylOp remainder;               // every term has alpha_i * beta_i == 0
};

/// P = sum_i Q_i (d_i x_i) + R. A term with alpha_i, beta_i >= 1 (smallest
/// such i) is rewritten as x^(a-e_i) d^(b-e_i) theta_i - beta_i x^(a-e_i) d^(b-e_i).
inline ThetaDivision divide_by_theta(const WeylOp& p) {
  const std::size_t n = p.dim();
  ThetaDivision out{std::vector<WeylOp>(n, WeylOp(n)), WeylOp(n)};
  std::vector<std::pair<Monomial, Scalar>> work(p.terms().begin(), p.terms().end());
  while (!work.empty()) {
    auto [m, c] = std::move(work.back());
    work.pop_back();
    std::size_t i = 0;
    while (i < n && (m.x[i] == 0 || m.d[i] == 0)) ++i;
    if (i == n) {
      out.remainder.add_term(std::move(m), c);
      continue;
    }
    --m.x[i];
    --m.d[i];
    const int b = m.d[i] + 1;
    out.quotients[i].add_term(m, c);
    work.emplace_back(std::move(m), -c * b);
  }
  return out;
}

/// Every x^alpha d^beta with |alpha|+|beta| <= degree, in GradedOrder.
inline std::vector<Monomial> monomial_basis(std::size_t n, int degree) {
  std::vector<Monomial> out;
  for (int deg = 0; deg <= degree; ++deg) {
    for (const MultiIndex& e : compositions(2 * n, deg)) {
      const auto& v = e.values();
      out.emplace_back(MultiIndex(std::vector<int>(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n))),
                       MultiIndex(std::vector<int>(v.begin() + static_cast<std::ptrdiff_t>(n), v.end())));
    }
  }
  return out;
}

inline std::vector<WeylOp> monomials_up_to(std::size_t n, int degree) {
  if (degree < 0) throw std::invalid_argument("degree bound must be non-negative");
  std::vector<WeylOp> out;
  for (Monomial& m : monomial_basis(n, degree)) out.push_back(WeylOp::monomial(std::move(m)));
  return out;
}

// ---------------------------------------------------------------------------
// Text form: "x1^2 d1 + 2 x1", "-1/2 x1 d2". Parsing accepts any word order
// ("d1 x1") and normal-orders it; "*" between factors is optional.

inline std::string monomial_string(const Monomial& m, bool unicode = false) {
  std::string s;
  auto factor = [&](std::string_view sym, std::size_t i, int e) {
    if (e == 0) return;
    if (!s.empty()) s += ' ';
    s += sym;
    s += std::to_string(i + 1);
    if (e > 1) s += "^" + std::to_string(e);
  };
  for (std::size_t i = 0; i < m.dim(); ++i) factor("x", i, m.x[i]);
  for (std::size_t i = 0; i < m.dim(); ++i) factor(unicode ? "∂" : "d", i, m.d[i]);
  return s;
}

inline std::string to_string(const WeylOp& p, bool unicode = false) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    const bool neg = c < 0;
    const Scalar mag = neg ? Scalar(-c) : c;
    out += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
    const std::string mono = monomial_string(m, unicode);
    if (mono.empty()) {
      out += to_string(mag);
    } else {
      if (mag != 1) out += to_string(mag) + " ";
      out += mono;
    }
    first = false;
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const WeylOp& p) { return os << to_string(p); }

inline WeylOp parse_weyl(std::string_view text, std::optional<std::size_t> dim = std::nullopt) {
  std::vector<Word> words;
  std::size_t max_index = 0;
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) -> void {
    throw std::invalid_argument("cannot parse operator '" + std::string(text) + "' at " + std::to_string(pos) +
                                ": " + why);
  };
  auto skip_ws = [&] {
    while (pos < text.size() && (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == '*')) ++pos;
  };
  auto read_uint = [&]() -> std::size_t {
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) fail("expected digits");
    return std::stoul(std::string(text.substr(start, pos - start)));
  };

  skip_ws();
  bool expect_term = true;
  int sign = 1;
  while (pos < text.size()) {
    if (text[pos] == '+' || text[pos] == '-') {
      if (text[pos] == '-') sign = -sign;
      ++pos;
      expect_term = true;
      skip_ws();
      continue;
    }
    if (!expect_term) fail("expected '+' or '-'");
    Word w;
    bool any = false;
    if (std::isdigit(static_cast<unsigned char>(text[pos]))) {
      std::size_t start = pos;
      read_uint();
      if (pos < text.size() && text[pos] == '/') {
        ++pos;
        read_uint();
      }
      w.coeff = parse_scalar(text.substr(start, pos - start));
      any = true;
      skip_ws();
    }
    while (pos < text.size() && text[pos] != '+' && text[pos] != '-') {
      Generator::Kind kind;
      if (text[pos] == 'x') {
        kind = Generator::Kind::x;
        ++pos;
      } else if (text[pos] == 'd') {
        kind = Generator::Kind::d;
        ++pos;
      } else if (text.substr(pos, 3) == "∂") {
        kind = Generator::Kind::d;
        pos += 3;
      } else {
        fail("unexpected character");
      }
      const std::size_t idx = read_uint();
      if (idx == 0) fail("coordinate indices start at 1");
      std::size_t power = 1;
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        power = read_uint();
      }
      for (std::size_t r = 0; r < power; ++r) w.symbols.push_back({kind, idx});
      max_index = std::max(max_index, idx);
      any = true;
      skip_ws();
    }
    if (!any) fail("empty term");
    w.coeff *= sign;
    words.push_back(std::move(w));
    sign = 1;
    expect_term = false;
  }
  if (expect_term) fail(words.empty() ? "empty operator" : "dangling sign");
  const std::size_t n = dim.value_or(std::max<std::size_t>(max_index, 1));
  if (max_index > n) fail("index exceeds dimension " + std::to_string(n));
  return normal_order(n, std::span<const Word>(words));
}

// JSON form: {"n": int, "terms": [{"c": "p/q", "a": [..], "b": [..]}]}
inline nlohmann::json to_json(const WeylOp& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [m, c] : p.terms())
    terms.push_back({{"c", to_string(c)}, {"a", m.x.values()}, {"b", m.d.values()}});
  return {{"n", p.dim()}, {"terms", terms}};
}

inline WeylOp weyl_from_json(const nlohmann::json& j) {
  const auto n = j.at("n").get<std::size_t>();
  WeylOp p(n);
  for (const auto& t : j.at("terms")) {
    Monomial m(MultiIndex(t.at("a").get<std::vector<int>>()), MultiIndex(t.at("b").get<std::vector<int>>()));
    if (m.dim() != n) throw std::invalid_argument("term exponent length does not match n");
    p.add_term(std::move(m), parse_scalar(t.at("c").get<std::string>()));
  }
  return p;
}

}  // namespace ncpower
