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

// Floating-point oracle: finite-part pairings of atoms against
// polynomial x Gaussian test functions, the local zeta function of
// (x_1...x_n)_+^lambda sampled on a circle around lambda = -1, and a least
// squares Laurent fit compared against the exact expansion.

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <nlohmann/json.hpp>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ncpower/dist.hpp"
#include "ncpower/laurent.hpp"
#include "ncpower/scalar.hpp"
#include "ncpower/weyl.hpp"

namespace ncpower {

/// Coefficients in ascending powers of t.
using Polynomial1 = std::vector<Scalar>;

/// phi(x) = prod_i p_i(x_i) exp(-x_i^2).
struct TestFunction {
  std::vector<Polynomial1> factors;

  static TestFunction gaussian(std::size_t n) { return {std::vector<Polynomial1>(n, Polynomial1{Scalar(1)})}; }
  std::size_t dim() const { return factors.size(); }
};

/// Q(x) exp(-|x|^2) with Q a polynomial in n variables; closed under the
/// Weyl algebra action, so P^t phi stays exact.
class GaussianDensity {
 public:
  using Exponent = std::vector<int>;

  explicit GaussianDensity(std::size_t n) : n_(n) {}

  static GaussianDensity from(const TestFunction& phi) {
    GaussianDensity g(phi.dim());
    g.coeffs_.emplace(Exponent(phi.dim(), 0), Scalar(1));
    for (std::size_t i = 0; i < phi.dim(); ++i) {
      std::map<Exponent, Scalar> next;
      for (const auto& [e, c] : g.coeffs_)
        for (std::size_t p = 0; p < phi.factors[i].size(); ++p) {
          if (phi.factors[i][p] == 0) continue;
          Exponent f = e;
          f[i] += static_cast<int>(p);
          next[f] += c * phi.factors[i][p];
        }
      g.coeffs_ = std::move(next);
      g.prune();
    }
    return g;
  }

  std::size_t dim() const { return n_; }
  const std::map<Exponent, Scalar>& coefficients() const { return coeffs_; }

  GaussianDensity times_x(std::size_t i) const {
    const std::size_t k = WeylOp::check_index(n_, i);
    GaussianDensity out(n_);
    for (const auto& [e, c] : coeffs_) {
      Exponent f = e;
      ++f[k];
      out.coeffs_[f] += c;
    }
    return out;
  }

  /// d_i (x^g e^{-|x|^2}) = (g_i x^{g - e_i} - 2 x^{g + e_i}) e^{-|x|^2}
  GaussianDensity derivative(std::size_t i) const {
    const std::size_t k = WeylOp::check_index(n_, i);
    GaussianDensity out(n_);
    for (const auto& [e, c] : coeffs_) {
      if (e[k] > 0) {
        Exponent f = e;
        --f[k];
        out.coeffs_[f] += c * e[k];
      }
      Exponent f = e;
      ++f[k];
      out.coeffs_[f] -= 2 * c;
    }
    out.prune();
    return out;
  }

  /// P acting on the smooth function.
  GaussianDensity apply(const WeylOp& p) const {
    if (p.dim() != n_) throw std::invalid_argument("operator dimension does not match test function");
    GaussianDensity out(n_);
    for (const auto& [m, c] : p.terms()) {
      GaussianDensity g = *this;
      for (std::size_t i = 0; i < n_; ++i)
        for (int r = 0; r < m.d[i]; ++r) g = g.derivative(i + 1);
      for (std::size_t i = 0; i < n_; ++i)
        for (int r = 0; r < m.x[i]; ++r) g = g.times_x(i + 1);
      for (const auto& [e, v] : g.coeffs_) out.coeffs_[e] += c * v;
    }
    out.prune();
    return out;
  }

 private:
  void prune() { std::erase_if(coeffs_, [](const auto& kv) { return kv.second == 0; }); }

  std::size_t n_;
  std::map<Exponent, Scalar> coeffs_;
};

/// Value with an absolute error estimate.
struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

struct QuadratureOptions {
  double relative_tolerance = 1e-12;  // passed to the adaptive Gauss-Kronrod rule
  double max_error = 1e-10;           // larger estimates raise QuadratureError
  unsigned max_depth = 12;
  double upper_t = 10.0;              // [1, inf) is cut at t = upper_t
  unsigned points = 31;               // Kronrod rule size: 31 or 61
};

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double achieved) : std::runtime_error(what), achieved_(achieved) {}
  double achieved() const { return achieved_; }

 private:
  double achieved_;
};

/// Exact Taylor coefficients c_0..c_count-1 of p(t) exp(-t^2) at 0.
inline std::vector<Scalar> taylor_coefficients(const Polynomial1& p, std::size_t count) {
  std::vector<Scalar> gauss(count);
  for (std::size_t k = 0; 2 * k < count; ++k) gauss[2 * k] = Scalar(sign_power(static_cast<int>(k))) / factorial(static_cast<int>(k));
  std::vector<Scalar> c(count);
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t q = 0; q < p.size() && q <= i; ++q)
      if (p[q] != 0 && gauss[i - q] != 0) c[i] += p[q] * gauss[i - q];
  return c;
}

/// p(-t)
inline Polynomial1 reflect(Polynomial1 p) {
  for (std::size_t k = 1; k < p.size(); k += 2) p[k] = -p[k];
  return p;
}

namespace detail {

// Enough Taylor terms that the dropped tail of p(t) e^{-t^2} on [0, 1] is
// far below double precision.
inline std::size_t series_length(const Polynomial1& p, int skip) {
  return static_cast<std::size_t>(std::max(skip, 0)) + p.size() + 90;
}

inline double horner(const std::vector<double>& c, double t) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
  return acc;
}

template <class F>
auto integrate(F&& f, double a, double b, const QuadratureOptions& opt, double* err) {
  using boost::math::quadrature::gauss_kronrod;
  if (opt.points == 61) return gauss_kronrod<double, 61>::integrate(f, a, b, opt.max_depth, opt.relative_tolerance, err);
  if (opt.points != 31) throw std::invalid_argument("Kronrod rule size must be 31 or 61");
  return gauss_kronrod<double, 31>::integrate(f, a, b, opt.max_depth, opt.relative_tolerance, err);
}

// Upper limit for int_0^S s^j e^{-rate s} ds so that the cut tail is negligible.
inline double exp_cutoff(double rate, int j) {
  double s = 40.0 / rate;
  while (std::pow(s, j) * std::exp(-rate * s) * (1.0 + s) > 1e-22) s += 5.0 / rate;
  return s;
}

// int over [0, S] split in unit-rate panels
template <class F>
auto integrate_panels(F&& f, double upper, double panel, const QuadratureOptions& opt, double* err) {
  using R = decltype(f(0.0));
  R total{};
  *err = 0.0;
  for (double a = 0.0; a < upper; a += panel) {
    double e = 0.0;
    total += integrate(f, a, std::min(a + panel, upper), opt, &e);
    *err += e;
  }
  return total;
}

}  // namespace detail

/// <atom, p(t) exp(-t^2)>.
///
/// Delta(m) pairs exactly as (-1)^m phi^(m)(0). For Pf(a, j, +), with
/// m = max(0, -a) and Taylor coefficients c_i of phi,
///   int_0^1 t^a (log t)^j [phi - sum_{i<m} c_i t^i] dt + int_1^inf t^a (log t)^j phi dt
///   + sum_{i < m-1} c_i j! (-1)^j / (a+i+1)^(j+1);
/// the first integral runs in s = -log t on a series form of the bracket so
/// no cancellation occurs near t = 0. Side - pairs against p(-t).
inline Estimate pair_atom(const Atom1D& atom, const Polynomial1& p, const QuadratureOptions& opt = {}) {
  if (atom.is_delta()) {
    const auto c = taylor_coefficients(p, static_cast<std::size_t>(atom.m) + 1);
    const Scalar v = Scalar(sign_power(atom.m)) * factorial(atom.m) * c[static_cast<std::size_t>(atom.m)];
    return {v.get_d(), 0.0};
  }
  if (atom.side == Side::minus) return pair_atom(Atom1D::pf(atom.a, atom.j, Side::plus), reflect(p), opt);

  const int a = atom.a, j = atom.j;
  const int m = std::max(0, -a);
  const auto c = taylor_coefficients(p, detail::series_length(p, m));

  Scalar finite(0);
  for (int i = 0; i + 1 < m; ++i) {
    const Scalar denom = pow(Scalar(a + i + 1), j + 1);
    finite += c[static_cast<std::size_t>(i)] * factorial(j) * sign_power(j) / denom;
  }

  // t^a [phi - T_{m-1}](t) = t^{max(a,0)} sum_k c_{m+k} t^k
  std::vector<double> tail;
  for (std::size_t i = static_cast<std::size_t>(m); i < c.size(); ++i) tail.push_back(c[i].get_d());
  const int lead = std::max(a, 0);
  auto inner = [&](double s) {
    const double t = std::exp(-s);
    return std::pow(-s, j) * std::exp(-(lead + 1) * s) * detail::horner(tail, t);
  };
  double err_inner = 0.0;
  const double upper = detail::exp_cutoff(lead + 1.0, j);
  const double inner_val = detail::integrate_panels(inner, upper, 8.0, opt, &err_inner);

  std::vector<double> pd;
  for (const auto& q : p) pd.push_back(q.get_d());
  auto outer = [&](double t) {
    const double lt = std::log(t);
    return std::pow(t, a) * std::pow(lt, j) * detail::horner(pd, t) * std::exp(-t * t);
  };
  double err_outer = 0.0;
  const double outer_val = detail::integrate(outer, 1.0, opt.upper_t, opt, &err_outer);

  Estimate e{inner_val + outer_val + finite.get_d(), err_inner + err_outer};
  if (!(e.error <= opt.max_error))
    throw QuadratureError("finite-part quadrature did not converge (error " + std::to_string(e.error) + ")",
                          e.error);
  return e;
}

namespace detail {

inline Polynomial1 monomial_poly(int power) {
  Polynomial1 p(static_cast<std::size_t>(power) + 1);
  p.back() = 1;
  return p;
}

}  // namespace detail

/// <u, phi> for a separable test function.
inline Estimate pair(const Dist& u, const TestFunction& phi, const QuadratureOptions& opt = {}) {
  if (u.dim() != phi.dim()) throw std::invalid_argument("distribution and test function dimensions differ");
  std::vector<std::map<Atom1D, Estimate>> cache(u.dim());
  auto atom_value = [&](std::size_t i, const Atom1D& a) -> const Estimate& {
    auto it = cache[i].find(a);
    if (it == cache[i].end()) it = cache[i].emplace(a, pair_atom(a, phi.factors[i], opt)).first;
    return it->second;
  };
  Estimate total;
  for (const auto& [t, c] : u.terms()) {
    double prod = c.get_d(), err = 0.0;
    for (std::size_t i = 0; i < t.dim(); ++i) {
      const Estimate& e = atom_value(i, t.atoms[i]);
      err = err * std::abs(e.value) + std::abs(prod) * e.error;
      prod *= e.value;
    }
    total.value += prod;
    total.error += err;
  }
  return total;
}

/// <u, Q exp(-|x|^2)>, expanded over the monomials of Q.
inline Estimate pair(const Dist& u, const GaussianDensity& phi, const QuadratureOptions& opt = {}) {
  if (u.dim() != phi.dim()) throw std::invalid_argument("distribution and test function dimensions differ");
  std::map<std::pair<Atom1D, int>, Estimate> cache;
  auto atom_value = [&](const Atom1D& a, int power) -> const Estimate& {
    const auto key = std::make_pair(a, power);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, pair_atom(a, detail::monomial_poly(power), opt)).first;
    return it->second;
  };
  Estimate total;
  for (const auto& [t, c] : u.terms()) {
    for (const auto& [e, q] : phi.coefficients()) {
      double prod = Scalar(c * q).get_d(), err = 0.0;
      for (std::size_t i = 0; i < t.dim(); ++i) {
        const Estimate& v = atom_value(t.atoms[i], e[i]);
        err = err * std::abs(v.value) + std::abs(prod) * v.error;
        prod *= v.value;
      }
      total.value += prod;
      total.error += err;
    }
  }
  return total;
}

struct ZetaOptions {
  QuadratureOptions quadrature;
  double pole_floor = 1e-3;
};

struct ZetaSample {
  std::complex<double> lambda;
  std::complex<double> value;
  double error = 0.0;
  bool near_pole = false;
};

namespace detail {

// int_0^inf t^lambda q(t) e^{-t^2} dt continued to Re lambda > -2 via
//   int_0^1 t^lambda [psi - psi(0)] + int_1^inf t^lambda psi + psi(0)/(lambda+1).
inline std::pair<std::complex<double>, double> mellin_gauss(const Polynomial1& q, std::complex<double> lambda,
                                                            const QuadratureOptions& opt) {
  const auto c = taylor_coefficients(q, series_length(q, 1));
  std::vector<double> tail;
  for (std::size_t i = 1; i < c.size(); ++i) tail.push_back(c[i].get_d());
  const double psi0 = c[0].get_d();
  const std::complex<double> shift = lambda + 2.0;
  // t^lambda [psi - psi(0)] dt with t = e^{-s}: e^{-(lambda+2) s} sum_i c_{i+1} e^{-i s}
  auto inner = [&](double s) { return std::exp(-shift * s) * horner(tail, std::exp(-s)); };
  double err_inner = 0.0;
  const double upper = exp_cutoff(shift.real(), 1);
  const std::complex<double> inner_val = integrate_panels(inner, upper, 8.0, opt, &err_inner);

  std::vector<double> qd;
  for (const auto& v : q) qd.push_back(v.get_d());
  auto outer = [&](double t) { return std::exp(lambda * std::log(t)) * horner(qd, t) * std::exp(-t * t); };
  double err_outer = 0.0;
  const std::complex<double> outer_val = integrate(outer, 1.0, opt.upper_t, opt, &err_outer);
  return {inner_val + outer_val + psi0 / (lambda + 1.0), err_inner + err_outer};
}

}  // namespace detail

/// Z(lambda) = <(x_1...x_n)_+^lambda, phi> = sum_{sigma in S(n)} prod_i
/// int_0^inf t^lambda p_i(sigma_i t) e^{-t^2} dt, valid for Re lambda > -2.
inline ZetaSample zeta(std::size_t n, std::complex<double> lambda, const TestFunction& phi,
                       const ZetaOptions& opt = {}) {
  if (phi.dim() != n) throw std::invalid_argument("test function dimension does not match n");
  if (lambda.real() <= -2.0) throw std::domain_error("continuation only valid for Re lambda > -2");
  if (lambda == std::complex<double>(-1.0, 0.0)) throw std::domain_error("lambda = -1 is the pole");
  // one-variable factors for sigma_i = +1 and -1
  std::vector<std::pair<std::complex<double>, double>> plus, minus;
  for (std::size_t i = 0; i < n; ++i) {
    plus.push_back(detail::mellin_gauss(phi.factors[i], lambda, opt.quadrature));
    minus.push_back(detail::mellin_gauss(reflect(phi.factors[i]), lambda, opt.quadrature));
  }
  ZetaSample z;
  z.lambda = lambda;
  z.near_pole = std::abs(lambda + 1.0) < opt.pole_floor;
  for (const SignVector& sigma : sign_set(n)) {
    std::complex<double> prod = 1.0;
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& [v, e] = sigma.signs[i] > 0 ? plus[i] : minus[i];
      err = err * std::abs(v) + std::abs(prod) * e;
      prod *= v;
    }
    z.value += prod;
    z.error += err;
  }
  if (!(z.error <= opt.quadrature.max_error * std::max(1.0, std::abs(z.value))))
    throw QuadratureError("zeta quadrature did not converge (error " + std::to_string(z.error) + ")", z.error);
  return z;
}

/// lambda_k = -1 + r exp(2 pi i k / count).
inline std::vector<std::complex<double>> contour(double radius, std::size_t count) {
  if (!(radius > 0.0) || radius >= 1.0) throw std::invalid_argument("contour radius must lie in (0, 1)");
  if (count == 0) throw std::invalid_argument("contour needs at least one sample");
  std::vector<std::complex<double>> out;
  for (std::size_t k = 0; k < count; ++k)
    out.push_back(-1.0 + std::polar(radius, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(count)));
  return out;
}

inline std::vector<ZetaSample> sample_contour(std::size_t n, const TestFunction& phi, double radius,
                                              std::size_t count, const ZetaOptions& opt = {}) {
  std::vector<ZetaSample> out;
  for (const auto& lambda : contour(radius, count)) out.push_back(zeta(n, lambda, phi, opt));
  return out;
}

struct LaurentFit {
  int lowest = 0;
  std::vector<std::complex<double>> coeffs;  // degrees lowest, lowest+1, ...
  double residual = 0.0;                     // ||A c - z|| / ||z||
  double condition = 0.0;                    // |R_11| / |R_KK| of the QR factor
  bool ill_conditioned = false;

  int highest() const { return lowest + static_cast<int>(coeffs.size()) - 1; }
  std::complex<double> coefficient(int d) const {
    if (d < lowest || d > highest()) throw std::out_of_range("degree outside fitted window");
    return coeffs[static_cast<std::size_t>(d - lowest)];
  }
};

/// Least squares fit of Z(lambda) = sum_{d=-n}^{J} c_d (lambda+1)^d. The
/// residual includes the truncated tail sum_{d>J}, so `residual_tol` bounds
/// model misfit rather than noise.
inline LaurentFit laurent_fit(const std::vector<ZetaSample>& samples, std::size_t n, int order,
                              double residual_tol = 1e-2) {
  if (order < 0) throw std::invalid_argument("fit order J must be >= 0");
  const std::size_t unknowns = n + static_cast<std::size_t>(order) + 1;
  if (samples.size() < 2 * unknowns)
    throw std::invalid_argument("laurent_fit needs at least " + std::to_string(2 * unknowns) + " samples");
  const auto rows = static_cast<Eigen::Index>(samples.size());
  const auto cols = static_cast<Eigen::Index>(unknowns);
  Eigen::MatrixXcd a(rows, cols);
  Eigen::VectorXcd z(rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const std::complex<double> eps = samples[static_cast<std::size_t>(r)].lambda + 1.0;
    for (Eigen::Index k = 0; k < cols; ++k) a(r, k) = std::pow(eps, static_cast<int>(k) - static_cast<int>(n));
    z(r) = samples[static_cast<std::size_t>(r)].value;
  }
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(a);
  const Eigen::VectorXcd c = qr.solve(z);
  LaurentFit fit;
  fit.lowest = -static_cast<int>(n);
  fit.coeffs.assign(c.data(), c.data() + c.size());
  fit.residual = (a * c - z).norm() / std::max(z.norm(), 1e-300);
  const auto diag = qr.matrixQR().diagonal();
  fit.condition = std::abs(diag(0)) / std::max(std::abs(diag(cols - 1)), 1e-300);
  fit.ill_conditioned = fit.residual > residual_tol || fit.condition > 1e10;
  return fit;
}

struct CrossCheckOptions {
  double tolerance = 1e-6;
  double radius = 0.25;
  std::size_t samples = 16;
  double residual_tol = 1e-2;
  ZetaOptions zeta;
};

struct DegreeComparison {
  int degree = 0;
  std::complex<double> fitted;
  Estimate symbolic;  // <u_d, phi>
  double abs_err = 0.0;
  double rel_err = 0.0;  // abs_err / max(1, |fitted|)
  bool pass = false;
};

struct CrossCheckReport {
  std::size_t n = 0;
  int order = 0;
  double tolerance = 0.0;
  double radius = 0.0;
  std::vector<ZetaSample> samples;
  LaurentFit fit;
  std::vector<DegreeComparison> degrees;

  bool passes() const {
    if (fit.ill_conditioned || degrees.empty()) return false;
    for (const auto& d : degrees)
      if (!d.pass) return false;
    return true;
  }
};

/// Fits the sampled zeta function and compares every c_d, d in [-n, min(0, J)],
/// with <u_d, phi> from the exact expansion.
inline CrossCheckReport cross_check(std::size_t n, int order, const TestFunction& phi,
                                    const CrossCheckOptions& opt = {}) {
  if (!(opt.tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
  CrossCheckReport r;
  r.n = n;
  r.order = order;
  r.tolerance = opt.tolerance;
  r.radius = opt.radius;
  r.samples = sample_contour(n, phi, opt.radius, opt.samples, opt.zeta);
  r.fit = laurent_fit(r.samples, n, order, opt.residual_tol);
  const LaurentDist series = expand_product(n, order);
  for (int d = -static_cast<int>(n); d <= std::min(0, order); ++d) {
    DegreeComparison cmp;
    cmp.degree = d;
    cmp.fitted = r.fit.coefficient(d);
    cmp.symbolic = pair(series.coefficient(d), phi, opt.zeta.quadrature);
    cmp.abs_err = std::abs(cmp.fitted - cmp.symbolic.value);
    const double scale = std::max(1.0, std::abs(cmp.fitted));
    cmp.rel_err = cmp.abs_err / scale;
    cmp.pass = cmp.abs_err <= opt.tolerance * scale;
    r.degrees.push_back(cmp);
  }
  return r;
}

inline nlohmann::json to_json(const CrossCheckReport& r) {
  nlohmann::json degrees = nlohmann::json::array();
  for (const auto& d : r.degrees)
    degrees.push_back({{"d", d.degree},
                       {"fitted", {d.fitted.real(), d.fitted.imag()}},
                       {"symbolic", d.symbolic.value},
                       {"symbolic_error", d.symbolic.error},
                       {"abs_err", d.abs_err},
                       {"rel_err", d.rel_err},
                       {"pass", d.pass}});
  return {{"n", r.n},
          {"J", r.order},
          {"tolerance", r.tolerance},
          {"radius", r.radius},
          {"samples", r.samples.size()},
          {"fit_residual", r.fit.residual},
          {"fit_condition", r.fit.condition},
          {"ill_conditioned", r.fit.ill_conditioned},
          {"degrees", degrees},
          {"passes", r.passes()}};
}

struct DualityCheck {
  Estimate lhs;  // <P u, phi>
  Estimate rhs;  // <u, P^t phi>
  double rel_err = 0.0;
};

/// <P u, phi> against <u, P^t phi>; rel_err is scaled by max(1, |lhs|).
inline DualityCheck duality(const WeylOp& p, const Dist& u, const TestFunction& phi,
                            const QuadratureOptions& opt = {}) {
  DualityCheck c;
  c.lhs = pair(apply(p, u), phi, opt);
  c.rhs = pair(u, GaussianDensity::from(phi).apply(transpose(p)), opt);
  c.rel_err = std::abs(c.lhs.value - c.rhs.value) / std::max(1.0, std::abs(c.lhs.value));
  return c;
}

/// CSV: re_lambda,im_lambda,re_value,im_value,error
inline void write_csv(std::ostream& os, const std::vector<ZetaSample>& samples) {
  os << "re_lambda,im_lambda,re_value,im_value,error\n";
  os.precision(17);
  for (const auto& s : samples)
    os << s.lambda.real() << ',' << s.lambda.imag() << ',' << s.value.real() << ',' << s.value.imag() << ','
       << s.error << '\n';
}

}  // namespace ncpower
