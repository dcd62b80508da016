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

// ncpower: Laurent expansion of (x_1...x_n)_+^lambda at lambda = -1,
// annihilator generators and their verification, and the numerical
// cross-check against the local zeta function.
//
// Exit status: 0 success, 1 verification or tolerance failure, 2 usage error.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ncpower.hpp"

namespace {

using namespace ncpower;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::size_t n = 0;
  int k = 0;
  std::optional<std::size_t> m;
  int order = 2;
  int degree = 3;
  int slack = 2;
  int max_slack = 4;
  double tol = 1e-6;
  double radius = 0.25;
  std::size_t samples = 16;
  std::string format = "text";
  bool unicode = false;
  bool complete = false;
  bool direct = false;
  std::string poly;
  std::string csv;
  std::string op;
  std::size_t count = 20;
  std::uint64_t seed = 1;
  int op_degree = 2;
  std::size_t max_n = 3;
  double duality_tol = 1e-8;
};

bool json_out(const RunConfig& c) { return c.format == "json"; }

void require_dim(const RunConfig& c) {
  if (c.n < 1) throw UsageError("dimension -n must be >= 1");
}

void require_k(const RunConfig& c, std::size_t upper) {
  if (c.k < 0 || c.k > static_cast<int>(upper) - 1)
    throw UsageError("k must satisfy 0 <= k <= " + std::to_string(static_cast<int>(upper) - 1));
}

std::size_t effective_m(const RunConfig& c) {
  const std::size_t m = c.m.value_or(c.n);
  if (m < 1 || m > c.n) throw UsageError("-m must satisfy 1 <= m <= n");
  return m;
}

TestFunction test_function(const RunConfig& c) {
  if (c.poly.empty()) return TestFunction::gaussian(c.n);
  Polynomial1 p;
  std::stringstream ss(c.poly);
  std::string item;
  while (std::getline(ss, item, ',')) p.push_back(parse_scalar(item));
  if (p.empty()) throw UsageError("--poly needs at least one coefficient");
  return TestFunction{std::vector<Polynomial1>(c.n, p)};
}

std::string degree_label(int d) { return "u_" + std::to_string(d); }

int cmd_expand(const RunConfig& c) {
  require_dim(c);
  if (c.order < 0) throw UsageError("-J must be >= 0");
  const LaurentDist s = c.direct ? expand_product_direct(c.n, c.order) : expand_product(c.n, c.order);
  if (json_out(c)) {
    std::cout << to_json(s).dump(2) << '\n';
    return kOk;
  }
  for (int d = s.lowest(); d <= s.order(); ++d)
    std::cout << degree_label(d) << " = " << to_string(s.coefficient(d), c.unicode) << '\n';
  return kOk;
}

int cmd_generators(const RunConfig& c) {
  require_dim(c);
  const std::size_t m = effective_m(c);
  require_k(c, m);
  const GeneratorSet g = generators_nc(c.n, m, c.k);
  if (json_out(c)) {
    std::cout << to_json(g).dump(2) << '\n';
    return kOk;
  }
  for (std::size_t i = 0; i < g.size(); ++i)
    std::cout << std::left << std::setw(24) << to_string(g.kinds[i]) << to_string(g.ops[i], c.unicode) << '\n';
  return kOk;
}

void print_report_text(const CompletenessReport& r) {
  std::cout << "completeness n=" << r.n << " k=" << r.k << " d=" << r.degree_bound << '\n'
            << "  annihilator dimension  " << r.annihilator_dim << '\n'
            << "  ideal members          " << r.members << '\n'
            << "  unresolved             " << r.unresolved.size() << '\n'
            << "  slack trace           ";
  for (int s : r.slack_trace) std::cout << ' ' << s;
  std::cout << '\n';
  for (const auto& p : r.unresolved) std::cout << "  unresolved: " << to_string(p) << '\n';
  std::cout << "  result                 " << (r.passes() ? "PASS" : "FAIL") << '\n';
}

CompletenessReport run_completeness(const RunConfig& c) {
  if (c.degree < 1) throw UsageError("-d must be >= 1");
  if (c.slack < 0 || c.max_slack < c.slack) throw UsageError("need 0 <= --slack <= --max-slack");
  return completeness_report(c.n, c.k, c.degree, c.slack, c.max_slack);
}

int cmd_verify(const RunConfig& c) {
  require_dim(c);
  const std::size_t m = effective_m(c);
  require_k(c, m);
  if (c.complete && m != c.n) throw UsageError("--complete is only available with m = n");
  const GeneratorSet g = generators_nc(c.n, m, c.k);
  const Dist target = embed(principal_coefficient(m, c.k), c.n);
  bool all = true;
  nlohmann::json items = nlohmann::json::array();
  std::vector<bool> ok;
  for (const auto& p : g.ops) {
    ok.push_back(apply(p, target).is_zero());
    all = all && ok.back();
    items.push_back({{"text", to_string(p)}, {"annihilates", static_cast<bool>(ok.back())}});
  }
  std::optional<CompletenessReport> report;
  if (c.complete) report = run_completeness(c);
  const bool pass = all && (!report || report->passes());

  if (json_out(c)) {
    nlohmann::json out = {{"n", c.n}, {"m", m}, {"k", c.k}, {"target_degree", -static_cast<int>(m) + c.k},
                          {"generators", items}, {"annihilates", all}, {"passes", pass}};
    if (report) out["completeness"] = to_json(*report);
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << "target " << degree_label(-static_cast<int>(m) + c.k) << " (n=" << c.n << ", m=" << m
              << ", k=" << c.k << ")\n";
    for (std::size_t i = 0; i < g.size(); ++i)
      std::cout << "  " << std::left << std::setw(28) << to_string(g.ops[i], c.unicode)
                << (ok[i] ? "annihilates" : "DOES NOT ANNIHILATE") << '\n';
    if (report) print_report_text(*report);
    std::cout << (pass ? "PASS" : "FAIL") << '\n';
  }
  return pass ? kOk : kFailed;
}

int cmd_complete(const RunConfig& c) {
  require_dim(c);
  require_k(c, c.n);
  const CompletenessReport r = run_completeness(c);
  if (json_out(c))
    std::cout << to_json(r).dump(2) << '\n';
  else
    print_report_text(r);
  return r.passes() ? kOk : kFailed;
}

int cmd_zeta(const RunConfig& c) {
  require_dim(c);
  if (c.order < 0) throw UsageError("-J must be >= 0");
  if (!(c.tol > 0.0)) throw UsageError("--tol must be positive");
  if (!(c.radius > 0.0 && c.radius < 1.0)) throw UsageError("--radius must lie in (0, 1)");
  const std::size_t needed = 2 * (c.n + static_cast<std::size_t>(c.order) + 1);
  if (c.samples < needed) throw UsageError("--samples must be at least " + std::to_string(needed));
  CrossCheckOptions opt;
  opt.tolerance = c.tol;
  opt.radius = c.radius;
  opt.samples = c.samples;
  const CrossCheckReport r = cross_check(c.n, c.order, test_function(c), opt);
  if (!c.csv.empty()) {
    std::ofstream f(c.csv);
    if (!f) throw std::runtime_error("cannot write " + c.csv);
    write_csv(f, r.samples);
  }
  if (json_out(c)) {
    std::cout << to_json(r).dump(2) << '\n';
  } else {
    std::cout << "n=" << r.n << " J=" << r.order << " radius=" << r.radius << " samples=" << r.samples.size()
              << " fit residual=" << std::scientific << std::setprecision(2) << r.fit.residual << '\n';
    std::cout << "   d  fitted c_d             <u_d, phi>           abs_err\n";
    for (const auto& d : r.degrees)
      std::cout << std::setw(4) << d.degree << "  " << std::fixed << std::setprecision(15) << std::setw(19)
                << d.fitted.real() << "  " << std::setw(19) << d.symbolic.value << "  " << std::scientific
                << std::setprecision(1) << d.abs_err << (d.pass ? "  pass" : "  FAIL") << '\n';
    std::cout << (r.passes() ? "PASS" : "FAIL") << '\n';
  }
  return r.passes() ? kOk : kFailed;
}

int cmd_crosscheck(const RunConfig& c) {
  if (c.max_n < 1) throw UsageError("dimension -n must be >= 1");
  if (c.count == 0) throw UsageError("--count must be >= 1");
  if (!(c.duality_tol > 0.0)) throw UsageError("--tol must be positive");
  if (c.op_degree < 0) throw UsageError("--op-degree must be >= 0");
  std::mt19937_64 rng(c.seed);
  std::uniform_int_distribution<std::size_t> dim(1, c.max_n);
  bool all = true;
  nlohmann::json items = nlohmann::json::array();
  for (std::size_t t = 0; t < c.count; ++t) {
    const std::size_t n = dim(rng);
    const WeylOp p = random_weyl(rng, n, c.op_degree);
    const Dist u = Dist::atom(random_tensor(rng, n));
    const TestFunction phi = random_test_function(rng, n);
    const DualityCheck d = duality(p, u, phi);
    const bool pass = d.rel_err <= c.duality_tol;
    all = all && pass;
    if (json_out(c)) {
      items.push_back({{"op", to_string(p)}, {"dist", to_string(u)}, {"lhs", d.lhs.value}, {"rhs", d.rhs.value},
                       {"rel_err", d.rel_err}, {"pass", pass}});
    } else {
      std::cout << std::setw(3) << t << "  " << std::scientific << std::setprecision(2) << d.rel_err
                << (pass ? "  pass  " : "  FAIL  ") << "P = " << to_string(p) << ";  u = " << to_string(u)
                << '\n';
    }
  }
  if (json_out(c))
    std::cout << nlohmann::json{{"seed", c.seed}, {"checks", items}, {"passes", all}}.dump(2) << '\n';
  else
    std::cout << (all ? "PASS" : "FAIL") << '\n';
  return all ? kOk : kFailed;
}

int cmd_divide(const RunConfig& c) {
  const WeylOp p = c.n >= 1 ? parse_weyl(c.op, c.n) : parse_weyl(c.op);
  const ThetaDivision div = divide_by_theta(p);
  const std::size_t n = p.dim();
  if (json_out(c)) {
    nlohmann::json qs = nlohmann::json::array();
    for (const auto& q : div.quotients) qs.push_back(to_json(q));
    std::cout << nlohmann::json{{"P", to_json(p)}, {"quotients", qs}, {"remainder", to_json(div.remainder)}}.dump(2)
              << '\n';
  } else {
    std::cout << "P   = " << to_string(p, c.unicode) << '\n';
    for (std::size_t i = 0; i < n; ++i)
      std::cout << "Q" << i + 1 << "  = " << to_string(div.quotients[i], c.unicode) << '\n';
    std::cout << "R   = " << to_string(div.remainder, c.unicode) << '\n';
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Laurent expansion of (x1...xn)_+^lambda at lambda = -1 and the annihilators of its coefficients"};
  app.require_subcommand(1);
  RunConfig cfg;
  if (const char* env = std::getenv("NCPOWER_FORMAT")) cfg.format = env;
  if (cfg.format != "json" && cfg.format != "text") {
    std::cerr << "NCPOWER_FORMAT must be 'json' or 'text'\n";
    return kUsage;
  }

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "text"}));
    sub->add_flag("--unicode", cfg.unicode, "Use δ and ∂ in text output");
  };
  auto dim_opt = [&](CLI::App* sub, bool required = true) {
    auto* o = sub->add_option("-n,--dim", cfg.n, "Number of variables");
    if (required) o->required();
  };

  auto* expand = app.add_subcommand("expand", "Laurent coefficients u_d, d = -n..J");
  dim_opt(expand);
  expand->add_option("-J,--order", cfg.order, "Truncation order")->capture_default_str();
  expand->add_flag("--direct", cfg.direct, "Use the h_alpha sum instead of the series product");
  common(expand);

  auto* gens = app.add_subcommand("generators", "Annihilator generators of u_{-m+k}");
  dim_opt(gens);
  gens->add_option("-k", cfg.k, "Coefficient index k (target u_{-m+k})")->required();
  gens->add_option("-m", cfg.m, "Number of crossing factors (default n)");
  common(gens);

  auto* verify = app.add_subcommand("verify", "Check that the generators annihilate u_{-m+k}");
  dim_opt(verify);
  verify->add_option("-k", cfg.k, "Coefficient index k")->required();
  verify->add_option("-m", cfg.m, "Number of crossing factors (default n)");
  verify->add_flag("--complete", cfg.complete, "Also run the bounded-degree completeness check");
  verify->add_option("-d,--degree", cfg.degree, "Operator degree bound")->capture_default_str();
  verify->add_option("--slack", cfg.slack, "Extra degree for ideal membership")->capture_default_str();
  verify->add_option("--max-slack", cfg.max_slack, "Slack used on escalation")->capture_default_str();
  common(verify);

  auto* complete = app.add_subcommand("complete", "Bounded-degree completeness report");
  dim_opt(complete);
  complete->add_option("-k", cfg.k, "Coefficient index k")->required();
  complete->add_option("-d,--degree", cfg.degree, "Operator degree bound")->capture_default_str();
  complete->add_option("--slack", cfg.slack, "Extra degree for ideal membership")->capture_default_str();
  complete->add_option("--max-slack", cfg.max_slack, "Slack used on escalation")->capture_default_str();
  common(complete);

  auto* zeta_cmd = app.add_subcommand("zeta", "Fit the sampled local zeta function and compare with <u_d, phi>");
  dim_opt(zeta_cmd);
  zeta_cmd->add_option("-J,--order", cfg.order, "Highest fitted degree")->capture_default_str();
  zeta_cmd->add_option("--tol", cfg.tol, "Tolerance on |c_d - <u_d,phi>| / max(1,|c_d|)")->capture_default_str();
  zeta_cmd->add_option("--radius", cfg.radius, "Contour radius around lambda = -1")->capture_default_str();
  zeta_cmd->add_option("--samples", cfg.samples, "Number of contour samples")->capture_default_str();
  zeta_cmd->add_option("--poly", cfg.poly, "Coefficients of p in phi = prod p(x_i) exp(-x_i^2), e.g. 1,0,1/2");
  zeta_cmd->add_option("--csv", cfg.csv, "Write the zeta samples to this CSV file");
  common(zeta_cmd);

  auto* cross = app.add_subcommand("crosscheck", "Random <Pu, phi> = <u, P^t phi> duality checks");
  cross->add_option("-n,--dim", cfg.max_n, "Largest number of variables")->capture_default_str();
  cross->add_option("--count", cfg.count, "Number of random triples")->capture_default_str();
  cross->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  cross->add_option("--op-degree", cfg.op_degree, "Degree bound of random operators")->capture_default_str();
  cross->add_option("--tol", cfg.duality_tol, "Relative tolerance")->capture_default_str();
  common(cross);

  auto* divide = app.add_subcommand("divide", "Write P = sum Q_i d_i x_i + R");
  dim_opt(divide, false);
  divide->add_option("operator", cfg.op, "Operator text, e.g. \"x1^2 d1 + 2 x1\"")->required();
  common(divide);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (expand->parsed()) return cmd_expand(cfg);
    if (gens->parsed()) return cmd_generators(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
    if (complete->parsed()) return cmd_complete(cfg);
    if (zeta_cmd->parsed()) return cmd_zeta(cfg);
    if (cross->parsed()) return cmd_crosscheck(cfg);
    if (divide->parsed()) return cmd_divide(cfg);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << '\n';
    return kFailed;
  }
  return kUsage;
}
