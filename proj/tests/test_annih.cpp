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

#include "ncpower/annih.hpp"
#include "ncpower/sampling.hpp"

using namespace ncpower;

namespace {

WeylOp op(std::string_view s, std::size_t n) { return parse_weyl(s, n); }

// dim {P : deg P <= d, P u = 0} as #monomials - rank of the image vectors,
// with the rank taken by sparse elimination instead of the dense RREF.
std::size_t kernel_dim_by_rank(const Dist& u, int d) {
  const auto basis = monomial_basis(u.dim(), d);
  std::map<DistTensor, std::size_t> index;
  EchelonBasis rows;
  for (const Monomial& m : basis) {
    const Dist image = apply(WeylOp::monomial(m), u);
    SparseVector v;
    for (const auto& [t, c] : image.terms()) v.emplace_back(index.try_emplace(t, index.size()).first->second, c);
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    rows.insert(std::move(v));
  }
  return basis.size() - rows.rank();
}

}  // namespace

TEST_CASE("generator lists", "[annih]") {
  const GeneratorSet g10 = generators(1, 0);
  REQUIRE(g10.size() == 1);
  CHECK(g10.ops[0] == op("x1", 1));

  const GeneratorSet g21 = generators(2, 1);
  REQUIRE(g21.size() == 2);
  CHECK(g21.ops[0] == op("x1 x2", 2));
  CHECK(g21.ops[1] == op("x1 d1 - x2 d2", 2));
  CHECK(g21.kinds[1] == GeneratorKind::euler_difference);

  const GeneratorSet g31 = generators(3, 1);
  REQUIRE(g31.size() == 5);
  CHECK(g31.ops[0] == op("x1 x2", 3));
  CHECK(g31.ops[1] == op("x1 x3", 3));
  CHECK(g31.ops[2] == op("x2 x3", 3));
  CHECK(g31.ops[3] == op("x1 d1 - x2 d2", 3));
  CHECK(g31.ops[4] == op("x1 d1 - x3 d3", 3));

  const GeneratorSet nc = generators_nc(3, 2, 0);
  REQUIRE(nc.size() == 4);
  CHECK(nc.ops[3] == op("d3", 3));
  CHECK(nc.kinds[3] == GeneratorKind::transversal_derivative);
  CHECK(to_string(nc.kinds[0]) == "subset-product");

  CHECK_THROWS_AS(generators(2, 2), std::invalid_argument);
  CHECK_THROWS_AS(generators(2, -1), std::invalid_argument);
  CHECK_THROWS_AS(generators_nc(2, 3, 0), std::invalid_argument);
  CHECK_THROWS_AS(generators_nc(2, 0, 0), std::invalid_argument);
}

TEST_CASE("generators annihilate the principal coefficients", "[annih]") {
  for (std::size_t n = 1; n <= 4; ++n)
    for (int k = 0; k < static_cast<int>(n); ++k) {
      INFO("n = " << n << ", k = " << k);
      CHECK(verify(n, k));
      for (std::size_t m = 1; m <= n; ++m)
        if (k < static_cast<int>(m)) CHECK(verify_nc(n, m, k));
    }
}

TEST_CASE("negative controls for verification", "[annih]") {
  // x1 u_0 != 0 for n = 1: u_0 is Pf(1/t_+) + Pf(1/t_-)
  CHECK_FALSE(apply(op("x1", 1), expand_product(1, 0).coefficient(0)).is_zero());
  // the k = 0 products do not kill u_{-n+1}
  CHECK_FALSE(annihilates_all(generators(2, 0), principal_coefficient(2, 1)));
  CHECK_FALSE(annihilates_all(generators(3, 1), principal_coefficient(3, 2)));
}

TEST_CASE("annihilator space examples", "[annih]") {
  const Dist delta = principal_coefficient(1, 0);
  const auto a1 = annihilator_space(delta, 1);
  REQUIRE(a1.size() == 1);
  CHECK(a1[0] == op("x1", 1));
  for (const WeylOp& p : annihilator_space(principal_coefficient(2, 1), 2)) CHECK(apply(p, principal_coefficient(2, 1)).is_zero());
  CHECK_THROWS_AS(annihilator_space(delta, -1), std::invalid_argument);
}

TEST_CASE("annihilator dimension matches an independent rank count", "[annih][property]") {
  for (std::size_t n = 1; n <= 3; ++n)
    for (int k = 0; k < static_cast<int>(n); ++k)
      for (int d = 1; d <= 3; ++d) {
        const Dist u = principal_coefficient(n, k);
        INFO("n = " << n << ", k = " << k << ", d = " << d);
        REQUIRE(annihilator_space(u, d).size() == kernel_dim_by_rank(u, d));
      }
}

TEST_CASE("ideal membership examples", "[annih]") {
  const GeneratorSet g = generators(2, 1);
  CHECK(ideal_membership(op("x1^2 x2", 2), g, 0));
  CHECK(ideal_membership(op("d1 x1 x2", 2), g, 0));
  CHECK(ideal_membership(op("x2 d2 - x1 d1", 2), g, 0));
  CHECK_FALSE(ideal_membership(op("x1", 2), g, 3));

  const GeneratorSet g10 = generators(1, 0);
  const Dist delta = principal_coefficient(1, 0);
  CHECK(classify_membership(op("x1 d1", 1), g10, delta, 2) == Membership::refuted);
  CHECK(classify_membership(op("d1 x1", 1), g10, delta, 2) == Membership::member);
  CHECK(to_string(Membership::unresolved) == "unresolved");
  CHECK_THROWS_AS(ideal_membership(op("x1", 1), g, 0), std::invalid_argument);
  CHECK_THROWS_AS(ideal_membership(op("x1", 2), g, -1), std::invalid_argument);
}

TEST_CASE("ideal membership is sound and monotone", "[annih][property]") {
  std::mt19937_64 rng(53);
  for (std::size_t n = 1; n <= 3; ++n)
    for (int k = 0; k < static_cast<int>(n); ++k) {
      const GeneratorSet g = generators(n, k);
      const Dist u = principal_coefficient(n, k);
      for (int trial = 0; trial < 10; ++trial) {
        // random left combination of generators is a member
        WeylOp p(n);
        for (const WeylOp& gen : g.ops) p += multiply(random_weyl(rng, n, 1, 2), gen);
        REQUIRE(ideal_membership(p, g, 0));

        const WeylOp q = random_weyl(rng, n, 2);
        const bool at1 = ideal_membership(q, g, 1);
        REQUIRE((!at1 || ideal_membership(q, g, 3)));
        if (ideal_membership(q, g, 2)) REQUIRE(apply(q, u).is_zero());
      }
    }
}

TEST_CASE("k = 0 generators contain the Euler differences", "[annih]") {
  // x1 d1 - x2 d2 = d1 x1 - d2 x2 and x_i delta(x_i) = 0
  for (std::size_t n = 2; n <= 3; ++n) {
    const GeneratorSet g = generators(n, 0);
    GeneratorSet products{n, {}, {}};
    for (std::size_t i = 0; i < g.size(); ++i)
      if (g.kinds[i] == GeneratorKind::subset_product) products.add(g.ops[i], g.kinds[i]);
    for (std::size_t i = 0; i < g.size(); ++i)
      if (g.kinds[i] == GeneratorKind::euler_difference) CHECK(ideal_membership(g.ops[i], products, 0));
  }
}

TEST_CASE("completeness within degree bounds", "[annih]") {
  for (auto [n, k, d, s] : std::vector<std::tuple<std::size_t, int, int, int>>{{2, 1, 2, 2}, {2, 0, 2, 2}, {3, 1, 3, 3}}) {
    const CompletenessReport r = completeness_report(n, k, d, s);
    INFO("n = " << n << ", k = " << k << ", d = " << d);
    CHECK(r.generators_annihilate);
    CHECK(r.members == r.annihilator_dim);
    CHECK(r.passes());
  }
  const CompletenessReport r = completeness_report(3, 2, 3, 2);
  CHECK(r.passes());
  CHECK(r.annihilator_dim == 15);
  CHECK(r.slack_trace == std::vector<int>{2});
  CHECK_THROWS_AS(completeness_report(2, 1, 0, 2), std::invalid_argument);
}

TEST_CASE("dropping the Euler differences breaks completeness", "[annih]") {
  const std::size_t n = 2;
  const Dist u = principal_coefficient(n, 1);
  GeneratorSet products{n, {}, {}};
  products.add(op("x1 x2", n), GeneratorKind::subset_product);
  MembershipSolver solver(products);
  solver.extend_to(6);
  std::size_t missing = 0;
  for (const WeylOp& p : annihilator_space(u, 2))
    if (!solver.contains(p)) ++missing;
  CHECK(missing > 0);
}

TEST_CASE("report JSON", "[annih][io]") {
  const nlohmann::json j = to_json(completeness_report(2, 1, 2, 2));
  CHECK(j.at("passes").get<bool>());
  CHECK(j.at("n").get<int>() == 2);
  CHECK(j.at("unresolved").empty());
  const nlohmann::json g = to_json(generators(2, 1));
  CHECK(g.at("generators").size() == 2);
  CHECK(g.at("generators")[1].at("text").get<std::string>() == to_string(op("x1 d1 - x2 d2", 2)));
  CHECK(weyl_from_json(g.at("generators")[0].at("op")) == op("x1 x2", 2));
}
