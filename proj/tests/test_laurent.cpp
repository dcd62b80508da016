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
#include <algorithm>
#include <numeric>

#include "ncpower/laurent.hpp"
#include "ncpower/oracle.hpp"
#include "support/gamma_oracle.hpp"

using namespace ncpower;
using Catch::Approx;

namespace {

const Atom1D kDelta = Atom1D::delta(0);

Dist tensor_of(std::initializer_list<Atom1D> atoms, Scalar c = 1) {
  return Dist::atom(DistTensor(std::vector<Atom1D>(atoms)), c);
}

}  // namespace

TEST_CASE("one-variable expansion", "[laurent]") {
  const LaurentDist s = expand_one_var(Side::plus, 2);
  CHECK(s.coefficient(-1) == tensor_of({kDelta}));
  CHECK(s.coefficient(0) == tensor_of({Atom1D::pf(-1, 0)}));
  CHECK(s.coefficient(1) == tensor_of({Atom1D::pf(-1, 1)}));
  CHECK(s.coefficient(2) == tensor_of({Atom1D::pf(-1, 2)}, Scalar(1) / 2));
  CHECK(s.coefficient(-2).is_zero());
  CHECK_THROWS_AS(s.coefficient(3), std::out_of_range);

  const LaurentDist m = expand_one_var(Side::minus, 0);
  CHECK(m.coefficient(0) == tensor_of({Atom1D::pf(-1, 0, Side::minus)}));
}

TEST_CASE("one-variable coefficients pair like the Gamma expansion", "[laurent][oracle]") {
  // <t_+^lambda, e^{-t^2}> = Gamma((lambda+1)/2)/2, expanded at lambda = -1
  const LaurentDist s = expand_one_var(Side::plus, 3);
  const auto expected =
      testing::laurent_coefficients([](auto eps) { return 0.5 * testing::gamma(eps / 2.0); }, -1, 3);
  for (int d = -1; d <= 3; ++d) {
    INFO("degree " << d);
    CHECK(pair(s.coefficient(d), TestFunction::gaussian(1)).value ==
          Approx(expected[static_cast<std::size_t>(d + 1)].real()).epsilon(1e-10).margin(1e-12));
  }
}

TEST_CASE("sign_set", "[laurent]") {
  CHECK(sign_set(1).size() == 1);
  const auto s3 = sign_set(3);
  REQUIRE(s3.size() == 4);
  CHECK(s3[0].signs == std::vector<int>{1, 1, 1});
  CHECK(s3[1].signs == std::vector<int>{-1, -1, 1});
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto s = sign_set(n);
    CHECK(s.size() == (1u << (n - 1)));
    CHECK(std::all_of(s.begin(), s.end(), [](const SignVector& v) { return v.in_sign_set(); }));
  }
  CHECK_THROWS_AS(sign_set(0), std::invalid_argument);
}

TEST_CASE("two-variable expansion by hand", "[laurent]") {
  const LaurentDist s = expand_product(2, 1);
  CHECK(s.coefficient(-2) == tensor_of({kDelta, kDelta}, 2));
  CHECK(to_string(s.coefficient(-2)) == "2 d(x1) d(x2)");

  const Atom1D pp = Atom1D::pf(-1, 0, Side::plus), pm = Atom1D::pf(-1, 0, Side::minus);
  const Dist u1 = tensor_of({pp, kDelta}) + tensor_of({kDelta, pp}) + tensor_of({pm, kDelta}) + tensor_of({kDelta, pm});
  CHECK(s.coefficient(-1) == u1);

  Dist u0(2);
  for (Side a : {Side::plus, Side::minus}) {
    const Side b = a;
    u0 += tensor_of({Atom1D::pf(-1, 0, a), Atom1D::pf(-1, 0, b)});
    u0 += tensor_of({Atom1D::pf(-1, 1, a), kDelta});
    u0 += tensor_of({kDelta, Atom1D::pf(-1, 1, a)});
  }
  CHECK(s.coefficient(0) == u0);
}

TEST_CASE("series and direct formula agree", "[laurent][property]") {
  for (std::size_t n = 1; n <= 4; ++n) {
    INFO("n = " << n);
    CHECK(expand_product(n, 1) == expand_product_direct(n, 1));
  }
}

TEST_CASE("leading coefficient and pole order", "[laurent][property]") {
  for (std::size_t n = 1; n <= 5; ++n) {
    const LaurentDist s = expand_product(n, 0);
    Dist lead = Dist::unit();
    for (std::size_t i = 0; i < n; ++i) lead = tensor(lead, tensor_of({kDelta}));
    CHECK(s.coefficient(-static_cast<int>(n)) == Scalar(1 << (n - 1)) * lead);
    CHECK(s.coefficient(-static_cast<int>(n) - 1).is_zero());
    CHECK_FALSE(s.coefficient(-static_cast<int>(n)).is_zero());
  }
}

TEST_CASE("every term of u_{-n+k} has at least n-k deltas", "[laurent][property]") {
  for (std::size_t n = 1; n <= 4; ++n) {
    const LaurentDist s = expand_product(n, 1);
    for (int k = 0; k <= static_cast<int>(n) + 1; ++k) {
      const int floor = std::max(0, static_cast<int>(n) - k);
      for (const auto& [t, c] : s.coefficient(-static_cast<int>(n) + k).terms()) REQUIRE(t.delta_count() >= floor);
    }
  }
}

TEST_CASE("shift and Euler identities", "[laurent][property]") {
  for (std::size_t n = 1; n <= 4; ++n) {
    const LaurentDist s = expand_product(n, 1);
    for (int d = -static_cast<int>(n); d <= 1; ++d) {
      INFO("n = " << n << ", d = " << d);
      CHECK(shift_holds(s, d));
      CHECK(euler_holds(s, d));
    }
    for (int k = 0; k < static_cast<int>(n); ++k) CHECK(shift_check(n, k));
  }
  CHECK_THROWS_AS(shift_check(2, 2), std::invalid_argument);
  CHECK_THROWS_AS(shift_check(2, -1), std::invalid_argument);
}

TEST_CASE("coefficients are symmetric under coordinate permutations", "[laurent][property]") {
  for (std::size_t n = 2; n <= 4; ++n) {
    const LaurentDist s = expand_product(n, 1);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      for (int d = -static_cast<int>(n); d <= 1; ++d) REQUIRE(permute(s.coefficient(d), perm) == s.coefficient(d));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

TEST_CASE("Gaussian pairings of u_d match the Gamma product", "[laurent][oracle]") {
  for (std::size_t n = 1; n <= 3; ++n) {
    const LaurentDist s = expand_product(n, 1);
    const auto expected = testing::gaussian_zeta_coefficients(n, 1);
    for (int d = -static_cast<int>(n); d <= 1; ++d) {
      INFO("n = " << n << ", d = " << d);
      const double got = pair(s.coefficient(d), TestFunction::gaussian(n)).value;
      CHECK(got == Approx(expected[static_cast<std::size_t>(d + static_cast<int>(n))].real()).epsilon(1e-9).margin(1e-10));
    }
  }
}

TEST_CASE("embedding by the constant one", "[laurent]") {
  CHECK(embed(tensor_of({kDelta}), 1) == tensor_of({kDelta}));
  const Dist e = embed(tensor_of({kDelta}), 2);
  CHECK(e == tensor_of({kDelta, Atom1D::heaviside()}) + tensor_of({kDelta, Atom1D::heaviside(Side::minus)}));
  CHECK(apply(WeylOp::d(2, 2), e).is_zero());
  CHECK_THROWS_AS(embed(e, 1), std::invalid_argument);
}

TEST_CASE("JSON round trip and argument errors", "[laurent][io]") {
  for (std::size_t n = 1; n <= 3; ++n) {
    const LaurentDist s = expand_product(n, 2);
    CHECK(laurent_from_json(nlohmann::json::parse(to_json(s).dump())) == s);
  }
  CHECK_THROWS_AS(expand_product(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(expand_product(2, -1), std::invalid_argument);
  CHECK_THROWS_AS(h_atom(-1, Side::plus), std::invalid_argument);
  CHECK_THROWS(laurent_from_json(nlohmann::json::parse(R"({"n":1,"J":0,"coeffs":{"3":{"n":1,"terms":[]}}})")));
}
