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

// Seeded generators of random operators, atoms and test functions for
// property checks.

#include <cstddef>
#include <random>
#include <vector>

#include "ncpower/dist.hpp"
#include "ncpower/oracle.hpp"
#include "ncpower/weyl.hpp"

namespace ncpower {

/// Up to `max_terms` monomials of degree <= max_degree with small integer
/// coefficients in [-3, 3].
inline WeylOp random_weyl(std::mt19937_64& rng, std::size_t n, int max_degree, int max_terms = 4) {
  const std::vector<Monomial> basis = monomial_basis(n, max_degree);
  std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::uniform_int_distribution<int> count(1, max_terms);
  WeylOp p(n);
  for (int t = count(rng); t > 0; --t) p.add_term(basis[pick(rng)], Scalar(coeff(rng)));
  return p;
}

inline Atom1D random_atom(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> kind(0, 3);
  if (kind(rng) == 0) return Atom1D::delta(std::uniform_int_distribution<int>(0, 3)(rng));
  const int a = std::uniform_int_distribution<int>(-3, 2)(rng);
  const int j = std::uniform_int_distribution<int>(0, 2)(rng);
  return Atom1D::pf(a, j, std::bernoulli_distribution(0.5)(rng) ? Side::plus : Side::minus);
}

inline DistTensor random_tensor(std::mt19937_64& rng, std::size_t n) {
  DistTensor t;
  for (std::size_t i = 0; i < n; ++i) t.atoms.push_back(random_atom(rng));
  return t;
}

/// Sum of up to `max_terms` random tensors with coefficients in [-2, 2].
inline Dist random_dist(std::mt19937_64& rng, std::size_t n, int max_terms = 3) {
  Dist u(n);
  std::uniform_int_distribution<int> coeff(-2, 2);
  for (int t = std::uniform_int_distribution<int>(1, max_terms)(rng); t > 0; --t)
    u.add_term(random_tensor(rng, n), Scalar(coeff(rng)));
  return u;
}

/// Each factor p_i has degree <= 2 and coefficients in {-1, -1/2, 0, 1/2, 1}.
inline TestFunction random_test_function(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> coeff(-2, 2);
  TestFunction phi;
  for (std::size_t i = 0; i < n; ++i) {
    Polynomial1 p(3);
    for (auto& c : p) c = Scalar(coeff(rng)) / 2;
    if (p[0] == 0) p[0] = 1;
    phi.factors.push_back(std::move(p));
  }
  return phi;
}

}  // namespace ncpower
