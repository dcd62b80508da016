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

// Minimal use of the library: expand (x1 x2 x3)_+^lambda at lambda = -1 and
// check the annihilator generators of each principal-part coefficient.

#include <iostream>

#include "ncpower.hpp"

int main() {
  using namespace ncpower;
  const std::size_t n = 3;
  const LaurentDist series = expand_product(n, 0);
  for (int d = series.lowest(); d <= series.order(); ++d)
    std::cout << "u_" << d << " = " << to_string(series.coefficient(d), true) << "\n\n";

  for (int k = 0; k < static_cast<int>(n); ++k) {
    std::cout << "Ann u_" << k - static_cast<int>(n) << ":";
    for (const auto& g : generators(n, k).ops) std::cout << "  " << to_string(g, true);
    std::cout << (verify(n, k) ? "   [annihilate]" : "   [FAILED]") << '\n';
  }
}
