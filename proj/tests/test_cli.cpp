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
#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

#include "ncpower/annih.hpp"
#include "ncpower/laurent.hpp"

using namespace ncpower;

namespace {

struct RunResult {
  int status = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(NCPOWER_CLI_PATH) + " " + args + " 2>/dev/null";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  while (std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), got);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

}  // namespace

TEST_CASE("expand JSON parses back to the library result", "[cli]") {
  for (int n = 1; n <= 3; ++n) {
    const RunResult r = run("expand -n " + std::to_string(n) + " -J 1 --format json");
    REQUIRE(r.status == 0);
    CHECK(laurent_from_json(nlohmann::json::parse(r.out)) == expand_product(static_cast<std::size_t>(n), 1));
  }
  const RunResult d = run("expand -n 3 -J 1 --direct --format json");
  REQUIRE(d.status == 0);
  CHECK(laurent_from_json(nlohmann::json::parse(d.out)) == expand_product(3, 1));
}

TEST_CASE("generators JSON parses back", "[cli]") {
  const RunResult r = run("generators -n 3 -k 1 --format json");
  REQUIRE(r.status == 0);
  const auto j = nlohmann::json::parse(r.out);
  const GeneratorSet g = generators(3, 1);
  REQUIRE(j.at("generators").size() == g.size());
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(weyl_from_json(j.at("generators")[i].at("op")) == g.ops[i]);
}

TEST_CASE("output is deterministic", "[cli]") {
  for (const char* args : {"expand -n 3 -J 2", "verify -n 3 -k 2 --complete -d 2 --format json",
                           "crosscheck --count 4 --seed 7", "zeta -n 2 --format json"}) {
    INFO(args);
    const RunResult a = run(args), b = run(args);
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("environment selects the default format", "[cli]") {
  const RunResult r = run("expand -n 1 -J 0");
  const std::string cmd = "NCPOWER_FORMAT=json " + std::string(NCPOWER_CLI_PATH) + " expand -n 1 -J 0";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), got);
  pclose(pipe);
  CHECK(r.out.rfind("u_-1 = ", 0) == 0);
  CHECK(nlohmann::json::parse(out).at("n") == 1);
}

TEST_CASE("failures map to exit codes", "[cli]") {
  CHECK(run("expand -n 0").status == 2);
  CHECK(run("verify -n 2 -k 2").status == 2);
  CHECK(run("zeta -n 2 --radius 1.5").status == 2);
  CHECK(run("divide \"x1 d3\" -n 2").status == 2);
  CHECK(run("divide \"x1 +\"").status == 2);
  CHECK(run("zeta -n 2 --tol 1e-30").status == 1);
}
