/*
 * Copyright 2026 The pimgold Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "pimgold/cli.hpp"

using namespace pimgold;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("usage errors") {
  CHECK(cli({}).code == exit_code::kUsage);
  CHECK(cli({"bogus"}).code == exit_code::kUsage);
  CHECK(cli({"simulate", "--no-such-flag"}).code == exit_code::kUsage);
  CHECK(cli({"model", "--designs", "nope"}).code == exit_code::kUsage);
  CHECK(cli({"model", "--designs", "bramac"}).code == exit_code::kUsage);
  CHECK(cli({"simulate", "--sweep-d", "0"}).code == exit_code::kUsage);
  CHECK(cli({"compare", "--clock", "imagine"}).code == exit_code::kUsage);
  CHECK(cli({"simulate", "--config", "/nonexistent/arch.ini"}).code == exit_code::kUsage);
}

TEST_CASE("simulate: D beyond the fabric is a mapping error") {
  const auto r = cli({"simulate", "--sweep-d", "100000"});
  CHECK(r.code == exit_code::kUsage);
  CHECK(!r.err.empty());
}

TEST_CASE("simulate: CSV columns and the D=64 phases") {
  const auto r = cli({"simulate", "--sweep-d", "64", "--precision", "8"});
  REQUIRE(r.code == exit_code::kOk);
  CHECK(first_line(r.out) ==
        "D,N,seed,load,multiply,inblock,array,shiftout,controller,total,reduction_cycles,match");
  CHECK(r.out.find(",32,96,144,75,64,20,431,222,1\n") != std::string::npos);
  CHECK(r.out.find("\n64,8,") != std::string::npos);
}

TEST_CASE("simulate: identity and determinism") {
  const auto a = cli({"simulate", "--sweep-d", "16,32", "--precision", "8,16", "--identity"});
  CHECK(a.code == exit_code::kOk);
  const std::vector<std::string> args = {"simulate", "--sweep-d", "16,48", "--seed", "9",
                                         "--format", "json"};
  const auto b = cli(args);
  const auto c = cli(args);
  CHECK(b.code == exit_code::kOk);
  CHECK(b.out == c.out);
  CHECK(b.out.find("\"load\"") != std::string::npos);
}

TEST_CASE("simulate: full-range operands overflow a 32-bit accumulator") {
  const auto r = cli({"simulate", "--sweep-d", "64", "--precision", "32", "--full-range"});
  CHECK(r.code == exit_code::kOverflow);
}

TEST_CASE("model and compare") {
  const auto m = cli({"model", "--sweep-d", "64", "--designs", "imagine,ccb"});
  REQUIRE(m.code == exit_code::kOk);
  CHECK(m.out.find("imagine,64,8,16,4,32,96,144,75,315,737.0,0.427408") != std::string::npos);
  CHECK(m.out.find("ccb:table") != std::string::npos);
  const auto rep = cli({"model", "--sweep-d", "64", "--designs", "ccb", "--inblock-mode",
                        "reported"});
  CHECK(rep.out.find("ccb:reported") != std::string::npos);

  const auto c = cli({"compare"});
  REQUIRE(c.code == exit_code::kOk);
  CHECK(c.out.find("system,f_sys_mhz,imagine_ratio") != std::string::npos);
  CHECK(c.out.find("3.19") != std::string::npos);
  CHECK(c.out.find("2.65") != std::string::npos);
  const auto fast = cli({"compare", "--clock", "ccb=1000"});
  CHECK(fast.code == exit_code::kOk);
  CHECK(fast.out != c.out);
}

TEST_CASE("scale lists the devices") {
  const auto r = cli({"scale"});
  REQUIRE(r.code == exit_code::kOk);
  CHECK(r.out.find("64K") != std::string::npos);
  CHECK(r.out.find("86K") != std::string::npos);
  CHECK(r.out.find("device,bram36,pes,tops") != std::string::npos);
}

TEST_CASE("fit: analytic designs and the asserted bracket") {
  const auto r = cli({"fit", "--designs", "spar2-linear,ccb"});
  REQUIRE(r.code == exit_code::kOk);
  CHECK(first_line(r.out) == "design,N,a,b,c,residual_rms,addition_label,movement_label");
  const auto j = cli({"fit", "--designs", "imagine", "--sweep-d", "2,4,8,16", "--assert",
                      "--format", "json"});
  CHECK(j.code == exit_code::kOk);
  CHECK(j.out.find("\"addition_label\"") != std::string::npos);
  CHECK(cli({"fit", "--designs", "ccb", "--sweep-d", "2,4,8"}).code != exit_code::kOk);
}

TEST_CASE("verify: small sweep stays in lockstep") {
  const auto r = cli({"verify", "--sweep-d", "16,24", "--precision", "8"});
  CHECK(r.code == exit_code::kOk);
  CHECK(r.out.find("match") != std::string::npos);
  CHECK(r.out.find("diverged") == std::string::npos);
}

TEST_CASE("--out writes the file") {
  const auto path = std::filesystem::temp_directory_path() / "pimgold_cli_test.csv";
  std::filesystem::remove(path);
  const auto r = cli({"scale", "--out", path.string()});
  REQUIRE(r.code == exit_code::kOk);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == cli({"scale"}).out);
  std::filesystem::remove(path);
}

}  // TEST_SUITE
