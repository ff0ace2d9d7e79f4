// Copyright 2026 The proofsched Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "proofsched/io.hpp"

namespace proofsched {
namespace {

const char* kExample = "a^1.c^2 | b^3.~a^4 | ~b^5.~c^6 | a^7.~b^8 | b^9 | ~a^0";

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) { return ::testing::TempDir() + name; }

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

TEST(Cli, PairingsTotal) {
  Result r = run({"pairings", kExample, "--total"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("{(0,1), (2,6), (3,8), (4,7), (5,9)} inconsistent cycle {(3,8), (4,7)}"),
            std::string::npos)
      << r.out;
  std::size_t lines = 0, consistent = 0;
  std::istringstream in(r.out);
  for (std::string line; std::getline(in, line);) {
    ++lines;
    if (line.size() >= 11 && line.compare(line.size() - 11, 11, " consistent") == 0) ++consistent;
  }
  EXPECT_EQ(lines, 4u);
  EXPECT_EQ(consistent, 3u);
}

TEST(Cli, TypeOfUnit) {
  Result r = run({"type", "1", "--variant", "sync"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "v0^ @ v0\n");
}

TEST(Cli, DeadlockHasNoSchedule) {
  Result r = run({"synthesize", "a^1.b^2 | ~b^3.~a^4", "--to", "1", "--variant", "async"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out, "no schedule\n");
}

TEST(Cli, CapExceeded) {
  Result r = run({"synthesize", "a^1 | ~a^2", "--to", "1", "--cap-atoms", "2"});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("cap-exceeded"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"type", "1", "--variant", "both"}).code, 2);
  EXPECT_EQ(run({"synthesize", "1"}).code, 2);
  EXPECT_EQ(run({"consistent", "1"}).code, 2);
  EXPECT_EQ(run({"type", "1", "--no-such-flag"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, ParseErrorsCarryPosition) {
  Result r = run({"parse", "a^1 | (b"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("1:9:"), std::string::npos) << r.err;
}

TEST(Cli, ParseAndCongruent) {
  EXPECT_EQ(run({"parse", "a.b | ~a"}).out, "a^1.b^2 | ~a^3\n");
  EXPECT_EQ(run({"congruent", "a^1 | b^2", "b^2 | 1 | a^1"}).code, 0);
  EXPECT_EQ(run({"congruent", "a^1.b^2", "b^2.a^1"}).code, 1);
}

TEST(Cli, Execute) {
  Result ok = run({"execute", kExample, "--steps", "(9,5) (1,0) (2,6)"});
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(run({"congruent", ok.out.substr(0, ok.out.size() - 1), "b^3.~a^4 | a^7.~b^8"}).code, 0);
  Result bad = run({"execute", kExample, "--steps", "(2,6)"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(bad.out.rfind("step 0 not enabled", 0), 0u);
}

TEST(Cli, Consistent) {
  Result r = run({"consistent", kExample, "--pairing", "(9,5) (1,0) (2,6) (3,8) (4,7)"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("maximal consistent {(0,1), (2,6), (5,9)}"), std::string::npos) << r.out;
  EXPECT_EQ(run({"consistent", kExample, "--pairing", "(1,0)"}).code, 0);
  EXPECT_EQ(run({"consistent", kExample, "--pairing", "(1,7)"}).code, 1);
}

TEST(Cli, Reachable) {
  Result r = run({"reachable", "a^1 | ~a^2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "{} -> ~a^2 | a^1\n{(1,2)} -> 1\n");
}

TEST(Cli, ProofCheckNormalize) {
  std::string net = temp_path("net.json");
  Result proof = run({"proof", "a^1 | ~a^2", "--variant", "async"});
  ASSERT_EQ(proof.code, 0);
  write(net, proof.out);
  Result check = run({"check-net", net, "--json"});
  EXPECT_EQ(check.code, 0);
  EXPECT_EQ(parse_json(check.out).at("correct"), true);

  Json j = parse_json(proof.out);
  for (Json& l : j.at("links")) {
    if (l.at("kind") == "par") {
      l["kind"] = "tensor";
      break;
    }
  }
  write(net, j.dump());
  EXPECT_EQ(run({"check-net", net}).code, 1);

  Result norm = run({"normalize", temp_path("missing.json")});
  EXPECT_EQ(norm.code, 2);
}

TEST(Cli, DotOutput) {
  Result r = run({"proof", "1", "--variant", "sync", "--dot", "-"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("digraph", 0), 0u);
  EXPECT_NE(r.out.find("style=dashed"), std::string::npos);
}

TEST(Cli, ScheduleFiles) {
  std::string file = temp_path("sched.json");
  Result s = run({"synthesize", "a^1 | ~a^2", "--to", "1", "--variant", "async"});
  ASSERT_EQ(s.code, 0);
  write(file, s.out);
  Result rep = run({"replay", "a^1 | ~a^2", "--schedule", file});
  EXPECT_EQ(rep.code, 0);
  EXPECT_EQ(rep.out.rfind("[(1,2)] -> ", 0), 0u) << rep.out;
  Result ind = run({"induced-pairing", "a^1 | ~a^2", "--schedule", file, "--json"});
  EXPECT_EQ(ind.out, "[[1,2]]\n");
}

TEST(Cli, NormalizeCutNet) {
  std::string net = temp_path("cut.json");
  Term p = parse_term("a^1 | ~a^2");
  write(net, to_json(cut_against(p, step_schedule(p, 1, 2, Variant::Async))).dump());
  Result n = run({"normalize", net, "--json", "--seed", "3"});
  EXPECT_EQ(n.code, 0);
  Json j = parse_json(n.out);
  EXPECT_EQ(j.at("pairs").dump(), "[[1,2]]");
  EXPECT_GT(j.at("steps").get<int>(), 0);
  EXPECT_EQ(run({"check-net", net}).code, 0);
}

TEST(Cli, Roundtrip) {
  Result r = run({"roundtrip", kExample});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.find("MISMATCH"), std::string::npos);
}

TEST(Cli, ReportsAreDeterministic) {
  for (std::vector<std::string> args :
       {std::vector<std::string>{"pairings", kExample, "--json"},
        std::vector<std::string>{"synthesize", "a^1.b^2 | ~a^3", "--to", "b^2", "--variant", "sync"},
        std::vector<std::string>{"reachable", kExample}}) {
    EXPECT_EQ(run(args).out, run(args).out);
  }
}

}  // namespace
}  // namespace proofsched
