// Copyright 2026 The RBE Authors.
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

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "rbe/bench_report.h"
#include "rbe/error.h"

namespace rbe::bench {
namespace {

namespace fs = std::filesystem;

fs::path TempFile(const std::string& name, const std::string& body) {
  fs::path p = fs::temp_directory_path() / name;
  std::ofstream(p) << body;
  return p;
}

TEST(Summarize, NearestRankAndMedian) {
  std::vector<double> xs;
  for (int i = 20; i >= 1; --i) xs.push_back(i);
  Stat s = Summarize(xs);
  EXPECT_EQ(s.n, 20u);
  EXPECT_DOUBLE_EQ(s.median_ms, 10.5);
  EXPECT_DOUBLE_EQ(s.p95_ms, 19);
  EXPECT_DOUBLE_EQ(s.mean_ms, 10.5);
  Stat one = Summarize({4.0});
  EXPECT_DOUBLE_EQ(one.median_ms, 4.0);
  EXPECT_DOUBLE_EQ(one.p95_ms, 4.0);
  EXPECT_EQ(Summarize({}).n, 0u);
  Stat odd = Summarize({3, 1, 2});
  EXPECT_DOUBLE_EQ(odd.median_ms, 2);
  EXPECT_DOUBLE_EQ(odd.p95_ms, 3);
}

TEST(Config, LoadsOverridesAndResolvesPaths) {
  unsetenv("RBE_SEED");
  auto p = TempFile("rbe_bench_cfg.json",
                    R"({"seed": 9, "iterations": 3, "hierarchy": "h.txt", "decrypt_role": "r2"})");
  BenchConfig c = LoadConfig(p);
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(c.iterations, 3u);
  EXPECT_EQ(c.decrypt_role, "r2");
  EXPECT_EQ(c.encrypt_role, "r8");
  EXPECT_EQ(fs::path(c.hierarchy), p.parent_path() / "h.txt");
  setenv("RBE_SEED", "123", 1);
  EXPECT_EQ(LoadConfig(p).seed, 123u);
  EXPECT_EQ(DefaultConfig().seed, 123u);
  setenv("RBE_SEED", "12x", 1);
  EXPECT_THROW(DefaultConfig(), Error);
  unsetenv("RBE_SEED");
  EXPECT_EQ(DefaultConfig().seed, 42u);
  fs::remove(p);
}

TEST(Config, RejectsBadInput) {
  auto bad = TempFile("rbe_bench_bad.json", "{ nope");
  EXPECT_THROW(LoadConfig(bad), Error);
  auto typed = TempFile("rbe_bench_typed.json", R"({"iterations": "many"})");
  EXPECT_THROW(LoadConfig(typed), Error);
  EXPECT_THROW(LoadConfig(fs::temp_directory_path() / "rbe_no_such_cfg.json"), Error);
  fs::remove(bad);
  fs::remove(typed);
}

TEST(ChainHierarchy, AncestorCountsGrowWithDepth) {
  for (size_t depth : {1u, 4u, 10u}) {
    RoleHierarchy h = ChainHierarchy("X", depth);
    const std::string leaf = "r" + std::to_string(depth);
    EXPECT_EQ(h.Ancestors(leaf).size(), depth);
    EXPECT_FALSE(h.AncestorComplement(leaf).empty());
    EXPECT_EQ(h.size(), depth + 2);
  }
  EXPECT_THROW(ChainHierarchy("X", 0), Error);
}

TEST(RunBench, SmallRunPassesEveryVerdict) {
  BenchConfig c;
  c.iterations = 3;
  c.flatness_iterations = 3;
  c.flatness_depth = 4;
  BenchReport r = RunBench(c);
  EXPECT_EQ(r.group_order_bits, 160u);
  EXPECT_FALSE(r.phases.empty());
  EXPECT_FALSE(r.storage.empty());
  EXPECT_EQ(r.flatness.size(), 4u);
  for (const auto& v : r.verdicts) {
    // Timing flatness needs more samples than this run takes; counts must hold.
    if (v.name.find("wall time") != std::string::npos) continue;
    EXPECT_TRUE(v.pass) << v.name << ": " << v.detail;
  }
  for (const auto& p : r.phases) EXPECT_TRUE(p.counts_stable) << p.phase << " " << p.party;

  auto j = nlohmann::json::parse(r.ToJson());
  EXPECT_TRUE(j.contains("verdicts"));
  EXPECT_NE(r.ToText().find("verdict"), std::string::npos);
}

}  // namespace
}  // namespace rbe::bench
