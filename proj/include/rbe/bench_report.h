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

#pragma once

// Instrumented benchmark: wall-time statistics and operation counts per
// protocol phase and party, storage accounting, and conformance verdicts
// against the published cost formulas.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "rbe/algebra/pairing.h"
#include "rbe/hierarchy.h"

namespace rbe::bench {

struct BenchConfig {
  unsigned security_level = 80;
  uint64_t seed = 42;
  size_t iterations = 100;          // per measured operation
  size_t flatness_iterations = 100;  // per ancestor-count point
  size_t flatness_depth = 10;
  std::string hierarchy = "@sample";  // or a hierarchy file
  std::string encrypt_role = "r8";
  std::string decrypt_role = "r5";
  std::string partner_encrypt_role = "r6";
  std::string partner_decrypt_role = "r1";
};

// Reads a JSON object whose keys mirror BenchConfig. Missing keys keep their
// defaults; a relative hierarchy path resolves against the file's directory.
// RBE_SEED in the environment overrides the seed.
BenchConfig LoadConfig(const std::filesystem::path& path);
BenchConfig DefaultConfig();  // defaults plus the RBE_SEED override

struct Stat {
  size_t n = 0;
  double median_ms = 0;
  double p95_ms = 0;
  double mean_ms = 0;
};

Stat Summarize(std::vector<double> samples_ms);

struct PhaseRow {
  std::string phase;
  std::string party;
  Stat time;
  OpCounts counts;
  bool counts_stable = true;  // identical on every iteration
  std::string formula;        // expected crypto cost in the artifact
  std::optional<OpCounts> expected;
  std::string table_formula;  // published cost, when it differs
  std::optional<OpCounts> table;
};

struct PrimitiveRow {
  std::string op;
  Stat time;
  double reference_ms;  // published commodity-laptop figure, reference only
};

struct StorageRow {
  std::string artifact;
  size_t g1 = 0;
  size_t gt = 0;
  size_t scalars = 0;
  size_t bytes = 0;
  std::string formula;
  size_t expected_elements = 0;
  std::string table_formula;
  size_t table_elements = 0;
};

struct FlatnessPoint {
  size_t ancestors = 0;
  Stat decrypt;         // decryptor holds the encryption role
  Stat decrypt_root;    // decryptor holds the root role
  OpCounts counts;
  OpCounts counts_root;
  OpCounts encrypt_counts;
};

struct Verdict {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct BenchReport {
  BenchConfig config;
  std::string curve;
  size_t group_order_bits = 0;
  std::vector<PrimitiveRow> primitives;
  std::vector<PhaseRow> phases;
  std::vector<StorageRow> storage;
  std::vector<FlatnessPoint> flatness;
  double flatness_cv = 0;
  double flatness_cv_root = 0;
  std::vector<Verdict> verdicts;

  bool AllPass() const;
  std::string ToText() const;
  std::string ToJson() const;  // machine format
};

// Chain r1 -> r2 -> ... -> r{depth} with two extra leaves s1, s2 under r1,
// so |A_rk| = k and every role keeps a non-empty complement.
RoleHierarchy ChainHierarchy(const std::string& org, size_t depth);

// Runs single-threaded: batch kernels are switched to serial for the duration.
BenchReport RunBench(const BenchConfig& config);

}  // namespace rbe::bench
