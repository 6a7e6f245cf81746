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

// Serial reference vs OpenMP for the batch kernels used by encryption (one
// exponentiation per ancestor role) and by the clouds (independent pairings),
// plus the end-to-end encryption they accelerate.

#include <benchmark/benchmark.h>

#include <vector>

#include "rbe/algebra/pairing.h"
#include "rbe/algebra/rng.h"
#include "rbe/bench_report.h"
#include "rbe/kernels/batch.h"
#include "rbe/so_rbe.h"

namespace {

using namespace rbe;

const PairingContext& Ctx() {
  static const PairingContext ctx = PairingContext::Setup(80);
  return ctx;
}

std::vector<G1Element> Bases(size_t n, Rng& rng) {
  std::vector<G1Element> out;
  for (size_t i = 0; i < n; ++i)
    out.push_back(Ctx().Exp(Ctx().g(), Ctx().RandomNonzeroScalar(rng)));
  return out;
}

void BM_ExpEach(benchmark::State& state, kernels::Exec exec) {
  Rng rng(1);
  auto bases = Bases(static_cast<size_t>(state.range(0)), rng);
  Scalar s = Ctx().RandomNonzeroScalar(rng);
  for (auto _ : state)
    benchmark::DoNotOptimize(kernels::ExpEach(Ctx(), bases, s, exec));
  state.SetItemsProcessed(state.iterations() * state.range(0));
  state.counters["threads"] = exec == kernels::Exec::kParallel ? kernels::MaxThreads() : 1;
}

void BM_PairEach(benchmark::State& state, kernels::Exec exec) {
  Rng rng(2);
  auto a = Bases(static_cast<size_t>(state.range(0)), rng);
  std::vector<kernels::PairInput> in;
  for (const auto& x : a) in.emplace_back(x, Ctx().g());
  for (auto _ : state) benchmark::DoNotOptimize(kernels::PairEach(Ctx(), in, exec));
  state.SetItemsProcessed(state.iterations() * state.range(0));
  state.counters["threads"] = exec == kernels::Exec::kParallel ? kernels::MaxThreads() : 1;
}

void BM_KemEncrypt(benchmark::State& state, kernels::Exec exec) {
  Rng rng(3);
  const size_t depth = static_cast<size_t>(state.range(0));
  RoleHierarchy h = bench::ChainHierarchy("A", depth);
  auto init = so::Init(Ctx(), "A", rng);
  auto setup = so::RoleParaGen(Ctx(), init.pp, h, rng);
  const auto& rpk = setup.public_keys.at("r" + std::to_string(depth));
  const kernels::Exec saved = kernels::DefaultExec();
  kernels::SetDefaultExec(exec);
  for (auto _ : state) benchmark::DoNotOptimize(so::KemEncrypt(Ctx(), init.pp, rpk, rng));
  kernels::SetDefaultExec(saved);
}

BENCHMARK_CAPTURE(BM_ExpEach, serial, kernels::Exec::kSerial)->RangeMultiplier(4)->Range(4, 64)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_ExpEach, openmp, kernels::Exec::kParallel)->RangeMultiplier(4)->Range(4, 64)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_PairEach, serial, kernels::Exec::kSerial)->Arg(2)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_PairEach, openmp, kernels::Exec::kParallel)->Arg(2)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_KemEncrypt, serial, kernels::Exec::kSerial)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_KemEncrypt, openmp, kernels::Exec::kParallel)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
