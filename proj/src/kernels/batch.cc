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

#include "rbe/kernels/batch.h"

#include <omp.h>

#include <atomic>
#include <exception>
#include <mutex>

namespace rbe::kernels {

namespace {

std::atomic<Exec> g_default_exec{Exec::kParallel};

// Runs body(i) for i in [0, n) on the OpenMP team; the first exception thrown
// by any iteration is rethrown on the calling thread.
template <typename Body>
void ParallelFor(long n, Body&& body) {
  std::exception_ptr error;
  std::mutex error_mu;
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mu);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace

Exec DefaultExec() { return g_default_exec.load(); }
void SetDefaultExec(Exec exec) { g_default_exec.store(exec); }
int MaxThreads() { return omp_get_max_threads(); }

std::vector<G1Element> ExpEachSerial(const PairingContext& ctx,
                                     std::span<const G1Element> bases,
                                     const Scalar& s) {
  std::vector<G1Element> out;
  out.reserve(bases.size());
  for (const auto& b : bases) out.push_back(ctx.Exp(b, s));
  return out;
}

std::vector<G1Element> ExpEachParallel(const PairingContext& ctx,
                                       std::span<const G1Element> bases,
                                       const Scalar& s) {
  std::vector<G1Element> out(bases.size());
  ParallelFor(static_cast<long>(bases.size()),
              [&](long i) { out[i] = ctx.Exp(bases[i], s); });
  return out;
}

std::vector<G1Element> ExpEach(const PairingContext& ctx,
                               std::span<const G1Element> bases,
                               const Scalar& s, Exec exec) {
  return exec == Exec::kParallel ? ExpEachParallel(ctx, bases, s)
                                 : ExpEachSerial(ctx, bases, s);
}

std::vector<GTElement> PairEachSerial(const PairingContext& ctx,
                                      std::span<const PairInput> pairs) {
  std::vector<GTElement> out;
  out.reserve(pairs.size());
  for (const auto& [x, y] : pairs) out.push_back(ctx.Pair(x, y));
  return out;
}

std::vector<GTElement> PairEachParallel(const PairingContext& ctx,
                                        std::span<const PairInput> pairs) {
  std::vector<GTElement> out(pairs.size());
  ParallelFor(static_cast<long>(pairs.size()), [&](long i) {
    out[i] = ctx.Pair(pairs[i].first, pairs[i].second);
  });
  return out;
}

std::vector<GTElement> PairEach(const PairingContext& ctx,
                                std::span<const PairInput> pairs, Exec exec) {
  return exec == Exec::kParallel ? PairEachParallel(ctx, pairs)
                                 : PairEachSerial(ctx, pairs);
}

}  // namespace rbe::kernels
