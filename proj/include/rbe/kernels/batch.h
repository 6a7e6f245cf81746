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

// Data-parallel group kernels. Each kernel has a serial reference and an
// OpenMP version producing identical outputs in identical order; counters are
// atomic, so totals are exact for both.

#include <span>
#include <utility>
#include <vector>

#include "rbe/algebra/pairing.h"

namespace rbe::kernels {

enum class Exec { kSerial, kParallel };

// Process-wide default used by the schemes; kParallel unless overridden.
Exec DefaultExec();
void SetDefaultExec(Exec exec);

// out[i] = bases[i]^s
std::vector<G1Element> ExpEachSerial(const PairingContext& ctx,
                                     std::span<const G1Element> bases,
                                     const Scalar& s);
std::vector<G1Element> ExpEachParallel(const PairingContext& ctx,
                                       std::span<const G1Element> bases,
                                       const Scalar& s);
std::vector<G1Element> ExpEach(const PairingContext& ctx,
                               std::span<const G1Element> bases,
                               const Scalar& s, Exec exec = DefaultExec());

// out[i] = e(pairs[i].first, pairs[i].second)
using PairInput = std::pair<G1Element, G1Element>;
std::vector<GTElement> PairEachSerial(const PairingContext& ctx,
                                      std::span<const PairInput> pairs);
std::vector<GTElement> PairEachParallel(const PairingContext& ctx,
                                        std::span<const PairInput> pairs);
std::vector<GTElement> PairEach(const PairingContext& ctx,
                                std::span<const PairInput> pairs,
                                Exec exec = DefaultExec());

int MaxThreads();

}  // namespace rbe::kernels
