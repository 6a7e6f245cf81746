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

#include <string>
#include <vector>

#include "rbe/actors/transcript.h"

namespace rbe::actors {

struct Violation {
  uint64_t seq;
  std::string rule;
  std::string detail;
};

// Checks every message field against the residency rules for its secret
// class, and that every session-store put for a blinding value has a later
// clear. An empty result means the transcript is clean.
std::vector<Violation> AuditSecretResidency(const Transcript& t);

// Replays the per-organization phase automaton. Returns the first entry that
// arrives before its prerequisites, or nullopt if the order is legal.
std::optional<Violation> CheckPhaseOrder(const Transcript& t);

}  // namespace rbe::actors
