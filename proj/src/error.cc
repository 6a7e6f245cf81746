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

#include "rbe/error.h"

namespace rbe {

std::string_view ErrorName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kUnsupported: return "Unsupported";
    case ErrorCode::kCrossContext: return "CrossContext";
    case ErrorCode::kDecode: return "DecodeError";
    case ErrorCode::kRng: return "RngFailure";
    case ErrorCode::kCycle: return "CycleDetected";
    case ErrorCode::kUnknownRole: return "UnknownRole";
    case ErrorCode::kDuplicateRole: return "DuplicateRole";
    case ErrorCode::kDegenerateHierarchy: return "DegenerateHierarchy";
    case ErrorCode::kUnknownId: return "UnknownId";
    case ErrorCode::kDuplicateId: return "DuplicateId";
    case ErrorCode::kAuthenticationFailed: return "AuthenticationFailed";
    case ErrorCode::kRevokedUser: return "RevokedUser";
    case ErrorCode::kUnauthorizedRole: return "UnauthorizedRole";
    case ErrorCode::kMissingComponent: return "MissingComponent";
    case ErrorCode::kMissingRekey: return "MissingRekey";
    case ErrorCode::kSameOrganization: return "SameOrganization";
    case ErrorCode::kAuthFailure: return "AuthFailure";
    case ErrorCode::kProtocolOrder: return "ProtocolOrder";
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kExpectationFailed: return "ExpectationFailed";
  }
  return "Unknown";
}

}  // namespace rbe
