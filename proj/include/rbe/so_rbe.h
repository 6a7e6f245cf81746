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

// Single-organization role-based encryption. Key ceremony, KEM encryption
// under a role public key, and decryption split into the three parties that
// perform it: the user blinds a role key, the public cloud pairs, the user
// finishes with two GT exponentiations.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rbe/algebra/pairing.h"
#include "rbe/hierarchy.h"

namespace rbe::so {

/// (y, delta, sigma, eta). sigma and eta live in the private cloud.
struct MasterSecret {
  Scalar y;
  Scalar delta;
  Scalar sigma;
  Scalar eta;
};

struct PublicParams {
  std::string org;
  GTElement Y;  // e(g,g)^y
  GTElement V;  // e(g,g)^delta
  G1Element h;  // g^eta
};

struct InitResult {
  MasterSecret msk;
  PublicParams pp;
  G1Element g_delta;  // delivered to role managers only
};

InitResult Init(const PairingContext& ctx, std::string org, Rng& rng);

/// Secret role parameters t_r, one per role.
struct RoleParams {
  std::map<std::string, Scalar> t;
};

struct RolePublicKey {
  RoleId role;
  G1Element pk;                         // g^(sum of t over A-complement)
  std::map<std::string, G1Element> ar;  // g^t_l for every l in A_role
};

struct RoleSecret {
  RoleId role;
  Scalar rs;  // 1 / (sum of t over A-complement)
};

struct RoleSetup {
  RoleParams params;
  std::map<std::string, RolePublicKey> public_keys;
  std::map<std::string, RoleSecret> secrets;
  std::vector<std::string> warnings;
};

// Throws kDegenerateHierarchy when some role has an empty A-complement (its
// role secret would be 1/0) or the hierarchy is empty.
RoleSetup RoleParaGen(const PairingContext& ctx, const PublicParams& pp,
                      const RoleHierarchy& h, Rng& rng);

struct UserCredential {
  std::string org;
  std::string id;
  Scalar u;       // private key
  G1Element pub;  // g^((u + H1(id)) delta / eta), on the bulletin board
  G1Element us;   // g^(y u), private-cloud resident
};

UserCredential PrivKeyGen(const PairingContext& ctx, const PublicParams& pp,
                          const MasterSecret& msk, std::string id, Rng& rng);

struct RoleKey {
  RoleId role;
  std::string user;
  G1Element rk;  // (US * g_delta^H1(id))^rs
};

using Authenticator = std::function<bool(std::string_view user_id)>;

// `authenticate`, when set, is consulted first; a rejection throws
// kAuthenticationFailed.
RoleKey RoleKeyGen(const PairingContext& ctx, const PublicParams& pp,
                   const RoleSecret& rs, const G1Element& g_delta,
                   const G1Element& us, std::string_view id,
                   const Authenticator& authenticate = {});

struct KemCiphertext {
  RoleId role;
  GTElement c1;                         // K (Y/V)^d
  G1Element c2;                         // h^d
  G1Element c_role;                     // PK_role^d
  std::map<std::string, G1Element> c3;  // AR_l^d for l in A_role

  size_t g1_count() const { return 2 + c3.size(); }
  size_t gt_count() const { return 1; }
};

struct Encapsulation {
  GTElement key;
  KemCiphertext ct;
};

Encapsulation KemEncrypt(const PairingContext& ctx, const PublicParams& pp,
                         const RolePublicKey& rpk, Rng& rng);

struct TransformedRoleKey {
  RoleId role;
  std::string user;
  G1Element trk;  // rk^v
};

struct BlindedKey {
  TransformedRoleKey trk;
  Scalar v;  // caller-held; discard after UserFinalize
};

BlindedKey TransformRoleKey(const PairingContext& ctx, const RoleKey& rk,
                            Rng& rng);

struct PartialDecryption {
  GTElement p;
  GTElement q;
};

enum class RoleGate {
  kEnforce,
  // White-box testing only: skip the r_x in A_role check.
  kBypass,
};

// Public-cloud step. `pub` is the user's key as found on the bulletin board;
// nullopt means revoked. Gates run before any pairing. Exactly two pairings.
PartialDecryption CloudPartialDec(const PairingContext& ctx,
                                  const KemCiphertext& ct,
                                  const TransformedRoleKey& trk,
                                  const std::optional<G1Element>& pub,
                                  const RoleHierarchy& h,
                                  RoleGate gate = RoleGate::kEnforce);

// K = C1 / (P^(1/v) / Q)^(1/u). Two GT exponentiations. A wrong key is not
// detectable here; it surfaces as an authentication failure in the DEM.
GTElement UserFinalize(const PairingContext& ctx, const GTElement& c1,
                       const PartialDecryption& pd, const Scalar& v,
                       const Scalar& u);

/// Registry of user public keys; removal is revocation.
class UserKeyDirectory {
 public:
  virtual ~UserKeyDirectory() = default;
  virtual std::optional<G1Element> FindUserKey(std::string_view org,
                                               std::string_view id) const = 0;
  // Throws kUnknownId when absent.
  virtual void RemoveUserKey(std::string_view org, std::string_view id) = 0;
};

void URevoke(UserKeyDirectory& board, std::string_view org,
             std::string_view id);

// Public-cloud step with the revocation lookup done against `board`.
PartialDecryption CloudPartialDec(const PairingContext& ctx,
                                  const UserKeyDirectory& board,
                                  const KemCiphertext& ct,
                                  const TransformedRoleKey& trk,
                                  const RoleHierarchy& h,
                                  RoleGate gate = RoleGate::kEnforce);

// The P base C_role * prod_{l in gamma(r_x, role)} C3_l; shared with the
// multi-organization flow.
G1Element RetargetBase(const PairingContext& ctx, const G1Element& c_role,
                       const std::map<std::string, G1Element>& c3,
                       const RoleHierarchy& h, std::string_view r_x,
                       std::string_view role);

// Bytes hashed by H1 for a user identity within an organization.
std::string IdentityString(std::string_view org, std::string_view id);

}  // namespace rbe::so
