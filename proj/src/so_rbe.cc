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

#include "rbe/so_rbe.h"

#include "rbe/error.h"
#include "rbe/kernels/batch.h"

namespace rbe::so {

std::string IdentityString(std::string_view org, std::string_view id) {
  std::string out(org);
  out += ':';
  out += id;
  return out;
}

InitResult Init(const PairingContext& ctx, std::string org, Rng& rng) {
  RBE_ENFORCE(!org.empty(), ErrorCode::kInvalidArgument, "empty org id");
  InitResult out;
  out.msk.y = ctx.RandomNonzeroScalar(rng);
  out.msk.delta = ctx.RandomNonzeroScalar(rng);
  out.msk.sigma = ctx.RandomNonzeroScalar(rng);
  out.msk.eta = ctx.RandomNonzeroScalar(rng);

  const GTElement egg = ctx.gt_generator();
  out.pp.org = std::move(org);
  out.pp.Y = ctx.Exp(egg, out.msk.y);
  out.pp.V = ctx.Exp(egg, out.msk.delta);
  out.pp.h = ctx.Exp(ctx.g(), out.msk.eta);
  out.g_delta = ctx.Exp(ctx.g(), out.msk.delta);
  return out;
}

RoleSetup RoleParaGen(const PairingContext& ctx, const PublicParams& pp,
                      const RoleHierarchy& h, Rng& rng) {
  RBE_ENFORCE(h.size() > 0, ErrorCode::kDegenerateHierarchy,
              "role hierarchy is empty");
  RBE_ENFORCE(h.org() == pp.org, ErrorCode::kInvalidArgument,
              "hierarchy belongs to " + h.org() + ", parameters to " + pp.org);

  std::map<std::string, RoleSet> complements;
  for (const auto& r : h.roles()) {
    RoleSet c = h.AncestorComplement(r);
    RBE_ENFORCE(!c.empty(), ErrorCode::kDegenerateHierarchy,
                "every role is an ancestor of " + r +
                    "; its role secret would be undefined");
    complements.emplace(r, std::move(c));
  }

  RoleSetup out;
  out.warnings = h.warnings();
  std::map<std::string, Scalar> sums;
  for (;;) {
    out.params.t.clear();
    for (const auto& r : h.roles()) {
      out.params.t.emplace(r, ctx.RandomNonzeroScalar(rng));
    }
    sums.clear();
    bool zero = false;
    for (const auto& [r, comp] : complements) {
      Scalar s = ctx.scalar(0);
      for (const auto& j : comp) s = s + out.params.t.at(j);
      zero = zero || s.is_zero();
      sums.emplace(r, s);
    }
    if (!zero) break;
  }

  std::map<std::string, G1Element> ar_all;
  for (const auto& [r, t] : out.params.t) {
    ar_all.emplace(r, ctx.Exp(ctx.g(), t));
  }
  for (const auto& r : h.roles()) {
    RolePublicKey rpk;
    rpk.role = RoleId{h.org(), r};
    rpk.pk = ctx.Exp(ctx.g(), sums.at(r));
    for (const auto& l : h.Ancestors(r)) rpk.ar.emplace(l, ar_all.at(l));
    out.public_keys.emplace(r, std::move(rpk));
    out.secrets.emplace(r, RoleSecret{RoleId{h.org(), r}, sums.at(r).Inverse()});
  }
  return out;
}

UserCredential PrivKeyGen(const PairingContext& ctx, const PublicParams& pp,
                          const MasterSecret& msk, std::string id, Rng& rng) {
  RBE_ENFORCE(!id.empty(), ErrorCode::kInvalidArgument, "empty user id");
  const Scalar h1 = ctx.HashToScalar(IdentityString(pp.org, id));
  UserCredential out;
  out.org = pp.org;
  out.id = std::move(id);
  do {
    out.u = ctx.RandomNonzeroScalar(rng);
  } while ((out.u + h1).is_zero());
  out.pub = ctx.Exp(ctx.g(), (out.u + h1) * msk.delta * msk.eta.Inverse());
  out.us = ctx.Exp(ctx.g(), msk.y * out.u);
  return out;
}

RoleKey RoleKeyGen(const PairingContext& ctx, const PublicParams& pp,
                   const RoleSecret& rs, const G1Element& g_delta,
                   const G1Element& us, std::string_view id,
                   const Authenticator& authenticate) {
  RBE_ENFORCE(rs.role.org == pp.org, ErrorCode::kInvalidArgument,
              "role secret of " + rs.role.ToString() + " used with " + pp.org);
  if (authenticate) {
    RBE_ENFORCE(authenticate(id), ErrorCode::kAuthenticationFailed,
                "user " + std::string(id) + " failed authentication");
  }
  const Scalar h1 = ctx.HashToScalar(IdentityString(pp.org, id));
  const G1Element base = ctx.Mul(us, ctx.Exp(g_delta, h1));
  return RoleKey{rs.role, std::string(id), ctx.Exp(base, rs.rs)};
}

Encapsulation KemEncrypt(const PairingContext& ctx, const PublicParams& pp,
                         const RolePublicKey& rpk, Rng& rng) {
  RBE_ENFORCE(rpk.role.org == pp.org, ErrorCode::kInvalidArgument,
              "role public key of " + rpk.role.ToString() + " used with " +
                  pp.org);
  RBE_ENFORCE(!rpk.ar.empty(), ErrorCode::kInvalidArgument,
              "role public key without ancestor components");
  const Scalar d = ctx.RandomNonzeroScalar(rng);
  Encapsulation out;
  out.key = ctx.RandomGt(rng);

  KemCiphertext& ct = out.ct;
  ct.role = rpk.role;
  ct.c1 = ctx.Mul(out.key, ctx.Exp(ctx.Div(pp.Y, pp.V), d));
  ct.c2 = ctx.Exp(pp.h, d);
  ct.c_role = ctx.Exp(rpk.pk, d);

  std::vector<G1Element> bases;
  bases.reserve(rpk.ar.size());
  for (const auto& [l, ar] : rpk.ar) bases.push_back(ar);
  std::vector<G1Element> powered = kernels::ExpEach(ctx, bases, d);
  size_t i = 0;
  for (const auto& [l, ar] : rpk.ar) ct.c3.emplace(l, std::move(powered[i++]));
  return out;
}

BlindedKey TransformRoleKey(const PairingContext& ctx, const RoleKey& rk,
                            Rng& rng) {
  BlindedKey out;
  out.v = ctx.RandomNonzeroScalar(rng);
  out.trk = TransformedRoleKey{rk.role, rk.user, ctx.Exp(rk.rk, out.v)};
  return out;
}

G1Element RetargetBase(const PairingContext& ctx, const G1Element& c_role,
                       const std::map<std::string, G1Element>& c3,
                       const RoleHierarchy& h, std::string_view r_x,
                       std::string_view role) {
  G1Element base = c_role;
  for (const auto& l : h.Gamma(r_x, role)) {
    auto it = c3.find(l);
    RBE_ENFORCE(it != c3.end(), ErrorCode::kMissingComponent,
                "ciphertext lacks the component for role " + l);
    base = ctx.Mul(base, it->second);
  }
  return base;
}

PartialDecryption CloudPartialDec(const PairingContext& ctx,
                                  const KemCiphertext& ct,
                                  const TransformedRoleKey& trk,
                                  const std::optional<G1Element>& pub,
                                  const RoleHierarchy& h, RoleGate gate) {
  RBE_ENFORCE(pub.has_value(), ErrorCode::kRevokedUser,
              "no public key on the bulletin board for " + trk.user);
  RBE_ENFORCE(trk.role.org == ct.role.org && h.org() == ct.role.org,
              ErrorCode::kUnauthorizedRole,
              "role " + trk.role.ToString() + " cannot open a ciphertext for " +
                  ct.role.ToString());
  RBE_ENFORCE(h.Contains(trk.role.name) && h.Contains(ct.role.name),
              ErrorCode::kUnknownRole, "role not in hierarchy of " + h.org());
  if (gate == RoleGate::kEnforce) {
    RBE_ENFORCE(h.IsAncestor(trk.role.name, ct.role.name),
                ErrorCode::kUnauthorizedRole,
                trk.role.ToString() + " is not an ancestor of " +
                    ct.role.ToString());
  }
  const G1Element base =
      RetargetBase(ctx, ct.c_role, ct.c3, h, trk.role.name, ct.role.name);
  const kernels::PairInput inputs[] = {{base, trk.trk}, {ct.c2, *pub}};
  std::vector<GTElement> pq = kernels::PairEach(ctx, inputs);
  return PartialDecryption{std::move(pq[0]), std::move(pq[1])};
}

PartialDecryption CloudPartialDec(const PairingContext& ctx,
                                  const UserKeyDirectory& board,
                                  const KemCiphertext& ct,
                                  const TransformedRoleKey& trk,
                                  const RoleHierarchy& h, RoleGate gate) {
  return CloudPartialDec(ctx, ct, trk, board.FindUserKey(trk.role.org, trk.user),
                         h, gate);
}

GTElement UserFinalize(const PairingContext& ctx, const GTElement& c1,
                       const PartialDecryption& pd, const Scalar& v,
                       const Scalar& u) {
  const GTElement unblinded = ctx.Exp(pd.p, v.Inverse());
  const GTElement x = ctx.Exp(ctx.Div(unblinded, pd.q), u.Inverse());
  return ctx.Div(c1, x);
}

void URevoke(UserKeyDirectory& board, std::string_view org,
             std::string_view id) {
  board.RemoveUserKey(org, id);
}

}  // namespace rbe::so
