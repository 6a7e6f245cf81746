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

#include <fstream>
#include <sstream>
#include <type_traits>

#include "rbe/actors/simulator.h"
#include "rbe/envelope.h"
#include "rbe/mo_rbe.h"
#include "rbe/so_rbe.h"

namespace rbe::actors {

struct Simulator::UserState {
  Scalar u;
  std::map<std::string, so::RoleKey> role_keys;
  std::map<uint64_t, Scalar> sessions;  // blinding values in flight
};

struct Simulator::Org {
  std::string name;
  // System administrator.
  so::MasterSecret msk;
  G1Element g_delta;
  std::vector<std::string> pending_roles;
  std::vector<Edge> pending_edges;
  std::optional<RoleHierarchy> hierarchy;
  so::RoleParams params;
  // Role managers, one per role.
  std::map<std::string, so::RoleSecret> rm_secrets;
  std::map<std::string, G1Element> rm_g_delta;
  // Private cloud.
  Scalar pc_sigma;
  Scalar pc_eta;
  std::map<std::string, G1Element> pc_user_secrets;
  mo::RekeyStore pc_rekeys;
  // Users.
  std::map<std::string, UserState> users;
};

namespace {

EntityRef SA(const std::string& org) {
  return {EntityKind::kSystemAdministrator, org, ""};
}
EntityRef PrivCloud(const std::string& org) {
  return {EntityKind::kPrivateCloud, org, ""};
}
EntityRef PubCloud() { return {EntityKind::kPublicCloud, "", ""}; }
EntityRef Board(const std::string& org) {
  return {EntityKind::kBulletinBoard, org, ""};
}
EntityRef RM(const std::string& org, const std::string& role) {
  return {EntityKind::kRoleManager, org, role};
}
EntityRef UserRef(const std::string& org, const std::string& id) {
  return {EntityKind::kUser, org, id};
}
EntityRef Owner(const std::string& org) {
  return {EntityKind::kDataOwner, org, "owner"};
}

Field Text(std::string name, std::string_view value) {
  Field f;
  f.name = std::move(name);
  f.bytes.assign(value.begin(), value.end());
  return f;
}

}  // namespace

Simulator::Simulator(PairingContext ctx, uint64_t seed)
    : ctx_(std::move(ctx)), rng_(seed), transcript_(seed) {
  auth_ = [this](std::string_view org, std::string_view id) {
    return Authenticate(board_, org, id);
  };
}

Simulator::~Simulator() = default;

Simulator::Org& Simulator::GetOrg(const std::string& org, const char* step) {
  auto it = orgs_.find(org);
  RBE_ENFORCE(it != orgs_.end(), ErrorCode::kProtocolOrder,
              std::string(step) + " before init-org " + org);
  return *it->second;
}

const Entry& Simulator::Send(Phase phase, const std::string& org,
                             EntityRef from, EntityRef to, std::string kind,
                             std::vector<Field> fields) {
  Entry e;
  e.type = Entry::Type::kMessage;
  e.phase = phase;
  e.org = org;
  e.from = std::move(from);
  e.to = std::move(to);
  e.label = std::move(kind);
  e.fields = std::move(fields);
  return transcript_.Add(std::move(e));
}

const Entry& Simulator::Note(Phase phase, const std::string& org,
                             EntityRef who, std::string what,
                             std::string detail) {
  Entry e;
  e.type = Entry::Type::kEvent;
  e.phase = phase;
  e.org = org;
  e.from = std::move(who);
  e.label = std::move(what);
  e.detail = std::move(detail);
  return transcript_.Add(std::move(e));
}

template <typename Fn>
auto Simulator::Work(Phase phase, const std::string& org, const EntityRef& who,
                     std::string op, Fn&& f) {
  CounterScope scope(ctx_);
  auto record = [&](std::string label) {
    Entry e;
    e.type = Entry::Type::kWork;
    e.phase = phase;
    e.org = org;
    e.from = who;
    e.label = std::move(label);
    e.counts = scope.Diff();
    transcript_.Add(std::move(e));
  };
  try {
    if constexpr (std::is_void_v<std::invoke_result_t<Fn>>) {
      f();
      record(op);
    } else {
      auto r = f();
      record(op);
      return r;
    }
  } catch (...) {
    record(op + " (failed)");
    throw;
  }
}

Field Simulator::F(std::string name, const G1Element& x, SecretClass c,
                   std::string owner) const {
  return Field{std::move(name), c, std::move(owner), ctx_.Serialize(x)};
}

Field Simulator::F(std::string name, const GTElement& x) const {
  return Field{std::move(name), SecretClass::kPublic, "", ctx_.Serialize(x)};
}

Field Simulator::F(std::string name, const Scalar& x, SecretClass c,
                   std::string owner) const {
  return Field{std::move(name), c, std::move(owner), ctx_.Serialize(x)};
}

DecryptOutcome Simulator::Fail(Phase phase, const std::string& org,
                               const EntityRef& who, const Error& e) {
  Note(phase, org, who, "decrypt-failed", std::string(ErrorName(e.code())));
  DecryptOutcome out;
  out.error = e.code();
  out.message = e.what();
  return out;
}

// ------------------------------------------------------------- protocol

void Simulator::InitOrg(const std::string& org) {
  RBE_ENFORCE(!org.empty(), ErrorCode::kInvalidArgument, "empty org name");
  RBE_ENFORCE(!orgs_.contains(org), ErrorCode::kProtocolOrder,
              "organization " + org + " already initialized");
  const Phase ph = Phase::kSystemInit;
  auto o = std::make_unique<Org>();
  o->name = org;
  auto init = Work(ph, org, SA(org), "Init",
                   [&] { return so::Init(ctx_, org, rng_); });
  o->msk = init.msk;
  o->g_delta = init.g_delta;
  Send(ph, org, SA(org), PrivCloud(org), "cloud-secrets",
       {F("sigma", init.msk.sigma, SecretClass::kSigma),
        F("eta", init.msk.eta, SecretClass::kEta)});
  o->pc_sigma = init.msk.sigma;
  o->pc_eta = init.msk.eta;
  board_.PublishParams(init.pp);
  Send(ph, org, SA(org), Board(org), "publish-params",
       {F("Y", init.pp.Y), F("V", init.pp.V), F("h", init.pp.h)});
  orgs_.emplace(org, std::move(o));
}

void Simulator::AddHierarchy(const std::string& org, const RoleHierarchy& h) {
  Org& o = GetOrg(org, "add-hierarchy");
  RBE_ENFORCE(!o.hierarchy, ErrorCode::kProtocolOrder,
              "role parameters for " + org + " already generated");
  for (const auto& r : h.roles()) o.pending_roles.push_back(r);
  for (const auto& e : h.edges()) o.pending_edges.push_back(e);
  Note(Phase::kManageRole, org, SA(org), "hierarchy-staged",
       "roles=" + std::to_string(h.size()));
}

void Simulator::AddRole(const std::string& org, const std::string& role,
                        const std::vector<std::string>& parents) {
  Org& o = GetOrg(org, "add-role");
  RBE_ENFORCE(!o.hierarchy, ErrorCode::kProtocolOrder,
              "role parameters for " + org + " already generated");
  o.pending_roles.push_back(role);
  for (const auto& p : parents) o.pending_edges.emplace_back(p, role);
  Note(Phase::kManageRole, org, SA(org), "role-staged", role);
}

void Simulator::GenRoleParams(const std::string& org) {
  Org& o = GetOrg(org, "gen-role-params");
  RBE_ENFORCE(!o.hierarchy, ErrorCode::kProtocolOrder,
              "role parameters for " + org + " already generated");
  const Phase ph = Phase::kManageRole;
  RoleHierarchy h = RoleHierarchy::Build(org, o.pending_roles, o.pending_edges);
  const so::PublicParams pp = board_.Params(org);
  auto setup = Work(ph, org, SA(org), "RoleParaGen",
                    [&] { return so::RoleParaGen(ctx_, pp, h, rng_); });
  for (const auto& w : setup.warnings) Note(ph, org, SA(org), "warning", w);
  for (const auto& [role, rs] : setup.secrets) {
    Send(ph, org, SA(org), RM(org, role), "role-secret",
         {F("RS", rs.rs, SecretClass::kRoleSecret, role),
          F("g_delta", o.g_delta, SecretClass::kGDelta)});
    o.rm_secrets.emplace(role, rs);
    o.rm_g_delta.emplace(role, o.g_delta);
  }
  board_.PublishHierarchy(h);
  std::vector<Field> pks;
  for (const auto& [role, rpk] : setup.public_keys) {
    board_.PublishRoleKey(rpk);
    pks.push_back(F("PK/" + role, rpk.pk));
  }
  Send(ph, org, SA(org), Board(org), "publish-role-keys", std::move(pks));
  o.params = std::move(setup.params);
  o.hierarchy = std::move(h);
}

void Simulator::Register(const std::string& org, const std::string& id) {
  Org& o = GetOrg(org, "register");
  const Phase ph = Phase::kKeyGeneration;
  RBE_ENFORCE(!board_.FindUserKey(org, id), ErrorCode::kDuplicateId,
              "user " + id + " already registered in " + org);
  const so::PublicParams pp = board_.Params(org);
  auto cred = Work(ph, org, SA(org), "PrivKeyGen",
                   [&] { return so::PrivKeyGen(ctx_, pp, o.msk, id, rng_); });
  board_.PublishUserKey(org, id, cred.pub);
  Send(ph, org, SA(org), UserRef(org, id), "user-private-key",
       {F("u", cred.u, SecretClass::kUserPrivate, id)});
  Send(ph, org, SA(org), PrivCloud(org), "user-secret",
       {Text("id", id), F("US", cred.us, SecretClass::kUserSecret, id)});
  Send(ph, org, SA(org), Board(org), "publish-user-key",
       {Text("id", id), F("Pub", cred.pub)});
  o.pc_user_secrets.insert_or_assign(id, cred.us);
  UserState st;
  st.u = cred.u;
  o.users.insert_or_assign(id, std::move(st));
}

void Simulator::Assign(const std::string& org, const std::string& id,
                       const std::string& role) {
  Org& o = GetOrg(org, "assign");
  RBE_ENFORCE(o.hierarchy.has_value(), ErrorCode::kProtocolOrder,
              "assign before gen-role-params " + org);
  RBE_ENFORCE(o.hierarchy->Contains(role), ErrorCode::kUnknownRole,
              "role " + role + " not in " + org);
  auto uit = o.users.find(id);
  RBE_ENFORCE(uit != o.users.end(), ErrorCode::kUnknownId,
              "user " + id + " not registered in " + org);
  const Phase ph = Phase::kKeyGeneration;
  Send(ph, org, RM(org, role), PrivCloud(org), "request-user-secret",
       {Text("id", id)});
  if (!auth_(org, id)) {
    Note(ph, org, PrivCloud(org), "auth-denied", id);
    throw Error(ErrorCode::kAuthenticationFailed,
                "user " + id + " failed authentication in " + org);
  }
  const G1Element& us = o.pc_user_secrets.at(id);
  Send(ph, org, PrivCloud(org), RM(org, role), "user-secret",
       {Text("id", id), F("US", us, SecretClass::kUserSecret, id)});
  const so::PublicParams pp = board_.Params(org);
  auto rk = Work(ph, org, RM(org, role), "RoleKeyGen", [&] {
    return so::RoleKeyGen(ctx_, pp, o.rm_secrets.at(role),
                          o.rm_g_delta.at(role), us, id);
  });
  Send(ph, org, RM(org, role), UserRef(org, id), "role-key",
       {F("RK", rk.rk, SecretClass::kRoleKey, id)});
  uit->second.role_keys.insert_or_assign(role, std::move(rk));
}

void Simulator::Encrypt(const std::string& org, const std::string& role,
                        const std::string& object,
                        std::span<const uint8_t> message) {
  Org& o = GetOrg(org, "encrypt");
  RBE_ENFORCE(o.hierarchy.has_value(), ErrorCode::kProtocolOrder,
              "encrypt before gen-role-params " + org);
  const Phase ph = Phase::kEncryption;
  const so::PublicParams pp = board_.Params(org);
  const so::RolePublicKey rpk = board_.RoleKey(org, role);
  auto ct = Work(ph, org, Owner(org), "EncryptSingle", [&] {
    return envelope::EncryptSingle(ctx_, pp, rpk, message, rng_);
  });
  Bytes bytes = envelope::EncodeContainer(ctx_, ct);
  Send(ph, org, Owner(org), PubCloud(), "store-object",
       {Text("name", object), Field{"container", SecretClass::kPublic, "", bytes}});
  objects_.insert_or_assign(object, std::move(bytes));
}

void Simulator::Revoke(const std::string& org, const std::string& id) {
  GetOrg(org, "revoke");
  const Phase ph = Phase::kUserRevocation;
  Work(ph, org, SA(org), "URevoke", [&] { so::URevoke(board_, org, id); });
  Note(ph, org, Board(org), "remove-user-key", id);
}

void Simulator::Link(const std::string& partner, const std::string& host) {
  RBE_ENFORCE(partner != host, ErrorCode::kSameOrganization,
              "cannot link " + host + " with itself");
  Org& p = GetOrg(partner, "link");
  Org& h = GetOrg(host, "link");
  const Phase ph = Phase::kAgreement;
  auto lts = Work(ph, partner, SA(partner), "LongKeyShare",
                  [&] { return mo::LongKeyShare(ctx_, partner, p.msk); });
  Send(ph, host, SA(partner), SA(host), "long-term-secret",
       {F("LTS", lts.lts, SecretClass::kLongTermSecret, partner)});
  auto rekey = Work(ph, host, SA(host), "MakeRekey",
                    [&] { return mo::MakeRekey(ctx_, host, h.msk, lts); });
  Send(ph, host, SA(host), PrivCloud(host), "rekey",
       {Text("partner", partner),
        F("ReKey", rekey.key, SecretClass::kReKey, partner)});
  bool replaced = h.pc_rekeys.Put(std::move(rekey));
  Note(ph, host, PrivCloud(host), "rekey-stored",
       "partner=" + partner + (replaced ? " replaced" : ""));
}

void Simulator::MultiEncrypt(const std::string& org, const std::string& role,
                             const std::string& partner_org,
                             const std::string& partner_role,
                             const std::string& object,
                             std::span<const uint8_t> message) {
  Org& o = GetOrg(org, "mencrypt");
  Org& p = GetOrg(partner_org, "mencrypt");
  RBE_ENFORCE(o.hierarchy && p.hierarchy, ErrorCode::kProtocolOrder,
              "mencrypt before gen-role-params");
  const so::RolePublicKey own = board_.RoleKey(org, role);
  const so::RolePublicKey other = board_.RoleKey(partner_org, partner_role);
  auto joint = Work(Phase::kRolePubKeyUpdate, org, Owner(org),
                    "RolePubKeyUpdate",
                    [&] { return mo::RolePubKeyUpdate(own, other); });
  const Phase ph = Phase::kMultiEncryption;
  const so::PublicParams pp = board_.Params(org);
  const so::PublicParams ppp = board_.Params(partner_org);
  auto ct = Work(ph, org, Owner(org), "EncryptMulti", [&] {
    return envelope::EncryptMulti(ctx_, pp, ppp, joint, message, rng_);
  });
  Bytes bytes = envelope::EncodeContainer(ctx_, ct);
  Send(ph, org, Owner(org), PubCloud(), "store-object",
       {Text("name", object), Field{"container", SecretClass::kPublic, "", bytes}});
  objects_.insert_or_assign(object, std::move(bytes));
}

const Bytes& Simulator::StoredObject(const std::string& name) const {
  auto it = objects_.find(name);
  RBE_ENFORCE(it != objects_.end(), ErrorCode::kUnknownId,
              "no stored object " + name);
  return it->second;
}

DecryptOutcome Simulator::Decrypt(const std::string& org, const std::string& id,
                                  const std::string& role,
                                  const std::string& object) {
  envelope::Ciphertext ct = envelope::DecodeContainer(ctx_, StoredObject(object));
  if (auto* m = std::get_if<envelope::MultiOrgCiphertext>(&ct);
      m && m->kem.org() != org)
    return MultiDecrypt(org, id, role, object);
  return DecryptOwn(Phase::kDecryption, org, id, role, object);
}

// The user's own organization hosts the ciphertext: single-organization flow,
// using the org-k view of a multi-organization ciphertext.
DecryptOutcome Simulator::DecryptOwn(Phase ph, const std::string& org,
                                     const std::string& id,
                                     const std::string& role,
                                     const std::string& object) {
  Org& o = GetOrg(org, "decrypt");
  auto uit = o.users.find(id);
  RBE_ENFORCE(uit != o.users.end(), ErrorCode::kUnknownId,
              "user " + id + " not registered in " + org);
  UserState& user = uit->second;
  const EntityRef me = UserRef(org, id);
  envelope::Ciphertext ct = envelope::DecodeContainer(ctx_, StoredObject(object));
  so::KemCiphertext kem = std::visit(
      [](const auto& c) -> so::KemCiphertext {
        if constexpr (std::is_same_v<std::decay_t<decltype(c)>,
                                     envelope::SingleOrgCiphertext>)
          return c.kem;
        else
          return c.kem.OwnView();
      },
      ct);

  auto rk = user.role_keys.find(role);
  if (rk == user.role_keys.end())
    return Fail(ph, org, me,
                Error(ErrorCode::kUnauthorizedRole,
                      "user " + id + " holds no key for role " + role));

  auto bk = Work(ph, org, me, "TransformRoleKey",
                 [&] { return so::TransformRoleKey(ctx_, rk->second, rng_); });
  const uint64_t sid = next_session_++;
  const std::string session = "v#" + std::to_string(sid);
  user.sessions.emplace(sid, bk.v);
  Note(ph, org, me, "session-put", session);
  auto clear = [&] {
    user.sessions.erase(sid);
    Note(ph, org, me, "session-clear", session);
  };

  Send(ph, org, me, PubCloud(), "access-request",
       {Text("object", object), Text("id", id), F("TRK", bk.trk.trk)});
  try {
    const RoleHierarchy h = board_.Hierarchy(kem.role.org);
    auto pd = Work(ph, org, PubCloud(), "CloudPartialDec", [&] {
      return so::CloudPartialDec(ctx_, board_, kem, bk.trk, h);
    });
    Send(ph, org, PubCloud(), me, "partial-decryption",
         {F("C1", kem.c1), F("P", pd.p), F("Q", pd.q)});
    Bytes pt = Work(ph, org, me, "UserFinalize", [&] {
      GTElement key = so::UserFinalize(ctx_, kem.c1, pd, user.sessions.at(sid),
                                       user.u);
      return std::visit(
          [&](const auto& c) -> Bytes {
            if constexpr (std::is_same_v<std::decay_t<decltype(c)>,
                                         envelope::SingleOrgCiphertext>)
              return envelope::OpenSingle(ctx_, c, key);
            else
              return envelope::OpenMulti(ctx_, c, key);
          },
          ct);
    });
    clear();
    Note(ph, org, me, "decrypt-ok",
         "object=" + object + " bytes=" + std::to_string(pt.size()));
    return DecryptOutcome{true, std::nullopt, {}, std::move(pt)};
  } catch (const Error& e) {
    clear();
    return Fail(ph, org, me, e);
  }
}

DecryptOutcome Simulator::MultiDecrypt(const std::string& org,
                                       const std::string& id,
                                       const std::string& role,
                                       const std::string& object) {
  envelope::Ciphertext any =
      envelope::DecodeContainer(ctx_, StoredObject(object));
  auto* mp = std::get_if<envelope::MultiOrgCiphertext>(&any);
  RBE_ENFORCE(mp != nullptr, ErrorCode::kInvalidArgument,
              object + " is not a multi-organization ciphertext");
  const envelope::MultiOrgCiphertext& ct = *mp;
  const Phase ph = Phase::kMultiDecryption;
  if (ct.kem.org() == org) return DecryptOwn(ph, org, id, role, object);

  Org& o = GetOrg(org, "mdecrypt");
  auto uit = o.users.find(id);
  RBE_ENFORCE(uit != o.users.end(), ErrorCode::kUnknownId,
              "user " + id + " not registered in " + org);
  UserState& user = uit->second;
  const EntityRef me = UserRef(org, id);
  const std::string host = ct.kem.org();

  auto rk = user.role_keys.find(role);
  if (rk == user.role_keys.end())
    return Fail(ph, org, me,
                Error(ErrorCode::kUnauthorizedRole,
                      "user " + id + " holds no key for role " + role));

  auto bk = Work(ph, org, me, "TransformRoleKey",
                 [&] { return so::TransformRoleKey(ctx_, rk->second, rng_); });
  const uint64_t sid = next_session_++;
  const std::string session = "v#" + std::to_string(sid);
  user.sessions.emplace(sid, bk.v);
  Note(ph, org, me, "session-put", session);
  auto clear = [&] {
    user.sessions.erase(sid);
    Note(ph, org, me, "session-clear", session);
  };

  Send(ph, org, me, PubCloud(), "access-request",
       {Text("object", object), Text("id", id), F("TRK", bk.trk.trk)});
  try {
    // Translation leg at the hosting organization's private cloud.
    Send(ph, org, PubCloud(), PrivCloud(host), "translate-request",
         {Text("partner", org), F("C1", ct.kem.c1), F("C2", ct.kem.c2)});
    Org& h = GetOrg(host, "mdecrypt");
    GTElement c1t = Work(ph, org, PrivCloud(host), "TranslateC1", [&] {
      return mo::TranslateC1(ctx_, ct.kem.c1, ct.kem.c2,
                             h.pc_rekeys.Get(host, org), h.pc_eta);
    });
    Send(ph, org, PrivCloud(host), PubCloud(), "translated", {F("C1'", c1t)});

    // Key-lifting leg at the user's own private cloud.
    Send(ph, org, PubCloud(), PrivCloud(org), "tdk-request",
         {Text("id", id), F("TRK", bk.trk.trk)});
    auto tdk = Work(ph, org, PrivCloud(org), "MakeTdk", [&] {
      return mo::MakeTdk(ctx_, bk.trk, board_.FindUserKey(org, id), o.pc_sigma);
    });
    Send(ph, org, PrivCloud(org), PubCloud(), "tdk",
         {F("TDK", tdk.tdk), F("Pub^sigma", tdk.blind_pub)});

    const RoleHierarchy ph_h = board_.Hierarchy(ct.kem.partner_org());
    auto pd = Work(ph, org, PubCloud(), "MultiCloudPartialDec", [&] {
      return mo::MultiCloudPartialDec(ctx_, ct.kem, tdk, ph_h);
    });
    Send(ph, org, PubCloud(), me, "partial-decryption",
         {F("C1'", c1t), F("P", pd.p), F("Q", pd.q)});
    Bytes pt = Work(ph, org, me, "MultiUserFinalize", [&] {
      GTElement key = mo::MultiUserFinalize(ctx_, c1t, pd,
                                            user.sessions.at(sid), user.u);
      return envelope::OpenMulti(ctx_, ct, key);
    });
    clear();
    Note(ph, org, me, "decrypt-ok",
         "object=" + object + " bytes=" + std::to_string(pt.size()));
    return DecryptOutcome{true, std::nullopt, {}, std::move(pt)};
  } catch (const Error& e) {
    clear();
    return Fail(ph, org, me, e);
  }
}

void Simulator::Leak(const std::string& org, SecretClass secret,
                     const EntityRef& to) {
  Org& o = GetOrg(org, "leak");
  Field f;
  switch (secret) {
    case SecretClass::kMasterDelta: f = F("delta", o.msk.delta, secret); break;
    case SecretClass::kSigma: f = F("sigma", o.msk.sigma, secret); break;
    case SecretClass::kEta: f = F("eta", o.msk.eta, secret); break;
    case SecretClass::kGDelta: f = F("g_delta", o.g_delta, secret); break;
    default: f = F(std::string(SecretClassName(secret)), o.msk.y, secret); break;
  }
  Send(Phase::kFaultInjection, org, SA(org), to, "leak", {std::move(f)});
}

// ------------------------------------------------------------- scripts

namespace {

std::vector<std::string> Tokens(std::string_view line) {
  std::istringstream is{std::string(line)};
  std::vector<std::string> out;
  for (std::string t; is >> t;) out.push_back(t);
  return out;
}

Bytes ReadAll(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  RBE_ENFORCE(in.good(), ErrorCode::kIo, "cannot read " + p.string());
  return Bytes(std::istreambuf_iterator<char>(in), {});
}

EntityRef ParseReceiver(const std::string& org, const std::string& s) {
  if (s == "public-cloud") return PubCloud();
  if (s == "private-cloud") return PrivCloud(org);
  if (s.starts_with("user:")) return UserRef(org, s.substr(5));
  if (s.starts_with("rm:")) return RM(org, s.substr(3));
  if (s.starts_with("sa:")) return SA(s.substr(3));
  throw Error(ErrorCode::kInvalidArgument, "unknown receiver " + s);
}

}  // namespace

Transcript RunScript(const PairingContext& ctx, std::string_view script,
                     uint64_t seed, const std::filesystem::path& base_dir) {
  Simulator sim(ctx, seed);
  auto resolve = [&](const std::string& p) {
    std::filesystem::path path(p);
    return path.is_relative() && !base_dir.empty() ? base_dir / path : path;
  };
  auto message = [&](const std::string& m) -> Bytes {
    if (m.starts_with("text:")) return Bytes(m.begin() + 5, m.end());
    return ReadAll(resolve(m));
  };

  std::istringstream lines{std::string(script)};
  std::string line;
  int lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    auto tok = Tokens(line);
    if (tok.empty()) continue;
    std::optional<std::string> expect;
    if (tok.back().starts_with("expect=")) {
      expect = tok.back().substr(7);
      tok.pop_back();
    }
    const std::string where = "line " + std::to_string(lineno) + ": ";
    auto need = [&](size_t n) {
      RBE_ENFORCE(tok.size() == n, ErrorCode::kInvalidArgument,
                  where + "'" + tok[0] + "' takes " + std::to_string(n - 1) +
                      " arguments");
    };

    std::optional<ErrorCode> got;
    std::string got_message;
    try {
      const std::string& cmd = tok[0];
      if (cmd == "init-org") {
        need(2);
        sim.InitOrg(tok[1]);
      } else if (cmd == "add-hierarchy") {
        need(3);
        if (tok[2] == "@sample") {
          sim.AddHierarchy(tok[1], SampleHierarchy(tok[1]));
        } else {
          Bytes text = ReadAll(resolve(tok[2]));
          sim.AddHierarchy(tok[1], RoleHierarchy::Parse(
                                       tok[1], std::string_view(
                                                   reinterpret_cast<const char*>(text.data()),
                                                   text.size())));
        }
      } else if (cmd == "add-role") {
        RBE_ENFORCE(tok.size() >= 3, ErrorCode::kInvalidArgument,
                    where + "add-role ORG ROLE [PARENT...]");
        sim.AddRole(tok[1], tok[2], {tok.begin() + 3, tok.end()});
      } else if (cmd == "gen-role-params") {
        need(2);
        sim.GenRoleParams(tok[1]);
      } else if (cmd == "register") {
        need(3);
        sim.Register(tok[1], tok[2]);
      } else if (cmd == "assign") {
        need(4);
        sim.Assign(tok[1], tok[2], tok[3]);
      } else if (cmd == "encrypt") {
        need(5);
        sim.Encrypt(tok[1], tok[2], tok[4], message(tok[3]));
      } else if (cmd == "decrypt" || cmd == "mdecrypt") {
        need(5);
        DecryptOutcome r = cmd == "decrypt"
                               ? sim.Decrypt(tok[1], tok[2], tok[3], tok[4])
                               : sim.MultiDecrypt(tok[1], tok[2], tok[3], tok[4]);
        if (!r.ok) {
          got = r.error;
          got_message = r.message;
        }
      } else if (cmd == "revoke") {
        need(3);
        sim.Revoke(tok[1], tok[2]);
      } else if (cmd == "link") {
        need(3);
        sim.Link(tok[1], tok[2]);
      } else if (cmd == "mencrypt") {
        need(7);
        sim.MultiEncrypt(tok[1], tok[2], tok[3], tok[4], tok[6], message(tok[5]));
      } else if (cmd == "leak") {
        need(4);
        auto c = ParseSecretClass(tok[2]);
        RBE_ENFORCE(c.has_value(), ErrorCode::kInvalidArgument,
                    where + "unknown secret class " + tok[2]);
        sim.Leak(tok[1], *c, ParseReceiver(tok[1], tok[3]));
      } else {
        throw Error(ErrorCode::kInvalidArgument, where + "unknown command " + cmd);
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kInvalidArgument && !expect) throw;
      got = e.code();
      got_message = e.what();
    }

    const std::string want = expect.value_or("ok");
    const std::string have = got ? std::string(ErrorName(*got)) : "ok";
    if (want == have) continue;
    if (!expect && got) throw Error(*got, where + got_message);
    throw Error(ErrorCode::kExpectationFailed,
                where + "expected " + want + ", got " + have +
                    (got_message.empty() ? "" : " (" + got_message + ")"));
  }
  return sim.transcript();
}

std::vector<std::string> CannedScenarioNames() {
  return {"fig1-single-org", "two-org-consortium"};
}

std::string CannedScenario(std::string_view name) {
  if (name == "fig1-single-org") {
    return R"(# One organization with the eight-role sample hierarchy.
init-org A
add-hierarchy A @sample
gen-role-params A
register A alice
register A bob
register A carol
assign A alice r5
assign A bob r3
assign A carol r8
encrypt A r8 text:quarterly-figures report
decrypt A carol r8 report expect=ok
decrypt A bob r3 report expect=UnauthorizedRole
revoke A carol
decrypt A carol r8 report expect=RevokedUser
decrypt A alice r5 report expect=ok
)";
  }
  if (name == "two-org-consortium") {
    return R"(# Two organizations; B's users are admitted to data hosted by A.
init-org A
init-org B
add-hierarchy A @sample
add-hierarchy B @sample
gen-role-params A
gen-role-params B
register A alice
assign A alice r2
register B bob
assign B bob r1
register B dave
assign B dave r7
link B A
mencrypt A r5 B r6 text:joint-plan plan
mdecrypt B bob r1 plan expect=ok
decrypt A alice r2 plan expect=ok
mdecrypt B dave r7 plan expect=UnauthorizedRole
)";
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown scenario " + std::string(name));
}

}  // namespace rbe::actors
