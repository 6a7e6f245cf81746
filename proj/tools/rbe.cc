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

// rbe: command-line front end. Every subcommand loads what it needs from the
// state directory, calls into the library and writes results back.
//
// Exit codes: 0 success, 1 usage error, 2 cryptographic or protocol error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rbe/actors/audit.h"
#include "rbe/actors/simulator.h"
#include "rbe/bench_report.h"
#include "rbe/envelope.h"
#include "rbe/error.h"
#include "rbe/keyfile.h"
#include "rbe/mo_rbe.h"
#include "rbe/so_rbe.h"
#include "workspace.h"

namespace {

using namespace rbe;
namespace fs = std::filesystem;

struct Globals {
  std::string state = "rbe-state";
  std::optional<uint64_t> seed;
  bool stats = false;
};

Rng MakeRng(const Globals& g) {
  if (g.seed) return Rng(*g.seed);
  if (const char* s = std::getenv("RBE_SEED"); s && *s)
    return Rng(static_cast<uint64_t>(std::strtoull(s, nullptr, 10)));
  return Rng::FromEntropy();
}

uint64_t ScenarioSeed(const Globals& g) {
  if (g.seed) return *g.seed;
  if (const char* s = std::getenv("RBE_SEED"); s && *s)
    return std::strtoull(s, nullptr, 10);
  return 1;
}

std::string HierarchyText(const std::string& source) {
  if (source == "@sample") return SampleHierarchyText();
  Bytes b = keyfile::ReadFile(source);
  return std::string(b.begin(), b.end());
}

void WriteOut(const std::string& path, std::span<const uint8_t> data) {
  if (path == "-") {
    std::cout.write(reinterpret_cast<const char*>(data.data()),
                    static_cast<std::streamsize>(data.size()));
    return;
  }
  keyfile::WriteFile(path, data);
}

Bytes ReadIn(const std::string& path) {
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    std::string s = os.str();
    return Bytes(s.begin(), s.end());
  }
  return keyfile::ReadFile(path);
}

// ------------------------------------------------------------ commands

void InitOrg(cli::Workspace& ws, Rng& rng, const std::string& org,
             const std::string& hierarchy) {
  RBE_ENFORCE(!ws.HasOrg(org), ErrorCode::kProtocolOrder,
              "organization " + org + " already initialized");
  so::InitResult init = so::Init(ws.ctx(), org, rng);
  ws.PutMaster(org, init.msk, {});
  ws.PutGDelta(org, init.g_delta);
  ws.PutParams(init.pp);
  if (!hierarchy.empty()) ws.AppendStaged(org, HierarchyText(hierarchy));
  std::cout << "initialized " << org << "\n";
}

void AddRole(cli::Workspace& ws, const std::string& org, const std::string& role,
             const std::vector<std::string>& parents) {
  ws.RequireOrg(org);
  RBE_ENFORCE(!ws.HasRoles(org), ErrorCode::kProtocolOrder,
              "role parameters for " + org + " already generated");
  std::string text = "role " + role + "\n";
  for (const auto& p : parents) text += "edge " + p + " " + role + "\n";
  // Validate the staged set as it stands, minus completeness of edges whose
  // parent is added later.
  ws.AppendStaged(org, text);
  std::cout << "staged role " << role << "\n";
}

void GenRoleParams(cli::Workspace& ws, Rng& rng, const std::string& org,
                   const std::string& hierarchy) {
  ws.RequireOrg(org);
  RBE_ENFORCE(!ws.HasRoles(org), ErrorCode::kProtocolOrder,
              "role parameters for " + org + " already generated");
  std::string text = ws.Staged(org);
  if (!hierarchy.empty()) text += "\n" + HierarchyText(hierarchy);
  RoleHierarchy h = RoleHierarchy::Parse(org, text);
  auto [msk, old_params] = ws.Master(org);
  so::RoleSetup setup = so::RoleParaGen(ws.ctx(), ws.Params(org), h, rng);
  for (const auto& w : setup.warnings) std::cerr << "warning: " << w << "\n";
  for (const auto& [role, rpk] : setup.public_keys) ws.PutRolePublicKey(rpk);
  for (const auto& [role, rs] : setup.secrets) ws.PutRoleSecret(rs);
  ws.PutMaster(org, msk, setup.params);
  ws.PutHierarchy(h);
  std::cout << "generated parameters for " << h.size() << " roles in " << org
            << "\n";
}

void RegisterUser(cli::Workspace& ws, Rng& rng, const std::string& org,
                  const std::string& id) {
  ws.RequireOrg(org);
  RBE_ENFORCE(!ws.FindUserKey(org, id), ErrorCode::kDuplicateId,
              "user " + id + " already registered in " + org);
  auto [msk, params] = ws.Master(org);
  so::UserCredential cred = so::PrivKeyGen(ws.ctx(), ws.Params(org), msk, id, rng);
  ws.PutUserKey(org, id, cred.pub);
  ws.PutUserSecret(org, id, cred.us);
  ws.PutUserPrivate(org, id, cred.u);
  std::cout << "registered " << id << " in " << org << "\n";
}

void AssignRole(cli::Workspace& ws, const std::string& org, const std::string& id,
                const std::string& role) {
  ws.RequireOrg(org);
  RBE_ENFORCE(ws.HasRoles(org), ErrorCode::kProtocolOrder,
              "role parameters for " + org + " not generated");
  RBE_ENFORCE(ws.Hierarchy(org).Contains(role), ErrorCode::kUnknownRole,
              "role " + role + " not in " + org);
  const G1Element us = ws.UserSecret(org, id);
  so::Authenticator auth = [&](std::string_view uid) {
    return ws.FindUserKey(org, uid).has_value();
  };
  so::RoleKey rk = so::RoleKeyGen(ws.ctx(), ws.Params(org), ws.RoleSecret(org, role),
                                  ws.GDelta(org), us, id, auth);
  ws.PutRoleKey(org, rk);
  std::cout << "assigned " << org << "/" << role << " to " << id << "\n";
}

void Encrypt(cli::Workspace& ws, Rng& rng, const std::string& org,
             const std::string& role, const std::string& in,
             const std::string& out) {
  Bytes msg = ReadIn(in);
  auto ct = envelope::EncryptSingle(ws.ctx(), ws.Params(org),
                                    ws.RolePublicKey(org, role), msg, rng);
  WriteOut(out, envelope::EncodeContainer(ws.ctx(), ct));
}

void MultiEncrypt(cli::Workspace& ws, Rng& rng, const std::string& org,
                  const std::string& role, const std::string& partner_org,
                  const std::string& partner_role, const std::string& in,
                  const std::string& out) {
  Bytes msg = ReadIn(in);
  auto joint = mo::RolePubKeyUpdate(ws.RolePublicKey(org, role),
                                    ws.RolePublicKey(partner_org, partner_role));
  auto ct = envelope::EncryptMulti(ws.ctx(), ws.Params(org),
                                   ws.Params(partner_org), joint, msg, rng);
  WriteOut(out, envelope::EncodeContainer(ws.ctx(), ct));
}

// Runs every party's step locally: user transform, cloud work, user finalize.
Bytes Decrypt(cli::Workspace& ws, Rng& rng, const std::string& org,
              const std::string& id, const std::string& role, const Bytes& in,
              bool multi_only, so::RoleGate gate) {
  const PairingContext& ctx = ws.ctx();
  envelope::Ciphertext ct = envelope::DecodeContainer(ctx, in);
  auto* mct = std::get_if<envelope::MultiOrgCiphertext>(&ct);
  RBE_ENFORCE(!multi_only || mct, ErrorCode::kInvalidArgument,
              "input is not a multi-organization ciphertext");
  ws.RequireOrg(org);
  const Scalar u = ws.UserPrivate(org, id);
  auto rk = ws.RoleKey(org, id, role);
  RBE_ENFORCE(rk.has_value(), ErrorCode::kUnauthorizedRole,
              "user " + id + " holds no key for role " + org + "/" + role);
  so::BlindedKey bk = so::TransformRoleKey(ctx, *rk, rng);

  if (!mct || mct->kem.org() == org) {
    so::KemCiphertext kem =
        mct ? mct->kem.OwnView() : std::get<envelope::SingleOrgCiphertext>(ct).kem;
    auto pd = so::CloudPartialDec(ctx, ws, kem, bk.trk, ws.Hierarchy(kem.role.org),
                                  gate);
    GTElement key = so::UserFinalize(ctx, kem.c1, pd, bk.v, u);
    return mct ? envelope::OpenMulti(ctx, *mct, key)
               : envelope::OpenSingle(ctx, std::get<envelope::SingleOrgCiphertext>(ct),
                                      key);
  }
  const std::string host = mct->kem.org();
  mo::ReKey rekey = ws.ReKey(host, org);
  GTElement c1t = mo::TranslateC1(ctx, mct->kem.c1, mct->kem.c2, rekey,
                                  ws.Master(host).first.eta);
  auto tdk = mo::MakeTdk(ctx, bk.trk, ws.FindUserKey(org, id),
                         ws.Master(org).first.sigma);
  auto pd = mo::MultiCloudPartialDec(ctx, mct->kem, tdk,
                                     ws.Hierarchy(mct->kem.partner_org()), gate);
  GTElement key = mo::MultiUserFinalize(ctx, c1t, pd, bk.v, u);
  return envelope::OpenMulti(ctx, *mct, key);
}

void Revoke(cli::Workspace& ws, const std::string& org, const std::string& id) {
  ws.RequireOrg(org);
  so::URevoke(ws, org, id);
  std::cout << "revoked " << id << " in " << org << "\n";
}

void LinkOrgs(cli::Workspace& ws, const std::string& partner,
              const std::string& host) {
  RBE_ENFORCE(partner != host, ErrorCode::kSameOrganization,
              "cannot link " + host + " with itself");
  auto lts = mo::LongKeyShare(ws.ctx(), partner, ws.Master(partner).first);
  bool replaced = ws.HasReKey(host, partner);
  ws.PutReKey(mo::MakeRekey(ws.ctx(), host, ws.Master(host).first, lts));
  std::cout << (replaced ? "replaced" : "stored") << " re-encryption key " << host
            << " -> " << partner << "\n";
}

int RunScenario(const Globals& g, const std::string& name,
                const std::string& transcript_out, bool audit) {
  std::string script;
  fs::path base;
  auto names = actors::CannedScenarioNames();
  if (std::find(names.begin(), names.end(), name) != names.end()) {
    script = actors::CannedScenario(name);
  } else {
    Bytes b = keyfile::ReadFile(name);
    script.assign(b.begin(), b.end());
    base = fs::path(name).parent_path();
  }
  PairingContext ctx = PairingContext::Setup(80);
  actors::Transcript t = actors::RunScript(ctx, script, ScenarioSeed(g), base);
  std::string dump = t.Dump();
  if (transcript_out.empty() || transcript_out == "-")
    std::cout << dump;
  else
    keyfile::WriteFile(transcript_out, AsBytes(dump));
  int rc = 0;
  if (audit) {
    auto violations = actors::AuditSecretResidency(t);
    for (const auto& v : violations)
      std::cerr << "violation at " << v.seq << ": " << v.rule << ": " << v.detail
                << "\n";
    auto order = actors::CheckPhaseOrder(t);
    if (order)
      std::cerr << "phase order violation at " << order->seq << ": " << order->rule
                << ": " << order->detail << "\n";
    std::cerr << "audit: " << violations.size() << " residency violation(s), "
              << (order ? "illegal" : "legal") << " phase order\n";
    if (!violations.empty() || order) rc = 2;
  }
  return rc;
}

int Bench(const std::string& config, const std::string& format,
          const std::string& out, std::optional<size_t> iterations) {
  bench::BenchConfig cfg =
      config.empty() ? bench::DefaultConfig() : bench::LoadConfig(config);
  if (iterations) {
    cfg.iterations = *iterations;
    cfg.flatness_iterations = *iterations;
  }
  bench::BenchReport rep = bench::RunBench(cfg);
  std::string text = format == "machine" ? rep.ToJson() + "\n" : rep.ToText();
  if (out.empty() || out == "-")
    std::cout << text;
  else
    keyfile::WriteFile(out, AsBytes(text));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Role-based encryption toolkit"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--state", g.state, "State directory")
      ->envname("RBE_STATE")
      ->capture_default_str();
  app.add_option("--seed", g.seed, "Deterministic RNG seed (also RBE_SEED)");
  app.add_flag("--stats", g.stats, "Print group-operation counts to stderr");

  std::string org, partner, host, id, role, partner_role, hierarchy, in = "-",
                                                                     out = "-";
  std::vector<std::string> parents;
  bool bypass = false;

  auto* init = app.add_subcommand("init-org", "Initialize an organization");
  init->add_option("org", org)->required();
  init->add_option("--hierarchy", hierarchy, "Stage a hierarchy file or @sample");

  auto* add_role = app.add_subcommand("add-role", "Stage a role");
  add_role->add_option("org", org)->required();
  add_role->add_option("role", role)->required();
  add_role->add_option("--parent", parents, "Parent role (repeatable)");

  auto* gen = app.add_subcommand("gen-role-params", "Generate role parameters");
  gen->add_option("org", org)->required();
  gen->add_option("--hierarchy", hierarchy, "Hierarchy file or @sample");

  auto* reg = app.add_subcommand("register-user", "Issue user keys");
  reg->add_option("org", org)->required();
  reg->add_option("id", id)->required();

  auto* assign = app.add_subcommand("assign-role", "Issue a role key");
  assign->add_option("org", org)->required();
  assign->add_option("id", id)->required();
  assign->add_option("role", role)->required();

  auto* enc = app.add_subcommand("encrypt", "Encrypt for a role");
  enc->add_option("org", org)->required();
  enc->add_option("role", role)->required();
  enc->add_option("--in", in, "Plaintext file, - for stdin")->capture_default_str();
  enc->add_option("--out", out, "Container file, - for stdout")->capture_default_str();

  auto* dec = app.add_subcommand("decrypt", "Decrypt a container");
  auto* mdec = app.add_subcommand("mdecrypt", "Decrypt a multi-organization container");
  for (auto* c : {dec, mdec}) {
    c->add_option("org", org)->required();
    c->add_option("id", id)->required();
    c->add_option("role", role)->required();
    c->add_option("--in", in, "Container file, - for stdin")->capture_default_str();
    c->add_option("--out", out, "Plaintext file, - for stdout")->capture_default_str();
    c->add_flag("--bypass-role-gate", bypass,
                "Skip the cloud's role check (white-box testing)")
        ->group("");
  }

  auto* rev = app.add_subcommand("revoke", "Revoke a user");
  rev->add_option("org", org)->required();
  rev->add_option("id", id)->required();

  auto* link = app.add_subcommand("link-orgs",
                                  "Admit PARTNER's users to data hosted by HOST");
  link->add_option("partner", partner)->required();
  link->add_option("host", host)->required();

  auto* menc = app.add_subcommand("mencrypt", "Encrypt for roles in two organizations");
  menc->add_option("org", org)->required();
  menc->add_option("role", role)->required();
  menc->add_option("partner-org", partner)->required();
  menc->add_option("partner-role", partner_role)->required();
  menc->add_option("--in", in, "Plaintext file, - for stdin")->capture_default_str();
  menc->add_option("--out", out, "Container file, - for stdout")->capture_default_str();

  std::string scenario, transcript;
  bool audit = false;
  auto* run = app.add_subcommand("run-scenario", "Run a simulated scenario");
  run->add_option("scenario", scenario, "Canned scenario name or script file")
      ->required();
  run->add_option("--transcript", transcript, "Write the transcript here");
  run->add_flag("--audit", audit, "Audit secret residency and phase order");

  std::string config, format = "text", report;
  std::optional<size_t> iterations;
  auto* bench = app.add_subcommand("bench", "Run the instrumented benchmark");
  bench->add_option("--config", config, "JSON configuration file");
  bench->add_option("--format", format)
      ->check(CLI::IsMember({"text", "machine"}))
      ->capture_default_str();
  bench->add_option("--out", report, "Write the report here");
  bench->add_option("--iterations", iterations, "Override iteration counts")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (run->parsed()) return RunScenario(g, scenario, transcript, audit);
    if (bench->parsed()) return Bench(config, format, report, iterations);

    cli::Workspace ws(PairingContext::Setup(80), g.state);
    Rng rng = MakeRng(g);
    CounterScope scope(ws.ctx());
    const so::RoleGate gate = bypass ? so::RoleGate::kBypass : so::RoleGate::kEnforce;
    if (init->parsed()) InitOrg(ws, rng, org, hierarchy);
    else if (add_role->parsed()) AddRole(ws, org, role, parents);
    else if (gen->parsed()) GenRoleParams(ws, rng, org, hierarchy);
    else if (reg->parsed()) RegisterUser(ws, rng, org, id);
    else if (assign->parsed()) AssignRole(ws, org, id, role);
    else if (enc->parsed()) Encrypt(ws, rng, org, role, in, out);
    else if (dec->parsed() || mdec->parsed())
      WriteOut(out, Decrypt(ws, rng, org, id, role, ReadIn(in), mdec->parsed(), gate));
    else if (rev->parsed()) Revoke(ws, org, id);
    else if (link->parsed()) LinkOrgs(ws, partner, host);
    else if (menc->parsed())
      MultiEncrypt(ws, rng, org, role, partner, partner_role, in, out);
    if (g.stats) std::cerr << "ops: " << scope.Diff().ToString() << "\n";
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::kInvalidArgument ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
