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

#include "rbe/hierarchy.h"

#include <algorithm>
#include <sstream>

#include "rbe/error.h"

namespace rbe {

namespace {

bool ValidName(std::string_view s) {
  if (s.empty()) return false;
  return std::none_of(s.begin(), s.end(), [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '/';
  });
}

}  // namespace

RoleHierarchy RoleHierarchy::Build(std::string org,
                                   std::vector<std::string> roles,
                                   std::vector<Edge> edges) {
  RBE_ENFORCE(ValidName(org), ErrorCode::kInvalidArgument,
              "invalid organization id '" + org + "'");
  RoleHierarchy h;
  h.org_ = std::move(org);

  std::sort(roles.begin(), roles.end());
  for (size_t i = 0; i < roles.size(); ++i) {
    RBE_ENFORCE(ValidName(roles[i]), ErrorCode::kInvalidArgument,
                "invalid role name '" + roles[i] + "'");
    RBE_ENFORCE(i == 0 || roles[i] != roles[i - 1], ErrorCode::kDuplicateRole,
                "duplicate role " + roles[i]);
  }
  h.roles_ = std::move(roles);

  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  for (const auto& [parent, child] : edges) {
    RBE_ENFORCE(h.Contains(parent), ErrorCode::kUnknownRole,
                "edge references unknown role " + parent);
    RBE_ENFORCE(h.Contains(child), ErrorCode::kUnknownRole,
                "edge references unknown role " + child);
    RBE_ENFORCE(parent != child, ErrorCode::kCycle, "self-loop on " + parent);
  }
  h.edges_ = std::move(edges);

  std::map<std::string, int, std::less<>> indegree;
  for (const auto& r : h.roles_) {
    h.children_[r];
    indegree[r] = 0;
  }
  for (const auto& [parent, child] : h.edges_) {
    h.children_[parent].push_back(child);
    ++indegree[child];
  }

  // Kahn's algorithm; leftover nodes sit on a cycle.
  std::vector<std::string> order;
  std::vector<std::string> ready;
  for (const auto& [r, d] : indegree) {
    if (d == 0) ready.push_back(r);
  }
  while (!ready.empty()) {
    std::string r = ready.back();
    ready.pop_back();
    order.push_back(r);
    for (const auto& c : h.children_[r]) {
      if (--indegree[c] == 0) ready.push_back(c);
    }
  }
  RBE_ENFORCE(order.size() == h.roles_.size(), ErrorCode::kCycle,
              "role hierarchy contains a cycle");

  // Descendants in reverse topological order.
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    RoleSet& d = h.descendants_[*it];
    for (const auto& c : h.children_[*it]) {
      d.insert(c);
      const RoleSet& dc = h.descendants_[c];
      d.insert(dc.begin(), dc.end());
    }
  }
  for (const auto& r : h.roles_) h.ancestors_[r].insert(r);
  for (const auto& [r, d] : h.descendants_) {
    for (const auto& x : d) h.ancestors_[x].insert(r);
  }

  for (const auto& root : h.Roots()) {
    if (h.children_[root].size() < 3 && h.roles_.size() > 1) {
      h.warnings_.push_back("root role " + root + " has " +
                            std::to_string(h.children_[root].size()) +
                            " children; at least three are recommended so "
                            "role parameters stay private to their managers");
    }
  }
  return h;
}

RoleHierarchy RoleHierarchy::Parse(std::string org, std::string_view text) {
  std::vector<std::string> roles;
  std::vector<Edge> edges;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::string kind;
    if (!(fields >> kind)) continue;
    std::string a, b, extra;
    if (kind == "role") {
      RBE_ENFORCE(static_cast<bool>(fields >> a) && !(fields >> extra),
                  ErrorCode::kDecode,
                  "line " + std::to_string(lineno) + ": expected `role <name>`");
      roles.push_back(a);
    } else if (kind == "edge") {
      RBE_ENFORCE(static_cast<bool>(fields >> a >> b) && !(fields >> extra),
                  ErrorCode::kDecode,
                  "line " + std::to_string(lineno) +
                      ": expected `edge <parent> <child>`");
      edges.emplace_back(a, b);
    } else {
      throw Error(ErrorCode::kDecode, "line " + std::to_string(lineno) +
                                          ": unknown record '" + kind + "'");
    }
  }
  return Build(std::move(org), std::move(roles), std::move(edges));
}

std::string RoleHierarchy::ToText() const {
  std::ostringstream os;
  for (const auto& r : roles_) os << "role " << r << "\n";
  for (const auto& [p, c] : edges_) os << "edge " << p << " " << c << "\n";
  return os.str();
}

bool RoleHierarchy::Contains(std::string_view role) const {
  return std::binary_search(roles_.begin(), roles_.end(), role);
}

const RoleSet& RoleHierarchy::Lookup(
    const std::map<std::string, RoleSet, std::less<>>& m,
    std::string_view role) const {
  auto it = m.find(role);
  RBE_ENFORCE(it != m.end(), ErrorCode::kUnknownRole,
              "unknown role " + std::string(role) + " in " + org_);
  return it->second;
}

const RoleSet& RoleHierarchy::Ancestors(std::string_view role) const {
  return Lookup(ancestors_, role);
}

const RoleSet& RoleHierarchy::Descendants(std::string_view role) const {
  return Lookup(descendants_, role);
}

RoleSet RoleHierarchy::AncestorComplement(std::string_view role) const {
  const RoleSet& a = Ancestors(role);
  RoleSet out;
  for (const auto& r : roles_) {
    if (!a.contains(r)) out.insert(r);
  }
  return out;
}

RoleSet RoleHierarchy::DescendantComplement(std::string_view role) const {
  const RoleSet& d = Descendants(role);
  RoleSet out;
  for (const auto& r : roles_) {
    if (!d.contains(r)) out.insert(r);
  }
  return out;
}

bool RoleHierarchy::IsAncestor(std::string_view x, std::string_view of) const {
  const RoleSet& a = Ancestors(of);
  RBE_ENFORCE(Contains(x), ErrorCode::kUnknownRole,
              "unknown role " + std::string(x) + " in " + org_);
  return a.find(std::string(x)) != a.end();
}

RoleSet RoleHierarchy::Gamma(std::string_view x, std::string_view i) const {
  const RoleSet& ax = Ancestors(x);
  const RoleSet& ai = Ancestors(i);
  RoleSet out;
  std::set_difference(ai.begin(), ai.end(), ax.begin(), ax.end(),
                      std::inserter(out, out.end()));
  return out;
}

std::vector<std::string> RoleHierarchy::Roots() const {
  std::vector<std::string> out;
  for (const auto& r : roles_) {
    if (ancestors_.at(r).size() == 1) out.push_back(r);
  }
  return out;
}

std::vector<std::string> RoleHierarchy::Children(std::string_view role) const {
  auto it = children_.find(role);
  RBE_ENFORCE(it != children_.end(), ErrorCode::kUnknownRole,
              "unknown role " + std::string(role) + " in " + org_);
  return it->second;
}

std::string SampleHierarchyText() {
  return "role r1\nrole r2\nrole r3\nrole r4\nrole r5\nrole r6\nrole r7\n"
         "role r8\n"
         "edge r1 r2\nedge r1 r3\nedge r1 r4\n"
         "edge r2 r5\nedge r2 r6\n"
         "edge r4 r6\nedge r4 r7\n"
         "edge r5 r8\nedge r6 r8\nedge r7 r8\n";
}

RoleHierarchy SampleHierarchy(std::string org) {
  return RoleHierarchy::Parse(std::move(org), SampleHierarchyText());
}

}  // namespace rbe
