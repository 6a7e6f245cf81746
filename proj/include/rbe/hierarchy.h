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

#include <compare>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rbe {

struct RoleId {
  std::string org;
  std::string name;

  auto operator<=>(const RoleId&) const = default;
  std::string ToString() const { return org + "/" + name; }
};

using RoleSet = std::set<std::string>;
using Edge = std::pair<std::string, std::string>;  // parent -> child

/// Role hierarchy of one organization: a DAG in which an edge parent -> child
/// means the parent inherits the child's access rights. For a role r,
/// Ancestors(r) is self-inclusive and Descendants(r) is self-exclusive.
class RoleHierarchy {
 public:
  RoleHierarchy() = default;

  // Throws kCycle, kUnknownRole, kDuplicateRole, kInvalidArgument.
  static RoleHierarchy Build(std::string org, std::vector<std::string> roles,
                             std::vector<Edge> edges);

  // Line-oriented text: `role <name>` and `edge <parent> <child>`, blank
  // lines and `#` comments ignored, record order irrelevant.
  static RoleHierarchy Parse(std::string org, std::string_view text);
  std::string ToText() const;

  const std::string& org() const { return org_; }
  const std::vector<std::string>& roles() const { return roles_; }
  const std::vector<Edge>& edges() const { return edges_; }
  size_t size() const { return roles_.size(); }
  bool Contains(std::string_view role) const;

  const RoleSet& Ancestors(std::string_view role) const;
  const RoleSet& Descendants(std::string_view role) const;
  RoleSet AncestorComplement(std::string_view role) const;
  RoleSet DescendantComplement(std::string_view role) const;

  // x is in A_of.
  bool IsAncestor(std::string_view x, std::string_view of) const;

  // Roles whose ciphertext components retarget a ciphertext for role `i` to
  // the ancestor role `x`: A_i \ A_x. For x in A_i it satisfies
  // AncestorComplement(i) disjoint-union Gamma(x, i) == AncestorComplement(x).
  RoleSet Gamma(std::string_view x, std::string_view i) const;

  std::vector<std::string> Roots() const;
  std::vector<std::string> Children(std::string_view role) const;

  // Policy notes raised during Build, e.g. a root with fewer than three
  // children lets its children's managers learn each other's parameters.
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  const RoleSet& Lookup(const std::map<std::string, RoleSet, std::less<>>& m,
                        std::string_view role) const;

  std::string org_;
  std::vector<std::string> roles_;  // sorted
  std::vector<Edge> edges_;         // sorted, deduplicated
  std::map<std::string, RoleSet, std::less<>> ancestors_;
  std::map<std::string, RoleSet, std::less<>> descendants_;
  std::map<std::string, std::vector<std::string>, std::less<>> children_;
  std::vector<std::string> warnings_;
};

// The eight-role sample hierarchy r1..r8 used throughout the docs and canned
// scenarios: r1 -> {r2, r3, r4}, r2 -> {r5, r6}, r4 -> {r6, r7},
// {r5, r6, r7} -> r8.
RoleHierarchy SampleHierarchy(std::string org);
std::string SampleHierarchyText();

}  // namespace rbe
