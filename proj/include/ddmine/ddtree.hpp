// Copyright 2026 The ddmine Authors
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

#ifndef DDMINE_DDTREE_HPP
#define DDMINE_DDTREE_HPP

#include <map>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ddmine/datamodel.hpp"

namespace ddmine {

/// An lhs path below a tree root: terms in ascending attribute order.
using DdPath = std::vector<Term>;

/// p is a prefix of q: |p| < |q| and every term of p has a same-attribute
/// term in q whose interval it contains. Matching is by attribute, not by
/// position, so a q with an extra attribute anywhere still qualifies.
bool is_prefix(std::span<const Term> p, std::span<const Term> q);

/// Prefix tree of lhs paths sharing one rhs ⟨B, w⟩.
///
/// The tree stands for the set of base paths obtained by expanding every
/// stored path into the cartesian product of its intervals. Insertion and
/// Combine both preserve that set.
class DDTree {
 public:
  struct Node {
    Term term;
    bool terminal = false;
    Node* parent = nullptr;
    std::vector<std::unique_ptr<Node>> children;
  };

  /// `granularity[a]` is the grid step of attribute a.
  DDTree(Term root, std::vector<Distance> granularity);

  const Term& root_term() const { return root_.term; }
  const Node& root() const { return root_; }

  /// Some stored path p satisfies is_prefix(p, q), or a stored path of the
  /// same length already covers q term by term.
  bool implies(std::span<const Term> q) const;

  /// Adds q and runs Combine from the first node the insertion created.
  /// Returns false (tree unchanged) when q is already implied.
  bool insert(std::span<const Term> q);

  /// Stored paths in canonical order.
  std::vector<DdPath> paths() const;

  /// Indented rendering, one node per line, `*` marking path ends.
  std::string dump(std::span<const std::string> names) const;

  /// No parent has two children carrying the same term.
  bool is_non_redundant() const;

 private:
  bool implies_from(const Node& node, std::span<const Term> q,
                    std::size_t depth) const;
  void combine(Node* start);
  bool merge_with_sibling(Node* v);
  void absorb(Node* into, std::unique_ptr<Node> other);
  static void sort_children(Node* n);
  static std::string serialize_children(const Node& n);

  Node root_;
  std::vector<Distance> granularity_;
};

/// One DD-tree per distinct rhs DF.
class DDTreeIndex {
 public:
  explicit DDTreeIndex(std::vector<Distance> granularity);

  /// ChkImply: true when dd is new (and now stored), false when implied.
  bool chk_imply(const DifferentialDependency& dd);
  bool implied(const DifferentialDependency& dd) const;

  /// Every stored path as a DD (support and interestingness left at 0),
  /// canonically sorted.
  std::vector<DifferentialDependency> dependencies() const;

  const DDTree* find(const Term& rhs) const;
  std::size_t tree_count() const { return trees_.size(); }
  std::string dump(std::span<const std::string> names) const;

 private:
  std::vector<Distance> granularity_;
  std::map<Term, DDTree> trees_;
};

}  // namespace ddmine

#endif  // DDMINE_DDTREE_HPP
