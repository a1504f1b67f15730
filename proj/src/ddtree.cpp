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

#include "ddmine/ddtree.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace ddmine {

namespace {

const Term* find_attr(std::span<const Term> q, AttrId attr) {
  auto it = std::lower_bound(q.begin(), q.end(), attr,
                             [](const Term& t, AttrId a) { return t.attr < a; });
  if (it == q.end() || it->attr != attr) return nullptr;
  return &*it;
}

}  // namespace

bool is_prefix(std::span<const Term> p, std::span<const Term> q) {
  if (p.size() >= q.size()) return false;
  for (const auto& t : p) {
    const Term* m = find_attr(q, t.attr);
    if (m == nullptr || !t.interval.contains(m->interval)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// DDTree

DDTree::DDTree(Term root, std::vector<Distance> granularity)
    : granularity_(std::move(granularity)) {
  root_.term = root;
}

bool DDTree::implies_from(const Node& node, std::span<const Term> q,
                          std::size_t depth) const {
  for (const auto& c : node.children) {
    if (depth + 1 > q.size()) return false;
    const Term* m = find_attr(q, c->term.attr);
    if (m == nullptr || !c->term.interval.contains(m->interval)) continue;
    if (c->terminal) return true;
    if (implies_from(*c, q, depth + 1)) return true;
  }
  return false;
}

bool DDTree::implies(std::span<const Term> q) const {
  return implies_from(root_, q, 0);
}

bool DDTree::insert(std::span<const Term> q) {
  if (q.empty()) throw std::invalid_argument("empty lhs path");
  if (implies(q)) return false;

  Node* cur = &root_;
  Node* divergence = nullptr;
  for (const auto& t : q) {
    Node* next = nullptr;
    for (auto& c : cur->children) {
      if (c->term == t) {
        next = c.get();
        break;
      }
    }
    if (next == nullptr) {
      auto node = std::make_unique<Node>();
      node->term = t;
      node->parent = cur;
      next = node.get();
      cur->children.push_back(std::move(node));
      sort_children(cur);
      if (divergence == nullptr) divergence = next;
    }
    cur = next;
  }
  cur->terminal = true;
  combine(divergence != nullptr ? divergence : cur);
  return true;
}

void DDTree::sort_children(Node* n) {
  std::sort(n->children.begin(), n->children.end(),
            [](const auto& a, const auto& b) { return a->term < b->term; });
}

std::string DDTree::serialize_children(const Node& n) {
  std::ostringstream os;
  for (const auto& c : n.children) {
    os << c->term.attr << ':' << c->term.interval.lo << ':'
       << c->term.interval.hi << (c->terminal ? "*" : "") << '('
       << serialize_children(*c) << ')';
  }
  return os.str();
}

// Walks upward from `start`. At each level v is merged with adjacent
// same-attribute siblings whose subtrees match; the walk stops at the first
// level where nothing merges.
void DDTree::combine(Node* start) {
  for (Node* v = start; v != nullptr && v != &root_; v = v->parent) {
    bool merged = false;
    while (merge_with_sibling(v)) merged = true;
    if (!merged) break;
  }
}

bool DDTree::merge_with_sibling(Node* v) {
  Node* parent = v->parent;
  const Distance g = granularity_.at(v->term.attr);
  const std::string shape = serialize_children(*v);
  for (auto it = parent->children.begin(); it != parent->children.end(); ++it) {
    Node* s = it->get();
    if (s == v || s->term.attr != v->term.attr) continue;
    if (s->terminal != v->terminal) continue;
    const Interval& a = s->term.interval;
    const Interval& b = v->term.interval;
    std::optional<Interval> joined;
    if (a.lo <= b.lo && interval_adjacent(a, b, g)) {
      joined = interval_combine(a, b, g);
    } else if (b.lo <= a.lo && interval_adjacent(b, a, g)) {
      joined = interval_combine(b, a, g);
    }
    if (!joined || serialize_children(*s) != shape) continue;

    v->term.interval = *joined;
    parent->children.erase(it);
    // The widened term may now equal another sibling's term.
    for (auto dup = parent->children.begin(); dup != parent->children.end();
         ++dup) {
      if (dup->get() != v && (*dup)->term == v->term) {
        std::unique_ptr<Node> other = std::move(*dup);
        parent->children.erase(dup);
        absorb(v, std::move(other));
        break;
      }
    }
    sort_children(parent);
    return true;
  }
  return false;
}

void DDTree::absorb(Node* into, std::unique_ptr<Node> other) {
  into->terminal = into->terminal || other->terminal;
  for (auto& c : other->children) {
    Node* same = nullptr;
    for (auto& mine : into->children) {
      if (mine->term == c->term) {
        same = mine.get();
        break;
      }
    }
    if (same != nullptr) {
      absorb(same, std::move(c));
    } else {
      c->parent = into;
      into->children.push_back(std::move(c));
    }
  }
  sort_children(into);
}

std::vector<DdPath> DDTree::paths() const {
  std::vector<DdPath> out;
  DdPath cur;
  auto walk = [&](auto&& self, const Node& n) -> void {
    for (const auto& c : n.children) {
      cur.push_back(c->term);
      if (c->terminal) out.push_back(cur);
      self(self, *c);
      cur.pop_back();
    }
  };
  walk(walk, root_);
  std::sort(out.begin(), out.end());
  return out;
}

std::string DDTree::dump(std::span<const std::string> names) const {
  std::ostringstream os;
  os << format_term(root_.term, names) << '\n';
  auto walk = [&](auto&& self, const Node& n, int depth) -> void {
    for (const auto& c : n.children) {
      os << std::string(static_cast<std::size_t>(depth) * 2, ' ')
         << format_term(c->term, names) << (c->terminal ? " *" : "") << '\n';
      self(self, *c, depth + 1);
    }
  };
  walk(walk, root_, 1);
  return os.str();
}

bool DDTree::is_non_redundant() const {
  auto check = [](auto&& self, const Node& n) -> bool {
    for (std::size_t i = 1; i < n.children.size(); ++i) {
      if (n.children[i]->term == n.children[i - 1]->term) return false;
    }
    for (const auto& c : n.children) {
      if (c->parent != &n || !self(self, *c)) return false;
    }
    return true;
  };
  return check(check, root_);
}

// ---------------------------------------------------------------------------
// DDTreeIndex

DDTreeIndex::DDTreeIndex(std::vector<Distance> granularity)
    : granularity_(std::move(granularity)) {}

bool DDTreeIndex::chk_imply(const DifferentialDependency& dd) {
  const Term root{dd.rhs_attr, dd.rhs};
  auto it = trees_.find(root);
  if (it == trees_.end()) {
    it = trees_.emplace(root, DDTree(root, granularity_)).first;
  }
  return it->second.insert(dd.lhs.terms());
}

bool DDTreeIndex::implied(const DifferentialDependency& dd) const {
  const DDTree* tree = find(Term{dd.rhs_attr, dd.rhs});
  return tree != nullptr && tree->implies(dd.lhs.terms());
}

const DDTree* DDTreeIndex::find(const Term& rhs) const {
  auto it = trees_.find(rhs);
  return it == trees_.end() ? nullptr : &it->second;
}

std::vector<DifferentialDependency> DDTreeIndex::dependencies() const {
  std::vector<DifferentialDependency> out;
  for (const auto& [root, tree] : trees_) {
    for (auto& path : tree.paths()) {
      DifferentialDependency dd;
      dd.lhs = DifferentialFunction(std::move(path));
      dd.rhs_attr = root.attr;
      dd.rhs = root.interval;
      out.push_back(std::move(dd));
    }
  }
  canonicalize(out);
  return out;
}

std::string DDTreeIndex::dump(std::span<const std::string> names) const {
  std::string out;
  for (const auto& [root, tree] : trees_) out += tree.dump(names);
  return out;
}

}  // namespace ddmine
