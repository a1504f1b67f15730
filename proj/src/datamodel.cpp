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

#include "ddmine/datamodel.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ddmine {

Interval::Interval(Distance lo_, Distance hi_) : lo(lo_), hi(hi_) {
  if (lo < 0 || lo > hi) {
    throw std::invalid_argument("invalid interval [" + std::to_string(lo) +
                                "," + std::to_string(hi) + "]");
  }
}

bool interval_adjacent(const Interval& a, const Interval& b, Distance g) {
  return a.hi == b.lo || a.hi + g == b.lo;
}

Interval interval_combine(const Interval& a, const Interval& b, Distance g) {
  if (!interval_adjacent(a, b, g)) {
    throw std::invalid_argument("intervals are not adjacent");
  }
  return Interval(a.lo, b.hi);
}

Interval interval_hull(const Interval& a, const Interval& b) {
  return Interval(std::min(a.lo, b.lo), std::max(a.hi, b.hi));
}

Distance interval_width(const Interval& w, Distance g) {
  return w.hi - w.lo + g;
}

DifferentialFunction::DifferentialFunction(std::vector<Term> terms)
    : terms_(std::move(terms)) {
  if (terms_.empty()) {
    throw std::invalid_argument("differential function has no terms");
  }
  std::sort(terms_.begin(), terms_.end());
  for (std::size_t i = 1; i < terms_.size(); ++i) {
    if (terms_[i].attr == terms_[i - 1].attr) {
      throw std::invalid_argument("attribute repeated in differential function");
    }
  }
}

DifferentialFunction::DifferentialFunction(AttrId attr, Interval w)
    : terms_{Term{attr, w}} {}

const Term* DifferentialFunction::find(AttrId attr) const {
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), attr,
      [](const Term& t, AttrId a) { return t.attr < a; });
  if (it == terms_.end() || it->attr != attr) return nullptr;
  return &*it;
}

std::vector<AttrId> DifferentialFunction::attrs() const {
  std::vector<AttrId> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back(t.attr);
  return out;
}

bool DifferentialFunction::contains_terms(const DifferentialFunction& sub) const {
  return std::includes(terms_.begin(), terms_.end(), sub.terms_.begin(),
                       sub.terms_.end());
}

bool df_joinable(const DifferentialFunction& a, const DifferentialFunction& b) {
  for (const auto& t : a.terms()) {
    const Term* other = b.find(t.attr);
    if (other != nullptr && other->interval != t.interval) return false;
  }
  return true;
}

DifferentialFunction df_join(const DifferentialFunction& a,
                             const DifferentialFunction& b) {
  if (!df_joinable(a, b)) {
    throw std::invalid_argument("differential functions are not joinable");
  }
  std::vector<Term> terms;
  terms.reserve(a.size() + b.size());
  std::set_union(a.terms().begin(), a.terms().end(), b.terms().begin(),
                 b.terms().end(), std::back_inserter(terms));
  return DifferentialFunction(std::move(terms));
}

bool df_subsumes(const DifferentialFunction& a, const DifferentialFunction& b) {
  for (const auto& t : a.terms()) {
    const Term* other = b.find(t.attr);
    if (other == nullptr || !t.interval.contains(other->interval)) return false;
  }
  return true;
}

void DifferentialDependency::validate() const {
  if (lhs.has_attr(rhs_attr)) {
    throw std::invalid_argument("rhs attribute occurs on the lhs");
  }
  if (!(support >= 0.0 && support <= 1.0)) {
    throw std::invalid_argument("support outside [0,1]");
  }
  if (interestingness < 0.0) {
    throw std::invalid_argument("negative interestingness");
  }
}

std::strong_ordering compare_dd(const DifferentialDependency& a,
                                const DifferentialDependency& b) {
  if (auto c = a.rhs_attr <=> b.rhs_attr; c != 0) return c;
  if (auto c = a.rhs <=> b.rhs; c != 0) return c;
  return a.lhs <=> b.lhs;
}

bool same_dd(const DifferentialDependency& a, const DifferentialDependency& b) {
  return compare_dd(a, b) == 0;
}

void canonicalize(std::vector<DifferentialDependency>& dds) {
  std::stable_sort(dds.begin(), dds.end(), DdLess{});
  dds.erase(std::unique(dds.begin(), dds.end(), same_dd), dds.end());
}

namespace {

void append_term(std::ostringstream& os, const Term& t,
                 std::span<const std::string> names) {
  if (t.attr < names.size()) {
    os << names[t.attr];
  } else {
    os << '#' << t.attr;
  }
  os << '[' << t.interval.lo << ',' << t.interval.hi << ']';
}

}  // namespace

std::string format_term(const Term& t, std::span<const std::string> names) {
  std::ostringstream os;
  append_term(os, t, names);
  return os.str();
}

std::string format_df(const DifferentialFunction& df,
                      std::span<const std::string> names) {
  std::ostringstream os;
  bool first = true;
  for (const auto& t : df.terms()) {
    if (!first) os << " & ";
    first = false;
    append_term(os, t, names);
  }
  return os.str();
}

std::string format_dd(const DifferentialDependency& dd,
                      std::span<const std::string> names) {
  std::ostringstream os;
  os << format_df(dd.lhs, names) << " -> ";
  append_term(os, Term{dd.rhs_attr, dd.rhs}, names);
  return os.str();
}

}  // namespace ddmine
