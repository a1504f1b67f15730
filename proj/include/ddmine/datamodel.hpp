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

#ifndef DDMINE_DATAMODEL_HPP
#define DDMINE_DATAMODEL_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ddmine {

/// Distances live on an integer grid; every value is a multiple of the
/// owning attribute's granularity.
using Distance = std::int64_t;
using AttrId = std::uint32_t;

/// Closed distance range [lo, hi].
struct Interval {
  Distance lo = 0;
  Distance hi = 0;

  constexpr Interval() = default;
  Interval(Distance lo, Distance hi);

  bool contains(Distance d) const { return lo <= d && d <= hi; }
  bool contains(const Interval& other) const {
    return lo <= other.lo && other.hi <= hi;
  }

  friend auto operator<=>(const Interval&, const Interval&) = default;
};

/// a.hi == b.lo (shared endpoint) or a.hi + g == b.lo (next grid step).
bool interval_adjacent(const Interval& a, const Interval& b, Distance g = 1);

/// [a.lo, b.hi]; throws std::invalid_argument unless a and b are adjacent.
Interval interval_combine(const Interval& a, const Interval& b, Distance g = 1);

/// Smallest interval enclosing both.
Interval interval_hull(const Interval& a, const Interval& b);

/// Width under the grid convention: hi - lo + g. A singleton has width g.
Distance interval_width(const Interval& w, Distance g);

/// One attribute's term ⟨A, w⟩ of a differential function.
struct Term {
  AttrId attr = 0;
  Interval interval;

  friend auto operator<=>(const Term&, const Term&) = default;
};

/// Conjunction of single-attribute interval predicates, kept sorted by
/// attribute id with no attribute repeated.
class DifferentialFunction {
 public:
  DifferentialFunction() = default;
  /// Sorts the terms; throws std::invalid_argument when empty or when an
  /// attribute occurs twice.
  explicit DifferentialFunction(std::vector<Term> terms);
  DifferentialFunction(AttrId attr, Interval w);

  std::span<const Term> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  const Term* find(AttrId attr) const;
  bool has_attr(AttrId attr) const { return find(attr) != nullptr; }
  std::vector<AttrId> attrs() const;

  /// True when every term of `sub` occurs here with the identical interval.
  bool contains_terms(const DifferentialFunction& sub) const;

  friend auto operator<=>(const DifferentialFunction&,
                          const DifferentialFunction&) = default;

 private:
  std::vector<Term> terms_;
};

bool df_joinable(const DifferentialFunction& a, const DifferentialFunction& b);

/// Union of the terms; throws std::invalid_argument when a shared attribute
/// carries different intervals.
DifferentialFunction df_join(const DifferentialFunction& a,
                             const DifferentialFunction& b);

/// a ⪰ b: every term of a has a same-attribute term in b whose interval it
/// contains. The subsuming side has fewer terms and wider intervals.
bool df_subsumes(const DifferentialFunction& a, const DifferentialFunction& b);

/// lhs → ⟨rhs_attr, rhs⟩ with its support and interestingness.
struct DifferentialDependency {
  DifferentialFunction lhs;
  AttrId rhs_attr = 0;
  Interval rhs;
  double support = 0.0;
  double interestingness = 0.0;

  /// Rejects an rhs attribute that also occurs on the lhs and supports
  /// outside [0, 1].
  void validate() const;
};

/// Identity used for set comparisons: lhs, rhs attribute and rhs interval.
/// Support and interestingness are ignored.
bool same_dd(const DifferentialDependency& a, const DifferentialDependency& b);
std::strong_ordering compare_dd(const DifferentialDependency& a,
                                const DifferentialDependency& b);

struct DdLess {
  bool operator()(const DifferentialDependency& a,
                  const DifferentialDependency& b) const {
    return compare_dd(a, b) < 0;
  }
};

/// Canonical sort plus removal of identity duplicates.
void canonicalize(std::vector<DifferentialDependency>& dds);

/// `A[lo,hi]`; unknown ids print as `#id`.
std::string format_term(const Term& t, std::span<const std::string> names);
/// `A[lo,hi] & B[lo,hi]`
std::string format_df(const DifferentialFunction& df,
                      std::span<const std::string> names);
/// `A[lo,hi] & B[lo,hi] -> C[lo,hi]`
std::string format_dd(const DifferentialDependency& dd,
                      std::span<const std::string> names);

}  // namespace ddmine

#endif  // DDMINE_DATAMODEL_HPP
