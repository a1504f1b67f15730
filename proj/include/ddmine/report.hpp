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

#ifndef DDMINE_REPORT_HPP
#define DDMINE_REPORT_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ddmine/datamodel.hpp"
#include "ddmine/distance.hpp"
#include "ddmine/lattice.hpp"

namespace ddmine {

/// A fully satisfied DD next to its ε-counterpart (same lhs, same rhs
/// attribute). Widths use hi − lo + g.
struct OutlierRow {
  DifferentialDependency full;    // rhs interval w1
  DifferentialDependency approx;  // rhs interval w2
  double ratio = 1.0;             // width(w2) / width(w1)
  double rr = 0.0;                // (width(w1) − width(w2)) / width(w1)
};

struct OutlierReport {
  std::vector<OutlierRow> rows;  // ascending by ratio
  std::size_t unmatched = 0;     // full DDs without an ε-counterpart
};

/// Pairs base DDs of the two runs and ranks them. A low ratio means a few
/// pairs stretched the full-satisfaction interval, so they are outlier
/// candidates.
OutlierReport pair_outliers(std::span<const DifferentialDependency> full,
                            std::span<const DifferentialDependency> approx,
                            const DistanceSchema& schema);

struct RunReport {
  DiscoveryResult full;     // ε = 1
  DiscoveryResult approx;   // the requested ε
  OutlierReport outliers;
  double seconds = 0.0;
};

/// Runs discovery at ε = 1 and at cfg.epsilon, then pairs the results.
/// Throws UsageError unless cfg.epsilon < 1.
RunReport run_outliers(const Relation& relation, const DistanceSchema& schema,
                       const DiscoveryConfig& cfg);

/// `ratio% | rr% | w1-DD | w2-DD` rows with two decimals and an unmatched
/// footer.
void write_outlier_table(std::ostream& out, const OutlierReport& r,
                         std::span<const std::string> names);

/// One `key=value` counter per line.
void write_stats(std::ostream& out, const DiscoveryStats& s);

}  // namespace ddmine

#endif  // DDMINE_REPORT_HPP
