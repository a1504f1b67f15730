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

#include "ddmine/report.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <map>
#include <ostream>

#include "ddmine/error.hpp"

namespace ddmine {

OutlierReport pair_outliers(std::span<const DifferentialDependency> full,
                            std::span<const DifferentialDependency> approx,
                            const DistanceSchema& schema) {
  std::map<std::pair<DifferentialFunction, AttrId>, const DifferentialDependency*> by_key;
  for (const auto& dd : approx) by_key.emplace(std::make_pair(dd.lhs, dd.rhs_attr), &dd);

  OutlierReport report;
  for (const auto& dd : full) {
    auto it = by_key.find({dd.lhs, dd.rhs_attr});
    if (it == by_key.end()) {
      ++report.unmatched;
      continue;
    }
    const Distance g = schema.attr(dd.rhs_attr).granularity;
    const double w1 = static_cast<double>(interval_width(dd.rhs, g));
    const double w2 = static_cast<double>(interval_width(it->second->rhs, g));
    OutlierRow row{dd, *it->second, w2 / w1, (w1 - w2) / w1};
    report.rows.push_back(std::move(row));
  }
  std::stable_sort(report.rows.begin(), report.rows.end(),
                   [](const OutlierRow& a, const OutlierRow& b) {
                     if (a.ratio != b.ratio) return a.ratio < b.ratio;
                     return compare_dd(a.full, b.full) < 0;
                   });
  return report;
}

RunReport run_outliers(const Relation& relation, const DistanceSchema& schema,
                       const DiscoveryConfig& cfg) {
  cfg.validate();
  if (cfg.epsilon >= 1.0) throw UsageError("outlier ranking needs epsilon below 1");
  const auto start = std::chrono::steady_clock::now();
  RunReport r;
  DiscoveryConfig exact = cfg;
  exact.epsilon = 1.0;
  r.full = min_dd(relation, schema, exact);
  r.approx = min_dd(relation, schema, cfg);
  auto full = r.full.base_dds;
  auto approx = r.approx.base_dds;
  canonicalize(full);
  canonicalize(approx);
  r.outliers = pair_outliers(full, approx, schema);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

void write_outlier_table(std::ostream& out, const OutlierReport& r,
                         std::span<const std::string> names) {
  const auto flags = out.flags();
  const auto prec = out.precision();
  out << std::fixed << std::setprecision(2);
  out << "# ratio% | rr% | full | approx\n";
  for (const auto& row : r.rows) {
    out << row.ratio * 100.0 << " | " << row.rr * 100.0 << " | "
        << format_dd(row.full, names) << " | " << format_dd(row.approx, names) << '\n';
  }
  out << "# unmatched " << r.unmatched << '\n';
  out.flags(flags);
  out.precision(prec);
}

void write_stats(std::ostream& out, const DiscoveryStats& s) {
  out << "levels=" << s.levels << '\n'
      << "nodes_generated=" << s.nodes_generated << '\n'
      << "nodes_reducible=" << s.nodes_reducible << '\n'
      << "support_pruned=" << s.support_pruned << '\n'
      << "apriori_pruned=" << s.apriori_pruned << '\n'
      << "candidates=" << s.candidates << '\n'
      << "trivial=" << s.trivial << '\n'
      << "implied=" << s.implied << '\n'
      << "accepted=" << s.accepted << '\n';
}

}  // namespace ddmine
