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

#ifndef DDMINE_TESTS_TEST_UTIL_HPP
#define DDMINE_TESTS_TEST_UTIL_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ddmine/datamodel.hpp"
#include "ddmine/distance.hpp"

namespace ddmine::testing {

inline std::string attr_name(std::size_t i) {
  return std::string(1, static_cast<char>('A' + i));
}

/// Numeric relation from integer columns. `ur[i]` unset means ur = maxd.
inline Relation numeric_relation(const std::vector<std::vector<long>>& cols,
                                 const std::vector<std::optional<Distance>>& ur = {},
                                 const std::vector<std::string>& names = {}) {
  std::vector<Column> columns;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    AttributeSpec spec;
    spec.name = c < names.size() ? names[c] : attr_name(c);
    spec.kind = AttributeKind::numeric;
    if (c < ur.size()) spec.interesting_limit = ur[c];
    std::vector<std::string> cells;
    for (long v : cols[c]) cells.push_back(std::to_string(v));
    columns.push_back(Column::parse(spec, cells));
  }
  return Relation(std::move(columns));
}

/// Table 1 of the motivating example: Age, Edu, Sex, Sal over four tuples.
inline Relation table1() {
  return numeric_relation({{20, 20, 20, 25},   // Age
                           {3, 3, 4, 5},       // Edu
                           {0, 1, 0, 1},       // Sex
                           {3, 3, 4, 5}},      // Sal
                          {}, {"Age", "Edu", "Sex", "Sal"});
}

/// Identity equality of two canonically sorted DD lists.
inline bool same_dd_list(const std::vector<DifferentialDependency>& a,
                         const std::vector<DifferentialDependency>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!same_dd(a[i], b[i])) return false;
  }
  return true;
}

struct RandomInstance {
  Relation relation;
  DistanceSchema schema;
};

/// Small random numeric table. Values are drawn from [0, spread] so every
/// attribute has at most spread+1 distinct distances; ur is drawn per column
/// to cap the number of base intervals at max_bins.
inline RandomInstance random_instance(std::mt19937_64& rng, std::size_t tuples,
                                      std::size_t attrs, std::size_t max_bins) {
  std::uniform_int_distribution<long> value(0, 3);
  std::vector<std::vector<long>> cols(attrs, std::vector<long>(tuples));
  for (auto& c : cols) {
    for (auto& v : c) v = value(rng);
  }
  std::vector<std::optional<Distance>> ur(attrs);
  std::uniform_int_distribution<long> pick_ur(0, static_cast<long>(max_bins) - 2);
  for (auto& u : ur) u = pick_ur(rng);
  Relation rel = numeric_relation(cols, ur);
  DistanceSchema schema = DistanceSchema::from_relation(rel);
  return {std::move(rel), std::move(schema)};
}

}  // namespace ddmine::testing

#endif  // DDMINE_TESTS_TEST_UTIL_HPP
