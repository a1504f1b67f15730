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

#include <gtest/gtest.h>

#include <sstream>

#include "ddmine/error.hpp"
#include "ddmine/report.hpp"
#include "test_util.hpp"

namespace ddmine {
namespace {

DifferentialDependency dd(Interval lhs, Interval rhs) {
  DifferentialDependency d;
  d.lhs = DifferentialFunction(0, lhs);
  d.rhs_attr = 1;
  d.rhs = rhs;
  return d;
}

DistanceSchema two_attr_schema() {
  return DistanceSchema({AttributeSchema{"capLoss", 1, 9, 9, build_base_intervals(9, 1, 9)},
                         AttributeSchema{"capGain", 1, 9, 9, build_base_intervals(9, 1, 9)}});
}

TEST(Outliers, RatioAndReduction) {
  const auto s = two_attr_schema();
  const std::vector<DifferentialDependency> full{dd({0, 0}, {0, 2}), dd({1, 1}, {0, 3}),
                                                 dd({2, 2}, {0, 0})};
  const std::vector<DifferentialDependency> approx{dd({0, 0}, {0, 0}), dd({1, 1}, {0, 3})};
  const auto r = pair_outliers(full, approx, s);
  ASSERT_EQ(r.rows.size(), 2u);
  EXPECT_EQ(r.unmatched, 1u);
  EXPECT_NEAR(r.rows[0].ratio, 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(r.rows[0].rr, 2.0 / 3.0, 1e-12);
  EXPECT_DOUBLE_EQ(r.rows[1].ratio, 1.0);
  EXPECT_DOUBLE_EQ(r.rows[1].rr, 0.0);
  for (const auto& row : r.rows) EXPECT_NEAR(row.ratio + row.rr, 1.0, 1e-12);

  std::ostringstream out;
  write_outlier_table(out, r, s.names());
  EXPECT_EQ(out.str(),
            "# ratio% | rr% | full | approx\n"
            "33.33 | 66.67 | capLoss[0,0] -> capGain[0,2] | capLoss[0,0] -> capGain[0,0]\n"
            "100.00 | 0.00 | capLoss[1,1] -> capGain[0,3] | capLoss[1,1] -> capGain[0,3]\n"
            "# unmatched 1\n");
}

TEST(Outliers, RunOnPlantedTail) {
  // 20 two-tuple groups: A is equal inside a group, B differs in one group.
  std::vector<long> a, b;
  for (int g = 0; g < 20; ++g) {
    a.insert(a.end(), {g * 10, g * 10});
    b.insert(b.end(), {0, g == 3 ? 1 : 0});
  }
  const Relation r = testing::numeric_relation({a, b}, {Distance{0}, std::nullopt});
  const DistanceSchema s = DistanceSchema::from_relation(r);
  DiscoveryConfig cfg;
  cfg.epsilon = 0.95;
  const RunReport rep = run_outliers(r, s, cfg);
  ASSERT_FALSE(rep.outliers.rows.empty());
  const auto& top = rep.outliers.rows.front();
  EXPECT_EQ(format_dd(top.full, s.names()), "A[0,0] -> B[0,1]");
  EXPECT_EQ(format_dd(top.approx, s.names()), "A[0,0] -> B[0,0]");
  EXPECT_DOUBLE_EQ(top.ratio, 0.5);
  EXPECT_GE(rep.seconds, 0.0);

  cfg.epsilon = 1.0;
  EXPECT_THROW(run_outliers(r, s, cfg), UsageError);
}

TEST(Stats, Lines) {
  DiscoveryStats st;
  st.levels = 2;
  st.accepted = 5;
  std::ostringstream out;
  write_stats(out, st);
  EXPECT_NE(out.str().find("levels=2\n"), std::string::npos);
  EXPECT_NE(out.str().find("accepted=5\n"), std::string::npos);
}

}  // namespace
}  // namespace ddmine
