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

#include "ddmine/oracle.hpp"

#include <gtest/gtest.h>

#include <iostream>
#include <random>

#include "ddmine/lattice.hpp"
#include "ddmine/partition.hpp"
#include "test_util.hpp"

namespace ddmine {
namespace {

using testing::numeric_relation;
using testing::random_instance;
using testing::table1;

DifferentialDependency make_dd(std::vector<Term> lhs, AttrId b, Interval w) {
  DifferentialDependency dd;
  dd.lhs = DifferentialFunction(std::move(lhs));
  dd.rhs_attr = b;
  dd.rhs = w;
  return dd;
}

TEST(VerifyDd, Table1Caption) {
  const Relation r = table1();
  EXPECT_TRUE(verify_dd(r, make_dd({{0, {0, 0}}}, 3, {0, 1}), 1.0));
  EXPECT_FALSE(verify_dd(r, make_dd({{0, {0, 0}}}, 3, {0, 0}), 1.0));
}

TEST(VerifyDd, FullRangeRhsAlwaysHolds) {
  const Relation r = table1();
  const auto schema = DistanceSchema::from_relation(r);
  for (AttrId b = 1; b < 4; ++b) {
    const auto dd = make_dd({{0, {5, 5}}}, b, {0, schema.attr(b).maxd});
    EXPECT_TRUE(verify_dd(r, dd, 1.0));
  }
}

TEST(VerifyDd, EpsilonKeepsLowestDistances) {
  // A equal everywhere; B distances over the 10 pairs of 5 tuples.
  const Relation r = numeric_relation({{0, 0, 0, 0, 0}, {0, 0, 0, 0, 9}});
  const auto dd = make_dd({{0, {0, 0}}}, 1, {0, 0});
  const auto tr = verify_dd_trace(r, dd, 0.6);
  EXPECT_EQ(tr.lhs_pairs, 10u);
  EXPECT_EQ(tr.satisfying, 6u);
  EXPECT_EQ(tr.kept, 6u);
  EXPECT_TRUE(tr.holds);
  EXPECT_FALSE(verify_dd(r, dd, 0.61));
}

TEST(DiscoverBrute, Table1ContainsMotivatingDd) {
  const Relation r = table1();
  const auto schema = DistanceSchema::from_relation(r);
  const auto res = discover_brute(r, schema, DiscoveryConfig{});
  const auto want = make_dd({{0, {0, 0}}}, 3, {0, 1});
  const auto bad = make_dd({{0, {0, 0}}}, 3, {0, 0});
  bool found = false;
  for (const auto& dd : res.dd_set) {
    found = found || same_dd(dd, want);
    EXPECT_FALSE(same_dd(dd, bad));
  }
  EXPECT_TRUE(found);
  for (const auto& tr : res.traces) EXPECT_TRUE(tr.holds);
}

TEST(DiscoverBrute, SingleAttributeIsEmpty) {
  const Relation r = numeric_relation({{1, 2, 3}});
  const auto res = discover_brute(r, DistanceSchema::from_relation(r), DiscoveryConfig{});
  EXPECT_TRUE(res.dd_set.empty());
}

TEST(DiscoverBrute, SizeGuard) {
  const Relation r = numeric_relation({std::vector<long>(13, 0), std::vector<long>(13, 0)});
  EXPECT_THROW(discover_brute(r, DistanceSchema::from_relation(r), DiscoveryConfig{}),
               std::invalid_argument);
}

TEST(DiscoverBrute, CombinedFormExpandsBack) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 30; ++i) {
    auto inst = random_instance(rng, 7, 3, 3);
    const auto res = discover_brute(inst.relation, inst.schema, DiscoveryConfig{});
    EXPECT_TRUE(testing::same_dd_list(expand_to_base(res.combined, inst.schema), res.dd_set));
  }
}

// The central cross-check: the lattice search and the exhaustive scan agree
// on the base-interval DD set.
TEST(OracleEquivalence, RandomInstances) {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<int> tuples(2, 8);
  std::uniform_int_distribution<int> attrs(2, 4);
  const double deltas[] = {0.0, 0.2};
  const double epsilons[] = {1.0, 0.9};
  int checked = 0;
  std::size_t total_dds = 0;
  std::size_t compressed = 0;
  for (int i = 0; i < 240; ++i) {
    auto inst = random_instance(rng, static_cast<std::size_t>(tuples(rng)),
                                static_cast<std::size_t>(attrs(rng)), 3);
    DiscoveryConfig cfg;
    cfg.min_support = deltas[i % 2];
    cfg.epsilon = epsilons[(i / 2) % 2];
    const auto brute = discover_brute(inst.relation, inst.schema, cfg);
    const auto found = min_dd(inst.relation, inst.schema, cfg);
    const auto expanded = expand_to_base(found.dds, inst.schema);
    ASSERT_EQ(expanded.size(), brute.dd_set.size()) << "instance " << i;
    for (std::size_t k = 0; k < expanded.size(); ++k) {
      ASSERT_TRUE(same_dd(expanded[k], brute.dd_set[k])) << "instance " << i;
    }
    auto base = found.base_dds;
    canonicalize(base);
    ASSERT_EQ(base.size(), brute.dd_set.size());
    total_dds += expanded.size();
    if (found.dds.size() < expanded.size()) ++compressed;
    ++checked;
  }
  EXPECT_GE(checked, 200);
  // Guard against a vacuous pass.
  EXPECT_GT(total_dds, 500u);
  EXPECT_GT(compressed, 5u);
  std::cout << "instances=" << checked << " base DDs=" << total_dds
            << " compressed runs=" << compressed << "\n";
}

}  // namespace
}  // namespace ddmine
