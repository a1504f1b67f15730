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

#include <memory>

#include "ddmine/distance.hpp"
#include "ddmine/error.hpp"
#include "test_util.hpp"

namespace ddmine {
namespace {

AttributeSpec spec_of(AttributeKind kind) {
  AttributeSpec s;
  s.name = "X";
  s.kind = kind;
  return s;
}

TEST(Distance, Text) {
  const auto s = spec_of(AttributeKind::text);
  EXPECT_EQ(distance(s, "Hello World", "Hello Helen"), 2);
  EXPECT_EQ(distance(s, "a b c", "a b c"), 0);
  EXPECT_EQ(distance(s, "a a b", "a b"), 1);  // multiset
  EXPECT_EQ(distance(s, "", "x y"), 2);
}

TEST(Distance, Taxonomy) {
  auto s = spec_of(AttributeKind::taxonomy);
  s.taxonomy = std::make_shared<const Taxonomy>(
      Taxonomy::parse("WorkClass(neverWorked)(worked(withPay)(withoutPay))"));
  EXPECT_EQ(distance(s, "neverWorked", "withPay"), 3);
  EXPECT_EQ(distance(s, "withPay", "withoutPay"), 2);
  EXPECT_EQ(distance(s, "worked", "worked"), 0);
  EXPECT_EQ(distance(s, "WorkClass", "withPay"), 2);
  EXPECT_THROW(distance(s, "retired", "worked"), DataError);
}

TEST(Distance, TaxonomyParseErrors) {
  EXPECT_THROW(Taxonomy::parse("A(B"), DataError);
  EXPECT_THROW(Taxonomy::parse("A(B))"), DataError);
  EXPECT_THROW(Taxonomy::parse("A(B)(B)"), DataError);
  EXPECT_THROW(Taxonomy::parse("A()"), DataError);
}

TEST(Distance, NumericWithDivisorAndGrid) {
  auto s = spec_of(AttributeKind::numeric);
  EXPECT_EQ(distance(s, "20", "25"), 5);
  EXPECT_EQ(distance(s, "1.5", "-1.5"), 3);
  s.divisor = 5;
  EXPECT_EQ(distance(s, "20", "34"), 2);
  s.divisor = 1;
  s.granularity = 5;
  EXPECT_EQ(distance(s, "20", "34"), 10);
  EXPECT_EQ(distance(s, "20", "35"), 15);
  EXPECT_THROW(distance(s, "20", "abc"), DataError);
}

TEST(Distance, Boolean) {
  const auto s = spec_of(AttributeKind::boolean);
  EXPECT_EQ(distance(s, "yes", "no"), 1);
  EXPECT_EQ(distance(s, "yes", "yes"), 0);
}

TEST(Distance, IdentityIsZeroForEveryKind) {
  for (auto kind : {AttributeKind::numeric, AttributeKind::text, AttributeKind::boolean}) {
    EXPECT_EQ(distance(spec_of(kind), "7", "7"), 0);
  }
}

TEST(Distance, SpecValidation) {
  auto s = spec_of(AttributeKind::numeric);
  s.granularity = 0;
  EXPECT_THROW(s.validate(), DataError);
  s = spec_of(AttributeKind::taxonomy);
  EXPECT_THROW(s.validate(), DataError);
  s = spec_of(AttributeKind::numeric);
  s.name = "a->b";
  EXPECT_THROW(s.validate(), DataError);
  EXPECT_THROW(parse_attribute_kind("float"), DataError);
}

TEST(Distance, ParseErrorNamesRowAndColumn) {
  const std::vector<std::string> cells = {"1", "2", "x"};
  try {
    Column::parse(spec_of(AttributeKind::numeric), cells, 2);
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("'x'"), std::string::npos) << msg;
    EXPECT_NE(msg.find("X"), std::string::npos) << msg;
    EXPECT_NE(msg.find("4"), std::string::npos) << msg;
  }
}

TEST(BaseIntervals, Rules) {
  using V = std::vector<Interval>;
  EXPECT_EQ(build_base_intervals(2, 1, 2), (V{{0, 0}, {1, 1}, {2, 2}}));
  EXPECT_EQ(build_base_intervals(3, 1, 1), (V{{0, 0}, {1, 1}, {2, 3}}));
  EXPECT_EQ(build_base_intervals(0, 1, 0), (V{{0, 0}}));
  const V coarse = build_base_intervals(55, 5, 40);
  ASSERT_EQ(coarse.size(), 10u);
  EXPECT_EQ(coarse.front(), Interval(0, 0));
  EXPECT_EQ(coarse[8], Interval(40, 40));
  EXPECT_EQ(coarse.back(), Interval(45, 55));
  EXPECT_THROW(build_base_intervals(3, 1, 4), std::invalid_argument);
  EXPECT_THROW(build_base_intervals(10, 5, 3), std::invalid_argument);
}

TEST(BaseIntervals, CoverTheDistanceRange) {
  for (Distance g : {1, 2, 5}) {
    for (Distance maxd = 0; maxd <= 30; maxd += g) {
      for (Distance ur = 0; ur <= maxd; ur += g) {
        const auto base = build_base_intervals(maxd, g, ur);
        AttributeSchema s{"X", g, maxd, ur, base};
        EXPECT_EQ(base.front().lo, 0);
        EXPECT_EQ(base.back().hi, maxd);
        for (std::size_t i = 1; i < base.size(); ++i) {
          EXPECT_EQ(base[i - 1].hi + g, base[i].lo);
        }
        for (Distance d = 0; d <= maxd; d += g) {
          EXPECT_TRUE(base[s.bin_of(d)].contains(d));
        }
      }
    }
  }
}

TEST(Schema, Table1) {
  const Relation r = testing::table1();
  const DistanceSchema s = DistanceSchema::from_relation(r);
  ASSERT_EQ(s.size(), 4u);
  EXPECT_EQ(s.attr(0).maxd, 5);
  EXPECT_EQ(s.attr(3).maxd, 2);
  EXPECT_EQ(s.attr(0).base.size(), 6u);
  EXPECT_EQ(s.find("Sal"), AttrId{3});
  EXPECT_FALSE(s.find("Nope"));
}

TEST(Schema, UrFlooredAndClamped) {
  const Relation r = testing::numeric_relation({{0, 7}, {0, 1}}, {Distance{20}, Distance{0}});
  const DistanceSchema s = DistanceSchema::from_relation(r);
  EXPECT_EQ(s.attr(0).ur, 7);
  EXPECT_EQ(s.attr(1).base, (std::vector<Interval>{{0, 0}, {1, 1}}));
}

TEST(PairIndex, Examples) {
  EXPECT_EQ(pair_index_to_tuples(1, 4), (TuplePair{0, 1}));
  EXPECT_EQ(pair_index_to_tuples(3, 4), (TuplePair{0, 3}));
  EXPECT_EQ(pair_index_to_tuples(6, 4), (TuplePair{2, 3}));
  EXPECT_THROW(pair_index_to_tuples(0, 4), std::out_of_range);
  EXPECT_THROW(pair_index_to_tuples(7, 4), std::out_of_range);
  EXPECT_EQ(pair_count(4), 6u);
}

// Exhaustive check against a plain enumeration of pairs in the stated order.
TEST(PairIndex, BijectionUpTo200) {
  for (std::size_t n = 2; n <= 200; ++n) {
    std::uint64_t i = 0;
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = x + 1; y < n; ++y) {
        ++i;
        ASSERT_EQ(tuples_to_pair_index(x, y, n), i) << n;
        ASSERT_EQ(pair_index_to_tuples(i, n), (TuplePair{x, y})) << n << " " << i;
      }
    }
    ASSERT_EQ(i, pair_count(n));
  }
}

TEST(PairIndex, LargeNRoundTrip) {
  const std::size_t n = 3'000'000;
  for (std::uint64_t i : {std::uint64_t{1}, pair_count(n) / 2, pair_count(n) - 1, pair_count(n)}) {
    const auto p = pair_index_to_tuples(i, n);
    EXPECT_LT(p.x, p.y);
    EXPECT_EQ(tuples_to_pair_index(p.x, p.y, n), i);
  }
}

}  // namespace
}  // namespace ddmine
