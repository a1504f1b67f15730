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

#ifndef DDMINE_LATTICE_HPP
#define DDMINE_LATTICE_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ddmine/datamodel.hpp"
#include "ddmine/distance.hpp"
#include "ddmine/partition.hpp"

namespace ddmine {

struct DiscoveryConfig {
  /// Satisfaction threshold in (0, 1].
  double epsilon = 1.0;
  /// Support threshold δ in [0, 1], as a fraction of the universe's pairs.
  double min_support = 0.0;
  /// Highest lattice level (lhs size) to visit; unset means |R|.
  std::optional<std::size_t> max_level;
  /// Worker threads for partition builds and rhs computation; <= 0 uses the
  /// OpenMP default.
  int threads = 1;

  /// Throws UsageError naming the offending threshold.
  void validate() const;
};

/// ceil(δ·total) but never below one pair: an empty partition has no DDs.
std::uint64_t support_count_threshold(double min_support, std::uint64_t total);

/// (v, F(v), dds(v)). dds holds lhs⨝rhs of every satisfied base-interval DD
/// found at v or at any lattice ancestor of v, sorted and unique.
struct LatticeNode {
  DifferentialFunction df;
  PairPartition partition;
  std::vector<DifferentialFunction> dds;

  /// Some carried DF is a sub-DF of df with identical intervals.
  bool reducible() const;
};

/// One node per (attribute, base interval) whose partition holds at least
/// `min_count` pairs, ordered by attribute then interval.
std::vector<LatticeNode> level1_nodes(std::span<const AttributePartition> parts,
                                      std::uint64_t min_count = 1);

/// Joins nodes sharing all but their last term when the last attributes
/// differ. F is intersected and dds unioned. v1 and v2 may come in either
/// order; the result is canonical.
std::optional<LatticeNode> join_nodes(const LatticeNode& v1,
                                      const LatticeNode& v2);

/// FindRhs on per-bin overlap counts: counts[i] = |F(lhs) ∩ F(B, w_i)|.
/// Returns nothing when every count is zero.
std::optional<Interval> find_rhs_counts(std::span<const std::uint64_t> counts,
                                        std::span<const Interval> intervals,
                                        double epsilon);

/// FindRhs: the right end is the highest bin whose tail mass (that bin and
/// above) strictly exceeds (1-ε) of the lhs pairs; the left end is the
/// lowest bin with any overlap. Exact-boundary tails are dropped.
std::optional<Interval> find_rhs(const PairPartition& lhs,
                                 const AttributePartition& attr, double epsilon);

/// supp / (width(w) / (maxd + g)) with width(w) = hi - lo + g.
double interestingness(double support, const Interval& w, Distance maxd,
                       Distance g);

struct DiscoveryStats {
  std::size_t levels = 0;
  std::uint64_t nodes_generated = 0;
  std::uint64_t nodes_reducible = 0;
  std::uint64_t support_pruned = 0;
  std::uint64_t apriori_pruned = 0;
  std::uint64_t candidates = 0;
  std::uint64_t trivial = 0;
  std::uint64_t implied = 0;
  std::uint64_t accepted = 0;
};

struct DiscoveryResult {
  /// Compressed DDs read off the DD-trees, canonically sorted, with support
  /// and interestingness of the (possibly widened) lhs.
  std::vector<DifferentialDependency> dds;
  /// The accepted base-interval DDs in discovery order.
  std::vector<DifferentialDependency> base_dds;
  DiscoveryStats stats;
};

/// MinDD over the pairs in `universe` (all pairs by default). Throws
/// std::invalid_argument when the relation has fewer than two tuples or two
/// attributes, or when the schema does not match the relation.
DiscoveryResult min_dd(const Relation& relation, const DistanceSchema& schema,
                       const DiscoveryConfig& cfg);
DiscoveryResult min_dd(const Relation& relation, const DistanceSchema& schema,
                       const DiscoveryConfig& cfg, const PairUniverse& universe);
/// Same search on prebuilt attribute partitions.
DiscoveryResult min_dd(std::span<const AttributePartition> parts,
                       const DistanceSchema& schema, const DiscoveryConfig& cfg,
                       std::uint64_t universe_size);

/// Rewrites each DD as the base-interval DDs it stands for (cartesian product
/// of lhs bins), sorted and unique. Support and interestingness are zeroed.
std::vector<DifferentialDependency> expand_to_base(
    std::span<const DifferentialDependency> dds, const DistanceSchema& schema);

}  // namespace ddmine

#endif  // DDMINE_LATTICE_HPP
