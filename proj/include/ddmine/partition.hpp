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

#ifndef DDMINE_PARTITION_HPP
#define DDMINE_PARTITION_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "ddmine/datamodel.hpp"
#include "ddmine/distance.hpp"

namespace ddmine {

/// 1-based triangular pair index, see tuples_to_pair_index().
using PairId = std::uint64_t;

/// The tuple pairs a discovery run looks at: every pair of an n-tuple
/// relation, or a sorted sample of them.
class PairUniverse {
 public:
  static PairUniverse all(std::size_t n);
  /// Throws std::invalid_argument unless ids are strictly ascending and in
  /// [1, n(n-1)/2].
  static PairUniverse subset(std::size_t n, std::vector<PairId> ids);

  std::size_t tuples() const { return n_; }
  std::uint64_t size() const { return full_ ? pair_count(n_) : ids_.size(); }
  bool is_full() const { return full_; }
  std::span<const PairId> ids() const { return ids_; }

 private:
  std::size_t n_ = 0;
  bool full_ = true;
  std::vector<PairId> ids_;
};

/// Strictly ascending set of pair ids: the pairs satisfying some DF.
class PairPartition {
 public:
  PairPartition() = default;
  /// Throws std::invalid_argument unless strictly ascending.
  static PairPartition from_sorted(std::vector<PairId> ids);
  static PairPartition from_unsorted(std::vector<PairId> ids);

  std::span<const PairId> ids() const { return ids_; }
  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  bool contains(PairId id) const;
  /// Strictly ascending and every id decodes to a pair of an n-tuple relation.
  bool is_valid(std::size_t n) const;

  friend bool operator==(const PairPartition&, const PairPartition&) = default;

 private:
  explicit PairPartition(std::vector<PairId> ids) : ids_(std::move(ids)) {}
  std::vector<PairId> ids_;
};

/// Linear-time sorted intersection.
PairPartition intersect(const PairPartition& a, const PairPartition& b);
/// |a ∩ b| without materialising it.
std::size_t intersect_count(const PairPartition& a, const PairPartition& b);
/// Sorted merge of two disjoint partitions; throws std::invalid_argument if
/// they share a pair.
PairPartition union_adjacent(const PairPartition& a, const PairPartition& b);
/// |p| / total_pairs; throws std::invalid_argument when total_pairs == 0.
double support(const PairPartition& p, std::uint64_t total_pairs);

/// 𝓕(B): one partition per base interval, in interval order. The parts are
/// pairwise disjoint and cover the universe.
struct AttributePartition {
  std::vector<Interval> intervals;
  std::vector<PairPartition> parts;

  std::size_t size() const { return parts.size(); }
  /// Union of parts[first..last].
  PairPartition merged(std::size_t first, std::size_t last) const;
};

/// Parallel two-pass counting sort over pair blocks. `threads` <= 0 uses the
/// OpenMP default.
AttributePartition build_attribute_partition(const Column& column,
                                             const AttributeSchema& schema,
                                             const PairUniverse& universe,
                                             int threads = 0);

/// Single-threaded reference kept for tests and benchmarks.
AttributePartition build_attribute_partition_serial(const Column& column,
                                                    const AttributeSchema& schema,
                                                    const PairUniverse& universe);

std::vector<AttributePartition> build_all_partitions(const Relation& relation,
                                                     const DistanceSchema& schema,
                                                     const PairUniverse& universe,
                                                     int threads = 0);

}  // namespace ddmine

#endif  // DDMINE_PARTITION_HPP
