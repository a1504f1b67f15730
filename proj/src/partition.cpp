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

#include "ddmine/partition.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

#include "parallel.hpp"

namespace ddmine {

// ---------------------------------------------------------------------------
// PairUniverse

PairUniverse PairUniverse::all(std::size_t n) {
  PairUniverse u;
  u.n_ = n;
  u.full_ = true;
  return u;
}

PairUniverse PairUniverse::subset(std::size_t n, std::vector<PairId> ids) {
  const std::uint64_t total = pair_count(n);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] < 1 || ids[i] > total || (i > 0 && ids[i] <= ids[i - 1])) {
      throw std::invalid_argument("pair universe ids must be ascending and in range");
    }
  }
  PairUniverse u;
  u.n_ = n;
  u.full_ = false;
  u.ids_ = std::move(ids);
  return u;
}

// ---------------------------------------------------------------------------
// PairPartition

PairPartition PairPartition::from_sorted(std::vector<PairId> ids) {
  for (std::size_t i = 1; i < ids.size(); ++i) {
    if (ids[i] <= ids[i - 1]) {
      throw std::invalid_argument("pair partition ids must be strictly ascending");
    }
  }
  return PairPartition(std::move(ids));
}

PairPartition PairPartition::from_unsorted(std::vector<PairId> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return PairPartition(std::move(ids));
}

bool PairPartition::contains(PairId id) const {
  return std::binary_search(ids_.begin(), ids_.end(), id);
}

bool PairPartition::is_valid(std::size_t n) const {
  const std::uint64_t total = pair_count(n);
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (ids_[i] < 1 || ids_[i] > total) return false;
    if (i > 0 && ids_[i] <= ids_[i - 1]) return false;
  }
  return true;
}

PairPartition intersect(const PairPartition& a, const PairPartition& b) {
  std::vector<PairId> out;
  out.reserve(std::min(a.size(), b.size()));
  std::set_intersection(a.ids().begin(), a.ids().end(), b.ids().begin(),
                        b.ids().end(), std::back_inserter(out));
  return PairPartition::from_sorted(std::move(out));
}

std::size_t intersect_count(const PairPartition& a, const PairPartition& b) {
  auto x = a.ids();
  auto y = b.ids();
  if (x.empty() || y.empty()) return 0;
  if (x.back() < y.front() || y.back() < x.front()) return 0;
  std::size_t count = 0;
  std::size_t i = 0, j = 0;
  while (i < x.size() && j < y.size()) {
    if (x[i] < y[j]) {
      ++i;
    } else if (y[j] < x[i]) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

PairPartition union_adjacent(const PairPartition& a, const PairPartition& b) {
  std::vector<PairId> out;
  out.reserve(a.size() + b.size());
  std::merge(a.ids().begin(), a.ids().end(), b.ids().begin(), b.ids().end(),
             std::back_inserter(out));
  if (std::adjacent_find(out.begin(), out.end()) != out.end()) {
    throw std::invalid_argument("union_adjacent: partitions overlap");
  }
  return PairPartition::from_sorted(std::move(out));
}

double support(const PairPartition& p, std::uint64_t total_pairs) {
  if (total_pairs == 0) throw std::invalid_argument("support: no tuple pairs");
  return static_cast<double>(p.size()) / static_cast<double>(total_pairs);
}

PairPartition AttributePartition::merged(std::size_t first,
                                         std::size_t last) const {
  std::vector<PairId> out;
  for (std::size_t i = first; i <= last; ++i) {
    out.insert(out.end(), parts[i].ids().begin(), parts[i].ids().end());
  }
  std::sort(out.begin(), out.end());
  return PairPartition::from_sorted(std::move(out));
}

// ---------------------------------------------------------------------------
// Partition builders

namespace {

constexpr std::size_t kSubsetBlock = 4096;

// A block is one relation row (full universe) or a fixed-size run of sampled
// ids. Pair ids inside a block are ascending and blocks are ordered, so
// scattering blocks in order keeps every part sorted.
struct BlockPlan {
  const PairUniverse& universe;

  std::size_t count() const {
    if (universe.is_full()) {
      return universe.tuples() < 2 ? 0 : universe.tuples() - 1;
    }
    return (universe.ids().size() + kSubsetBlock - 1) / kSubsetBlock;
  }

  template <class F>
  void for_each(std::size_t block, F&& f) const {
    const std::size_t n = universe.tuples();
    if (universe.is_full()) {
      const std::size_t x = block;
      PairId id = tuples_to_pair_index(x, x + 1, n);
      for (std::size_t y = x + 1; y < n; ++y, ++id) f(id, x, y);
      return;
    }
    const auto ids = universe.ids();
    const std::size_t end = std::min(ids.size(), (block + 1) * kSubsetBlock);
    for (std::size_t i = block * kSubsetBlock; i < end; ++i) {
      const auto tp = pair_index_to_tuples(ids[i], n);
      f(ids[i], tp.x, tp.y);
    }
  }
};

}  // namespace

AttributePartition build_attribute_partition(const Column& column,
                                             const AttributeSchema& schema,
                                             const PairUniverse& universe,
                                             int threads) {
  const int nthreads = detail::resolve_threads(threads);
  const BlockPlan plan{universe};
  const std::size_t blocks = plan.count();
  const std::size_t k = schema.base.size();

  // Pass 1: per-block histogram of base-interval bins.
  std::vector<std::uint64_t> counts(blocks * k, 0);
#pragma omp parallel for num_threads(nthreads) schedule(dynamic, 16)
  for (std::int64_t b = 0; b < static_cast<std::int64_t>(blocks); ++b) {
    std::uint64_t* row = counts.data() + static_cast<std::size_t>(b) * k;
    plan.for_each(static_cast<std::size_t>(b),
                  [&](PairId, std::size_t p, std::size_t q) {
                    ++row[schema.bin_of(column.distance(p, q))];
                  });
  }

  // Exclusive prefix per bin across blocks.
  std::vector<std::uint64_t> totals(k, 0);
  for (std::size_t b = 0; b < blocks; ++b) {
    for (std::size_t bin = 0; bin < k; ++bin) {
      const std::uint64_t c = counts[b * k + bin];
      counts[b * k + bin] = totals[bin];
      totals[bin] += c;
    }
  }

  std::vector<std::vector<PairId>> parts(k);
  for (std::size_t bin = 0; bin < k; ++bin) parts[bin].resize(totals[bin]);

  // Pass 2: scatter.
#pragma omp parallel for num_threads(nthreads) schedule(dynamic, 16)
  for (std::int64_t b = 0; b < static_cast<std::int64_t>(blocks); ++b) {
    std::uint64_t* cursor = counts.data() + static_cast<std::size_t>(b) * k;
    plan.for_each(static_cast<std::size_t>(b),
                  [&](PairId id, std::size_t p, std::size_t q) {
                    const std::size_t bin = schema.bin_of(column.distance(p, q));
                    parts[bin][cursor[bin]++] = id;
                  });
  }

  AttributePartition out;
  out.intervals = schema.base;
  out.parts.reserve(k);
  for (auto& ids : parts) out.parts.push_back(PairPartition::from_sorted(std::move(ids)));
  return out;
}

AttributePartition build_attribute_partition_serial(const Column& column,
                                                    const AttributeSchema& schema,
                                                    const PairUniverse& universe) {
  std::vector<std::vector<PairId>> parts(schema.base.size());
  const std::size_t n = universe.tuples();
  auto place = [&](PairId id, std::size_t p, std::size_t q) {
    const Distance d = column.distance(p, q);
    for (std::size_t i = 0; i < schema.base.size(); ++i) {
      if (schema.base[i].contains(d)) {
        parts[i].push_back(id);
        return;
      }
    }
    throw std::logic_error("distance outside every base interval");
  };
  if (universe.is_full()) {
    PairId id = 1;
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = x + 1; y < n; ++y) place(id++, x, y);
    }
  } else {
    for (PairId id : universe.ids()) {
      const auto tp = pair_index_to_tuples(id, n);
      place(id, tp.x, tp.y);
    }
  }
  AttributePartition out;
  out.intervals = schema.base;
  for (auto& ids : parts) out.parts.push_back(PairPartition::from_sorted(std::move(ids)));
  return out;
}

std::vector<AttributePartition> build_all_partitions(const Relation& relation,
                                                     const DistanceSchema& schema,
                                                     const PairUniverse& universe,
                                                     int threads) {
  std::vector<AttributePartition> out;
  out.reserve(schema.size());
  for (AttrId a = 0; a < schema.size(); ++a) {
    out.push_back(build_attribute_partition(relation.column(a), schema.attr(a),
                                            universe, threads));
  }
  return out;
}

}  // namespace ddmine
