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

#ifndef DDMINE_DISTANCE_HPP
#define DDMINE_DISTANCE_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ddmine/datamodel.hpp"

namespace ddmine {

enum class AttributeKind { numeric, text, taxonomy, boolean };

std::string_view to_string(AttributeKind kind);
/// Accepts "numeric", "text", "taxonomy", "boolean"; throws DataError.
AttributeKind parse_attribute_kind(std::string_view s);

/// Rooted category tree written as `Root(child)(child(grand)(grand))`.
/// Labels must be unique.
class Taxonomy {
 public:
  /// Throws DataError on unbalanced parentheses, empty or duplicate labels.
  static Taxonomy parse(std::string_view text);

  std::optional<std::uint32_t> find(std::string_view label) const;
  /// Number of edges on the path between two nodes.
  Distance distance(std::uint32_t a, std::uint32_t b) const;
  std::size_t size() const { return labels_.size(); }
  const std::string& label(std::uint32_t node) const { return labels_[node]; }

 private:
  std::vector<std::string> labels_;
  std::vector<std::int32_t> parent_;
  std::vector<std::uint32_t> depth_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

struct AttributeSpec {
  std::string name;
  AttributeKind kind = AttributeKind::numeric;
  /// numeric only: raw differences are divided by this before gridding.
  double divisor = 1.0;
  /// Grid step g; every distance is floored to a multiple of it.
  Distance granularity = 1;
  /// Upper end of the interesting range [0, ur]. Unset means maxd.
  std::optional<Distance> interesting_limit;
  std::shared_ptr<const Taxonomy> taxonomy;

  /// Throws DataError for divisor/granularity <= 0 or a taxonomy column
  /// without a tree.
  void validate() const;
};

/// Grid distance between two raw cell values. Throws DataError when a value
/// does not parse under spec.kind.
Distance distance(const AttributeSpec& spec, std::string_view v1,
                  std::string_view v2);

/// One ingested column, pre-parsed so pairwise distances are cheap.
class Column {
 public:
  /// `row_offset` is the 1-based file row of cells[0], used in messages.
  static Column parse(AttributeSpec spec, std::span<const std::string> cells,
                      std::size_t row_offset = 2);

  const AttributeSpec& spec() const { return spec_; }
  std::size_t size() const { return rows_; }

  Distance distance(std::size_t p, std::size_t q) const {
    switch (spec_.kind) {
      case AttributeKind::numeric:
        return numeric_distance(p, q);
      case AttributeKind::text:
        return snap(word_distance(p, q));
      case AttributeKind::taxonomy:
        return snap(code_matrix_[codes_[p] * code_count_ + codes_[q]]);
      case AttributeKind::boolean:
        return snap(codes_[p] == codes_[q] ? 0 : 1);
    }
    return 0;
  }

  /// Largest distance over all tuple pairs (0 when fewer than two rows).
  Distance max_distance() const;

 private:
  Distance snap(Distance raw) const {
    return raw / spec_.granularity * spec_.granularity;
  }
  Distance numeric_distance(std::size_t p, std::size_t q) const;
  Distance word_distance(std::size_t p, std::size_t q) const;

  AttributeSpec spec_;
  std::size_t rows_ = 0;
  std::vector<double> numbers_;
  std::vector<std::vector<std::uint32_t>> words_;
  std::vector<std::uint32_t> codes_;
  std::size_t code_count_ = 0;
  std::vector<Distance> code_matrix_;
};

/// The ingested relation: configured columns in config order. Attribute ids
/// are positions in this list.
class Relation {
 public:
  Relation() = default;
  /// Throws DataError when columns disagree on the row count.
  explicit Relation(std::vector<Column> columns);

  std::size_t rows() const { return rows_; }
  std::size_t attributes() const { return columns_.size(); }
  const Column& column(AttrId a) const { return columns_[a]; }
  std::vector<std::string> names() const;

 private:
  std::vector<Column> columns_;
  std::size_t rows_ = 0;
};

/// Base intervals [0,0],[g,g],...,[ur,ur] then a tail [ur+g, maxd] when
/// maxd > ur. Throws std::invalid_argument when ur > maxd, g <= 0 or either
/// bound is off the grid.
std::vector<Interval> build_base_intervals(Distance maxd, Distance g,
                                           Distance ur);

struct AttributeSchema {
  std::string name;
  Distance granularity = 1;
  Distance maxd = 0;
  Distance ur = 0;
  std::vector<Interval> base;

  /// Index of the base interval holding d (d must lie in [0, maxd]).
  std::size_t bin_of(Distance d) const {
    if (d <= ur) return static_cast<std::size_t>(d / granularity);
    return base.size() - 1;
  }
  /// Index of the base interval equal to w, if any.
  std::optional<std::size_t> base_index(const Interval& w) const;
  /// Indexes of base intervals contained in w; w must be a union of them.
  std::pair<std::size_t, std::size_t> bin_range(const Interval& w) const;
};

/// Per-attribute maxd and base intervals derived from the data.
class DistanceSchema {
 public:
  DistanceSchema() = default;
  explicit DistanceSchema(std::vector<AttributeSchema> attrs);
  /// maxd from the observed data; ur from the spec, floored to the grid and
  /// clamped to maxd.
  static DistanceSchema from_relation(const Relation& relation);

  std::size_t size() const { return attrs_.size(); }
  const AttributeSchema& attr(AttrId a) const { return attrs_[a]; }
  std::vector<std::string> names() const;
  std::optional<AttrId> find(std::string_view name) const;
  std::vector<Distance> granularities() const;
  /// Stable text summary of names and base intervals; equal fingerprints
  /// mean DD sets are comparable.
  std::string fingerprint() const;

 private:
  std::vector<AttributeSchema> attrs_;
};

struct TuplePair {
  std::size_t x = 0;
  std::size_t y = 0;
  friend bool operator==(const TuplePair&, const TuplePair&) = default;
};

/// n(n-1)/2
std::uint64_t pair_count(std::size_t n);

/// 1-based index of (x, y), x < y, in the order (0,1),(0,2),...,(0,n-1),(1,2)...
inline std::uint64_t tuples_to_pair_index(std::size_t x, std::size_t y,
                                          std::size_t n) {
  const auto ux = static_cast<std::uint64_t>(x);
  return ux * (2 * static_cast<std::uint64_t>(n) - 1 - ux) / 2 + (y - x);
}

/// Inverse of tuples_to_pair_index via the closed-form square-root formula.
/// Throws std::out_of_range when i is outside [1, n(n-1)/2].
TuplePair pair_index_to_tuples(std::uint64_t i, std::size_t n);

}  // namespace ddmine

#endif  // DDMINE_DISTANCE_HPP
