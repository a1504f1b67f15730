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

#include "ddmine/distance.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ddmine/error.hpp"

namespace ddmine {

namespace {

// Absorbs representation error so that e.g. |0.3 - 0.1| / 0.2 lands on 1.
constexpr double kGridSnapTolerance = 1e-9;

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::optional<double> parse_number(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

std::vector<std::string_view> split_words(std::string_view s) {
  std::vector<std::string_view> words;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) words.push_back(s.substr(i, j - i));
    i = j;
  }
  return words;
}

// Size of the multiset symmetric difference of two sorted sequences.
template <class T>
Distance symmetric_difference_size(const std::vector<T>& a,
                                   const std::vector<T>& b) {
  Distance diff = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++diff;
      ++i;
    } else if (b[j] < a[i]) {
      ++diff;
      ++j;
    } else {
      ++i;
      ++j;
    }
  }
  return diff + static_cast<Distance>((a.size() - i) + (b.size() - j));
}

Distance grid_floor(double raw, Distance g) {
  const double steps = std::floor(raw / static_cast<double>(g) + kGridSnapTolerance);
  return static_cast<Distance>(steps) * g;
}

std::string cell_location(const AttributeSpec& spec, std::size_t row) {
  return "row " + std::to_string(row) + ", column '" + spec.name + "'";
}

}  // namespace

std::string_view to_string(AttributeKind kind) {
  switch (kind) {
    case AttributeKind::numeric:
      return "numeric";
    case AttributeKind::text:
      return "text";
    case AttributeKind::taxonomy:
      return "taxonomy";
    case AttributeKind::boolean:
      return "boolean";
  }
  return "unknown";
}

AttributeKind parse_attribute_kind(std::string_view s) {
  if (s == "numeric") return AttributeKind::numeric;
  if (s == "text") return AttributeKind::text;
  if (s == "taxonomy") return AttributeKind::taxonomy;
  if (s == "boolean") return AttributeKind::boolean;
  throw DataError("unknown attribute kind '" + std::string(s) + "'");
}

// ---------------------------------------------------------------------------
// Taxonomy

Taxonomy Taxonomy::parse(std::string_view text) {
  Taxonomy tax;
  std::vector<std::int32_t> stack;
  std::size_t i = 0;

  auto read_label = [&]() {
    std::size_t j = i;
    while (j < text.size() && text[j] != '(' && text[j] != ')') ++j;
    auto label = trim(text.substr(i, j - i));
    i = j;
    if (label.empty()) {
      throw DataError("taxonomy: empty label at offset " + std::to_string(i));
    }
    const auto id = static_cast<std::uint32_t>(tax.labels_.size());
    if (!tax.index_.emplace(std::string(label), id).second) {
      throw DataError("taxonomy: duplicate label '" + std::string(label) + "'");
    }
    tax.labels_.emplace_back(label);
    const std::int32_t parent = stack.empty() ? -1 : stack.back();
    tax.parent_.push_back(parent);
    tax.depth_.push_back(parent < 0 ? 0 : tax.depth_[parent] + 1);
    return static_cast<std::int32_t>(id);
  };

  std::int32_t current = read_label();
  const std::int32_t root = current;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '(') {
      ++i;
      stack.push_back(current);
      current = read_label();
    } else if (c == ')') {
      ++i;
      if (stack.empty()) throw DataError("taxonomy: unbalanced ')'");
      current = stack.back();
      stack.pop_back();
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else {
      throw DataError("taxonomy: unexpected text after '" +
                      tax.labels_[current] + "'");
    }
    if (stack.empty() && current != root) {
      throw DataError("taxonomy: more than one root");
    }
  }
  if (!stack.empty()) throw DataError("taxonomy: unbalanced '('");
  return tax;
}

std::optional<std::uint32_t> Taxonomy::find(std::string_view label) const {
  auto it = index_.find(std::string(trim(label)));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Distance Taxonomy::distance(std::uint32_t a, std::uint32_t b) const {
  Distance d = 0;
  auto ia = static_cast<std::int32_t>(a);
  auto ib = static_cast<std::int32_t>(b);
  while (depth_[ia] > depth_[ib]) {
    ia = parent_[ia];
    ++d;
  }
  while (depth_[ib] > depth_[ia]) {
    ib = parent_[ib];
    ++d;
  }
  while (ia != ib) {
    ia = parent_[ia];
    ib = parent_[ib];
    d += 2;
  }
  return d;
}

// ---------------------------------------------------------------------------
// AttributeSpec / free distance

void AttributeSpec::validate() const {
  if (name.empty()) throw DataError("attribute with empty name");
  for (std::string_view bad : {"[", "]", "&", "->"}) {
    if (name.find(bad) != std::string::npos) {
      throw DataError("attribute name '" + name + "' contains '" +
                      std::string(bad) + "'");
    }
  }
  if (!(divisor > 0.0) || !std::isfinite(divisor)) {
    throw DataError("attribute '" + name + "': divisor must be positive");
  }
  if (granularity <= 0) {
    throw DataError("attribute '" + name + "': granularity must be positive");
  }
  if (interesting_limit && *interesting_limit < 0) {
    throw DataError("attribute '" + name + "': ur must be non-negative");
  }
  if (kind == AttributeKind::taxonomy && !taxonomy) {
    throw DataError("attribute '" + name + "': taxonomy kind needs a taxonomy");
  }
}

Distance distance(const AttributeSpec& spec, std::string_view v1,
                  std::string_view v2) {
  const std::string cells[2] = {std::string(v1), std::string(v2)};
  const Column col = Column::parse(spec, cells, 1);
  return col.distance(0, 1);
}

// ---------------------------------------------------------------------------
// Column

Column Column::parse(AttributeSpec spec, std::span<const std::string> cells,
                     std::size_t row_offset) {
  spec.validate();
  Column col;
  col.spec_ = std::move(spec);
  col.rows_ = cells.size();
  const auto& s = col.spec_;

  switch (s.kind) {
    case AttributeKind::numeric: {
      col.numbers_.reserve(cells.size());
      for (std::size_t r = 0; r < cells.size(); ++r) {
        auto v = parse_number(cells[r]);
        if (!v) {
          throw DataError("unparseable numeric value '" + cells[r] + "' at " +
                          cell_location(s, r + row_offset));
        }
        col.numbers_.push_back(*v);
      }
      break;
    }
    case AttributeKind::text: {
      std::unordered_map<std::string, std::uint32_t> vocab;
      col.words_.reserve(cells.size());
      for (const auto& cell : cells) {
        std::vector<std::uint32_t> ids;
        for (auto w : split_words(cell)) {
          auto [it, _] = vocab.emplace(std::string(w),
                                       static_cast<std::uint32_t>(vocab.size()));
          ids.push_back(it->second);
        }
        std::sort(ids.begin(), ids.end());
        col.words_.push_back(std::move(ids));
      }
      break;
    }
    case AttributeKind::taxonomy: {
      const Taxonomy& tax = *s.taxonomy;
      col.codes_.reserve(cells.size());
      for (std::size_t r = 0; r < cells.size(); ++r) {
        auto node = tax.find(cells[r]);
        if (!node) {
          throw DataError("label '" + cells[r] + "' not in taxonomy at " +
                          cell_location(s, r + row_offset));
        }
        col.codes_.push_back(*node);
      }
      col.code_count_ = tax.size();
      col.code_matrix_.resize(col.code_count_ * col.code_count_);
      for (std::uint32_t a = 0; a < col.code_count_; ++a) {
        for (std::uint32_t b = 0; b < col.code_count_; ++b) {
          col.code_matrix_[a * col.code_count_ + b] = tax.distance(a, b);
        }
      }
      break;
    }
    case AttributeKind::boolean: {
      std::unordered_map<std::string, std::uint32_t> values;
      col.codes_.reserve(cells.size());
      for (const auto& cell : cells) {
        auto [it, _] = values.emplace(std::string(trim(cell)),
                                      static_cast<std::uint32_t>(values.size()));
        col.codes_.push_back(it->second);
      }
      col.code_count_ = values.size();
      break;
    }
  }
  return col;
}

Distance Column::numeric_distance(std::size_t p, std::size_t q) const {
  const double raw = std::fabs(numbers_[p] - numbers_[q]) / spec_.divisor;
  return grid_floor(raw, spec_.granularity);
}

Distance Column::word_distance(std::size_t p, std::size_t q) const {
  return symmetric_difference_size(words_[p], words_[q]);
}

Distance Column::max_distance() const {
  if (rows_ < 2) return 0;
  switch (spec_.kind) {
    case AttributeKind::numeric: {
      auto [lo, hi] = std::minmax_element(numbers_.begin(), numbers_.end());
      return grid_floor((*hi - *lo) / spec_.divisor, spec_.granularity);
    }
    case AttributeKind::text: {
      std::set<std::vector<std::uint32_t>> distinct(words_.begin(), words_.end());
      std::vector<std::vector<std::uint32_t>> v(distinct.begin(), distinct.end());
      Distance best = 0;
      for (std::size_t a = 0; a < v.size(); ++a) {
        for (std::size_t b = a + 1; b < v.size(); ++b) {
          best = std::max(best, symmetric_difference_size(v[a], v[b]));
        }
      }
      return snap(best);
    }
    case AttributeKind::taxonomy: {
      std::set<std::uint32_t> distinct(codes_.begin(), codes_.end());
      Distance best = 0;
      for (auto a : distinct) {
        for (auto b : distinct) {
          best = std::max(best, code_matrix_[a * code_count_ + b]);
        }
      }
      return snap(best);
    }
    case AttributeKind::boolean:
      return snap(code_count_ > 1 ? 1 : 0);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Relation

Relation::Relation(std::vector<Column> columns) : columns_(std::move(columns)) {
  if (!columns_.empty()) rows_ = columns_.front().size();
  for (const auto& c : columns_) {
    if (c.size() != rows_) {
      throw DataError("column '" + c.spec().name + "' has " +
                      std::to_string(c.size()) + " rows, expected " +
                      std::to_string(rows_));
    }
  }
}

std::vector<std::string> Relation::names() const {
  std::vector<std::string> out;
  for (const auto& c : columns_) out.push_back(c.spec().name);
  return out;
}

// ---------------------------------------------------------------------------
// Base intervals and schema

std::vector<Interval> build_base_intervals(Distance maxd, Distance g,
                                           Distance ur) {
  if (g <= 0) throw std::invalid_argument("granularity must be positive");
  if (maxd < 0 || ur < 0) throw std::invalid_argument("negative distance bound");
  if (ur > maxd) {
    throw std::invalid_argument("interesting limit ur=" + std::to_string(ur) +
                                " exceeds maxd=" + std::to_string(maxd));
  }
  if (maxd % g != 0 || ur % g != 0) {
    throw std::invalid_argument("maxd and ur must be multiples of granularity");
  }
  std::vector<Interval> out;
  out.reserve(static_cast<std::size_t>(ur / g) + 2);
  for (Distance d = 0; d <= ur; d += g) out.emplace_back(d, d);
  if (maxd > ur) out.emplace_back(ur + g, maxd);
  return out;
}

std::optional<std::size_t> AttributeSchema::base_index(const Interval& w) const {
  if (w.hi > maxd) return std::nullopt;
  const std::size_t i = bin_of(w.lo);
  if (base[i] == w) return i;
  return std::nullopt;
}

std::pair<std::size_t, std::size_t> AttributeSchema::bin_range(
    const Interval& w) const {
  if (w.hi > maxd) throw std::invalid_argument("interval beyond maxd");
  const std::size_t first = bin_of(w.lo);
  const std::size_t last = bin_of(w.hi);
  if (base[first].lo != w.lo || base[last].hi != w.hi) {
    throw std::invalid_argument("interval is not a union of base intervals");
  }
  return {first, last};
}

DistanceSchema::DistanceSchema(std::vector<AttributeSchema> attrs)
    : attrs_(std::move(attrs)) {}

DistanceSchema DistanceSchema::from_relation(const Relation& relation) {
  std::vector<AttributeSchema> attrs;
  attrs.reserve(relation.attributes());
  for (AttrId a = 0; a < relation.attributes(); ++a) {
    const auto& col = relation.column(a);
    const auto& spec = col.spec();
    AttributeSchema s;
    s.name = spec.name;
    s.granularity = spec.granularity;
    s.maxd = col.max_distance();
    Distance ur = spec.interesting_limit.value_or(s.maxd);
    ur = ur / s.granularity * s.granularity;
    s.ur = std::min(ur, s.maxd);
    s.base = build_base_intervals(s.maxd, s.granularity, s.ur);
    attrs.push_back(std::move(s));
  }
  return DistanceSchema(std::move(attrs));
}

std::vector<std::string> DistanceSchema::names() const {
  std::vector<std::string> out;
  for (const auto& a : attrs_) out.push_back(a.name);
  return out;
}

std::optional<AttrId> DistanceSchema::find(std::string_view name) const {
  for (AttrId a = 0; a < attrs_.size(); ++a) {
    if (attrs_[a].name == name) return a;
  }
  return std::nullopt;
}

std::vector<Distance> DistanceSchema::granularities() const {
  std::vector<Distance> out;
  for (const auto& a : attrs_) out.push_back(a.granularity);
  return out;
}

std::string DistanceSchema::fingerprint() const {
  std::ostringstream os;
  for (const auto& a : attrs_) {
    os << a.name << ":g" << a.granularity << ":";
    for (const auto& w : a.base) os << '[' << w.lo << ',' << w.hi << ']';
    os << ';';
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Pair index arithmetic

std::uint64_t pair_count(std::size_t n) {
  const auto un = static_cast<std::uint64_t>(n);
  return un < 2 ? 0 : un * (un - 1) / 2;
}

TuplePair pair_index_to_tuples(std::uint64_t i, std::size_t n) {
  if (n < 2 || i < 1 || i > pair_count(n)) {
    throw std::out_of_range("pair index " + std::to_string(i) +
                            " out of range for n=" + std::to_string(n));
  }
  const double b = 2.0 * static_cast<double>(n) - 1.0;
  const double disc = b * b - 8.0 * static_cast<double>(i);
  auto x = static_cast<std::int64_t>((b - std::sqrt(std::max(0.0, disc))) / 2.0);
  const auto row_start = [n](std::int64_t r) -> std::int64_t {
    // pairs emitted before row r
    return (2 * static_cast<std::int64_t>(n) - 1 - r) * r / 2;
  };
  // The square root can land a hair off for large n; re-centre x so that
  // di falls in [0, n-1-x].
  const auto si = static_cast<std::int64_t>(i);
  while (x > 0 && si - row_start(x) < 0) --x;
  while (si - row_start(x + 1) > 0) ++x;

  const std::int64_t di = si - row_start(x);
  std::int64_t y = 0;
  if (di > 0) {
    y = x + di;
  } else {
    x = x - 1;
    y = static_cast<std::int64_t>(n) - 1;
  }
  return {static_cast<std::size_t>(x), static_cast<std::size_t>(y)};
}

}  // namespace ddmine
