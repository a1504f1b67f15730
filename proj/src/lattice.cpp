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

#include "ddmine/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "ddmine/ddtree.hpp"
#include "ddmine/error.hpp"
#include "parallel.hpp"

namespace ddmine {

void DiscoveryConfig::validate() const {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw UsageError("satisfaction threshold out of range (0, 1]");
  }
  if (!(min_support >= 0.0 && min_support <= 1.0)) {
    throw UsageError("support threshold out of range");
  }
  if (max_level && *max_level == 0) {
    throw UsageError("max level must be at least 1");
  }
}

std::uint64_t support_count_threshold(double min_support, std::uint64_t total) {
  const double raw = std::ceil(min_support * static_cast<double>(total) - 1e-9);
  const auto count = raw <= 0.0 ? std::uint64_t{0} : static_cast<std::uint64_t>(raw);
  return std::max<std::uint64_t>(1, count);
}

bool LatticeNode::reducible() const {
  return std::any_of(dds.begin(), dds.end(), [&](const DifferentialFunction& d) {
    return df.contains_terms(d);
  });
}

std::vector<LatticeNode> level1_nodes(std::span<const AttributePartition> parts,
                                      std::uint64_t min_count) {
  std::vector<LatticeNode> out;
  for (AttrId a = 0; a < parts.size(); ++a) {
    for (std::size_t i = 0; i < parts[a].size(); ++i) {
      if (parts[a].parts[i].size() < std::max<std::uint64_t>(1, min_count)) continue;
      out.push_back(LatticeNode{DifferentialFunction(a, parts[a].intervals[i]),
                                parts[a].parts[i], {}});
    }
  }
  return out;
}

namespace {

std::vector<DifferentialFunction> union_dds(
    const std::vector<DifferentialFunction>& a,
    const std::vector<DifferentialFunction>& b) {
  std::vector<DifferentialFunction> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Shared (i-1)-term prefix and distinct tail attributes.
bool joinable_tails(const DifferentialFunction& a, const DifferentialFunction& b) {
  if (a.size() != b.size() || a.empty()) return false;
  const auto ta = a.terms();
  const auto tb = b.terms();
  for (std::size_t i = 0; i + 1 < ta.size(); ++i) {
    if (ta[i] != tb[i]) return false;
  }
  return ta.back().attr != tb.back().attr;
}

}  // namespace

std::optional<LatticeNode> join_nodes(const LatticeNode& v1,
                                      const LatticeNode& v2) {
  if (!joinable_tails(v1.df, v2.df)) return std::nullopt;
  std::vector<Term> terms(v1.df.terms().begin(), v1.df.terms().end());
  terms.push_back(v2.df.terms().back());
  return LatticeNode{DifferentialFunction(std::move(terms)),
                     intersect(v1.partition, v2.partition),
                     union_dds(v1.dds, v2.dds)};
}

std::optional<Interval> find_rhs_counts(std::span<const std::uint64_t> counts,
                                        std::span<const Interval> intervals,
                                        double epsilon) {
  if (counts.size() != intervals.size()) {
    throw std::invalid_argument("find_rhs: counts and intervals differ in size");
  }
  std::uint64_t m = 0;
  for (auto c : counts) m += c;
  if (m == 0) return std::nullopt;

  // Strict ">" with a tolerance, so a tail of exactly (1-ε)·m pairs is
  // dropped even when (1-ε)·m is not exactly representable.
  const double md = static_cast<double>(m);
  const double limit = (1.0 - epsilon) * md + (1e-12 * md + 1e-9);
  std::size_t right = 0;
  std::uint64_t cnt = 0;
  for (std::size_t i = counts.size(); i-- > 0;) {
    cnt += counts[i];
    if (static_cast<double>(cnt) > limit) {
      right = i;
      break;
    }
  }
  std::size_t left = 0;
  while (counts[left] == 0) ++left;
  return Interval(intervals[left].lo, intervals[right].hi);
}

std::optional<Interval> find_rhs(const PairPartition& lhs,
                                 const AttributePartition& attr, double epsilon) {
  if (lhs.empty()) return std::nullopt;
  std::vector<std::uint64_t> counts(attr.size());
  for (std::size_t i = 0; i < attr.size(); ++i) {
    counts[i] = intersect_count(lhs, attr.parts[i]);
  }
  return find_rhs_counts(counts, attr.intervals, epsilon);
}

double interestingness(double support, const Interval& w, Distance maxd,
                       Distance g) {
  const double width = static_cast<double>(interval_width(w, g));
  const double full = static_cast<double>(maxd + g);
  return support / (width / full);
}

// ---------------------------------------------------------------------------
// MinDD

namespace {

// Pair id -> base bin, per attribute, so a node's rhs histograms come from
// one pass over its partition.
class BinLookup {
 public:
  BinLookup(std::span<const AttributePartition> parts, int threads) {
    for (const auto& p : parts[0].parts) {
      universe_.insert(universe_.end(), p.ids().begin(), p.ids().end());
    }
    std::sort(universe_.begin(), universe_.end());
    dense_ = universe_.empty() || universe_.back() == universe_.size();
    if (dense_) universe_.clear();
    const std::size_t size = dense_ ? total(parts[0]) : universe_.size();

    bins_.resize(parts.size());
    for (std::size_t a = 0; a < parts.size(); ++a) {
      if (parts[a].size() > std::numeric_limits<std::uint16_t>::max()) {
        throw std::invalid_argument("too many base intervals for one attribute");
      }
      if (total(parts[a]) != size) {
        throw std::invalid_argument("attribute partitions cover different pairs");
      }
      bins_[a].resize(size);
      const auto k = static_cast<std::int64_t>(parts[a].size());
#pragma omp parallel for num_threads(threads) schedule(dynamic)
      for (std::int64_t i = 0; i < k; ++i) {
        for (PairId id : parts[a].parts[static_cast<std::size_t>(i)].ids()) {
          bins_[a][rank(id)] = static_cast<std::uint16_t>(i);
        }
      }
    }
  }

  std::size_t rank(PairId id) const {
    if (dense_) return static_cast<std::size_t>(id - 1);
    return static_cast<std::size_t>(
        std::lower_bound(universe_.begin(), universe_.end(), id) - universe_.begin());
  }
  std::uint16_t bin(std::size_t attr, std::size_t rank) const {
    return bins_[attr][rank];
  }

 private:
  static std::size_t total(const AttributePartition& p) {
    std::size_t n = 0;
    for (const auto& part : p.parts) n += part.size();
    return n;
  }

  bool dense_ = true;
  std::vector<PairId> universe_;
  std::vector<std::vector<std::uint16_t>> bins_;
};

struct RhsCandidate {
  std::optional<Interval> w;
  std::uint64_t joint = 0;  // |F(v) ∩ F(B, w)|
};

std::vector<RhsCandidate> node_candidates(const LatticeNode& node,
                                          std::span<const AttributePartition> parts,
                                          const BinLookup& lookup, double epsilon) {
  const std::size_t attrs = parts.size();
  std::vector<std::vector<std::uint64_t>> hist(attrs);
  for (std::size_t b = 0; b < attrs; ++b) {
    if (!node.df.has_attr(static_cast<AttrId>(b))) hist[b].assign(parts[b].size(), 0);
  }
  for (PairId id : node.partition.ids()) {
    const std::size_t r = lookup.rank(id);
    for (std::size_t b = 0; b < attrs; ++b) {
      if (!hist[b].empty()) ++hist[b][lookup.bin(b, r)];
    }
  }
  std::vector<RhsCandidate> out(attrs);
  for (std::size_t b = 0; b < attrs; ++b) {
    if (hist[b].empty()) continue;
    out[b].w = find_rhs_counts(hist[b], parts[b].intervals, epsilon);
    if (!out[b].w) continue;
    for (std::size_t i = 0; i < parts[b].size(); ++i) {
      if (out[b].w->contains(parts[b].intervals[i])) out[b].joint += hist[b][i];
    }
  }
  return out;
}

struct JoinCandidate {
  std::size_t left = 0;
  std::size_t right = 0;
  DifferentialFunction df;
  std::vector<DifferentialFunction> dds;
};

// Next level from a canonically sorted level. A candidate survives only if
// every one-term-shorter sub-DF is a live node of this level, and it carries
// the union of all their dds.
std::vector<LatticeNode> next_level(const std::vector<LatticeNode>& level,
                                    std::uint64_t min_count, int threads,
                                    DiscoveryStats& stats) {
  std::map<DifferentialFunction, std::size_t> index;
  for (std::size_t i = 0; i < level.size(); ++i) index.emplace(level[i].df, i);

  std::vector<JoinCandidate> cands;
  for (std::size_t i = 0; i < level.size(); ++i) {
    for (std::size_t j = i + 1; j < level.size(); ++j) {
      const auto ti = level[i].df.terms();
      const auto tj = level[j].df.terms();
      if (!std::equal(ti.begin(), ti.end() - 1, tj.begin())) break;
      if (ti.back().attr == tj.back().attr) continue;

      std::vector<Term> terms(ti.begin(), ti.end());
      terms.push_back(tj.back());
      JoinCandidate c{i, j, DifferentialFunction(terms),
                      union_dds(level[i].dds, level[j].dds)};
      bool complete = true;
      for (std::size_t drop = 0; drop + 2 < terms.size() && complete; ++drop) {
        std::vector<Term> sub;
        for (std::size_t t = 0; t < terms.size(); ++t) {
          if (t != drop) sub.push_back(terms[t]);
        }
        auto it = index.find(DifferentialFunction(std::move(sub)));
        if (it == index.end()) {
          complete = false;
        } else {
          c.dds = union_dds(c.dds, level[it->second].dds);
        }
      }
      if (!complete) {
        ++stats.apriori_pruned;
        continue;
      }
      cands.push_back(std::move(c));
    }
  }

  std::vector<PairPartition> inter(cands.size());
#pragma omp parallel for num_threads(threads) schedule(dynamic)
  for (std::int64_t c = 0; c < static_cast<std::int64_t>(cands.size()); ++c) {
    const auto& jc = cands[static_cast<std::size_t>(c)];
    inter[static_cast<std::size_t>(c)] =
        intersect(level[jc.left].partition, level[jc.right].partition);
  }

  std::vector<LatticeNode> out;
  for (std::size_t c = 0; c < cands.size(); ++c) {
    if (inter[c].size() < min_count) {
      ++stats.support_pruned;
      continue;
    }
    out.push_back(LatticeNode{std::move(cands[c].df), std::move(inter[c]),
                              std::move(cands[c].dds)});
  }
  return out;
}

}  // namespace

DiscoveryResult min_dd(std::span<const AttributePartition> parts,
                       const DistanceSchema& schema, const DiscoveryConfig& cfg,
                       std::uint64_t universe_size) {
  cfg.validate();
  if (parts.size() != schema.size()) {
    throw std::invalid_argument("partitions do not match the schema");
  }
  if (parts.size() < 2) throw std::invalid_argument("need at least two attributes");
  if (universe_size == 0) throw std::invalid_argument("no tuple pairs to search");

  const int threads = detail::resolve_threads(cfg.threads);
  const std::uint64_t min_count =
      support_count_threshold(cfg.min_support, universe_size);
  const std::size_t top =
      std::min(parts.size(), cfg.max_level.value_or(parts.size()));
  const double total = static_cast<double>(universe_size);

  DiscoveryResult result;
  DiscoveryStats& stats = result.stats;
  const BinLookup lookup(parts, threads);
  DDTreeIndex trees(schema.granularities());

  std::vector<LatticeNode> level;
  for (AttrId a = 0; a < parts.size(); ++a) {
    for (std::size_t i = 0; i < parts[a].size(); ++i) {
      if (parts[a].parts[i].empty()) continue;
      if (parts[a].parts[i].size() < min_count) ++stats.support_pruned;
    }
  }
  level = level1_nodes(parts, min_count);

  for (std::size_t depth = 1; depth <= top && !level.empty(); ++depth) {
    stats.levels = depth;
    stats.nodes_generated += level.size();

    std::erase_if(level, [&](const LatticeNode& v) {
      if (!v.reducible()) return false;
      ++stats.nodes_reducible;
      return true;
    });

    std::vector<std::vector<RhsCandidate>> rhs(level.size());
#pragma omp parallel for num_threads(threads) schedule(dynamic)
    for (std::int64_t v = 0; v < static_cast<std::int64_t>(level.size()); ++v) {
      const auto idx = static_cast<std::size_t>(v);
      rhs[idx] = node_candidates(level[idx], parts, lookup, cfg.epsilon);
    }

    // Single writer: DD-tree updates and dds(v) in node order.
    for (std::size_t v = 0; v < level.size(); ++v) {
      LatticeNode& node = level[v];
      for (AttrId b = 0; b < parts.size(); ++b) {
        if (node.df.has_attr(b) || !rhs[v][b].w) continue;
        ++stats.candidates;
        const Interval w = *rhs[v][b].w;
        const AttributeSchema& bs = schema.attr(b);
        if (w.hi > bs.ur) {
          ++stats.trivial;
          continue;
        }
        DifferentialDependency dd;
        dd.lhs = node.df;
        dd.rhs_attr = b;
        dd.rhs = w;
        dd.support = static_cast<double>(rhs[v][b].joint) / total;
        dd.interestingness = interestingness(dd.support, w, bs.maxd, bs.granularity);
        if (trees.chk_imply(dd)) {
          ++stats.accepted;
          result.base_dds.push_back(dd);
        } else {
          ++stats.implied;
        }
        if (bs.base_index(w)) {
          auto joined = df_join(node.df, DifferentialFunction(b, w));
          auto pos = std::lower_bound(node.dds.begin(), node.dds.end(), joined);
          if (pos == node.dds.end() || *pos != joined) node.dds.insert(pos, joined);
        }
      }
    }

    if (depth == top) break;
    level = next_level(level, min_count, threads, stats);
  }

  // Compressed output with supports over the widened lhs intervals.
  result.dds = trees.dependencies();
  for (auto& dd : result.dds) {
    PairPartition lhs;
    bool first = true;
    for (const auto& t : dd.lhs.terms()) {
      const auto [lo, hi] = schema.attr(t.attr).bin_range(t.interval);
      PairPartition p = parts[t.attr].merged(lo, hi);
      lhs = first ? std::move(p) : intersect(lhs, p);
      first = false;
    }
    const AttributeSchema& bs = schema.attr(dd.rhs_attr);
    const auto [lo, hi] = bs.bin_range(dd.rhs);
    const std::size_t joint = intersect_count(lhs, parts[dd.rhs_attr].merged(lo, hi));
    dd.support = static_cast<double>(joint) / total;
    dd.interestingness =
        interestingness(dd.support, dd.rhs, bs.maxd, bs.granularity);
  }
  return result;
}

DiscoveryResult min_dd(const Relation& relation, const DistanceSchema& schema,
                       const DiscoveryConfig& cfg, const PairUniverse& universe) {
  cfg.validate();
  if (relation.rows() < 2) throw std::invalid_argument("need at least two tuples");
  if (relation.attributes() < 2) {
    throw std::invalid_argument("need at least two attributes");
  }
  if (schema.size() != relation.attributes() || universe.tuples() != relation.rows()) {
    throw std::invalid_argument("schema or pair universe does not match the relation");
  }
  const auto parts = build_all_partitions(relation, schema, universe, cfg.threads);
  return min_dd(parts, schema, cfg, universe.size());
}

DiscoveryResult min_dd(const Relation& relation, const DistanceSchema& schema,
                       const DiscoveryConfig& cfg) {
  return min_dd(relation, schema, cfg, PairUniverse::all(relation.rows()));
}

std::vector<DifferentialDependency> expand_to_base(
    std::span<const DifferentialDependency> dds, const DistanceSchema& schema) {
  std::vector<DifferentialDependency> out;
  for (const auto& dd : dds) {
    const auto terms = dd.lhs.terms();
    std::vector<std::pair<std::size_t, std::size_t>> ranges;
    for (const auto& t : terms) ranges.push_back(schema.attr(t.attr).bin_range(t.interval));
    std::vector<std::size_t> pick(terms.size());
    for (std::size_t i = 0; i < terms.size(); ++i) pick[i] = ranges[i].first;
    while (true) {
      std::vector<Term> base;
      for (std::size_t i = 0; i < terms.size(); ++i) {
        base.push_back(Term{terms[i].attr, schema.attr(terms[i].attr).base[pick[i]]});
      }
      DifferentialDependency b;
      b.lhs = DifferentialFunction(std::move(base));
      b.rhs_attr = dd.rhs_attr;
      b.rhs = dd.rhs;
      out.push_back(std::move(b));
      std::size_t i = 0;
      while (i < pick.size() && pick[i] == ranges[i].second) {
        pick[i] = ranges[i].first;
        ++i;
      }
      if (i == pick.size()) break;
      ++pick[i];
    }
  }
  canonicalize(out);
  return out;
}

}  // namespace ddmine
