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

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace ddmine {

namespace {

struct PairRef {
  std::size_t x;
  std::size_t y;
};

std::vector<PairRef> all_pairs(std::size_t n) {
  std::vector<PairRef> out;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) out.push_back({x, y});
  }
  return out;
}

bool lhs_holds(const Relation& r, const DifferentialFunction& lhs, PairRef p) {
  for (const auto& t : lhs.terms()) {
    if (!t.interval.contains(r.column(t.attr).distance(p.x, p.y))) return false;
  }
  return true;
}

// Number of lowest-distance pairs that must satisfy the rhs.
std::uint64_t kept_count(std::uint64_t m, double epsilon) {
  if (epsilon >= 1.0) return m;
  const double md = static_cast<double>(m);
  const double k = std::ceil(epsilon * md - (1e-12 * md + 1e-9));
  return k <= 0.0 ? 0 : static_cast<std::uint64_t>(k);
}

// Base interval holding d, by linear search.
const Interval& bin_containing(const AttributeSchema& s, Distance d) {
  for (const auto& w : s.base) {
    if (w.contains(d)) return w;
  }
  throw std::logic_error("distance outside the base intervals");
}

}  // namespace

VerifyTrace verify_dd_trace(const Relation& relation,
                            const DifferentialDependency& dd, double epsilon) {
  VerifyTrace tr;
  std::vector<Distance> ds;
  for (const auto p : all_pairs(relation.rows())) {
    if (!lhs_holds(relation, dd.lhs, p)) continue;
    const Distance d = relation.column(dd.rhs_attr).distance(p.x, p.y);
    ds.push_back(d);
    if (dd.rhs.contains(d)) {
      ++tr.satisfying;
    } else {
      ++tr.violating;
    }
  }
  tr.lhs_pairs = ds.size();
  tr.kept = kept_count(tr.lhs_pairs, epsilon);
  std::sort(ds.begin(), ds.end());
  tr.holds = std::all_of(ds.begin(), ds.begin() + static_cast<std::ptrdiff_t>(tr.kept),
                         [&](Distance d) { return dd.rhs.contains(d); });
  return tr;
}

bool verify_dd(const Relation& relation, const DifferentialDependency& dd,
               double epsilon) {
  return verify_dd_trace(relation, dd, epsilon).holds;
}

OracleResult discover_brute(const Relation& relation, const DistanceSchema& schema,
                            const DiscoveryConfig& cfg,
                            std::optional<std::size_t> max_lhs) {
  cfg.validate();
  const std::size_t n = relation.rows();
  const std::size_t attrs = relation.attributes();
  if (n > 12 || attrs > 5) throw std::invalid_argument("oracle input too large");
  for (std::size_t a = 0; a < attrs; ++a) {
    if (schema.attr(static_cast<AttrId>(a)).base.size() > 6) {
      throw std::invalid_argument("oracle input has too many base intervals");
    }
  }
  OracleResult result;
  if (n < 2 || attrs < 2) return result;

  const auto pairs = all_pairs(n);
  const double total = static_cast<double>(pairs.size());
  std::size_t cap = attrs;
  if (max_lhs) cap = std::min(cap, *max_lhs);
  if (cfg.max_level) cap = std::min(cap, *cfg.max_level);
  const double need_raw = std::ceil(cfg.min_support * total - 1e-9);
  const std::uint64_t need =
      std::max<std::uint64_t>(1, need_raw <= 0.0 ? 0 : static_cast<std::uint64_t>(need_raw));

  // Every supported base-interval lhs with its satisfying pair list.
  std::map<DifferentialFunction, std::vector<std::size_t>> lhs_pairs;
  for (std::uint32_t mask = 1; mask < (1u << attrs); ++mask) {
    std::vector<AttrId> chosen;
    for (AttrId a = 0; a < attrs; ++a) {
      if (mask & (1u << a)) chosen.push_back(a);
    }
    if (chosen.size() > cap) continue;
    std::vector<std::size_t> pick(chosen.size(), 0);
    while (true) {
      std::vector<Term> terms;
      for (std::size_t i = 0; i < chosen.size(); ++i) {
        terms.push_back(Term{chosen[i], schema.attr(chosen[i]).base[pick[i]]});
      }
      DifferentialFunction lhs(std::move(terms));
      std::vector<std::size_t> hit;
      for (std::size_t p = 0; p < pairs.size(); ++p) {
        if (lhs_holds(relation, lhs, pairs[p])) hit.push_back(p);
      }
      if (hit.size() >= need) lhs_pairs.emplace(std::move(lhs), std::move(hit));
      std::size_t i = 0;
      while (i < pick.size() && pick[i] + 1 == schema.attr(chosen[i]).base.size()) {
        pick[i] = 0;
        ++i;
      }
      if (i == pick.size()) break;
      ++pick[i];
    }
  }

  // Tightest ε-rhs for every (lhs, B).
  std::map<std::pair<DifferentialFunction, AttrId>, Interval> rhs;
  for (const auto& [lhs, hit] : lhs_pairs) {
    for (AttrId b = 0; b < attrs; ++b) {
      if (lhs.has_attr(b)) continue;
      std::vector<Distance> ds;
      for (auto p : hit) ds.push_back(relation.column(b).distance(pairs[p].x, pairs[p].y));
      std::sort(ds.begin(), ds.end());
      const std::uint64_t k = kept_count(ds.size(), cfg.epsilon);
      const AttributeSchema& bs = schema.attr(b);
      const Interval lo = bin_containing(bs, ds.front());
      const Interval hi = bin_containing(bs, ds[k - 1]);
      rhs.emplace(std::make_pair(lhs, b), Interval(lo.lo, hi.hi));
    }
  }

  auto is_base = [&](AttrId b, const Interval& w) {
    const auto& base = schema.attr(b).base;
    return std::find(base.begin(), base.end(), w) != base.end();
  };
  auto proper_subsets = [](const DifferentialFunction& v) {
    std::vector<DifferentialFunction> out;
    const auto terms = v.terms();
    const std::uint32_t full = (1u << terms.size()) - 1;
    for (std::uint32_t m = 1; m < full; ++m) {
      std::vector<Term> sub;
      for (std::size_t i = 0; i < terms.size(); ++i) {
        if (m & (1u << i)) sub.push_back(terms[i]);
      }
      out.emplace_back(std::move(sub));
    }
    return out;
  };

  // v is reducible when some proper sub-DF Y already pins a remaining term
  // ⟨B, w⟩ of v as a non-trivial base-interval rhs.
  auto reducible = [&](const DifferentialFunction& v) {
    for (const auto& y : proper_subsets(v)) {
      for (const auto& t : v.terms()) {
        if (y.has_attr(t.attr)) continue;
        auto it = rhs.find({y, t.attr});
        if (it == rhs.end()) continue;
        const Interval& w = it->second;
        if (w == t.interval && is_base(t.attr, w) && w.hi <= schema.attr(t.attr).ur) {
          return true;
        }
      }
    }
    return false;
  };

  std::vector<DifferentialDependency> cands;
  for (const auto& [key, w] : rhs) {
    const auto& [lhs, b] = key;
    if (w.hi > schema.attr(b).ur) continue;
    if (reducible(lhs)) continue;
    DifferentialDependency dd;
    dd.lhs = lhs;
    dd.rhs_attr = b;
    dd.rhs = w;
    cands.push_back(dd);
  }
  auto same_rhs_subset = [&](const DifferentialDependency& dd) {
    for (const auto& y : proper_subsets(dd.lhs)) {
      for (const auto& c : cands) {
        if (c.rhs_attr == dd.rhs_attr && c.rhs == dd.rhs && c.lhs == y) return true;
      }
    }
    return false;
  };
  for (const auto& dd : cands) {
    if (same_rhs_subset(dd)) continue;
    result.dd_set.push_back(dd);
  }
  canonicalize(result.dd_set);
  for (auto& dd : result.dd_set) {
    result.traces.push_back(verify_dd_trace(relation, dd, cfg.epsilon));
    const AttributeSchema& bs = schema.attr(dd.rhs_attr);
    std::uint64_t joint = 0;
    for (auto p : lhs_pairs.at(dd.lhs)) {
      if (dd.rhs.contains(relation.column(dd.rhs_attr).distance(pairs[p].x, pairs[p].y))) {
        ++joint;
      }
    }
    dd.support = static_cast<double>(joint) / total;
    dd.interestingness =
        dd.support / (static_cast<double>(dd.rhs.hi - dd.rhs.lo + bs.granularity) /
                      static_cast<double>(bs.maxd + bs.granularity));
  }
  result.combined = combine_fixpoint(result.dd_set, schema);
  return result;
}

std::vector<DifferentialDependency> combine_fixpoint(
    std::vector<DifferentialDependency> dds, const DistanceSchema& schema) {
  canonicalize(dds);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < dds.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < dds.size() && !changed; ++j) {
        const auto& a = dds[i];
        const auto& b = dds[j];
        if (a.rhs_attr != b.rhs_attr || a.rhs != b.rhs) continue;
        const auto ta = a.lhs.terms();
        const auto tb = b.lhs.terms();
        if (ta.size() != tb.size()) continue;
        std::size_t diff = ta.size();
        bool ok = true;
        for (std::size_t k = 0; k < ta.size() && ok; ++k) {
          if (ta[k].attr != tb[k].attr) ok = false;
          else if (ta[k].interval != tb[k].interval) {
            if (diff != ta.size()) ok = false;
            diff = k;
          }
        }
        if (!ok || diff == ta.size()) continue;
        const Distance g = schema.attr(ta[diff].attr).granularity;
        Interval x = ta[diff].interval;
        Interval y = tb[diff].interval;
        if (y.lo < x.lo) std::swap(x, y);
        if (!interval_adjacent(x, y, g)) continue;
        std::vector<Term> merged(ta.begin(), ta.end());
        merged[diff].interval = interval_combine(x, y, g);
        DifferentialDependency m = a;
        m.support = 0.0;
        m.interestingness = 0.0;
        m.lhs = DifferentialFunction(std::move(merged));
        dds.erase(dds.begin() + static_cast<std::ptrdiff_t>(j));
        dds[i] = std::move(m);
        changed = true;
      }
    }
  }
  canonicalize(dds);
  return dds;
}

}  // namespace ddmine
