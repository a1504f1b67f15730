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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.
// Tolerances and time limits are pinned below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ddmine/ddtree.hpp"
#include "ddmine/lattice.hpp"
#include "ddmine/oracle.hpp"
#include "ddmine/partition.hpp"
#include "ddmine/sampling.hpp"
#include "test_util.hpp"

namespace ddmine {
namespace {

constexpr double kTable1Seconds = 1.0;
constexpr double kSolverSeconds = 5.0;
constexpr std::int64_t kSolverSlack = 5;
constexpr double kOracleSeconds = 60.0;
constexpr int kOracleInstances = 240;
constexpr double kSamplingSeconds = 300.0;
constexpr int kSamplingGroups = 10;
constexpr int kSamplingGroupsNeeded = 8;
constexpr double kComplementTol = 1e-12;
constexpr double kTailSumTol = 1e-9;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, const std::function<Outcome()>& body) {
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << title;
  if (!o.detail.empty()) std::cout << " (" << o.detail << ")";
  std::cout << std::endl;
}

using Ids = std::vector<PairId>;
Ids ids_of(const PairPartition& p) { return Ids(p.ids().begin(), p.ids().end()); }

Ids brute_partition(const Relation& r, const std::vector<Term>& terms) {
  Ids out;
  const std::size_t n = r.rows();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      bool ok = true;
      for (const auto& t : terms) ok = ok && t.interval.contains(r.column(t.attr).distance(x, y));
      if (ok) out.push_back(tuples_to_pair_index(x, y, n));
    }
  }
  return out;
}

// 200 tuples with planted dependencies: B = A/2, D = C + U{0,1,2},
// E = (A + C) mod 5. The wide D offsets and the fairly high ur values give
// reference DDs that a single small sample can miss.
Relation planted_relation() {
  std::mt19937_64 rng(20260101);
  std::vector<std::vector<long>> cols(5);
  for (int i = 0; i < 200; ++i) {
    const long a = static_cast<long>(rng() % 20);
    const long c = static_cast<long>(rng() % 10);
    rng();  // two unused draws; kept so the tuned data stays fixed
    rng();
    const long d = c + static_cast<long>(rng() % 3);
    cols[0].push_back(a);
    cols[1].push_back(a / 2);
    cols[2].push_back(c);
    cols[3].push_back(d);
    cols[4].push_back((a + c) % 5);
  }
  return testing::numeric_relation(cols, {6, 4, 4, 5, 2});
}

// 20 two-tuple groups equal on A; one group differs on B.
Relation tail_relation() {
  std::vector<long> a, b;
  for (int g = 0; g < 20; ++g) {
    a.push_back(g * 10);
    b.push_back(0);
    a.push_back(g * 10);
    b.push_back(g == 3 ? 1 : 0);
  }
  return testing::numeric_relation({a, b}, {0, std::nullopt});
}

Outcome table1_reproduction() {
  const auto t0 = Clock::now();
  const Relation r = testing::table1();
  const DistanceSchema s = DistanceSchema::from_relation(r);
  const auto res = min_dd(r, s, DiscoveryConfig{});
  const double secs = seconds_since(t0);
  const auto names = s.names();
  bool found = false, tight = false, all_hold = true;
  for (const auto& d : res.dds) {
    const std::string text = format_dd(d, names);
    if (text == "Age[0,0] -> Sal[0,1]") {
      found = std::abs(d.support - 0.5) < 1e-12 && std::abs(d.interestingness - 0.75) < 1e-12;
    }
    if (text == "Age[0,0] -> Sal[0,0]") tight = true;
    all_hold = all_hold && verify_dd(r, d, 1.0);
  }
  std::ostringstream os;
  os << res.dds.size() << " DDs, " << secs << " s";
  return {found && !tight && all_hold && secs < kTable1Seconds, os.str()};
}

Outcome example_partitions() {
  const Relation r = testing::table1();
  const DistanceSchema s = DistanceSchema::from_relation(r);
  const auto parts = build_all_partitions(r, s, PairUniverse::all(4));
  const auto& age = parts[0];
  const auto& sal = parts[3];
  bool ok = age.size() == 6 && sal.size() == 3;
  if (ok) {
    ok = ids_of(age.parts[0]) == Ids{1, 2, 4} && ids_of(age.parts[5]) == Ids{3, 5, 6};
    for (std::size_t i = 1; i < 5; ++i) ok = ok && age.parts[i].empty();
    ok = ok && ids_of(sal.parts[0]) == Ids{1} && ids_of(sal.parts[1]) == Ids{2, 4, 6} &&
         ids_of(sal.parts[2]) == Ids{3, 5} && ids_of(sal.merged(0, 1)) == Ids{1, 2, 4, 6};
    ok = ok && intersect(age.parts[0], sal.merged(0, 1)) == age.parts[0] &&
         !(intersect(age.parts[0], sal.parts[0]) == age.parts[0]);
  }
  return {ok, ""};
}

Outcome solver_cases() {
  const auto t0 = Clock::now();
  const std::int64_t a = static_cast<std::int64_t>(solve_sample_size(10000, 10, 0.0005, 0.05));
  const std::int64_t b = static_cast<std::int64_t>(solve_sample_size(10000, 10, 0.0001, 0.05));
  const std::int64_t c = static_cast<std::int64_t>(solve_sample_size(10000, 1, 0.0001, 0.05));
  const auto k1 = num_samples(0.10, 0.90);
  const auto k2 = num_samples(0.01, 0.90);
  const double secs = seconds_since(t0);
  const bool ok = std::abs(a - 3941) <= kSolverSlack && std::abs(b - 2588) <= kSolverSlack &&
                  std::abs(c - 9501) <= kSolverSlack && k1 == 22 && k2 == 230 &&
                  secs < kSolverSeconds;
  std::ostringstream os;
  os << "Ns=" << a << "," << b << "," << c << " ns=" << k1 << "," << k2 << ", " << secs << " s";
  return {ok, os.str()};
}

Outcome oracle_equivalence() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(777);
  std::uniform_int_distribution<int> tuples(2, 8);
  std::uniform_int_distribution<int> attrs(2, 4);
  const double deltas[] = {0.0, 0.2};
  const double epsilons[] = {1.0, 0.9};
  int agree = 0;
  std::size_t total = 0;
  for (int i = 0; i < kOracleInstances; ++i) {
    auto inst = testing::random_instance(rng, static_cast<std::size_t>(tuples(rng)),
                                         static_cast<std::size_t>(attrs(rng)), 3);
    DiscoveryConfig cfg;
    cfg.min_support = deltas[i % 2];
    cfg.epsilon = epsilons[(i / 2) % 2];
    const auto brute = discover_brute(inst.relation, inst.schema, cfg);
    const auto found = min_dd(inst.relation, inst.schema, cfg);
    const auto expanded = expand_to_base(found.dds, inst.schema);
    if (testing::same_dd_list(expanded, brute.dd_set)) ++agree;
    total += expanded.size();
  }
  const double secs = seconds_since(t0);
  std::ostringstream os;
  os << agree << "/" << kOracleInstances << " agree, " << total << " base DDs, " << secs << " s";
  return {agree == kOracleInstances && agree >= 200 && total > 0 && secs < kOracleSeconds,
          os.str()};
}

Outcome partition_properties() {
  std::mt19937_64 rng(99);
  std::size_t checked = 0;
  for (int iter = 0; iter < 100; ++iter) {
    const std::size_t n = 3 + rng() % 8;
    const std::size_t attrs = 2 + rng() % 3;
    const auto inst = testing::random_instance(rng, n, attrs, 4);
    const Relation& r = inst.relation;
    const DistanceSchema& s = inst.schema;
    const auto parts = build_all_partitions(r, s, PairUniverse::all(n));
    for (AttrId a = 0; a < attrs; ++a) {
      const auto& ap = parts[a];
      const auto& base = s.attr(a).base;
      const Distance g = s.attr(a).granularity;
      for (std::size_t i = 0; i < ap.size(); ++i) {
        if (ids_of(ap.parts[i]) != brute_partition(r, {Term{a, base[i]}})) {
          return {false, "base partition mismatch"};
        }
        for (std::size_t j = i + 1; j < ap.size(); ++j) {
          for (std::size_t k = j; k < ap.size(); ++k) {
            if (!intersect(ap.merged(i, j - 1), ap.merged(j, k)).empty()) {
              return {false, "overlap between disjoint ranges"};
            }
          }
          const Interval wab =
              interval_combine(Interval(base[i].lo, base[j - 1].hi), base[j], g);
          if (ids_of(union_adjacent(ap.merged(i, j - 1), ap.parts[j])) !=
              brute_partition(r, {Term{a, wab}})) {
            return {false, "union of adjacent ranges"};
          }
          ++checked;
        }
      }
    }
    for (AttrId a = 0; a < attrs; ++a) {
      for (AttrId b = 0; b < attrs; ++b) {
        if (a == b) continue;
        for (std::size_t i = 0; i < parts[a].size(); ++i) {
          const PairPartition& fx = parts[a].parts[i];
          for (std::size_t lo = 0; lo < parts[b].size(); ++lo) {
            for (std::size_t hi = lo; hi < parts[b].size(); ++hi) {
              const Interval w(s.attr(b).base[lo].lo, s.attr(b).base[hi].hi);
              const PairPartition joint = intersect(fx, parts[b].merged(lo, hi));
              if (ids_of(joint) !=
                  brute_partition(r, {Term{a, s.attr(a).base[i]}, Term{b, w}})) {
                return {false, "join partition"};
              }
              bool holds = true;
              for (PairId id : fx.ids()) {
                const auto p = pair_index_to_tuples(id, n);
                holds = holds && w.contains(r.column(b).distance(p.x, p.y));
              }
              if ((joint.size() == fx.size()) != holds) return {false, "satisfaction test"};
              ++checked;
            }
          }
        }
      }
    }
  }
  return {checked > 1000, std::to_string(checked) + " checks over 100 tables"};
}

Outcome ddtree_example() {
  const std::vector<Distance> grid(4, 1);
  auto t = [](AttrId a, Distance lo, Distance hi) { return Term{a, Interval(lo, hi)}; };
  DDTree tree(t(1, 9, 9), grid);
  const DdPath f1{t(0, 1, 1), t(2, 2, 2), t(3, 3, 3)};
  const DdPath f2{t(0, 1, 1), t(2, 3, 3), t(3, 3, 3)};
  const DdPath f3{t(0, 1, 1), t(2, 3, 3), t(3, 4, 4)};
  bool ok = tree.insert(f1) && tree.insert(f2) && tree.insert(f3);
  const std::vector<DdPath> want{{t(0, 1, 1), t(2, 2, 3), t(3, 3, 3)},
                                 {t(0, 1, 1), t(2, 3, 3), t(3, 4, 4)}};
  ok = ok && tree.paths() == want && tree.implies(f2) && !tree.insert(f2) &&
       tree.paths() == want && tree.is_non_redundant();
  return {ok, std::to_string(tree.paths().size()) + " stored paths"};
}

Outcome pair_bijection() {
  for (std::size_t n = 2; n <= 200; ++n) {
    std::uint64_t i = 0;
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = x + 1; y < n; ++y) {
        ++i;
        if (tuples_to_pair_index(x, y, n) != i) return {false, "forward n=" + std::to_string(n)};
        const auto p = pair_index_to_tuples(i, n);
        if (p.x != x || p.y != y) return {false, "inverse n=" + std::to_string(n)};
      }
    }
    if (i != pair_count(n)) return {false, "count n=" + std::to_string(n)};
  }
  return {true, "n = 2..200"};
}

// err_m must not rise and err_uw must not fall as samples are added. On
// average the first sample must miss something the tenth recovers and the
// tenth must add unwanted DDs, so the trend is not vacuous.
Outcome sampling_trends() {
  const auto t0 = Clock::now();
  const Relation rel = planted_relation();
  const DistanceSchema schema = DistanceSchema::from_relation(rel);
  DiscoveryConfig cfg;
  cfg.min_support = 0.005;
  cfg.threads = 0;
  auto ref = min_dd(rel, schema, cfg).base_dds;
  canonicalize(ref);
  const std::uint64_t N = pair_count(rel.rows());
  int good = 0;
  double m1 = 0, m10 = 0, u1 = 0, u10 = 0;
  for (int g = 0; g < kSamplingGroups; ++g) {
    const SamplePlan plan{N, sample_size_for_rate(N, 0.05), 10,
                          1000 + static_cast<std::uint64_t>(g)};
    const auto run = run_sampled_discovery(rel, schema, cfg, plan);
    bool mono = true;
    double prev_m = 2.0, prev_u = -1.0;
    for (std::size_t k = 1; k <= 10; ++k) {
      std::vector<std::vector<DifferentialDependency>> sets(
          run.combined.per_sample.begin(),
          run.combined.per_sample.begin() + static_cast<std::ptrdiff_t>(k));
      const auto e = error_rates(ref, combine_dd_sets(std::move(sets)).combined());
      mono = mono && e.missed <= prev_m + 1e-12 && e.unwanted >= prev_u - 1e-12;
      prev_m = e.missed;
      prev_u = e.unwanted;
      if (k == 1) {
        m1 += e.missed;
        u1 += e.unwanted;
      }
      if (k == 10) {
        m10 += e.missed;
        u10 += e.unwanted;
      }
    }
    good += mono;
  }
  const double secs = seconds_since(t0);
  m1 /= kSamplingGroups;
  m10 /= kSamplingGroups;
  u1 /= kSamplingGroups;
  u10 /= kSamplingGroups;
  std::ostringstream os;
  os.precision(3);
  os << good << "/" << kSamplingGroups << " groups monotone, |ref|=" << ref.size()
     << ", mean err_m " << m1 << " -> " << m10 << ", mean err_uw " << u1 << " -> " << u10
     << ", " << secs << " s";
  return {good >= kSamplingGroupsNeeded && m1 > m10 && u10 > u1 && secs < kSamplingSeconds,
          os.str()};
}

// For every level-1 and level-2 node the 0.9 interval sits inside the 1.0
// interval, and base DDs reported by both runs for the same lhs nest too.
Outcome epsilon_monotone() {
  std::vector<std::pair<std::string, Relation>> data;
  data.emplace_back("table1", testing::table1());
  data.emplace_back("tail", tail_relation());
  data.emplace_back("planted", planted_relation());
  std::size_t checked = 0;
  for (const auto& [name, rel] : data) {
    const DistanceSchema s = DistanceSchema::from_relation(rel);
    const auto parts = build_all_partitions(rel, s, PairUniverse::all(rel.rows()));
    const auto level1 = level1_nodes(parts);
    std::vector<LatticeNode> nodes = level1;
    for (std::size_t i = 0; i < level1.size(); ++i) {
      for (std::size_t j = i + 1; j < level1.size(); ++j) {
        if (auto v = join_nodes(level1[i], level1[j]); v && !v->partition.empty()) {
          nodes.push_back(std::move(*v));
        }
      }
    }
    for (const auto& v : nodes) {
      for (AttrId b = 0; b < rel.attributes(); ++b) {
        if (v.df.has_attr(b)) continue;
        const auto loose = find_rhs(v.partition, parts[b], 1.0);
        const auto strict = find_rhs(v.partition, parts[b], 0.9);
        if (!loose || !strict || !loose->contains(*strict)) {
          return {false, name + ": node interval not nested"};
        }
        ++checked;
      }
    }
    DiscoveryConfig full;
    DiscoveryConfig approx;
    approx.epsilon = 0.9;
    const auto a = min_dd(rel, s, full).base_dds;
    const auto b = min_dd(rel, s, approx).base_dds;
    for (const auto& x : a) {
      for (const auto& y : b) {
        if (x.lhs == y.lhs && x.rhs_attr == y.rhs_attr) {
          if (!x.rhs.contains(y.rhs)) return {false, name + ": shared DD not nested"};
          ++checked;
        }
      }
    }
  }
  return {checked > 0, std::to_string(checked) + " intervals compared"};
}

// C(n, k) as a running product in long double.
long double binom(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0.0L;
  k = std::min(k, n - k);
  long double r = 1.0L;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * static_cast<long double>(n - k + i) / i;
  return r;
}

Outcome complement_and_tails() {
  std::mt19937_64 rng(31337);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t N = 2 + rng() % 5000;
    const std::uint64_t M = rng() % (N + 1);
    const std::uint64_t Ns = 1 + rng() % N;
    const double theta = std::uniform_real_distribution<double>(0.0, 0.2)(rng);
    worst = std::max(worst, std::abs(p_missed(N, M, Ns, theta) + p_unwanted(N, M, Ns, theta) - 1.0));
  }
  double tail_err = 0.0;
  for (int i = 0; i < 300; ++i) {
    const std::uint64_t N = 2 + rng() % 60;
    const std::uint64_t M = rng() % (N + 1);
    const std::uint64_t Ns = 1 + rng() % N;
    const double theta = std::uniform_real_distribution<double>(0.0, 0.5)(rng);
    long double tail = 0.0L;
    for (std::uint64_t k = 0; static_cast<double>(k) < theta * static_cast<double>(Ns); ++k) {
      tail += binom(M, k) * binom(N - M, Ns - k);
    }
    tail /= binom(N, Ns);
    tail_err = std::max(tail_err,
                        std::abs(static_cast<double>(tail) - p_missed(N, M, Ns, theta)));
  }
  std::ostringstream os;
  os << "max |p_m+p_uw-1| = " << worst << ", max tail-sum error = " << tail_err;
  return {worst <= kComplementTol && tail_err <= kTailSumTol, os.str()};
}

}  // namespace
}  // namespace ddmine

int main() {
  using namespace ddmine;
  report(1, "motivating table reproduced", table1_reproduction);
  report(2, "example partitions exact", example_partitions);
  report(3, "sample-size solver and sample counts", solver_cases);
  report(4, "lattice search matches exhaustive oracle", oracle_equivalence);
  report(5, "partition properties on random tables", partition_properties);
  report(6, "DD-tree worked example", ddtree_example);
  report(7, "pair index bijection", pair_bijection);
  report(8, "sampling error trends", sampling_trends);
  report(9, "epsilon monotonicity", epsilon_monotone);
  report(10, "missed/unwanted complement and tail sums", complement_and_tails);
  std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}
