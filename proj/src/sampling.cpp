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

#include "ddmine/sampling.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "ddmine/error.hpp"

namespace ddmine {

namespace {

double log_choose(std::uint64_t a, std::uint64_t b) {
  const auto da = static_cast<long double>(a);
  const auto db = static_cast<long double>(b);
  return static_cast<double>(std::lgamma(da + 1.0L) - std::lgamma(db + 1.0L) -
                             std::lgamma(da - db + 1.0L));
}

void check_theta(double theta) {
  if (!(theta >= 0.0 && theta <= 1.0)) {
    throw std::invalid_argument("theta must lie in [0, 1]");
  }
}

}  // namespace

double hypergeom_pmf(std::uint64_t N, std::uint64_t M, std::uint64_t n,
                     std::uint64_t k) {
  if (M > N || n > N) {
    throw std::invalid_argument("hypergeometric parameters require M <= N and n <= N");
  }
  const std::uint64_t lo = n + M > N ? n + M - N : 0;
  const std::uint64_t hi = std::min(n, M);
  if (k < lo || k > hi) return 0.0;
  return std::exp(log_choose(M, k) + log_choose(N - M, n - k) - log_choose(N, n));
}

std::int64_t miss_bound(std::uint64_t Ns, double theta) {
  check_theta(theta);
  // k < θ·Ns  <=>  k <= ceil(θ·Ns) − 1; the tolerance keeps an integral θ·Ns
  // from being rounded up a step by representation error.
  const double t = theta * static_cast<double>(Ns);
  return static_cast<std::int64_t>(std::ceil(t - 1e-9)) - 1;
}

double p_missed(std::uint64_t N, std::uint64_t M, std::uint64_t Ns, double theta) {
  if (M > N || Ns > N) {
    throw std::invalid_argument("hypergeometric parameters require M <= N and n <= N");
  }
  const std::int64_t kmax = miss_bound(Ns, theta);
  double sum = 0.0;
  for (std::int64_t k = 0; k <= kmax; ++k) {
    sum += hypergeom_pmf(N, M, Ns, static_cast<std::uint64_t>(k));
  }
  return std::min(1.0, sum);
}

double p_unwanted(std::uint64_t N, std::uint64_t M, std::uint64_t Ns, double theta) {
  return 1.0 - p_missed(N, M, Ns, theta);
}

std::uint64_t solve_sample_size(std::uint64_t N, std::uint64_t M, double theta,
                                double target) {
  if (!(target > 0.0 && target < 1.0)) {
    throw UsageError("target probability must lie in (0, 1)");
  }
  if (M > N) throw UsageError("M must not exceed N");
  check_theta(theta);
  // Ties count as reaching the target; the slack absorbs log-space rounding
  // (e.g. M = 1 gives p_missed = (N − Ns)/N exactly).
  const double limit = target * (1.0 + 1e-9);
  for (std::uint64_t ns = 1; ns <= N; ++ns) {
    if (p_missed(N, M, ns, theta) <= limit) return ns;
  }
  throw UsageError("no sample size up to N reaches the target probability");
}

std::uint64_t num_samples(double rate, double coverage) {
  if (!(rate > 0.0 && rate < 1.0) || !(coverage > 0.0 && coverage < 1.0)) {
    throw UsageError("sampling rate and coverage must lie in (0, 1)");
  }
  const double raw = std::log(1.0 - coverage) / std::log(1.0 - rate);
  return static_cast<std::uint64_t>(std::max(1.0, std::ceil(raw - 1e-9)));
}

ExpectedErrors expected_error_counts(std::span<const DdMass> dds, std::uint64_t N,
                                     std::uint64_t Ns, double theta) {
  ExpectedErrors e;
  for (const auto& d : dds) {
    if (d.wanted) {
      e.missed += p_missed(N, d.M, Ns, theta);
    } else {
      e.unwanted += p_unwanted(N, d.M, Ns, theta);
    }
  }
  return e;
}

// ---------------------------------------------------------------------------
// Drawing

std::uint64_t SampleRng::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("empty range");
  // Reject the lowest (2^64 mod bound) outputs so every residue is equally
  // likely.
  const std::uint64_t threshold = (0 - bound) % bound;
  while (true) {
    const std::uint64_t r = next();
    if (r >= threshold) return r % bound;
  }
}

std::vector<PairId> draw_pair_ids(std::size_t n, std::uint64_t Ns, std::uint64_t seed) {
  const std::uint64_t total = pair_count(n);
  if (Ns > total) throw std::invalid_argument("sample larger than the pair count");
  SampleRng rng(seed);
  std::vector<PairId> out;
  out.reserve(Ns);
  if (Ns == total) {
    for (PairId i = 1; i <= total; ++i) out.push_back(i);
    return out;
  }
  std::unordered_set<PairId> chosen;
  chosen.reserve(Ns * 2);
  for (std::uint64_t j = total - Ns + 1; j <= total; ++j) {
    const PairId t = 1 + rng.below(j);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  out.assign(chosen.begin(), chosen.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<TuplePair> draw_sample(std::size_t n, std::uint64_t Ns, std::uint64_t seed) {
  std::vector<TuplePair> out;
  for (PairId id : draw_pair_ids(n, Ns, seed)) out.push_back(pair_index_to_tuples(id, n));
  return out;
}

std::vector<std::uint64_t> sample_seeds(std::uint64_t master, std::size_t ns) {
  SampleRng rng(master);
  std::vector<std::uint64_t> out(ns);
  for (auto& s : out) s = rng.next();
  return out;
}

void SamplePlan::validate() const {
  if (Ns < 1 || Ns > N) throw UsageError("sample size must lie in [1, N]");
  if (ns < 1) throw UsageError("number of samples must be at least 1");
}

std::uint64_t sample_size_for_rate(std::uint64_t N, double rate) {
  if (!(rate > 0.0 && rate <= 1.0)) throw UsageError("sampling rate must lie in (0, 1]");
  const auto raw = static_cast<std::uint64_t>(std::llround(rate * static_cast<double>(N)));
  return std::clamp<std::uint64_t>(raw, 1, std::max<std::uint64_t>(N, 1));
}

// ---------------------------------------------------------------------------
// Combination, error rates, filters

std::vector<DifferentialDependency> SampledDDSet::combined() const {
  std::vector<DifferentialDependency> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.dd);
  return out;
}

SampledDDSet combine_dd_sets(std::vector<std::vector<DifferentialDependency>> sets,
                             std::span<const std::string> fingerprints) {
  for (const auto& f : fingerprints) {
    if (f != fingerprints.front()) {
      throw std::invalid_argument("DD sets come from different schemas");
    }
  }
  std::map<std::pair<DifferentialFunction, AttrId>, SampledEntry> by_key;
  for (std::size_t s = 0; s < sets.size(); ++s) {
    for (const auto& dd : sets[s]) {
      auto [it, fresh] = by_key.try_emplace({dd.lhs, dd.rhs_attr});
      SampledEntry& e = it->second;
      if (fresh) {
        e.dd.lhs = dd.lhs;
        e.dd.rhs_attr = dd.rhs_attr;
        e.dd.rhs = dd.rhs;
      } else {
        e.dd.rhs = interval_hull(e.dd.rhs, dd.rhs);
      }
      if (e.samples.empty() || e.samples.back() != s) ++e.file_count;
      e.samples.push_back(s);
      e.intervals.push_back(dd.rhs);
      e.supports.push_back(dd.support);
    }
  }
  SampledDDSet out;
  out.per_sample = std::move(sets);
  for (auto& [key, e] : by_key) {
    double sum = 0.0;
    for (double v : e.supports) sum += v;
    e.dd.support = e.supports.empty() ? 0.0 : sum / static_cast<double>(e.supports.size());
    out.entries.push_back(std::move(e));
  }
  std::sort(out.entries.begin(), out.entries.end(),
            [](const SampledEntry& a, const SampledEntry& b) { return compare_dd(a.dd, b.dd) < 0; });
  return out;
}

ErrorRates error_rates(std::span<const DifferentialDependency> reference,
                       std::span<const DifferentialDependency> combined) {
  if (reference.empty()) throw std::invalid_argument("reference DD set is empty");
  std::vector<DifferentialDependency> ref(reference.begin(), reference.end());
  std::vector<DifferentialDependency> got(combined.begin(), combined.end());
  canonicalize(ref);
  canonicalize(got);
  std::vector<DifferentialDependency> missed;
  std::vector<DifferentialDependency> unwanted;
  std::set_difference(ref.begin(), ref.end(), got.begin(), got.end(),
                      std::back_inserter(missed), DdLess{});
  std::set_difference(got.begin(), got.end(), ref.begin(), ref.end(),
                      std::back_inserter(unwanted), DdLess{});
  const auto denom = static_cast<double>(ref.size());
  return {static_cast<double>(missed.size()) / denom,
          static_cast<double>(unwanted.size()) / denom};
}

FilterSpec parse_filter(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos) {
    throw UsageError("filter must look like mode=value");
  }
  const std::string_view mode = text.substr(0, eq);
  const std::string value(text.substr(eq + 1));
  FilterSpec f;
  if (mode == "filecount") {
    f.mode = FilterMode::filecount;
  } else if (mode == "intervalratio") {
    f.mode = FilterMode::intervalratio;
  } else if (mode == "support") {
    f.mode = FilterMode::support;
  } else {
    throw UsageError("unknown filter mode '" + std::string(mode) + "'");
  }
  std::istringstream is(value);
  if (!(is >> f.value) || !is.eof() || f.value < 0.0) {
    throw UsageError("bad filter value '" + value + "'");
  }
  return f;
}

std::string to_string(const FilterSpec& f) {
  std::ostringstream os;
  switch (f.mode) {
    case FilterMode::filecount:
      os << "filecount";
      break;
    case FilterMode::intervalratio:
      os << "intervalratio";
      break;
    case FilterMode::support:
      os << "support";
      break;
  }
  os << '=' << f.value;
  return os.str();
}

std::vector<DifferentialDependency> filter_dds(const SampledDDSet& s,
                                               const FilterSpec& f,
                                               std::span<const Distance> granularity) {
  std::vector<DifferentialDependency> out;
  for (const auto& e : s.entries) {
    bool keep = false;
    switch (f.mode) {
      case FilterMode::filecount:
        keep = static_cast<double>(e.file_count) >= f.value;
        break;
      case FilterMode::intervalratio: {
        const Distance g = granularity[e.dd.rhs_attr];
        double sum = 0.0;
        for (const auto& w : e.intervals) sum += static_cast<double>(interval_width(w, g));
        const double mean = sum / static_cast<double>(e.intervals.size());
        keep = mean / static_cast<double>(interval_width(e.dd.rhs, g)) >= f.value;
        break;
      }
      case FilterMode::support:
        keep = e.dd.support >= f.value;
        break;
    }
    if (keep) out.push_back(e.dd);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Driver

SampleRun run_sampled_discovery(const Relation& relation, const DistanceSchema& schema,
                                const DiscoveryConfig& cfg, const SamplePlan& plan) {
  plan.validate();
  if (plan.N != pair_count(relation.rows())) {
    throw std::invalid_argument("sample plan N does not match the relation");
  }
  SampleRun run;
  run.plan = plan;
  run.seeds = sample_seeds(plan.seed, plan.ns);
  std::vector<std::vector<DifferentialDependency>> sets;
  for (std::uint64_t seed : run.seeds) {
    auto universe = PairUniverse::subset(relation.rows(),
                                         draw_pair_ids(relation.rows(), plan.Ns, seed));
    run.results.push_back(min_dd(relation, schema, cfg, universe));
    auto base = run.results.back().base_dds;
    canonicalize(base);
    sets.push_back(std::move(base));
  }
  run.combined = combine_dd_sets(std::move(sets));
  return run;
}

}  // namespace ddmine
