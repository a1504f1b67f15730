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

#ifndef DDMINE_SAMPLING_HPP
#define DDMINE_SAMPLING_HPP

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ddmine/datamodel.hpp"
#include "ddmine/distance.hpp"
#include "ddmine/lattice.hpp"
#include "ddmine/partition.hpp"

namespace ddmine {

// ---------------------------------------------------------------------------
// Hypergeometric error model

/// C(M,k)·C(N−M,n−k)/C(N,n), evaluated in log space. Zero outside the
/// feasible k range. Throws std::invalid_argument unless M <= N and n <= N.
double hypergeom_pmf(std::uint64_t N, std::uint64_t M, std::uint64_t n,
                     std::uint64_t k);

/// Largest integer k with k < θ·Ns, or -1 when there is none.
std::int64_t miss_bound(std::uint64_t Ns, double theta);

/// Probability that a DD held by M of N pairs shows up in fewer than θ·Ns
/// pairs of a sample of Ns.
double p_missed(std::uint64_t N, std::uint64_t M, std::uint64_t Ns, double theta);

/// 1 − p_missed.
double p_unwanted(std::uint64_t N, std::uint64_t M, std::uint64_t Ns, double theta);

/// Smallest Ns with p_missed(N, M, Ns, θ) <= target. p_missed is not monotone
/// in Ns (it jumps whenever θ·Ns crosses an integer), so the search is a
/// linear scan. Throws UsageError for target outside (0,1) or when no Ns <= N
/// qualifies.
std::uint64_t solve_sample_size(std::uint64_t N, std::uint64_t M, double theta,
                                double target);

/// ceil(ln(1−B) / ln(1−ϱ)). Throws UsageError unless both lie in (0,1).
std::uint64_t num_samples(double rate, double coverage);

struct DdMass {
  std::uint64_t M = 0;  // pairs of the full relation satisfying the DD
  bool wanted = false;  // M >= θ·N
};

struct ExpectedErrors {
  double missed = 0.0;    // E_m: sum of p_missed over wanted DDs
  double unwanted = 0.0;  // E_uw: sum of p_unwanted over unwanted DDs
};

ExpectedErrors expected_error_counts(std::span<const DdMass> dds, std::uint64_t N,
                                     std::uint64_t Ns, double theta);

// ---------------------------------------------------------------------------
// Drawing samples

/// Seeded 64-bit Mersenne Twister; bounded draws use rejection sampling on
/// the raw 64-bit output so results do not depend on the standard library.
class SampleRng {
 public:
  explicit SampleRng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() { return state_(); }
  /// Uniform in [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 state_;
};

/// Ns distinct pair ids drawn uniformly without replacement from
/// [1, n(n−1)/2] (Floyd's algorithm), ascending. Throws std::invalid_argument
/// when Ns exceeds the pair count.
std::vector<PairId> draw_pair_ids(std::size_t n, std::uint64_t Ns,
                                  std::uint64_t seed);

/// draw_pair_ids mapped through pair_index_to_tuples.
std::vector<TuplePair> draw_sample(std::size_t n, std::uint64_t Ns,
                                   std::uint64_t seed);

/// Per-sample seeds derived from one master seed.
std::vector<std::uint64_t> sample_seeds(std::uint64_t master, std::size_t ns);

struct SamplePlan {
  std::uint64_t N = 0;   // pairs in the full relation
  std::uint64_t Ns = 0;  // pairs per sample
  std::size_t ns = 1;    // number of samples
  std::uint64_t seed = 0;

  double rate() const { return N == 0 ? 0.0 : static_cast<double>(Ns) / static_cast<double>(N); }
  /// Throws UsageError unless 1 <= Ns <= N and ns >= 1.
  void validate() const;
};

/// Ns = round(rate·N), at least 1.
std::uint64_t sample_size_for_rate(std::uint64_t N, double rate);

// ---------------------------------------------------------------------------
// Combining per-sample DD sets

struct SampledEntry {
  /// lhs, rhs attribute, hull of all sibling rhs intervals. support is the
  /// mean per-sample support.
  DifferentialDependency dd;
  std::size_t file_count = 0;        // distinct samples containing a sibling
  std::vector<std::size_t> samples;  // one per occurrence
  std::vector<Interval> intervals;
  std::vector<double> supports;
};

struct SampledDDSet {
  std::vector<std::vector<DifferentialDependency>> per_sample;
  std::vector<SampledEntry> entries;  // canonical order

  std::vector<DifferentialDependency> combined() const;
};

/// Merges siblings (same lhs, same rhs attribute) across and within the
/// given sets into one DD whose rhs is the hull. Sets are expected in base
/// form. When fingerprints are given they must all be equal (same schema),
/// otherwise std::invalid_argument.
SampledDDSet combine_dd_sets(std::vector<std::vector<DifferentialDependency>> sets,
                             std::span<const std::string> fingerprints = {});

struct ErrorRates {
  double missed = 0.0;    // |ref − combined| / |ref|
  double unwanted = 0.0;  // |combined − ref| / |ref|
};

/// Set differences under DD identity. Throws std::invalid_argument when the
/// reference set is empty.
ErrorRates error_rates(std::span<const DifferentialDependency> reference,
                       std::span<const DifferentialDependency> combined);

enum class FilterMode { filecount, intervalratio, support };

struct FilterSpec {
  FilterMode mode = FilterMode::filecount;
  double value = 0.0;
};

/// Parses `filecount=K`, `intervalratio=R` or `support=T`; throws UsageError.
FilterSpec parse_filter(std::string_view text);
std::string to_string(const FilterSpec& f);

/// Averages are taken over the samples in which the DD was found. Interval
/// widths follow the interestingness convention (hi − lo + g).
std::vector<DifferentialDependency> filter_dds(const SampledDDSet& s,
                                               const FilterSpec& f,
                                               std::span<const Distance> granularity);

// ---------------------------------------------------------------------------
// Driver

struct SampleRun {
  SamplePlan plan;
  std::vector<std::uint64_t> seeds;  // per sample
  std::vector<DiscoveryResult> results;
  SampledDDSet combined;
};

/// Draws plan.ns samples of plan.Ns pairs, runs MinDD on each (schema taken
/// from the full data) and combines their base DDs.
SampleRun run_sampled_discovery(const Relation& relation, const DistanceSchema& schema,
                                const DiscoveryConfig& cfg, const SamplePlan& plan);

}  // namespace ddmine

#endif  // DDMINE_SAMPLING_HPP
