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

// Serial reference vs OpenMP kernels.

#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "ddmine/lattice.hpp"
#include "ddmine/partition.hpp"
#include "ddmine/sampling.hpp"

namespace ddmine {
namespace {

Relation random_relation(std::size_t n, std::size_t attrs, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Column> cols;
  for (std::size_t a = 0; a < attrs; ++a) {
    AttributeSpec spec;
    spec.name = std::string(1, static_cast<char>('A' + a));
    spec.interesting_limit = 3;
    std::vector<std::string> cells;
    for (std::size_t i = 0; i < n; ++i) {
      const long base = static_cast<long>(i % 40);
      cells.push_back(std::to_string(a % 2 == 0 ? base : base / 2 + static_cast<long>(rng() % 3)));
    }
    cols.push_back(Column::parse(spec, cells));
  }
  return Relation(std::move(cols));
}

void BM_PartitionSerial(benchmark::State& state) {
  const Relation rel = random_relation(static_cast<std::size_t>(state.range(0)), 1, 7);
  const DistanceSchema schema = DistanceSchema::from_relation(rel);
  const auto universe = PairUniverse::all(rel.rows());
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        build_attribute_partition_serial(rel.column(0), schema.attr(0), universe));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(universe.size()));
}

void BM_PartitionParallel(benchmark::State& state) {
  const Relation rel = random_relation(static_cast<std::size_t>(state.range(0)), 1, 7);
  const DistanceSchema schema = DistanceSchema::from_relation(rel);
  const auto universe = PairUniverse::all(rel.rows());
  const int threads = static_cast<int>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        build_attribute_partition(rel.column(0), schema.attr(0), universe, threads));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(universe.size()));
}

void BM_MinDd(benchmark::State& state) {
  const Relation rel = random_relation(static_cast<std::size_t>(state.range(0)), 4, 11);
  const DistanceSchema schema = DistanceSchema::from_relation(rel);
  DiscoveryConfig cfg;
  cfg.min_support = 0.01;
  cfg.threads = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(min_dd(rel, schema, cfg));
}

void BM_SampledMinDd(benchmark::State& state) {
  const Relation rel = random_relation(600, 4, 11);
  const DistanceSchema schema = DistanceSchema::from_relation(rel);
  DiscoveryConfig cfg;
  cfg.min_support = 0.01;
  const std::uint64_t N = pair_count(rel.rows());
  const SamplePlan plan{N, sample_size_for_rate(N, 0.01 * static_cast<double>(state.range(0))), 1, 5};
  for (auto _ : state) benchmark::DoNotOptimize(run_sampled_discovery(rel, schema, cfg, plan));
}

BENCHMARK(BM_PartitionSerial)->Arg(1000)->Arg(3000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PartitionParallel)
    ->ArgsProduct({{1000, 3000}, {1, 2, 4}})
    ->UseRealTime()
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MinDd)->ArgsProduct({{600}, {1, 2, 4}})->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampledMinDd)->Arg(5)->Arg(20)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace ddmine

BENCHMARK_MAIN();
