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

#include "cli.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ddmine/error.hpp"
#include "ddmine/io.hpp"
#include "ddmine/lattice.hpp"
#include "ddmine/oracle.hpp"
#include "ddmine/report.hpp"
#include "ddmine/sampling.hpp"

namespace ddmine::cli {

namespace {

// Flags shared by every subcommand that reads a dataset.
struct DataFlags {
  std::string input;
  std::string config;
  std::optional<double> epsilon;
  std::optional<double> min_support;
  std::optional<std::size_t> max_level;
  int threads = 1;
};

void add_data_flags(CLI::App* cmd, DataFlags& f) {
  cmd->add_option("--input", f.input, "CSV file with a header row")->required();
  cmd->add_option("--config", f.config, "JSON column configuration")->required();
  cmd->add_option("--epsilon", f.epsilon, "satisfaction threshold in (0, 1]");
  cmd->add_option("--min-support", f.min_support, "support threshold in [0, 1]");
  cmd->add_option("--max-level", f.max_level, "largest lhs size");
  cmd->add_option("--threads", f.threads, "worker threads (0 = OpenMP default)");
}

struct Loaded {
  Dataset data;
  DiscoveryConfig cfg;
};

// Config-file thresholds first, then flag overrides.
Loaded load(const DataFlags& f) {
  const RunConfig rc = load_config(f.config);
  Relation rel = ingest(read_csv_file(f.input), rc);
  DistanceSchema schema = DistanceSchema::from_relation(rel);
  DiscoveryConfig cfg;
  if (rc.epsilon) cfg.epsilon = *rc.epsilon;
  if (rc.min_support) cfg.min_support = *rc.min_support;
  if (rc.max_level) cfg.max_level = rc.max_level;
  if (f.epsilon) cfg.epsilon = *f.epsilon;
  if (f.min_support) cfg.min_support = *f.min_support;
  if (f.max_level) cfg.max_level = f.max_level;
  cfg.threads = f.threads;
  cfg.validate();
  return {Dataset{std::move(rel), std::move(schema)}, cfg};
}

std::ofstream open_output(const std::string& path) {
  std::ofstream o(path, std::ios::binary);
  if (!o) throw DataError("cannot write '" + path + "'");
  return o;
}

// Writes DD text to `path`, or to `out` when the path is empty.
void emit_dds(const std::string& path, std::ostream& out,
              std::span<const DifferentialDependency> dds,
              std::span<const std::string> names) {
  if (path.empty()) {
    write_dd_text(out, dds, names);
    return;
  }
  auto o = open_output(path);
  write_dd_text(o, dds, names);
}

void emit_records(const std::string& path, std::span<const DifferentialDependency> dds,
                  std::span<const std::string> names,
                  const std::vector<std::vector<std::size_t>>* samples = nullptr) {
  if (path.empty()) return;
  auto o = open_output(path);
  for (std::size_t i = 0; i < dds.size(); ++i) {
    if (samples) {
      o << dd_record(dds[i], names, (*samples)[i]) << '\n';
    } else {
      o << dd_record(dds[i], names) << '\n';
    }
  }
}

double elapsed(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// ---------------------------------------------------------------------------

struct DiscoverFlags {
  DataFlags data;
  std::string output;
  std::string records;
  std::string form = "compressed";
  bool stats = false;
};

int cmd_discover(const DiscoverFlags& f, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  auto [data, cfg] = load(f.data);
  const auto names = data.schema.names();
  DiscoveryResult r = min_dd(data.relation, data.schema, cfg);
  std::vector<DifferentialDependency> dds;
  if (f.form == "base") {
    dds = r.base_dds;
    canonicalize(dds);
  } else {
    dds = r.dds;
  }
  emit_dds(f.output, out, dds, names);
  emit_records(f.records, dds, names);
  if (f.stats) {
    write_stats(err, r.stats);
    err << "seconds=" << elapsed(start) << '\n';
  }
  return 0;
}

struct OutlierFlags {
  DataFlags data;
  std::string output;
  bool stats = false;
};

int cmd_outliers(const OutlierFlags& f, std::ostream& out, std::ostream& err) {
  auto [data, cfg] = load(f.data);
  if (!f.data.epsilon && cfg.epsilon >= 1.0) {
    throw UsageError("outliers needs --epsilon below 1");
  }
  const RunReport r = run_outliers(data.relation, data.schema, cfg);
  const auto names = data.schema.names();
  if (f.output.empty()) {
    write_outlier_table(out, r.outliers, names);
  } else {
    auto o = open_output(f.output);
    write_outlier_table(o, r.outliers, names);
  }
  if (f.stats) {
    err << "# full run\n";
    write_stats(err, r.full.stats);
    err << "# approximate run\n";
    write_stats(err, r.approx.stats);
    err << "seconds=" << r.seconds << '\n';
  }
  return 0;
}

struct PlanFlags {
  std::optional<std::uint64_t> N;
  std::optional<std::uint64_t> M;
  std::optional<double> theta;
  std::optional<double> p;
  std::optional<double> rate;
  std::optional<double> coverage;
};

int cmd_plan(const PlanFlags& f, std::ostream& out) {
  const bool size_query = f.N || f.M || f.theta || f.p;
  const bool count_query = f.rate || f.coverage;
  if (!size_query && !count_query) {
    throw UsageError("plan needs --N --M --theta --p and/or --rate --coverage");
  }
  if (size_query) {
    if (!(f.N && f.M && f.theta && f.p)) {
      throw UsageError("sample size needs all of --N, --M, --theta and --p");
    }
    const auto ns = solve_sample_size(*f.N, *f.M, *f.theta, *f.p);
    out << "Ns=" << ns << '\n';
    out << "p_missed=" << p_missed(*f.N, *f.M, ns, *f.theta) << '\n';
  }
  if (count_query) {
    if (!(f.rate && f.coverage)) {
      throw UsageError("sample count needs both --rate and --coverage");
    }
    out << "ns=" << num_samples(*f.rate, *f.coverage) << '\n';
  }
  return 0;
}

struct SampleFlags {
  DataFlags data;
  std::optional<double> rate;
  std::optional<std::uint64_t> sample_size;
  std::size_t num_samples = 1;
  std::uint64_t seed = 1;
  std::string filter;
  std::string output;
  std::string records;
  std::string manifest;
};

int cmd_sample(const SampleFlags& f, std::ostream& out) {
  if (f.rate.has_value() == f.sample_size.has_value()) {
    throw UsageError("sample needs exactly one of --rate and --sample-size");
  }
  std::optional<FilterSpec> filter;
  if (!f.filter.empty()) filter = parse_filter(f.filter);
  auto [data, cfg] = load(f.data);
  if (data.relation.rows() < 2) throw DataError("sampling needs at least two tuples");

  SamplePlan plan;
  plan.N = pair_count(data.relation.rows());
  if (f.rate) {
    if (!(*f.rate > 0.0 && *f.rate <= 1.0)) throw UsageError("rate out of range (0, 1]");
    plan.Ns = sample_size_for_rate(plan.N, *f.rate);
  } else {
    plan.Ns = *f.sample_size;
  }
  plan.ns = f.num_samples;
  plan.seed = f.seed;
  plan.validate();

  const SampleRun run = run_sampled_discovery(data.relation, data.schema, cfg, plan);
  const auto names = data.schema.names();
  std::vector<DifferentialDependency> dds =
      filter ? filter_dds(run.combined, *filter, data.schema.granularities())
             : run.combined.combined();

  // Provenance: distinct sample ids per kept DD.
  std::map<std::pair<DifferentialFunction, AttrId>, std::vector<std::size_t>> prov;
  for (const auto& e : run.combined.entries) {
    auto& ids = prov[{e.dd.lhs, e.dd.rhs_attr}];
    for (auto s : e.samples) {
      if (ids.empty() || ids.back() != s) ids.push_back(s);
    }
  }
  std::vector<std::vector<std::size_t>> samples;
  for (const auto& dd : dds) samples.push_back(prov.at({dd.lhs, dd.rhs_attr}));

  emit_dds(f.output, out, dds, names);
  emit_records(f.records, dds, names, &samples);

  SampleManifest m;
  m.seed = plan.seed;
  m.N = plan.N;
  m.Ns = plan.Ns;
  m.ns = plan.ns;
  m.sample_seeds = run.seeds;
  m.combined_output = f.output;
  m.filter = filter ? to_string(*filter) : "";
  if (!f.output.empty()) {
    for (std::size_t i = 0; i < run.combined.per_sample.size(); ++i) {
      const std::string path = f.output + ".sample" + std::to_string(i);
      auto o = open_output(path);
      write_dd_text(o, run.combined.per_sample[i], names);
      m.outputs.push_back(path);
    }
  }
  if (!f.manifest.empty()) {
    auto o = open_output(f.manifest);
    o << manifest_json(m) << '\n';
  }
  return 0;
}

int cmd_compare(const std::string& ref_path, const std::string& combined_path,
                std::ostream& out) {
  NameTable names;
  const auto ref = read_dd_file(ref_path, names);
  const auto comb = read_dd_file(combined_path, names);
  if (ref.empty()) throw DataError("reference DD file '" + ref_path + "' is empty");
  const ErrorRates e = error_rates(ref, comb);
  out << "err_m=" << e.missed << '\n' << "err_uw=" << e.unwanted << '\n';
  return 0;
}

struct OracleFlags {
  DataFlags data;
  std::string output;
  bool combined = false;
  bool check = false;
};

int cmd_oracle(const OracleFlags& f, std::ostream& out) {
  auto [data, cfg] = load(f.data);
  const auto names = data.schema.names();
  OracleResult o;
  try {
    o = discover_brute(data.relation, data.schema, cfg);
  } catch (const std::invalid_argument& e) {
    throw DataError(e.what());
  }
  emit_dds(f.output, out, f.combined ? o.combined : o.dd_set, names);
  if (f.check) {
    auto mined = expand_to_base(min_dd(data.relation, data.schema, cfg).dds, data.schema);
    auto expected = o.dd_set;
    for (auto& dd : expected) dd.support = dd.interestingness = 0.0;
    bool same = mined.size() == expected.size();
    for (std::size_t i = 0; same && i < mined.size(); ++i) same = same_dd(mined[i], expected[i]);
    out << "# min_dd agrees: " << (same ? "yes" : "no") << '\n';
  }
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Differential dependency discovery and sampling toolkit", "ddmine"};
  app.require_subcommand(1);

  DiscoverFlags discover;
  auto* c_discover = app.add_subcommand("discover", "mine minimal DDs from a CSV file");
  add_data_flags(c_discover, discover.data);
  c_discover->add_option("--output", discover.output, "DD text file (default stdout)");
  c_discover->add_option("--records", discover.records, "JSON-lines record file");
  c_discover->add_option("--form", discover.form, "compressed or base")
      ->check(CLI::IsMember({"compressed", "base"}));
  c_discover->add_flag("--stats", discover.stats, "print counters to stderr");

  OutlierFlags outliers;
  auto* c_outliers = app.add_subcommand("outliers", "rank DDs by how much epsilon shrinks them");
  add_data_flags(c_outliers, outliers.data);
  c_outliers->add_option("--output", outliers.output, "report file (default stdout)");
  c_outliers->add_flag("--stats", outliers.stats, "print counters to stderr");

  PlanFlags plan;
  auto* c_plan = app.add_subcommand("plan", "sample size and sample count calculator");
  c_plan->add_option("--N", plan.N, "pairs in the full relation");
  c_plan->add_option("--M", plan.M, "pairs satisfying the DD");
  c_plan->add_option("--theta", plan.theta, "support threshold");
  c_plan->add_option("--p", plan.p, "acceptable miss probability");
  c_plan->add_option("--rate", plan.rate, "sampling rate");
  c_plan->add_option("--coverage", plan.coverage, "probability that a pair is sampled at least once");

  SampleFlags sample;
  auto* c_sample = app.add_subcommand("sample", "discover on pair samples and combine");
  add_data_flags(c_sample, sample.data);
  c_sample->add_option("--rate", sample.rate, "pairs per sample as a fraction of all pairs");
  c_sample->add_option("--sample-size", sample.sample_size, "pairs per sample");
  c_sample->add_option("--num-samples", sample.num_samples, "number of samples")
      ->check(CLI::PositiveNumber);
  c_sample->add_option("--seed", sample.seed, "master seed");
  c_sample->add_option("--filter", sample.filter,
                       "filecount=K, intervalratio=R or support=T");
  c_sample->add_option("--output", sample.output,
                       "combined DD file; per-sample files get a .sampleI suffix");
  c_sample->add_option("--records", sample.records, "JSON-lines record file");
  c_sample->add_option("--manifest", sample.manifest, "JSON run metadata file");

  std::string ref_path;
  std::string combined_path;
  auto* c_compare = app.add_subcommand("compare", "error rates of a DD set against a reference");
  c_compare->add_option("reference", ref_path, "reference DD file")->required();
  c_compare->add_option("combined", combined_path, "DD file to score")->required();

  OracleFlags oracle;
  auto* c_oracle = app.add_subcommand("oracle", "brute-force DD set of a tiny table");
  add_data_flags(c_oracle, oracle.data);
  c_oracle->add_option("--output", oracle.output, "DD text file (default stdout)");
  c_oracle->add_flag("--combined", oracle.combined, "print the combined form");
  c_oracle->add_flag("--check", oracle.check, "compare with the lattice search");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (c_discover->parsed()) return cmd_discover(discover, out, err);
    if (c_outliers->parsed()) return cmd_outliers(outliers, out, err);
    if (c_plan->parsed()) return cmd_plan(plan, out);
    if (c_sample->parsed()) return cmd_sample(sample, out);
    if (c_compare->parsed()) return cmd_compare(ref_path, combined_path, out);
    if (c_oracle->parsed()) return cmd_oracle(oracle, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const DataError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}

}  // namespace ddmine::cli
