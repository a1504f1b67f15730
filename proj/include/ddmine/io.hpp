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

#ifndef DDMINE_IO_HPP
#define DDMINE_IO_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ddmine/datamodel.hpp"
#include "ddmine/distance.hpp"

namespace ddmine {

// ---------------------------------------------------------------------------
// CSV

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// RFC 4180 style: comma separated, double-quote escaping, LF or CRLF.
/// Throws DataError for an empty input, a header without data rows, or a row
/// whose field count differs from the header.
CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::string& path);

// ---------------------------------------------------------------------------
// Run configuration

/// JSON file:
///   { "defaults": {"kind": ..., "divisor": ..., "granularity": ...},
///     "columns": [{"name", "kind", "divisor", "granularity", "ur",
///                  "taxonomy"}],
///     "epsilon": ..., "min_support": ..., "max_level": ... }
/// Only "columns" (non-empty, with "name") is required.
struct RunConfig {
  std::vector<AttributeSpec> columns;
  std::optional<double> epsilon;
  std::optional<double> min_support;
  std::optional<std::size_t> max_level;
};

/// Throws DataError on malformed JSON, unknown keys or bad values.
RunConfig parse_config(std::string_view json_text);
RunConfig load_config(const std::string& path);

/// Configured columns in config order; columns absent from the config are
/// ignored. Throws DataError naming a configured column missing from the CSV.
Relation ingest(const CsvTable& table, const RunConfig& config);

struct Dataset {
  Relation relation;
  DistanceSchema schema;
};

Dataset load_dataset(const std::string& csv_path, const std::string& config_path);

// ---------------------------------------------------------------------------
// DD text and records

/// Attribute name <-> id map. Unknown names get the next id when adding is
/// allowed.
class NameTable {
 public:
  NameTable() = default;
  explicit NameTable(std::vector<std::string> names);

  std::optional<AttrId> find(std::string_view name) const;
  AttrId intern(std::string_view name);
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, AttrId> index_;
};

/// Parses `A[lo,hi] & B[lo,hi] -> C[lo,hi]`. Names are interned in `names`.
/// Throws DataError on syntax errors.
DifferentialDependency parse_dd(std::string_view text, NameTable& names);

/// One DD per line in canonical text. Blank lines and lines starting with
/// '#' are skipped on reading.
void write_dd_text(std::ostream& out, std::span<const DifferentialDependency> dds,
                   std::span<const std::string> names);
std::vector<DifferentialDependency> read_dd_text(std::istream& in, NameTable& names);
std::vector<DifferentialDependency> read_dd_file(const std::string& path,
                                                 NameTable& names);

/// One JSON object per line: lhs terms, rhs, support, interestingness and,
/// when given, the ids of the samples that produced the DD.
std::string dd_record(const DifferentialDependency& dd,
                      std::span<const std::string> names,
                      std::span<const std::size_t> samples = {});

struct SampleManifest {
  std::uint64_t seed = 0;
  std::uint64_t N = 0;
  std::uint64_t Ns = 0;
  std::size_t ns = 0;
  std::vector<std::uint64_t> sample_seeds;
  std::vector<std::string> outputs;  // per-sample DD files
  std::string combined_output;
  std::string filter;  // empty when none
};

std::string manifest_json(const SampleManifest& m);

}  // namespace ddmine

#endif  // DDMINE_IO_HPP
