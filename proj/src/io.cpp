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

#include "ddmine/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ddmine/error.hpp"

namespace ddmine {

using json = nlohmann::json;

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  return in;
}

}  // namespace

// ---------------------------------------------------------------------------
// CSV

CsvTable read_csv(std::istream& in) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::size_t> lines;  // starting line of each record
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool field_started = false;
  std::size_t line = 1;
  std::size_t record_line = 1;
  char c;

  auto end_field = [&] {
    fields.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    // A blank line is not a record.
    if (!(fields.size() == 1 && fields[0].empty())) {
      records.push_back(std::move(fields));
      lines.push_back(record_line);
    }
    fields.clear();
  };

  while (in.get(c)) {
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          field.push_back('"');
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        if (field_started) {
          throw DataError("stray quote in CSV at line " + std::to_string(line));
        }
        quoted = true;
        field_started = true;
        break;
      case ',':
        end_field();
        break;
      case '\r':
        if (in.peek() != '\n') field.push_back(c);
        break;
      case '\n':
        end_record();
        ++line;
        record_line = line;
        break;
      default:
        field.push_back(c);
        field_started = true;
    }
  }
  if (quoted) throw DataError("unterminated quoted field in CSV");
  if (!field.empty() || !fields.empty()) end_record();

  if (records.empty()) throw DataError("CSV input is empty");
  CsvTable t;
  t.header = std::move(records.front());
  for (auto& h : t.header) h = std::string(trim(h));
  if (records.size() == 1) throw DataError("no data rows");
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != t.header.size()) {
      throw DataError("CSV line " + std::to_string(lines[r]) + " has " +
                      std::to_string(records[r].size()) + " fields, expected " +
                      std::to_string(t.header.size()));
    }
    t.rows.push_back(std::move(records[r]));
  }
  return t;
}

CsvTable read_csv_file(const std::string& path) {
  auto in = open_input(path);
  return read_csv(in);
}

// ---------------------------------------------------------------------------
// Config

namespace {

void check_keys(const json& obj, std::initializer_list<std::string_view> allowed,
                const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) throw DataError("unknown key '" + key + "' in " + where);
  }
}

template <class T>
T get_as(const json& obj, const char* key, const std::string& where) {
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw DataError("bad value for '" + std::string(key) + "' in " + where);
  }
}

void apply_column_fields(const json& obj, AttributeSpec& spec, const std::string& where) {
  if (obj.contains("kind")) {
    spec.kind = parse_attribute_kind(get_as<std::string>(obj, "kind", where));
  }
  if (obj.contains("divisor")) spec.divisor = get_as<double>(obj, "divisor", where);
  if (obj.contains("granularity")) {
    spec.granularity = get_as<Distance>(obj, "granularity", where);
  }
}

}  // namespace

RunConfig parse_config(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw DataError("config must be a JSON object");
  check_keys(root, {"defaults", "columns", "epsilon", "min_support", "max_level"},
             "config");

  AttributeSpec defaults;
  if (root.contains("defaults")) {
    const json& d = root["defaults"];
    if (!d.is_object()) throw DataError("config 'defaults' must be an object");
    check_keys(d, {"kind", "divisor", "granularity"}, "defaults");
    apply_column_fields(d, defaults, "defaults");
  }

  RunConfig cfg;
  if (!root.contains("columns") || !root["columns"].is_array() ||
      root["columns"].empty()) {
    throw DataError("config needs a non-empty 'columns' array");
  }
  for (const json& c : root["columns"]) {
    if (!c.is_object()) throw DataError("config column entries must be objects");
    if (!c.contains("name")) throw DataError("config column without 'name'");
    AttributeSpec spec = defaults;
    spec.name = get_as<std::string>(c, "name", "column");
    const std::string where = "column '" + spec.name + "'";
    check_keys(c, {"name", "kind", "divisor", "granularity", "ur", "taxonomy"}, where);
    apply_column_fields(c, spec, where);
    if (c.contains("ur")) spec.interesting_limit = get_as<Distance>(c, "ur", where);
    if (c.contains("taxonomy")) {
      spec.taxonomy = std::make_shared<const Taxonomy>(
          Taxonomy::parse(get_as<std::string>(c, "taxonomy", where)));
    }
    spec.validate();
    for (const auto& prev : cfg.columns) {
      if (prev.name == spec.name) throw DataError("column '" + spec.name + "' listed twice");
    }
    cfg.columns.push_back(std::move(spec));
  }
  if (root.contains("epsilon")) cfg.epsilon = get_as<double>(root, "epsilon", "config");
  if (root.contains("min_support")) {
    cfg.min_support = get_as<double>(root, "min_support", "config");
  }
  if (root.contains("max_level")) {
    cfg.max_level = get_as<std::size_t>(root, "max_level", "config");
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  auto in = open_input(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

Relation ingest(const CsvTable& table, const RunConfig& config) {
  std::vector<Column> columns;
  for (const auto& spec : config.columns) {
    std::size_t idx = table.header.size();
    for (std::size_t i = 0; i < table.header.size(); ++i) {
      if (table.header[i] == spec.name) idx = i;
    }
    if (idx == table.header.size()) {
      throw DataError("configured column '" + spec.name + "' not found in CSV header");
    }
    std::vector<std::string> cells;
    cells.reserve(table.rows.size());
    for (const auto& row : table.rows) cells.push_back(row[idx]);
    columns.push_back(Column::parse(spec, cells, 2));
  }
  return Relation(std::move(columns));
}

Dataset load_dataset(const std::string& csv_path, const std::string& config_path) {
  const RunConfig cfg = load_config(config_path);
  Relation rel = ingest(read_csv_file(csv_path), cfg);
  DistanceSchema schema = DistanceSchema::from_relation(rel);
  return {std::move(rel), std::move(schema)};
}

// ---------------------------------------------------------------------------
// DD text

NameTable::NameTable(std::vector<std::string> names) {
  for (const auto& n : names) intern(n);
}

std::optional<AttrId> NameTable::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

AttrId NameTable::intern(std::string_view name) {
  if (auto id = find(name)) return *id;
  const auto id = static_cast<AttrId>(names_.size());
  names_.emplace_back(name);
  index_.emplace(std::string(name), id);
  return id;
}

namespace {

Distance parse_bound(std::string_view s, std::string_view whole) {
  s = trim(s);
  Distance v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw DataError("bad interval bound in '" + std::string(whole) + "'");
  }
  return v;
}

Term parse_term(std::string_view s, NameTable& names, std::string_view whole) {
  s = trim(s);
  const auto open = s.find('[');
  const auto comma = s.find(',', open);
  if (open == std::string_view::npos || comma == std::string_view::npos ||
      s.empty() || s.back() != ']') {
    throw DataError("malformed term '" + std::string(s) + "' in '" + std::string(whole) + "'");
  }
  const std::string_view name = trim(s.substr(0, open));
  if (name.empty()) throw DataError("term without attribute in '" + std::string(whole) + "'");
  const Distance lo = parse_bound(s.substr(open + 1, comma - open - 1), whole);
  const Distance hi = parse_bound(s.substr(comma + 1, s.size() - comma - 2), whole);
  if (lo < 0 || lo > hi) throw DataError("invalid interval in '" + std::string(whole) + "'");
  return Term{names.intern(name), Interval(lo, hi)};
}

}  // namespace

DifferentialDependency parse_dd(std::string_view text, NameTable& names) {
  const auto arrow = text.find("->");
  if (arrow == std::string_view::npos) {
    throw DataError("missing '->' in '" + std::string(text) + "'");
  }
  std::vector<Term> lhs;
  std::string_view rest = text.substr(0, arrow);
  while (true) {
    const auto amp = rest.find('&');
    lhs.push_back(parse_term(rest.substr(0, amp), names, text));
    if (amp == std::string_view::npos) break;
    rest = rest.substr(amp + 1);
  }
  const Term rhs = parse_term(text.substr(arrow + 2), names, text);
  DifferentialDependency dd;
  try {
    dd.lhs = DifferentialFunction(std::move(lhs));
  } catch (const std::invalid_argument& e) {
    throw DataError(std::string(e.what()) + " in '" + std::string(text) + "'");
  }
  dd.rhs_attr = rhs.attr;
  dd.rhs = rhs.interval;
  if (dd.lhs.has_attr(dd.rhs_attr)) {
    throw DataError("rhs attribute also on the lhs in '" + std::string(text) + "'");
  }
  return dd;
}

void write_dd_text(std::ostream& out, std::span<const DifferentialDependency> dds,
                   std::span<const std::string> names) {
  for (const auto& dd : dds) out << format_dd(dd, names) << '\n';
}

std::vector<DifferentialDependency> read_dd_text(std::istream& in, NameTable& names) {
  std::vector<DifferentialDependency> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    out.push_back(parse_dd(t, names));
  }
  return out;
}

std::vector<DifferentialDependency> read_dd_file(const std::string& path,
                                                 NameTable& names) {
  auto in = open_input(path);
  return read_dd_text(in, names);
}

namespace {

json term_json(const Term& t, std::span<const std::string> names) {
  const std::string name = t.attr < names.size() ? names[t.attr] : "#" + std::to_string(t.attr);
  return json{{"attr", name}, {"lo", t.interval.lo}, {"hi", t.interval.hi}};
}

}  // namespace

std::string dd_record(const DifferentialDependency& dd,
                      std::span<const std::string> names,
                      std::span<const std::size_t> samples) {
  json lhs = json::array();
  for (const auto& t : dd.lhs.terms()) lhs.push_back(term_json(t, names));
  json rec{{"lhs", lhs},
           {"rhs", term_json(Term{dd.rhs_attr, dd.rhs}, names)},
           {"support", dd.support},
           {"interestingness", dd.interestingness},
           {"text", format_dd(dd, names)}};
  if (!samples.empty()) rec["samples"] = std::vector<std::size_t>(samples.begin(), samples.end());
  return rec.dump();
}

std::string manifest_json(const SampleManifest& m) {
  json j{{"seed", m.seed},
         {"N", m.N},
         {"Ns", m.Ns},
         {"ns", m.ns},
         {"rate", m.N == 0 ? 0.0 : static_cast<double>(m.Ns) / static_cast<double>(m.N)},
         {"sample_seeds", m.sample_seeds},
         {"outputs", m.outputs},
         {"combined", m.combined_output}};
  if (!m.filter.empty()) j["filter"] = m.filter;
  return j.dump(2);
}

}  // namespace ddmine
