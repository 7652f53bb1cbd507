// Copyright 2026 The Crosscap Authors. All Rights Reserved.
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

#include "crosscap/report.hpp"

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "crosscap/error.hpp"

namespace crosscap {
namespace {

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T ParseNumber(const std::string& key, const std::string& text) {
  std::istringstream in(text);
  T v{};
  in >> v;
  Require(!in.fail() && (in >> std::ws).eof(), ErrorCode::kInvalidInput,
          "bad value for " + key + ": '" + text + "'");
  return v;
}

const char* RelationName(Relation r) {
  switch (r) {
    case Relation::kLe: return "<=";
    case Relation::kLt: return "<";
    case Relation::kGe: return ">=";
    case Relation::kGt: return ">";
    case Relation::kEq: return "==";
    case Relation::kTrue: return "true";
  }
  return "?";
}

bool Holds(double v, Relation r, double limit) {
  switch (r) {
    case Relation::kLe: return v <= limit;
    case Relation::kLt: return v < limit;
    case Relation::kGe: return v >= limit;
    case Relation::kGt: return v > limit;
    case Relation::kEq: return v == limit;
    case Relation::kTrue: return v != 0.0;
  }
  return false;
}

// JSON numbers cannot be NaN or infinite.
nlohmann::json Number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

}  // namespace

std::map<std::string, std::string> ReadKeyValueFile(const std::string& path) {
  std::ifstream in(path);
  Require(in.good(), ErrorCode::kInvalidInput, "cannot read config file " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    Require(eq != std::string::npos, ErrorCode::kInvalidInput,
            path + ":" + std::to_string(number) + ": expected key=value");
    kv[Trim(line.substr(0, eq))] = Trim(line.substr(eq + 1));
  }
  return kv;
}

std::vector<double> ParseDoubleList(const std::string& csv) {
  std::vector<double> out;
  std::stringstream in(csv);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = Trim(item);
    Require(!item.empty(), ErrorCode::kInvalidInput, "empty entry in list '" + csv + "'");
    out.push_back(ParseNumber<double>("list", item));
  }
  Require(!out.empty(), ErrorCode::kInvalidInput, "empty list");
  return out;
}

void ApplyKeyValues(const std::map<std::string, std::string>& kv, RunConfig* cfg) {
  for (const auto& [key, value] : kv) {
    if (key == "k") cfg->k = ParseNumber<int>(key, value);
    else if (key == "n") cfg->n = ParseNumber<int>(key, value);
    else if (key == "r") cfg->r = ParseNumber<double>(key, value);
    else if (key == "d") cfg->d = ParseNumber<double>(key, value);
    else if (key == "eta") cfg->eta = ParseNumber<double>(key, value);
    else if (key == "samples") cfg->samples = ParseNumber<int>(key, value);
    else if (key == "seed") cfg->seed = ParseNumber<std::uint64_t>(key, value);
    else if (key == "net") cfg->net = ParseNumber<int>(key, value);
    else if (key == "rho-list" || key == "rho_list") cfg->rho_list = ParseDoubleList(value);
    else if (key == "resolution") cfg->resolution = ParseNumber<int>(key, value);
    else if (key == "out") cfg->out = value;
    else Fail(ErrorCode::kInvalidInput, "unknown config key '" + key + "'");
  }
}

RunConfig Resolve(RunConfig cfg) {
  if (cfg.d <= 0.0) cfg.d = cfg.r / 50.0;
  if (cfg.eta <= 0.0) cfg.eta = cfg.r / 100.0;
  if (cfg.net <= 0) {
    if (cfg.command == "immersion-report") cfg.net = 500;
    else if (cfg.command == "gh-report") cfg.net = 150;
    else if (cfg.command == "swiss-cheese") cfg.net = 0;
    else cfg.net = 300;
  }
  return cfg;
}

void Validate(const RunConfig& cfg) {
  auto need = [](bool ok, const std::string& what) {
    Require(ok, ErrorCode::kInvalidInput, what);
  };
  need(cfg.k >= -1 && cfg.k <= 1, "k must be -1, 0 or 1");
  need(cfg.n >= 2 && cfg.n <= 7, "n must be in [2, 7]");
  need(cfg.r > 0.0 && std::isfinite(cfg.r), "r must be positive");
  need(cfg.k != 1 || cfg.r < std::acos(-1.0) / 2.0, "k = 1 needs r < pi/2");
  need(cfg.d > 0.0 && cfg.d < cfg.r / 10.0, "d must lie in (0, r/10)");
  need(cfg.eta > 0.0 && cfg.eta < cfg.r / 4.0, "eta must lie in (0, r/4)");
  need(cfg.samples >= 1, "samples must be positive");
  need(cfg.net >= 0, "net must be nonnegative");
  need(cfg.resolution >= 16, "resolution must be at least 16");
  for (double rho : cfg.rho_list) {
    need(rho > 0.0 && rho < 0.25, "rho-list entries must lie in (0, 1/4)");
  }
  if (cfg.command == "gh-report" || cfg.command == "swiss-cheese") {
    need(cfg.k == 0 && cfg.n == 2, cfg.command + " supports only k = 0, n = 2");
    need(!cfg.rho_list.empty(), "rho-list must be nonempty");
  }
}

nlohmann::json ToJson(const RunConfig& cfg) {
  return nlohmann::json{{"command", cfg.command}, {"k", cfg.k},
                        {"n", cfg.n},             {"r", cfg.r},
                        {"d", cfg.d},             {"eta", cfg.eta},
                        {"samples", cfg.samples}, {"seed", cfg.seed},
                        {"net", cfg.net},         {"rhoList", cfg.rho_list},
                        {"resolution", cfg.resolution}};
}

RunConfig RunConfigFromJson(const nlohmann::json& j) {
  RunConfig cfg;
  try {
    cfg.command = j.at("command").get<std::string>();
    cfg.k = j.at("k").get<int>();
    cfg.n = j.at("n").get<int>();
    cfg.r = j.at("r").get<double>();
    cfg.d = j.at("d").get<double>();
    cfg.eta = j.at("eta").get<double>();
    cfg.samples = j.at("samples").get<int>();
    cfg.seed = j.at("seed").get<std::uint64_t>();
    cfg.net = j.at("net").get<int>();
    cfg.rho_list = j.at("rhoList").get<std::vector<double>>();
    cfg.resolution = j.at("resolution").get<int>();
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kInvalidInput, std::string("bad resolved config: ") + e.what());
  }
  return cfg;
}

ThresholdRegistry ThresholdRegistry::Load(const std::string& path) {
  std::ifstream in(path);
  Require(in.good(), ErrorCode::kInvalidInput, "cannot read thresholds registry " + path);
  ThresholdRegistry reg;
  reg.path_ = path;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string key, value;
    if (!(fields >> key)) continue;
    ThresholdEntry e;
    Require(static_cast<bool>(fields >> value >> e.seed >> e.commit),
            ErrorCode::kInvalidInput,
            path + ":" + std::to_string(number) + ": expected key value seed commit");
    e.value = ParseNumber<double>(key, value);
    std::getline(fields >> std::ws, e.note);
    Require(reg.entries_.emplace(key, e).second, ErrorCode::kInvalidInput,
            path + ":" + std::to_string(number) + ": duplicate key " + key);
  }
  return reg;
}

std::string ThresholdRegistry::DefaultPath() {
  if (const char* env = std::getenv("CROSSCAP_THRESHOLDS"); env != nullptr && *env) {
    return env;
  }
  return CROSSCAP_DEFAULT_THRESHOLDS;
}

ThresholdRegistry ThresholdRegistry::LoadDefault() { return Load(DefaultPath()); }

const ThresholdEntry& ThresholdRegistry::Entry(const std::string& key) const {
  const auto it = entries_.find(key);
  Require(it != entries_.end(), ErrorCode::kInvalidInput,
          "threshold '" + key + "' missing from " + path_);
  return it->second;
}

double ThresholdRegistry::Get(const std::string& key) const { return Entry(key).value; }

Check Compare(std::string name, double value, Relation rel, double limit,
              std::string threshold) {
  Check c;
  c.name = std::move(name);
  c.value = value;
  c.relation = rel;
  c.limit = limit;
  c.threshold = std::move(threshold);
  c.passed = Holds(value, rel, limit);
  return c;
}

Check Flag(std::string name, bool ok, std::string detail) {
  Check c = Compare(std::move(name), ok ? 1.0 : 0.0, Relation::kTrue, 0.0);
  c.detail = std::move(detail);
  return c;
}

bool ReportDocument::Passed() const {
  if (error) return false;
  for (const Check& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

void ReportDocument::Cite(const ThresholdRegistry& reg, const std::string& key) {
  cited[key] = reg.Entry(key);
  registry_path = reg.path();
}

Check& ReportDocument::AddFrozen(std::string name, double value, Relation rel,
                                 const ThresholdRegistry& reg, const std::string& key) {
  Cite(reg, key);
  checks.push_back(Compare(std::move(name), value, rel, reg.Get(key), key));
  return checks.back();
}

nlohmann::json ReportDocument::ToJson(bool with_timing) const {
  nlohmann::json j;
  j["schemaVersion"] = kSchemaVersion;
  j["toolVersion"] = kToolVersion;
  j["command"] = command;
  j["resolvedConfig"] = config;
  j["passed"] = Passed();
  nlohmann::json rows = nlohmann::json::array();
  for (const Check& c : checks) {
    nlohmann::json row{{"name", c.name},
                       {"passed", c.passed},
                       {"value", Number(c.value)},
                       {"relation", RelationName(c.relation)}};
    if (c.relation != Relation::kTrue) row["limit"] = Number(c.limit);
    if (!c.threshold.empty()) row["threshold"] = c.threshold;
    if (!c.detail.empty()) row["detail"] = c.detail;
    if (with_timing) row["millis"] = c.millis;
    rows.push_back(std::move(row));
  }
  j["checks"] = std::move(rows);
  nlohmann::json thresholds = nlohmann::json::object();
  for (const auto& [key, e] : cited) {
    thresholds[key] = {{"value", Number(e.value)}, {"seed", e.seed}, {"commit", e.commit}};
  }
  j["thresholds"] = {{"registry", registry_path}, {"entries", std::move(thresholds)}};
  j["data"] = extra;
  if (error) j["error"] = *error;
  if (with_timing) j["millis"] = millis;
  return j;
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string ToCsv(const CsvTable& t) {
  std::string out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += CsvField(cells[i]);
    }
    out += "\r\n";
  };
  line(t.header);
  for (const auto& row : t.rows) line(row);
  return out;
}

std::string FormatDouble(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void WriteFileAtomic(const std::string& path, const std::string& content) {
  const std::filesystem::path target(path);
  if (target.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(target.parent_path(), ec);
  }
  const std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    Require(out.good(), ErrorCode::kInvalidInput, "cannot write " + tmp);
    out << content;
    out.flush();
    Require(out.good(), ErrorCode::kInvalidInput, "write failed for " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    Fail(ErrorCode::kInvalidInput, "cannot rename into " + path + ": " + ec.message());
  }
}

}  // namespace crosscap
