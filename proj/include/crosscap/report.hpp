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

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace crosscap {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

// Fields left at 0 are resolved per command (see Resolve).
struct RunConfig {
  std::string command;
  int k = 0;
  int n = 2;
  double r = 1.0;
  double d = 0.0;
  double eta = 0.0;
  int samples = 256;
  std::uint64_t seed = 1;
  int net = 0;
  std::vector<double> rho_list = {0.2, 0.1, 0.05};  // multiples of r
  int resolution = 64;
  std::string out;
};

// Flat key=value text, one pair per line, '#' starts a comment.
std::map<std::string, std::string> ReadKeyValueFile(const std::string& path);
void ApplyKeyValues(const std::map<std::string, std::string>& kv, RunConfig* cfg);
std::vector<double> ParseDoubleList(const std::string& csv);

RunConfig Resolve(RunConfig cfg);
void Validate(const RunConfig& cfg);

nlohmann::json ToJson(const RunConfig& cfg);
RunConfig RunConfigFromJson(const nlohmann::json& j);

struct ThresholdEntry {
  double value = 0.0;
  std::string seed;    // "-" for fixed tolerances
  std::string commit;
  std::string note;
};

// Registry of frozen thresholds. Line format:
//   key value seed commit [note...]
class ThresholdRegistry {
 public:
  static ThresholdRegistry Load(const std::string& path);
  // CROSSCAP_THRESHOLDS, else the registry shipped with the source tree.
  static ThresholdRegistry LoadDefault();
  static std::string DefaultPath();

  double Get(const std::string& key) const;
  const ThresholdEntry& Entry(const std::string& key) const;
  bool Has(const std::string& key) const { return entries_.count(key) != 0; }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::map<std::string, ThresholdEntry> entries_;
};

enum class Relation { kLe, kLt, kGe, kGt, kEq, kTrue };

struct Check {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double limit = 0.0;
  Relation relation = Relation::kTrue;
  std::string threshold;  // registry key, empty if none
  std::string detail;
  double millis = 0.0;
};

Check Compare(std::string name, double value, Relation rel, double limit,
              std::string threshold = {});
Check Flag(std::string name, bool ok, std::string detail = {});

struct ReportDocument {
  std::string command;
  nlohmann::json config;
  std::vector<Check> checks;
  nlohmann::json extra = nlohmann::json::object();
  std::string registry_path;
  std::map<std::string, ThresholdEntry> cited;
  std::optional<std::string> error;
  double millis = 0.0;

  bool Passed() const;
  void Add(Check c) { checks.push_back(std::move(c)); }
  void Cite(const ThresholdRegistry& reg, const std::string& key);
  // Adds a comparison against a registry entry and cites it.
  Check& AddFrozen(std::string name, double value, Relation rel,
                   const ThresholdRegistry& reg, const std::string& key);
  nlohmann::json ToJson(bool with_timing = true) const;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string CsvField(const std::string& s);
std::string ToCsv(const CsvTable& t);
std::string FormatDouble(double v);

void WriteFileAtomic(const std::string& path, const std::string& content);

}  // namespace crosscap
