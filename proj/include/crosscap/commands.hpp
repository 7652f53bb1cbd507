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

#include <string>
#include <utility>
#include <vector>

#include "crosscap/report.hpp"

namespace crosscap {

enum ExitCode : int { kExitPass = 0, kExitCheckFailed = 1, kExitInvalid = 2 };

struct CommandOutput {
  ReportDocument report;
  // (file stem suffix, table); the main table has an empty suffix.
  std::vector<std::pair<std::string, CsvTable>> tables;
  int exit_code = kExitPass;
};

inline const std::vector<std::string>& CommandNames() {
  static const std::vector<std::string> names = {
      "embedding-report", "immersion-report", "gh-report", "swiss-cheese",
      "self-test"};
  return names;
}

CommandOutput EmbeddingReport(const RunConfig& cfg, const ThresholdRegistry& reg);
CommandOutput ImmersionReport(const RunConfig& cfg, const ThresholdRegistry& reg);
CommandOutput GhReport(const RunConfig& cfg, const ThresholdRegistry& reg);
CommandOutput SwissCheese(const RunConfig& cfg, const ThresholdRegistry& reg);
// Regenerates each report from its resolved config, once serially and once
// in parallel, and compares everything but timing.
CommandOutput SelfTest(const RunConfig& cfg, const ThresholdRegistry& reg);

// Resolves and validates cfg, dispatches on cfg.command and converts library
// errors into a report stub with the matching exit code.
CommandOutput RunCommand(const RunConfig& cfg, const ThresholdRegistry& reg);

// Writes <out>/<command>.json and one CSV per table. An empty `out` writes
// nothing.
void WriteOutputs(const CommandOutput& result, const std::string& out);

}  // namespace crosscap
