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

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "crosscap/commands.hpp"
#include "crosscap/error.hpp"
#include "crosscap/report.hpp"

namespace {

struct Flags {
  int k = 0;
  int n = 0;
  double r = 0.0;
  double d = 0.0;
  double eta = 0.0;
  int samples = 0;
  std::uint64_t seed = 0;
  int net = 0;
  std::string out;
  std::string config;
  std::string rho_list;
  int resolution = 0;
};

void AddCommon(CLI::App* cmd, Flags* f) {
  cmd->add_option("--k", f->k, "curvature sign: -1, 0 or 1");
  cmd->add_option("--n", f->n, "dimension");
  cmd->add_option("--r", f->r, "disk radius");
  cmd->add_option("--d", f->d, "smoothing radius of the embedding (default r/50)");
  cmd->add_option("--eta", f->eta, "chart smoothing radius (default r/100)");
  cmd->add_option("--samples", f->samples, "Monte Carlo samples per ball");
  cmd->add_option("--seed", f->seed, "root seed");
  cmd->add_option("--net", f->net, "net size");
  cmd->add_option("--out", f->out, "output directory");
  cmd->add_option("--config", f->config, "key=value config file; flags override it");
}

}  // namespace

int main(int argc, char** argv) {
  using namespace crosscap;
  CLI::App app{"Crosscap embedding and convergence reports"};
  app.require_subcommand(1);
  Flags f;
  for (const std::string& name : CommandNames()) {
    CLI::App* cmd = app.add_subcommand(name);
    AddCommon(cmd, &f);
    if (name == "gh-report" || name == "swiss-cheese") {
      cmd->add_option("--rho-list", f.rho_list, "comma-separated rho values, multiples of r");
      cmd->add_option("--resolution", f.resolution, "mesh resolution (rim vertices)");
    }
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitInvalid;
  }
  CLI::App* cmd = app.get_subcommands().front();

  CommandOutput result;
  try {
    RunConfig cfg;
    cfg.command = cmd->get_name();
    if (!f.config.empty()) ApplyKeyValues(ReadKeyValueFile(f.config), &cfg);
    auto given = [cmd](const char* flag) { return cmd->count(flag) > 0; };
    if (given("--k")) cfg.k = f.k;
    if (given("--n")) cfg.n = f.n;
    if (given("--r")) cfg.r = f.r;
    if (given("--d")) cfg.d = f.d;
    if (given("--eta")) cfg.eta = f.eta;
    if (given("--samples")) cfg.samples = f.samples;
    if (given("--seed")) cfg.seed = f.seed;
    if (given("--net")) cfg.net = f.net;
    if (given("--out")) cfg.out = f.out;
    if (cmd->get_option_no_throw("--rho-list") != nullptr && given("--rho-list")) {
      cfg.rho_list = ParseDoubleList(f.rho_list);
    }
    if (cmd->get_option_no_throw("--resolution") != nullptr && given("--resolution")) {
      cfg.resolution = f.resolution;
    }
    const ThresholdRegistry reg = ThresholdRegistry::LoadDefault();
    result = RunCommand(cfg, reg);
    if (!cfg.out.empty()) {
      WriteOutputs(result, cfg.out);
    } else {
      std::cout << result.report.ToJson().dump(2) << "\n";
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  for (const Check& c : result.report.checks) {
    if (!c.passed) std::cerr << "FAIL " << c.name << " value=" << c.value << "\n";
  }
  if (result.report.error) std::cerr << "error: " << *result.report.error << "\n";
  return result.exit_code;
}
