// Copyright 2026 The trapsim Authors
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

// trapsim command-line front end.
//
//   trapsim run <config|bundled-name>
//   trapsim sweep <config> --key <k> --values v1,v2,...
//   trapsim modes <config>
//   trapsim tables [--out dir] [--target-only]
//
// Exit status: 0 ok, 1 configuration error, 2 physics or integration error.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "trapsim/trapsim.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitPhysics = 2;

trapsim::ScenarioConfig load_config(const std::string& arg) {
  if (std::filesystem::exists(arg)) return trapsim::ScenarioConfig::load(arg);
  if (trapsim::find_bundled(arg)) return trapsim::bundled_config(arg);
  throw trapsim::ConfigError("no config file or bundled scenario named '" + arg + "'");
}

std::vector<std::string> split_values(const std::string& list) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= list.size() && !list.empty()) {
    const auto comma = list.find(',', start);
    const auto piece = trapsim::detail::trim(list.substr(start, comma - start));
    if (!piece.empty()) out.push_back(piece);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trapped-ion i-Toffoli / i-select gate simulator"};
  app.require_subcommand(1);

  std::string config_arg;
  auto* run_cmd = app.add_subcommand("run", "Simulate one scenario and write report and traces");
  run_cmd->add_option("config", config_arg, "Config file or bundled scenario name")->required();

  std::string sweep_config;
  std::string sweep_key;
  std::string sweep_values;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a scenario for each value of one numeric key");
  sweep_cmd->add_option("config", sweep_config, "Config file or bundled scenario name")->required();
  sweep_cmd->add_option("--key", sweep_key, "Numeric config key to vary")->required();
  sweep_cmd->add_option("--values", sweep_values, "Comma-separated values")->required();

  std::string modes_config;
  auto* modes_cmd = app.add_subcommand("modes", "Print equilibrium positions and normal modes");
  modes_cmd->add_option("config", modes_config, "Config file or bundled scenario name")->required();

  std::string tables_out = "out/tables";
  bool target_only = false;
  auto* tables_cmd = app.add_subcommand("tables", "Reproduce every bundled reference table");
  tables_cmd->add_option("--out", tables_out, "Output directory (TRAPSIM_OUT takes precedence)");
  tables_cmd->add_flag("--target-only", target_only, "Skip the all-ion field comparison");

  auto* list_cmd = app.add_subcommand("list", "List bundled scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run_cmd) {
      const auto cfg = load_config(config_arg);
      const auto res = trapsim::run(cfg);
      std::cout << trapsim::render_report(cfg, res.report);
      std::cout << "outputs written to " << trapsim::resolve_out_dir(cfg).string() << "\n";
    } else if (*sweep_cmd) {
      const auto cfg = load_config(sweep_config);
      const auto values = split_values(sweep_values);
      const auto rows = trapsim::sweep(cfg, sweep_key, values);
      std::cout << "value,control,p_flip,p_no_flip\n";
      for (const auto& r : rows) {
        std::cout << r.value << "," << trapsim::pattern_signs(r.pattern) << "," << trapsim::detail::fmt_fixed(r.p_flip, 6)
                  << "," << trapsim::detail::fmt_fixed(r.p_no_flip, 6) << "\n";
      }
    } else if (*modes_cmd) {
      std::cout << trapsim::render_modes(load_config(modes_config));
    } else if (*tables_cmd) {
      const char* env = std::getenv("TRAPSIM_OUT");
      const std::filesystem::path dir = (env != nullptr && *env != '\0') ? env : tables_out;
      const bool ok = trapsim::reproduce_tables(dir, std::cout, !target_only);
      std::cout << (ok ? "all reference tables reproduced" : "some reference tables not reproduced")
                << " (target-only field); details in " << (dir / "tables.txt").string() << "\n";
    } else if (*list_cmd) {
      for (const auto& s : trapsim::bundled_scenarios()) std::cout << s.name << "  " << s.description << "\n";
    }
  } catch (const trapsim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const trapsim::PhysicsError& e) {
    std::cerr << "physics error: " << e.what() << "\n";
    return kExitPhysics;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPhysics;
  }
  return 0;
}
