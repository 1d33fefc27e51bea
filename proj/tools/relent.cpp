// Copyright 2026 The relent Authors
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

// relent: sweep driver.
//
//   relent run --config <path> [--output <path>] [--format csv|json] [--plot <path>]
//   relent validate --config <path>
//   relent limits
//
// Exit codes: 0 success, 1 I/O error, 2 config or usage error, 3 numeric or grid error.

#include <cstdio>
#include <iostream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "relent/entanglement.hpp"
#include "relent/errors.hpp"
#include "relent/sweep.hpp"

namespace {

constexpr int kExitIo = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

int run_command(const std::string& config_path, const std::string& output,
                const std::string& format, const std::string& plot) {
  relent::SweepConfig config = relent::load_config(config_path);
  if (!output.empty()) config.output.path = output;
  if (format == "csv") config.output.format = relent::OutputFormat::csv;
  if (format == "json") config.output.format = relent::OutputFormat::json;
  if (!plot.empty() &&
      (config.output.path.empty() || config.output.format != relent::OutputFormat::csv))
    throw relent::ConfigError("--plot: requires CSV output written to a file");

  const std::vector<relent::SweepRow> rows = relent::run(config);
  if (config.output.path.empty()) {
    std::cout << (config.output.format == relent::OutputFormat::csv ? relent::to_csv(rows)
                                                                    : relent::to_json(rows));
  } else {
    relent::emit(rows, config.output.format, config.output.path);
  }
  if (!plot.empty()) relent::emit_plotscript(rows, config.output.path, plot);
  return 0;
}

int limits_command() {
  const relent::ABCDValues v = relent::abcd_from_eta(1.0);
  const Eigen::Vector4d pt = relent::bell_pt_spectrum(v);
  const double e = relent::entanglement_measure(relent::bell_density_from_ABCD(v));
  std::printf("ultra-relativistic limit (eta = 1)\n");
  std::printf("  A   = %.6f\n  B   = %.6f\n  C   = %.6f\n  D   = %.6f\n", v.A, v.B, v.C, v.D);
  std::printf("  eta = %.6f\n  E   = %.6f\n", v.eta, e);
  std::printf("  PT spectrum = {%.6f, %.6f, %.6f, %.6f}\n", pt(0), pt(1), pt(2), pt(3));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement of boosted two-particle spin states"};
  app.require_subcommand(1);

  std::string config_path, output, format, plot;
  CLI::App* run = app.add_subcommand("run", "Evaluate a sweep and write the rows");
  run->add_option("--config", config_path, "JSON sweep configuration")->required();
  run->add_option("--output", output, "Output path (overrides output.path)");
  run->add_option("--format", format, "Output format (overrides output.format)")
      ->check(CLI::IsMember({"csv", "json"}));
  run->add_option("--plot", plot, "Also write a gnuplot script here");

  std::string validate_path;
  CLI::App* validate = app.add_subcommand("validate", "Check a configuration and print it");
  validate->add_option("--config", validate_path, "JSON sweep configuration")->required();

  CLI::App* limits = app.add_subcommand("limits", "Print the ultra-relativistic reference table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*run) return run_command(config_path, output, format, plot);
    if (*validate) {
      std::cout << relent::serialize_config(relent::load_config(validate_path));
      return 0;
    }
    if (*limits) return limits_command();
  } catch (const relent::ConfigError& e) {
    std::cerr << "relent: " << e.what() << "\n";
    return kExitConfig;
  } catch (const relent::NumericError& e) {
    std::cerr << "relent: numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::domain_error& e) {
    std::cerr << "relent: numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "relent: " << e.what() << "\n";
    return kExitIo;
  }
  return 0;
}
