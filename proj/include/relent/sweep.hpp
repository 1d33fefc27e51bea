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

#pragma once

// Scenario sweeps over (delta, beta) cells and their CSV/JSON/gnuplot output.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace relent {

enum class Scenario {
  spin_bell_momentum_product,
  momentum_bell_spin_up,
  both_bell_correlations,
  fidelity_only,
};

std::string_view scenario_name(Scenario s);

struct GridConfig {
  int n_r = 32;
  int n_theta = 32;
  int n_phi = 16;
  std::optional<double> p_max;  ///< empty means "auto": 6 sqrt(delta)
};

enum class OutputFormat { csv, json };

struct OutputConfig {
  std::string path;  ///< empty writes to stdout
  OutputFormat format = OutputFormat::csv;
};

struct SweepConfig {
  Scenario scenario = Scenario::spin_bell_momentum_product;
  std::vector<double> betas = default_betas();
  std::vector<double> deltas{1.0};
  GridConfig grid;
  int delta_sign = -1;
  bool analytic_limit = false;
  Eigen::Vector3d direction_a = Eigen::Vector3d::UnitX();
  Eigen::Vector3d direction_b = Eigen::Vector3d::UnitX();
  std::uint64_t seed = 42;
  int threads = 0;  ///< 0 = hardware concurrency
  OutputConfig output;

  /// 0.00, 0.05, ..., 0.95, 0.99.
  static std::vector<double> default_betas();
};

/// Parses and validates a JSON config document. Unknown fields are
/// rejected. Throws ConfigError naming the offending field, or the line and
/// column for syntax errors.
SweepConfig parse_config(std::string_view text);
SweepConfig load_config(const std::string& path);

/// Canonical JSON form; parse_config(serialize_config(c)) == c.
std::string serialize_config(const SweepConfig& config);

/// Throws ConfigError on the first violated constraint.
void validate(const SweepConfig& config);

bool operator==(const SweepConfig& a, const SweepConfig& b);

struct SweepRow {
  double beta = 0;
  double delta = 0;
  std::optional<double> fidelity, E, min_pt_eig;
  std::optional<double> A, B, C, D, eta;
  std::optional<double> ineq15_margin, ineq16_margin, identity14_residual;
  std::optional<double> product_distance;
  std::optional<double> qcorr, ccorr;
};

/// Column names in output order.
const std::vector<std::string>& csv_columns();

/// Rows in config order (delta outer, beta inner). Cells run in parallel on
/// `config.threads` workers; each cell is evaluated serially, so the output
/// does not depend on the worker count.
std::vector<SweepRow> run(const SweepConfig& config);

std::string to_csv(const std::vector<SweepRow>& rows);
std::string to_json(const std::vector<SweepRow>& rows);
std::vector<SweepRow> rows_from_json(std::string_view text);

/// Writes rows in `format` to `path`. Throws std::invalid_argument for empty
/// rows and std::runtime_error with the path on I/O failure.
void emit(const std::vector<SweepRow>& rows, OutputFormat format, const std::string& path);

/// gnuplot script plotting E(beta) and F(beta) from the CSV at `csv_path`,
/// one series per delta. Quantities with no populated cells are skipped.
std::string plotscript(const std::vector<SweepRow>& rows, const std::string& csv_path);
void emit_plotscript(const std::vector<SweepRow>& rows, const std::string& csv_path,
                     const std::string& path);

}  // namespace relent
