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

#include "relent/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "relent/correlations.hpp"
#include "relent/entanglement.hpp"
#include "relent/errors.hpp"

namespace relent {

using json = nlohmann::ordered_json;

namespace {

constexpr double kMaxBeta = 1 - 1e-9;
constexpr double kTransverseBeta = 1 - 1e-6;

const char* const kScenarioNames[] = {"spin_bell_momentum_product", "momentum_bell_spin_up",
                                      "both_bell_correlations", "fidelity_only"};

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ConfigError("config: " + field + ": " + what);
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void reject_unknown(const json& obj, const std::string& where,
                    std::initializer_list<const char*> known) {
  const std::set<std::string> allowed(known.begin(), known.end());
  for (const auto& [key, _] : obj.items())
    if (!allowed.count(key)) fail(where.empty() ? key : where + "." + key, "unknown field");
}

double number(const json& j, const std::string& field) {
  if (!j.is_number()) fail(field, "expected a number");
  return j.get<double>();
}

std::int64_t integer(const json& j, const std::string& field) {
  if (!j.is_number_integer()) fail(field, "expected an integer");
  return j.get<std::int64_t>();
}

std::vector<double> number_list(const json& j, const std::string& field) {
  if (j.is_number()) return {j.get<double>()};
  if (!j.is_array()) fail(field, "expected a number or an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(number(j[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

Eigen::Vector3d vector3(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 3) fail(field, "expected an array of 3 numbers");
  Eigen::Vector3d v;
  for (int i = 0; i < 3; ++i) v(i) = number(j[i], field + "[" + std::to_string(i) + "]");
  return v;
}

Scenario parse_scenario(const json& j) {
  if (!j.is_string()) fail("scenario", "expected a string");
  const std::string s = j.get<std::string>();
  for (int i = 0; i < 4; ++i)
    if (s == kScenarioNames[i]) return Scenario(i);
  fail("scenario", "unknown scenario '" + s + "'");
}

bool is_transverse(const Eigen::Vector3d& v) { return std::abs(v.x()) <= 1e-12; }

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

SweepRow evaluate_cell(const SweepConfig& c, double delta, double beta,
                       const QuadratureGrid& grid) {
  const Boostd boost(beta);
  const WignerModel model =
      c.analytic_limit ? WignerModel::ultra_relativistic_limit : WignerModel::exact;
  const Parallelism serial{1};
  SweepRow row;
  row.beta = beta;
  row.delta = delta;

  const auto record_measure = [&row](const SpinDensity& rho) {
    row.E = entanglement_measure(rho);
    row.min_pt_eig = partial_transpose_spectrum(rho)(0);
  };

  switch (c.scenario) {
    case Scenario::spin_bell_momentum_product: {
      const GaussianProduct dist(delta);
      const BipartiteState state(dist, bell_phi_plus());
      record_measure(reduced_spin_density(state, boost, grid, model, serial));
      const ABCDValues v = bell_ABCD(dist, boost, grid, model, serial);
      row.A = v.A;
      row.B = v.B;
      row.C = v.C;
      row.D = v.D;
      row.eta = v.eta;
      if (model == WignerModel::exact) {
        row.fidelity = fidelity(state, boost, grid, serial).fidelity;
        row.product_distance = product_distance(momentum_density_samples(
            state, boost, default_sample_pairs(std::sqrt(delta), 64, c.seed)));
      }
      break;
    }
    case Scenario::momentum_bell_spin_up: {
      const EntangledMomentum dist(delta, c.delta_sign);
      const XStateStats stats = xstate_stats(dist, boost, grid, model, serial);
      record_measure(stats.density());
      const SeparabilityVerdict verdict = separability_verdict(stats);
      row.ineq15_margin = verdict.margin_ad;
      row.ineq16_margin = verdict.margin_bc;
      row.identity14_residual = stats.identity_residual();
      break;
    }
    case Scenario::both_bell_correlations: {
      const EntangledMomentum dist(delta, c.delta_sign);
      record_measure(
          reduced_spin_density(BipartiteState(dist, bell_phi_plus()), boost, grid, model, serial));
      const ObservableDirection a(c.direction_a), b(c.direction_b);
      row.qcorr = quantum_correlation(a, b, dist, bell_phi_plus(), boost, grid, model, serial);
      if (!is_transverse(c.direction_a) && !is_transverse(c.direction_b))
        row.ccorr = classical_correlation(a, b);
      break;
    }
    case Scenario::fidelity_only: {
      const BipartiteState state(GaussianProduct(delta), bell_phi_plus());
      row.fidelity = fidelity(state, boost, grid, serial).fidelity;
      break;
    }
  }
  return row;
}

std::vector<std::optional<double>> row_values(const SweepRow& r) {
  return {r.beta, r.delta, r.fidelity, r.E, r.min_pt_eig, r.A, r.B, r.C, r.D, r.eta,
          r.ineq15_margin, r.ineq16_margin, r.identity14_residual, r.product_distance,
          r.qcorr, r.ccorr};
}

std::vector<std::optional<double>*> row_fields(SweepRow& r) {
  return {&r.fidelity, &r.E, &r.min_pt_eig, &r.A, &r.B, &r.C, &r.D, &r.eta,
          &r.ineq15_margin, &r.ineq16_margin, &r.identity14_residual, &r.product_distance,
          &r.qcorr, &r.ccorr};
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  out << content;
  out.close();
  if (!out) throw std::runtime_error(path + ": write failed");
}

}  // namespace

std::string_view scenario_name(Scenario s) { return kScenarioNames[int(s)]; }

std::vector<double> SweepConfig::default_betas() {
  std::vector<double> betas;
  for (int i = 0; i <= 19; ++i) betas.push_back(i / 20.0);
  betas.push_back(0.99);
  return betas;
}

SweepConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte);
    throw ConfigError("config: line " + std::to_string(line) + ", column " +
                      std::to_string(col) + ": " + e.what());
  }
  if (!doc.is_object()) fail("<root>", "expected a JSON object");
  reject_unknown(doc, "",
                 {"scenario", "betas", "delta", "grid", "delta_sign", "analytic_limit",
                  "directions", "seed", "threads", "output"});

  SweepConfig c;
  if (doc.contains("scenario")) c.scenario = parse_scenario(doc["scenario"]);
  if (doc.contains("betas")) c.betas = number_list(doc["betas"], "betas");
  if (doc.contains("delta")) c.deltas = number_list(doc["delta"], "delta");
  if (doc.contains("grid")) {
    const json& g = doc["grid"];
    if (!g.is_object()) fail("grid", "expected an object");
    reject_unknown(g, "grid", {"n_r", "n_theta", "n_phi", "p_max"});
    if (g.contains("n_r")) c.grid.n_r = int(integer(g["n_r"], "grid.n_r"));
    if (g.contains("n_theta")) c.grid.n_theta = int(integer(g["n_theta"], "grid.n_theta"));
    if (g.contains("n_phi")) c.grid.n_phi = int(integer(g["n_phi"], "grid.n_phi"));
    if (g.contains("p_max")) {
      const json& pm = g["p_max"];
      if (pm.is_string()) {
        if (pm.get<std::string>() != "auto") fail("grid.p_max", "expected \"auto\" or a number");
        c.grid.p_max.reset();
      } else {
        c.grid.p_max = number(pm, "grid.p_max");
      }
    }
  }
  if (doc.contains("delta_sign")) c.delta_sign = int(integer(doc["delta_sign"], "delta_sign"));
  if (doc.contains("analytic_limit")) {
    if (!doc["analytic_limit"].is_boolean()) fail("analytic_limit", "expected true or false");
    c.analytic_limit = doc["analytic_limit"].get<bool>();
  }
  if (doc.contains("directions")) {
    const json& d = doc["directions"];
    if (!d.is_object()) fail("directions", "expected an object");
    reject_unknown(d, "directions", {"a", "b"});
    if (d.contains("a")) c.direction_a = vector3(d["a"], "directions.a");
    if (d.contains("b")) c.direction_b = vector3(d["b"], "directions.b");
  }
  if (doc.contains("seed")) {
    const json& s = doc["seed"];
    if (!s.is_number_unsigned()) fail("seed", "expected a non-negative integer");
    c.seed = s.get<std::uint64_t>();
  }
  if (doc.contains("threads")) c.threads = int(integer(doc["threads"], "threads"));
  if (doc.contains("output")) {
    const json& o = doc["output"];
    if (!o.is_object()) fail("output", "expected an object");
    reject_unknown(o, "output", {"path", "format"});
    if (o.contains("path")) {
      if (!o["path"].is_string()) fail("output.path", "expected a string");
      c.output.path = o["path"].get<std::string>();
    }
    if (o.contains("format")) {
      const json& f = o["format"];
      if (f == "csv") {
        c.output.format = OutputFormat::csv;
      } else if (f == "json") {
        c.output.format = OutputFormat::json;
      } else {
        fail("output.format", "expected \"csv\" or \"json\"");
      }
    }
  }
  validate(c);
  return c;
}

SweepConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path + ": cannot open config");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_config(ss.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

void validate(const SweepConfig& c) {
  if (c.betas.empty()) fail("betas", "must not be empty");
  for (std::size_t i = 0; i < c.betas.size(); ++i) {
    const double b = c.betas[i];
    const std::string field = "betas[" + std::to_string(i) + "]";
    if (!std::isfinite(b) || b < 0 || b > kMaxBeta)
      fail(field, format_double(b) + " outside [0, 1 - 1e-9]");
    if (i > 0 && b < c.betas[i - 1]) fail(field, "betas must be ascending");
  }
  if (c.deltas.empty()) fail("delta", "must not be empty");
  for (std::size_t i = 0; i < c.deltas.size(); ++i)
    if (!std::isfinite(c.deltas[i]) || c.deltas[i] <= 0)
      fail("delta[" + std::to_string(i) + "]", "must be positive and finite");
  if (c.grid.n_r < 2) fail("grid.n_r", "must be >= 2");
  if (c.grid.n_theta < 2) fail("grid.n_theta", "must be >= 2");
  if (c.grid.n_phi < 2) fail("grid.n_phi", "must be >= 2");
  if (c.grid.p_max && !(std::isfinite(*c.grid.p_max) && *c.grid.p_max > 0))
    fail("grid.p_max", "must be positive");
  if (c.delta_sign != 1 && c.delta_sign != -1) fail("delta_sign", "must be +1 or -1");
  for (const auto& [v, field] : {std::pair{&c.direction_a, "directions.a"},
                                 std::pair{&c.direction_b, "directions.b"}})
    if (!v->allFinite() || std::abs(v->norm() - 1) > 1e-12) fail(field, "must be a unit vector");
  if (c.threads < 0) fail("threads", "must be >= 0");
  if (c.scenario == Scenario::fidelity_only && c.analytic_limit)
    fail("analytic_limit", "fidelity is undefined in the analytic limit");
  if (c.scenario == Scenario::both_bell_correlations && c.betas.back() >= kTransverseBeta &&
      (is_transverse(c.direction_a) || is_transverse(c.direction_b)))
    fail("directions", "transverse direction is degenerate for beta >= 1 - 1e-6");
}

std::string serialize_config(const SweepConfig& c) {
  json doc;
  doc["scenario"] = std::string(scenario_name(c.scenario));
  doc["betas"] = c.betas;
  doc["delta"] = c.deltas;
  doc["grid"] = {{"n_r", c.grid.n_r}, {"n_theta", c.grid.n_theta}, {"n_phi", c.grid.n_phi}};
  if (c.grid.p_max)
    doc["grid"]["p_max"] = *c.grid.p_max;
  else
    doc["grid"]["p_max"] = "auto";
  doc["delta_sign"] = c.delta_sign;
  doc["analytic_limit"] = c.analytic_limit;
  const auto vec = [](const Eigen::Vector3d& v) { return json::array({v.x(), v.y(), v.z()}); };
  doc["directions"] = {{"a", vec(c.direction_a)}, {"b", vec(c.direction_b)}};
  doc["seed"] = c.seed;
  doc["threads"] = c.threads;
  doc["output"] = {{"path", c.output.path},
                   {"format", c.output.format == OutputFormat::csv ? "csv" : "json"}};
  return doc.dump(2) + "\n";
}

bool operator==(const SweepConfig& a, const SweepConfig& b) {
  return a.scenario == b.scenario && a.betas == b.betas && a.deltas == b.deltas &&
         a.grid.n_r == b.grid.n_r && a.grid.n_theta == b.grid.n_theta &&
         a.grid.n_phi == b.grid.n_phi && a.grid.p_max == b.grid.p_max &&
         a.delta_sign == b.delta_sign && a.analytic_limit == b.analytic_limit &&
         a.direction_a == b.direction_a && a.direction_b == b.direction_b && a.seed == b.seed &&
         a.threads == b.threads && a.output.path == b.output.path &&
         a.output.format == b.output.format;
}

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols = {
      "beta", "delta", "fidelity", "E", "min_pt_eig", "A", "B", "C", "D", "eta",
      "ineq15_margin", "ineq16_margin", "identity14_residual", "product_distance", "qcorr",
      "ccorr"};
  return cols;
}

std::vector<SweepRow> run(const SweepConfig& c) {
  validate(c);
  std::vector<QuadratureGrid> grids;
  for (double delta : c.deltas)
    grids.emplace_back(GridShape{c.grid.n_r, c.grid.n_theta, c.grid.n_phi},
                       c.grid.p_max.value_or(default_cutoff(delta)));
  const std::size_t nb = c.betas.size();
  return map_indexed<SweepRow>(
      c.deltas.size() * nb,
      [&](std::size_t i) {
        return evaluate_cell(c, c.deltas[i / nb], c.betas[i % nb], grids[i / nb]);
      },
      Parallelism{c.threads});
}

std::string to_csv(const std::vector<SweepRow>& rows) {
  std::string out;
  const auto& cols = csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + csv_field(cols[i]);
  out += "\r\n";
  for (const SweepRow& r : rows) {
    const auto values = row_values(r);
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) out += ',';
      if (values[i]) out += csv_field(format_double(*values[i]));
    }
    out += "\r\n";
  }
  return out;
}

std::string to_json(const std::vector<SweepRow>& rows) {
  json arr = json::array();
  const auto& cols = csv_columns();
  for (const SweepRow& r : rows) {
    json obj;
    const auto values = row_values(r);
    for (std::size_t i = 0; i < values.size(); ++i)
      obj[cols[i]] = values[i] ? json(*values[i]) : json(nullptr);
    arr.push_back(std::move(obj));
  }
  return arr.dump(2) + "\n";
}

std::vector<SweepRow> rows_from_json(std::string_view text) {
  const json arr = json::parse(text.begin(), text.end());
  const auto& cols = csv_columns();
  std::vector<SweepRow> rows;
  for (const json& obj : arr) {
    SweepRow r;
    r.beta = obj.at("beta").get<double>();
    r.delta = obj.at("delta").get<double>();
    auto fields = row_fields(r);
    for (std::size_t i = 0; i < fields.size(); ++i) {
      const json& v = obj.at(cols[i + 2]);
      if (!v.is_null()) *fields[i] = v.get<double>();
    }
    rows.push_back(r);
  }
  return rows;
}

void emit(const std::vector<SweepRow>& rows, OutputFormat format, const std::string& path) {
  if (rows.empty()) throw std::invalid_argument("emit: no rows");
  write_file(path, format == OutputFormat::csv ? to_csv(rows) : to_json(rows));
}

std::string plotscript(const std::vector<SweepRow>& rows, const std::string& csv_path) {
  bool has_e = false, has_f = false;
  std::vector<double> deltas;
  for (const SweepRow& r : rows) {
    has_e |= r.E.has_value();
    has_f |= r.fidelity.has_value();
    if (std::find(deltas.begin(), deltas.end(), r.delta) == deltas.end())
      deltas.push_back(r.delta);
  }
  if (!has_e && !has_f) throw std::invalid_argument("plotscript: rows carry neither E nor fidelity");

  // Column numbers follow csv_columns(): beta 1, delta 2, fidelity 3, E 4.
  std::string quoted = "'";
  for (char ch : csv_path) quoted += ch == '\'' ? std::string("''") : std::string(1, ch);
  quoted += "'";

  std::ostringstream s;
  s << "# gnuplot script generated by relent\n"
    << "set datafile separator ','\n"
    << "set xlabel 'beta'\n"
    << "set xrange [0:1]\n"
    << "set grid\n";
  const int panels = int(has_e) + int(has_f);
  if (panels == 2) s << "set multiplot layout 1,2\n";
  const auto series = [&](int column, const char* label) {
    s << "set ylabel '" << label << "'\n" << "plot ";
    for (std::size_t i = 0; i < deltas.size(); ++i) {
      const std::string d = format_double(deltas[i]);
      s << (i ? ", \\\n     " : "") << quoted << " every ::1 using 1:($2 == " << d << " ? $"
        << column << " : 1/0) with linespoints title '" << label << ", delta = " << d << "'";
    }
    s << "\n";
  };
  if (has_e) series(4, "E");
  if (has_f) series(3, "F");
  if (panels == 2) s << "unset multiplot\n";
  return s.str();
}

void emit_plotscript(const std::vector<SweepRow>& rows, const std::string& csv_path,
                     const std::string& path) {
  write_file(path, plotscript(rows, csv_path));
}

}  // namespace relent
