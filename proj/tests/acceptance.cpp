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

// Acceptance suite. Prints one PASS/FAIL line per criterion; the process
// exits nonzero if any selected criterion fails.
//
//   acceptance                  all criteria
//   acceptance --criterion N    criterion N only

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "relent/correlations.hpp"
#include "relent/entanglement.hpp"
#include "relent/sweep.hpp"
#include "support/monte_carlo.hpp"
#include "support/precise_oracle.hpp"

using namespace relent;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    note((ok ? "ok   " : "FAIL ") + what);
  }
  void note(const std::string& line) { detail += "    " + line + "\n"; }
};

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

const std::vector<double> kDeltas = {0.5, 1.0, 4.0};

/// Default sweep betas from 0.1 upward.
std::vector<double> boosted_betas() {
  std::vector<double> out;
  for (double b : SweepConfig::default_betas())
    if (b >= 0.1 - 1e-12) out.push_back(b);
  return out;
}

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

FourMomentumd random_momentum(std::mt19937_64& rng, double lo_exp, double hi_exp) {
  std::uniform_real_distribution<double> u(0, 1);
  return FourMomentumd::from_spherical(std::pow(10.0, lo_exp + (hi_exp - lo_exp) * u(rng)),
                                       std::acos(2 * u(rng) - 1), 2 * pi * u(rng));
}

Eigen::Matrix2cd dot_sigma(const Eigen::Vector3d& n) {
  return n.x() * pauli<double>(0) + n.y() * pauli<double>(1) + n.z() * pauli<double>(2);
}

Outcome non_relativistic_anchor() {
  Outcome o;
  SweepConfig c;
  c.betas = {0.0};
  const SweepRow r = run(c).at(0);
  o.require(std::abs(*r.E - 1) <= 1e-9, fmt("E = %.15f (1 +- 1e-9)", *r.E));
  o.require(std::abs(*r.min_pt_eig + 0.5) <= 1e-9,
            fmt("min PT eigenvalue = %.15f (-0.5 +- 1e-9)", *r.min_pt_eig));
  o.require(std::abs(*r.fidelity - 1) <= 1e-9, fmt("F = %.15f (1 +- 1e-9)", *r.fidelity));
  return o;
}

Outcome ultra_relativistic_anchor() {
  Outcome o;
  SweepConfig c;
  c.analytic_limit = true;
  c.deltas = kDeltas;
  double worst_abcd = 0, worst_eta = 0, worst_pt = 0, worst_e = 0;
  const Eigen::Vector4d expected(0.125, 0.25, 0.25, 0.375);
  for (const SweepRow& r : run(c)) {
    worst_abcd = std::max({worst_abcd, std::abs(*r.A - 0.375), std::abs(*r.B - 0.25),
                           std::abs(*r.C - 0.125), std::abs(*r.D - 0.25)});
    worst_eta = std::max(worst_eta, std::abs(*r.eta - 1));
    worst_e = std::max(worst_e, std::abs(*r.E));
    const SpinDensity rho = reduced_spin_density(
        BipartiteState(GaussianProduct(r.delta), bell_phi_plus()), Boostd(r.beta),
        default_grid(r.delta), WignerModel::ultra_relativistic_limit);
    worst_pt = std::max(worst_pt,
                        (partial_transpose_spectrum(rho) - expected).cwiseAbs().maxCoeff());
  }
  o.require(worst_abcd <= 1e-9, fmt("max |A-D - (3/8, 1/4, 1/8, 1/4)| = %.3e (1e-9)", worst_abcd));
  o.require(worst_eta <= 1e-9, fmt("max |eta - 1| = %.3e (1e-9)", worst_eta));
  o.require(worst_pt <= 1e-9, fmt("max |PT spectrum - {1/8, 1/4, 1/4, 3/8}| = %.3e (1e-9)", worst_pt));
  o.require(worst_e <= 1e-9, fmt("max |E| = %.3e (1e-9)", worst_e));
  return o;
}

Outcome fidelity_degradation() {
  Outcome o;
  for (double delta : kDeltas) {
    const BipartiteState state(GaussianProduct(delta), bell_phi_plus());
    const QuadratureGrid grid = default_grid(delta);
    double worst = 0;
    for (double beta : boosted_betas())
      worst = std::max(worst, fidelity(state, Boostd(beta), grid).fidelity);
    o.require(worst < 1 - 1e-6, fmt("Delta = %g: max F over beta >= 0.1 is %.12f (< 1 - 1e-6)",
                                    delta, worst));
  }
  const double f = fidelity(BipartiteState(GaussianProduct(1.0), bell_phi_plus()), Boostd(0.5),
                            default_grid(1.0))
                       .fidelity;
  const testing::Estimate mc = testing::mc_fidelity(1.0, 0.5, 1000000, 20261015);
  o.require(mc.within(f, 3), fmt("beta 0.5, Delta 1: F = %.8f, Monte Carlo %.8f +- %.2e "
                                 "(%.2f standard errors, limit 3)",
                                 f, mc.mean, mc.stderr_, std::abs(f - mc.mean) / mc.stderr_));
  return o;
}

Outcome monotone_measure() {
  Outcome o;
  SweepConfig c;
  c.scenario = Scenario::spin_bell_momentum_product;
  c.deltas = kDeltas;
  const auto rows = run(c);
  const std::size_t nb = c.betas.size();
  for (std::size_t d = 0; d < c.deltas.size(); ++d) {
    double worst_rise = -HUGE_VAL;
    for (std::size_t i = 1; i < nb; ++i)
      worst_rise = std::max(worst_rise, *rows[d * nb + i].E - *rows[d * nb + i - 1].E);
    o.require(worst_rise <= 1e-6,
              fmt("Delta = %g: largest step E(beta_i) - E(beta_i-1) = %.3e (<= 1e-6); "
                  "E(0.99) = %.6f",
                  c.deltas[d], worst_rise, *rows[d * nb + nb - 1].E));
  }
  return o;
}

Outcome no_momentum_to_spin_transfer() {
  Outcome o;
  const QuadratureGrid grid = default_grid(1.0);
  for (int sign : {-1, 1}) {
    double worst_residual = 0, worst_ad = -HUGE_VAL, worst_bc = -HUGE_VAL, pointwise = 0;
    bool any_entangled = false;
    for (double beta : boosted_betas()) {
      const XStateStats s = xstate_stats(EntangledMomentum(1.0, sign), Boostd(beta), grid);
      const SeparabilityVerdict v = separability_verdict(s);
      worst_residual = std::max(worst_residual, s.identity_residual());
      worst_ad = std::max(worst_ad, v.margin_ad);
      worst_bc = std::max(worst_bc, v.margin_bc);
      pointwise = std::max(pointwise, std::abs(s.mean_a2d2 - s.mean_b2c2));
      any_entangled |= v.entangled;
    }
    const char* label = sign < 0 ? "q = -p" : "q = +p";
    o.require(worst_residual < 1e-5,
              fmt("%s: max relative |<|a|^2><|d|^2> - <|b|^2><|c|^2>| = %.3e (< 1e-5)", label,
                  worst_residual));
    o.require(worst_ad <= 1e-9, fmt("%s: max |<ad*>|^2 - <|b|^2><|c|^2> = %.3e (<= 1e-9)", label,
                                    worst_ad));
    o.require(worst_bc <= 1e-9, fmt("%s: max |<bc*>|^2 - <|a|^2><|d|^2> = %.3e (<= 1e-9)", label,
                                    worst_bc));
    o.require(!any_entangled, fmt("%s: verdict not entangled at every beta", label));
    o.note(fmt("info %s: max |<|a|^2|d|^2> - <|b|^2|c|^2>| = %.3e (pointwise form)", label,
               pointwise));
  }
  return o;
}

Outcome no_spin_to_momentum_transfer() {
  Outcome o;
  // Samples at |p| ~ sqrt(Delta) = 1e3 so p0/m ~ 1e3.
  const double delta = 1e6;
  const BipartiteState state(GaussianProduct(delta), bell_phi_plus());
  const auto pairs = default_sample_pairs(std::sqrt(delta), 64, 42);
  double prev = HUGE_VAL;
  bool monotone = true;
  std::string trail;
  double last = 0;
  for (double beta : {0.5, 0.9, 0.99, 0.9999}) {
    last = product_distance(momentum_density_samples(state, Boostd(beta), pairs));
    monotone &= last <= prev;
    prev = last;
    trail += fmt(" %g:%.4e", beta, last);
  }
  o.require(last < 1e-2, fmt("product distance at beta 0.9999 = %.4e (< 1e-2)", last));
  o.require(monotone, "nonincreasing over beta;" + trail);
  return o;
}

Outcome wigner_oracle_equivalence() {
  Outcome o;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0, 1);
  double worst_angle = 0, worst_matrix = 0;
  for (int i = 0; i < 10000; ++i) {
    const FourMomentumd p = random_momentum(rng, -2, 3);
    const double beta = std::min(u(rng), 0.999999);
    const auto ref = testing::precise_wigner_oracle(p.spatial(), beta);
    const WignerRotation w = wigner_rotation(p, Boostd(beta));
    worst_angle = std::max(worst_angle, std::abs(ref.angle - w.omega));
    worst_matrix = std::max(worst_matrix, max_abs(su2_from_so3(ref.matrix) - w.matrix));
  }
  o.require(worst_angle <= 1e-10, fmt("10^4 samples: max angle difference = %.3e (1e-10)",
                                      worst_angle));
  o.require(worst_matrix <= 1e-10, fmt("10^4 samples: max SU(2) difference = %.3e (1e-10)",
                                       worst_matrix));
  const double theta = pi / 3;
  const FourMomentumd fast = FourMomentumd::from_spherical(1e4, theta, 0.8);
  const double omega = wigner_angle(fast, Boostd(0.999999));
  o.require(std::abs(omega - theta) < 1e-2,
            fmt("p/m = 1e4, beta = 0.999999: |Omega - theta| = %.3e (< 1e-2)",
                std::abs(omega - theta)));
  return o;
}

Outcome correlation_limits() {
  Outcome o;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0, 1);
  int printed_violations = 0, consistent_violations = 0, upper_violations = 0;
  for (int i = 0; i < 10000; ++i) {
    const XYZWKernel k = xyzw(random_momentum(rng, -2, 3), Boostd(0.9999 * u(rng)));
    printed_violations += k.printed_lower_bound() > k.combination() + 1e-12;
    consistent_violations += k.azimuth_consistent_lower_bound() > k.combination() + 1e-12;
    upper_violations += k.combination() > 1 + 1e-12;
  }
  o.require(printed_violations == 0,
            fmt("2 sin^2(theta) sin^2(phi) - 1 <= X^2-Y^2-Z^2+W^2: %d of 10000 violate",
                printed_violations));
  o.require(upper_violations == 0,
            fmt("X^2-Y^2-Z^2+W^2 <= 1: %d of 10000 violate", upper_violations));
  o.note(fmt("info 2 sin^2(theta) cos^2(phi) - 1 <= X^2-Y^2-Z^2+W^2: %d of 10000 violate",
             consistent_violations));

  const QuadratureGrid grid = default_grid(1.0);
  const EntangledMomentum anti(1.0);
  std::normal_distribution<double> n;
  double worst = 0;
  for (int i = 0; i < 20; ++i) {
    const Eigen::Vector3d a = Eigen::Vector3d(n(rng), n(rng), n(rng)).normalized();
    const Eigen::Vector3d b = Eigen::Vector3d(n(rng), n(rng), n(rng)).normalized();
    SpinVector spin = bell_phi_plus();
    if (i % 2) {
      for (int k = 0; k < 4; ++k) spin(k) = {n(rng), n(rng)};
      spin /= spin.norm();
    }
    const double brute = spin.dot(kron(dot_sigma(a), dot_sigma(b)) * spin).real();
    const double q = quantum_correlation(ObservableDirection(a), ObservableDirection(b), anti,
                                         spin, Boostd(0), grid);
    worst = std::max(worst, std::abs(q - brute));
  }
  o.require(worst <= 1e-8, fmt("beta 0: max |correlation - brute force| = %.3e (1e-8)", worst));

  const ObservableDirection x(Eigen::Vector3d::UnitX());
  const double q = quantum_correlation(x, x, anti, bell_phi_plus(), Boostd(0.9999), grid);
  o.require(std::abs(q - 1) <= 0.05,
            fmt("beta 0.9999, a = b = x: correlation = %.6f (1 +- 0.05)", q));
  return o;
}

Outcome structural_invariants() {
  Outcome o;
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0, 1);

  bool densities_ok = true;
  double worst_herm = 0, worst_trace = 0, worst_eig = HUGE_VAL;
  for (double delta : kDeltas) {
    const QuadratureGrid grid = default_grid(delta);
    for (double beta : {0.0, 0.3, 0.7, 0.95, 0.99})
      for (const MomentumDistribution& dist :
           {MomentumDistribution(GaussianProduct(delta)),
            MomentumDistribution(EntangledMomentum(delta, -1)),
            MomentumDistribution(EntangledMomentum(delta, 1))})
        for (const SpinVector& spin : {bell_phi_plus(), spin_up_up()})
          for (WignerModel model : {WignerModel::exact, WignerModel::ultra_relativistic_limit}) {
            const DensityDefects d = density_defects(
                reduced_spin_density(BipartiteState(dist, spin), Boostd(beta), grid, model));
            densities_ok &= d.acceptable();
            worst_herm = std::max(worst_herm, d.hermiticity);
            worst_trace = std::max(worst_trace, d.trace_error);
            worst_eig = std::min(worst_eig, d.min_eigenvalue);
          }
  }
  o.require(densities_ok, fmt("reduced densities: max |rho - rho^+| = %.2e, max |tr - 1| = %.2e, "
                              "min eigenvalue = %.2e",
                              worst_herm, worst_trace, worst_eig));

  double worst_norm = 0, worst_unitary = 0;
  for (int i = 0; i < 10000; ++i) {
    const FourMomentumd p = random_momentum(rng, -2, 3), q = random_momentum(rng, -2, 3);
    const Boostd b(0.9999 * u(rng));
    double norm = 0;
    for (const auto& amp : abcd(p, q, b)) norm += std::norm(amp);
    worst_norm = std::max(worst_norm, std::abs(norm - 1));
    const Eigen::Matrix2cd w = wigner_rotation(p, b).matrix;
    worst_unitary =
        std::max(worst_unitary, max_abs(w.adjoint() * w - Eigen::Matrix2cd::Identity()));
  }
  o.require(worst_norm <= 1e-12, fmt("pointwise |a|^2+|b|^2+|c|^2+|d|^2: max error %.2e (1e-12)",
                                     worst_norm));
  o.require(worst_unitary <= 1e-12, fmt("spin rotation unitarity: max error %.2e (1e-12)",
                                        worst_unitary));

  double worst_sum = 0, worst_pt = 0, worst_paths = 0;
  for (double delta : kDeltas) {
    const QuadratureGrid grid = default_grid(delta);
    const GaussianProduct dist(delta);
    for (double beta : boosted_betas()) {
      const ABCDValues v = bell_ABCD(dist, Boostd(beta), grid);
      worst_sum = std::max(worst_sum, std::abs(v.A + v.B + v.C + v.D - 1));
      const SpinDensity rho =
          reduced_spin_density(BipartiteState(dist, bell_phi_plus()), Boostd(beta), grid);
      // Generic eigensolver on the integrated density vs closed form in A-D.
      worst_pt = std::max(
          worst_pt, (partial_transpose_spectrum(bell_density_from_ABCD(v)) - bell_pt_spectrum(v))
                        .cwiseAbs()
                        .maxCoeff());
      worst_pt = std::max(
          worst_pt, (partial_transpose_spectrum(rho) - bell_pt_spectrum(v)).cwiseAbs().maxCoeff());
      const double generic =
          fidelity(BipartiteState(dist, bell_phi_plus()), Boostd(beta), grid).fidelity;
      worst_paths =
          std::max(worst_paths, std::abs(generic - fidelity_cos(dist, Boostd(beta), grid).fidelity));
    }
  }
  o.require(worst_sum <= 1e-6, fmt("A+B+C+D = 1: max error %.2e (1e-6)", worst_sum));
  o.require(worst_pt <= 1e-10, fmt("PT eigensolver vs closed form: max difference %.2e (1e-10)",
                                   worst_pt));
  o.require(worst_paths <= 1e-8, fmt("generic vs cos*cos fidelity: max difference %.2e (1e-8)",
                                     worst_paths));
  return o;
}

Outcome determinism() {
  Outcome o;
  SweepConfig c;
  c.threads = 1;
  const std::string serial = to_csv(run(c));
  const std::string serial_again = to_csv(run(c));
  c.threads = 4;
  const std::string parallel = to_csv(run(c));
  o.require(serial == serial_again, "two single-threaded runs are byte-identical");
  o.require(serial == parallel, "1 and 4 worker threads give byte-identical CSV");
  o.note(fmt("%zu bytes", serial.size()));
  return o;
}

struct Criterion {
  const char* name;
  double time_limit_s;
  std::function<Outcome()> check;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {"non-relativistic anchor", 1, non_relativistic_anchor},
      {"ultra-relativistic anchor", 5, ultra_relativistic_anchor},
      {"fidelity degradation", 120, fidelity_degradation},
      {"entanglement decreases with beta", 120, monotone_measure},
      {"no momentum-to-spin transfer", 120, no_momentum_to_spin_transfer},
      {"no spin-to-momentum transfer", 60, no_spin_to_momentum_transfer},
      {"Wigner oracle equivalence", 10, wigner_oracle_equivalence},
      {"correlation limits", 60, correlation_limits},
      {"structural invariants", 60, structural_invariants},
      {"determinism", HUGE_VAL, determinism},
  };
  return all;
}

bool run_criterion(int n) {
  const Criterion& c = criteria().at(std::size_t(n - 1));
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = c.check();
  } catch (const std::exception& e) {
    o.pass = false;
    o.note(std::string("FAIL exception: ") + e.what());
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (std::isfinite(c.time_limit_s))
    o.require(elapsed < c.time_limit_s, fmt("runtime %.2f s (< %g s)", elapsed, c.time_limit_s));
  std::printf("criterion %d: %s  %s (%.2f s)\n%s", n, o.pass ? "PASS" : "FAIL", c.name, elapsed,
              o.detail.c_str());
  std::fflush(stdout);
  return o.pass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"relent acceptance suite"};
  int only = 0;
  app.add_option("--criterion", only, "Run a single criterion")
      ->check(CLI::Range(1, int(criteria().size())));
  CLI11_PARSE(app, argc, argv);

  bool ok = true;
  for (int n = 1; n <= int(criteria().size()); ++n)
    if (only == 0 || only == n) ok &= run_criterion(n);
  return ok ? 0 : 1;
}
