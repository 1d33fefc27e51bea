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

// Entanglement diagnostics for boosted two-particle states: fidelity, the
// A-D weights of a boosted Bell pair, the X-state statistics of a boosted
// momentum-entangled pair, partial transposition and the negativity-based
// measure.

#include <array>
#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "relent/relstate.hpp"

namespace relent {

// --- partial transposition and the entanglement measure --------------------

/// Transposes the second party's indices: out[(a b), (a' b')] = rho[(a b'), (a' b)].
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, 4, 4> partial_transpose(
    const Eigen::MatrixBase<Derived>& rho) {
  Eigen::Matrix<typename Derived::Scalar, 4, 4> out;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int ap = 0; ap < 2; ++ap)
        for (int bp = 0; bp < 2; ++bp) out(2 * a + b, 2 * ap + bp) = rho(2 * a + bp, 2 * ap + b);
  return out;
}

/// Ascending eigenvalues of rho^{T_B}.
Eigen::Vector4d partial_transpose_spectrum(const SpinDensity& rho);

/// E(rho) = -2 * (sum of negative eigenvalues of rho^{T_B}). 1 for a Bell
/// pair, 0 for every PPT state.
double entanglement_measure(const SpinDensity& rho);

// --- spin-up-up pair with delta-correlated momentum -------------------------

/// Amplitudes (a, b, c, d) of D(omega_p) (x) D(omega_q) |up up>, evaluated from
/// the closed-form products of half-angle sines and cosines.
std::array<std::complex<double>, 4> abcd_from_angles(const WignerAngles& p, const WignerAngles& q);

/// abcd_from_angles at the Wigner angles of p and q.
std::array<std::complex<double>, 4> abcd(const FourMomentumd& p, const FourMomentumd& q,
                                         const Boostd& b,
                                         WignerModel model = WignerModel::exact);

/// Distribution averages <.> = int |f|^2 (.) of the X-state entries.
struct XStateStats {
  double mean_a2 = 0, mean_b2 = 0, mean_c2 = 0, mean_d2 = 0;
  std::complex<double> mean_ad{}, mean_bc{};  ///< <a d*>, <b c*>
  /// Pointwise products averaged, <|a|^2 |d|^2> and <|b|^2 |c|^2>. These are
  /// equal for every momentum because each boosted term is a product state.
  double mean_a2d2 = 0, mean_b2c2 = 0;

  /// |<|a|^2><|d|^2> - <|b|^2><|c|^2>| relative to the larger side (0 if both vanish).
  double identity_residual() const;
  /// The X-state density these averages describe.
  SpinDensity density() const;
};

XStateStats xstate_stats(const EntangledMomentum& dist, const Boostd& b,
                         const QuadratureGrid& grid, WignerModel model = WignerModel::exact,
                         Parallelism par = {});

struct SeparabilityVerdict {
  double margin_ad;  ///< |<ad*>|^2 - <|b|^2><|c|^2>
  double margin_bc;  ///< |<bc*>|^2 - <|a|^2><|d|^2>
  bool entangled;
};

/// PPT test for an X state: a negative partial-transpose eigenvalue exists
/// iff either margin is positive. Margins above `tolerance` count.
SeparabilityVerdict separability_verdict(const XStateStats& stats, double tolerance = 1e-9);

// --- fidelity --------------------------------------------------------------

struct FidelityResult {
  std::complex<double> overlap;
  double fidelity;
};

/// <Phi| D(omega_p) (x) D(omega_q) |Phi>.
std::complex<double> overlap_kernel_generic(const FourMomentumd& p, const FourMomentumd& q,
                                            const Boostd& b, const SpinVector& spin);
/// cos(omega_p / 2) cos(omega_q / 2); agrees with the generic kernel for the
/// Bell pair only after azimuthal averaging.
double overlap_kernel_cos(const FourMomentumd& p, const FourMomentumd& q, const Boostd& b);

/// |<Psi|U(Lambda)|Psi>|^2 with
///   <Psi|U|Psi> = int J_p J_q f*(Lambda p, Lambda q) f(p, q) <Phi|K(p,q)|Phi>,
/// f* evaluated in closed form at the boosted momenta. Requires a
/// GaussianProduct distribution; the 6-d integral is evaluated as
/// <Phi| M (x) M |Phi> with M = int J g(Lambda p) g(p) D(omega_p).
FidelityResult fidelity(const BipartiteState& state, const Boostd& b, const QuadratureGrid& grid,
                        Parallelism par = {});

/// Fidelity of the Bell pair using only the cos*cos kernel.
FidelityResult fidelity_cos(const GaussianProduct& dist, const Boostd& b,
                            const QuadratureGrid& grid, Parallelism par = {});

// --- Bell pair with product momentum ----------------------------------------

struct ABCDValues {
  double A = 1, B = 0, C = 0, D = 0;
  double eta = 0;  ///< 2 <sin^2(omega/2)>
};

/// Per-momentum integrands of A, B, C, D for the Bell pair.
std::array<double, 4> bell_weights(double omega_p, double phi_p, double omega_q, double phi_q);

/// A-D weights of the boosted Bell pair and eta. The tensor quadrature of
/// the four integrands is evaluated through single-particle moments, using
/// cos^2(x + y) = (1 + cos 2x cos 2y - sin 2x sin 2y) / 2.
ABCDValues bell_ABCD(const GaussianProduct& dist, const Boostd& b, const QuadratureGrid& grid,
                     WignerModel model = WignerModel::exact, Parallelism par = {});

/// Closed ultra-relativistic form A = 1 - eta + 3 eta^2 / 8, B = D = eta/2 - eta^2/4,
/// C = eta^2 / 8.
ABCDValues abcd_from_eta(double eta);

/// [[(A+D)/2, 0, 0, (A-D)/2], [0, (B+C)/2, -(B-C)/2, 0],
///  [0, -(B-C)/2, (B+C)/2, 0], [(A-D)/2, 0, 0, (A+D)/2]]
SpinDensity bell_density_from_ABCD(const ABCDValues& v);

/// {(1-2A)/2, (1-2B)/2, (1-2C)/2, (1-2D)/2}, ascending.
Eigen::Vector4d bell_pt_spectrum(const ABCDValues& v);

// --- sweeps ------------------------------------------------------------------

struct MeasureRow {
  double beta;
  double measure;
  double min_pt_eigenvalue;
  std::optional<double> fidelity;   ///< product distributions, exact model only
  std::optional<ABCDValues> abcd;   ///< Bell pair with product distribution only
};

/// One row per beta, in input order. `betas` must be ascending in [0, 1).
std::vector<MeasureRow> measure_sweep(const MomentumDistribution& dist, const SpinVector& spin,
                                      const std::vector<double>& betas,
                                      const QuadratureGrid& grid,
                                      WignerModel model = WignerModel::exact,
                                      Parallelism par = {});

}  // namespace relent
