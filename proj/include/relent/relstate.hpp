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

// Two-particle spin (x) momentum states, their Lorentz transform, and the
// reduced spin and momentum density matrices seen by the boosted observer.

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "relent/kinematics.hpp"
#include "relent/wavepacket.hpp"

namespace relent {

/// Two-spin basis order: up-up, up-down, down-up, down-down.
using SpinVector = Eigen::Vector4cd;
using SpinDensity = Eigen::Matrix4cd;

SpinVector spin_up_up();
SpinVector bell_phi_plus();

/// How the Wigner angle is evaluated.
enum class WignerModel {
  exact,                     ///< closed-form angle at the given boost, with Jacobians
  ultra_relativistic_limit,  ///< omega := theta, Jacobians dropped
};

struct BipartiteState {
  MomentumDistribution dist;
  SpinVector spin;

  BipartiteState(MomentumDistribution d, const SpinVector& s);
};

struct WignerAngles {
  double omega;
  double phi;
};

/// (omega_p, phi_p) for one particle under `model`.
WignerAngles particle_angles(const FourMomentumd& p, const Boostd& b, WignerModel model);

/// D(omega_p) for one particle under `model`.
Eigen::Matrix2cd particle_wigner(const FourMomentumd& p, const Boostd& b, WignerModel model);

/// sqrt((Lambda p)^0 / p^0), or 1 in the limit model.
double boost_jacobian(const FourMomentumd& p, const Boostd& b, WignerModel model);

/// D(omega_p) (x) D(omega_q).
Eigen::Matrix4cd spin_kernel(const FourMomentumd& p, const FourMomentumd& q, const Boostd& b,
                             WignerModel model = WignerModel::exact);

/// Local spin channel X -> int w |g|^2 D_p X D_p^dagger, as the 4x4 matrix
/// acting on row-major vec(X): S[(a a'), (c c')] = int |g|^2 D_ac conj(D_a'c').
Eigen::Matrix4cd local_spin_channel(const IsotropicGaussian& g, const Boostd& b,
                                    const QuadratureGrid& grid, WignerModel model,
                                    Parallelism par = {});

/// (S_A (x) S_B) applied to a two-spin density.
SpinDensity apply_local_channels(const Eigen::Matrix4cd& channel_a,
                                 const Eigen::Matrix4cd& channel_b, const SpinDensity& rho);

/// Spin density after tracing out momentum:
///   rho = int |f(p,q)|^2 K(p,q) |Phi><Phi| K(p,q)^dagger.
/// Product distributions go through local channels, delta-correlated ones
/// through the collapsed 3-d sum. Throws GridCoverageError when the trace
/// is off by more than 1e-4.
SpinDensity reduced_spin_density(const BipartiteState& state, const Boostd& b,
                                 const QuadratureGrid& grid,
                                 WignerModel model = WignerModel::exact, Parallelism par = {});

/// Same integral evaluated entry by entry with the generic integrate6. O(N^2);
/// intended for cross-checks on small grids.
SpinDensity reduced_spin_density_tensor(const BipartiteState& state, const Boostd& b,
                                        const QuadratureGrid& grid,
                                        WignerModel model = WignerModel::exact);

struct DensityDefects {
  double hermiticity;      ///< max |rho - rho^dagger|
  double trace_error;      ///< |tr rho - 1|
  double min_eigenvalue;

  bool acceptable(double herm_tol = 1e-10, double trace_tol = 1e-8,
                  double eig_tol = 1e-8) const {
    return hermiticity <= herm_tol && trace_error <= trace_tol && min_eigenvalue >= -eig_tol;
  }
};

DensityDefects density_defects(const SpinDensity& rho);

/// One coordinate pair (p, q; p', q') of the momentum density matrix.
struct SamplePair {
  Eigen::Vector3d p, q, p_prime, q_prime;
};

struct MomentumDensityElement {
  SamplePair pair;
  std::complex<double> element;     ///< <p,q| rho' |p',q'>
  std::complex<double> marginal_a;  ///< <p| rho_A |p'>
  std::complex<double> marginal_b;  ///< <q| rho_B |q'>

  std::complex<double> product() const { return marginal_a * marginal_b; }
};

struct MomentumDensitySample {
  std::vector<MomentumDensityElement> elements;
};

/// Deterministic coordinate pairs with momenta of magnitude in
/// [0.5, 1.5] * scale and isotropic directions. Every fourth pair is
/// diagonal (p' = p, q' = q).
std::vector<SamplePair> default_sample_pairs(double scale, std::size_t count = 64,
                                             std::uint64_t seed = 42);

/// Elements of the spin-traced momentum density
///   <p,q|rho'|p',q'> = J_p J_q J_p' J_q' f(p,q) f*(p',q') <Phi|K(p',q')^dag K(p,q)|Phi>
/// with J = sqrt((Lambda k)^0 / k^0), next to the product of the normalized
/// marginals rho_A = tr_B rho' / N_B and rho_B = tr_A rho' / N_A. Requires a
/// GaussianProduct distribution. Throws std::domain_error when a sample sits
/// so deep in the Gaussian tail that its weight underflows.
MomentumDensitySample momentum_density_samples(const BipartiteState& state, const Boostd& b,
                                               const std::vector<SamplePair>& pairs);

/// max over samples of |element - product| / (|product| + 1e-300).
double product_distance(const MomentumDensitySample& sample);

}  // namespace relent
