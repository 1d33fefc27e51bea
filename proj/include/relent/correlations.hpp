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

// Spin correlations seen by a boosted observer.

#include <Eigen/Dense>

#include "relent/relstate.hpp"

namespace relent {

/// Unit measurement direction in the moving frame. The boost direction is +x.
class ObservableDirection {
 public:
  explicit ObservableDirection(const Eigen::Vector3d& a);

  const Eigen::Vector3d& vector() const { return a_; }
  /// a . e with e the boost axis.
  double longitudinal() const { return a_.x(); }

 private:
  Eigen::Vector3d a_;
};

/// n = [sqrt(1-b^2)(a - e(a.e)) + e(a.e)] / sqrt(1 + b^2((e.a)^2 - 1)); unit.
Eigen::Vector3d relativistic_direction(const ObservableDirection& dir, const Boostd& b);

/// n . sigma for the direction above; eigenvalues +-1.
Eigen::Matrix2cd relativistic_observable(const ObservableDirection& dir, const Boostd& b);

/// Product of the signs of a.e and b.e. Throws std::domain_error when either
/// direction is transverse to the boost, where the sign is undefined.
double classical_correlation(const ObservableDirection& a, const ObservableDirection& b);

struct XYZWKernel {
  double X, Y, Z, W;
  double theta, phi;  ///< of the momentum p the kernel was built from

  double combination() const { return X * X - Y * Y - Z * Z + W * W; }
  /// 2 sin^2(theta) sin^2(phi) - 1
  double printed_lower_bound() const;
  /// 2 sin^2(theta) cos^2(phi) - 1; equals combination() exactly when omega -> theta.
  double azimuth_consistent_lower_bound() const;
};

/// Kernel built from omega_p, omega_{-p} and phi_p; -p is obtained by literally
/// negating the spatial momentum.
XYZWKernel xyzw(const FourMomentumd& p, const Boostd& b, WignerModel model = WignerModel::exact);

/// Tr[rho (a^ (x) b^)] with rho the boosted spin density of `spin` (x) `dist`
/// and a^, b^ the relativistic observables. Throws std::domain_error when
/// beta >= 1 - 1e-6 and a direction is transverse.
double quantum_correlation(const ObservableDirection& a, const ObservableDirection& b,
                           const EntangledMomentum& dist, const SpinVector& spin,
                           const Boostd& boost, const QuadratureGrid& grid,
                           WignerModel model = WignerModel::exact, Parallelism par = {});

/// int |g|^2 (X^2 - Y^2 - Z^2 + W^2) over the anti-correlated distribution.
double xyzw_integral(const EntangledMomentum& dist, const Boostd& boost,
                     const QuadratureGrid& grid, WignerModel model = WignerModel::exact,
                     Parallelism par = {});

/// sign(a_x) sign(b_x) * xyzw_integral: the large-boost form of the Bell-pair
/// correlation with ultra-relativistic observables.
double asymptotic_quantum_correlation(const ObservableDirection& a, const ObservableDirection& b,
                                      const EntangledMomentum& dist, const Boostd& boost,
                                      const QuadratureGrid& grid,
                                      WignerModel model = WignerModel::exact);

}  // namespace relent
