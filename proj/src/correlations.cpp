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

#include "relent/correlations.hpp"

#include <cmath>
#include <stdexcept>

namespace relent {

namespace {

constexpr double kTransverseTol = 1e-12;

bool transverse(const ObservableDirection& d) { return std::abs(d.longitudinal()) <= kTransverseTol; }

double sign_of(double x) { return x > 0 ? 1.0 : -1.0; }

}  // namespace

ObservableDirection::ObservableDirection(const Eigen::Vector3d& a) : a_(a) {
  if (!a.allFinite() || std::abs(a.norm() - 1) > 1e-12)
    throw std::domain_error("ObservableDirection: direction must be a unit vector");
}

Eigen::Vector3d relativistic_direction(const ObservableDirection& dir, const Boostd& b) {
  const Eigen::Vector3d& a = dir.vector();
  const Eigen::Vector3d e = Eigen::Vector3d::UnitX();
  const double ae = a.dot(e);
  const double beta = b.beta();
  // sqrt(1 - beta^2) = 1 / gamma, exact even for beta close to one
  const double contraction = 1 / b.gamma();
  const Eigen::Vector3d num = contraction * (a - e * ae) + e * ae;
  // 1 + beta^2 ((e.a)^2 - 1) = |num|^2 for a unit a; written as in the
  // defining formula and then renormalized to remove rounding drift.
  const double den = std::sqrt(1 + beta * beta * (ae * ae - 1));
  const Eigen::Vector3d n = num / den;
  return n / n.norm();
}

Eigen::Matrix2cd relativistic_observable(const ObservableDirection& dir, const Boostd& b) {
  const Eigen::Vector3d n = relativistic_direction(dir, b);
  return n.x() * pauli<double>(0) + n.y() * pauli<double>(1) + n.z() * pauli<double>(2);
}

double classical_correlation(const ObservableDirection& a, const ObservableDirection& b) {
  if (transverse(a) || transverse(b))
    throw std::domain_error(
        "classical_correlation: direction transverse to the boost has no defined sign");
  return sign_of(a.longitudinal()) * sign_of(b.longitudinal());
}

double XYZWKernel::printed_lower_bound() const {
  return 2 * std::pow(std::sin(theta), 2) * std::pow(std::sin(phi), 2) - 1;
}

double XYZWKernel::azimuth_consistent_lower_bound() const {
  return 2 * std::pow(std::sin(theta), 2) * std::pow(std::cos(phi), 2) - 1;
}

XYZWKernel xyzw(const FourMomentumd& p, const Boostd& b, WignerModel model) {
  const WignerAngles wp = particle_angles(p, b, model);
  const WignerAngles wm = particle_angles(-p, b, model);
  const double sum = (wp.omega + wm.omega) / 2;
  const double diff = (wp.omega - wm.omega) / 2;
  const double s = std::sin(wp.phi), c = std::cos(wp.phi);
  XYZWKernel k;
  k.X = std::cos(sum) * s * s + std::cos(diff) * c * c;
  k.Y = std::sin(sum) * s;
  k.Z = std::sin(diff) * c;
  k.W = -std::cos(sum) * s * c + std::cos(diff) * s * c;
  k.theta = p.polar();
  k.phi = wp.phi;
  return k;
}

double quantum_correlation(const ObservableDirection& a, const ObservableDirection& b,
                           const EntangledMomentum& dist, const SpinVector& spin,
                           const Boostd& boost, const QuadratureGrid& grid, WignerModel model,
                           Parallelism par) {
  if (boost.beta() >= 1 - 1e-6 && (transverse(a) || transverse(b)))
    throw std::domain_error(
        "quantum_correlation: transverse direction is degenerate at this boost");
  const SpinDensity rho = reduced_spin_density(BipartiteState(dist, spin), boost, grid, model, par);
  const Eigen::Matrix4cd obs =
      kron(relativistic_observable(a, boost), relativistic_observable(b, boost));
  return (rho * obs).trace().real();
}

double xyzw_integral(const EntangledMomentum& dist, const Boostd& boost,
                     const QuadratureGrid& grid, WignerModel model, Parallelism par) {
  if (dist.correlation_sign != -1)
    throw std::invalid_argument("xyzw_integral: kernel pairs p with -p (anti-correlated only)");
  require_coverage(grid, dist.g);
  return integrate3(
             grid,
             [&](const GridNode& n) {
               return std::complex<double>(dist.g.density(n.p) *
                                           xyzw(FourMomentumd(n.p), boost, model).combination());
             },
             par)
      .real();
}

double asymptotic_quantum_correlation(const ObservableDirection& a, const ObservableDirection& b,
                                      const EntangledMomentum& dist, const Boostd& boost,
                                      const QuadratureGrid& grid, WignerModel model) {
  return classical_correlation(a, b) * xyzw_integral(dist, boost, grid, model);
}

}  // namespace relent
