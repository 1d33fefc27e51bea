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

// Momentum wavepackets and the spherical product quadrature used for every
// momentum integral in the library.

#include <complex>
#include <cstddef>
#include <functional>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "relent/errors.hpp"
#include "relent/parallel.hpp"

namespace relent {

/// Isotropic Gaussian density |g(p)|^2 = N exp(-p^2 / delta), N = (pi delta)^(-3/2).
class IsotropicGaussian {
 public:
  explicit IsotropicGaussian(double delta);

  double delta() const { return delta_; }
  double norm() const { return norm_; }
  double density(const Eigen::Vector3d& p) const;
  double amplitude(const Eigen::Vector3d& p) const;

 private:
  double delta_;
  double norm_;
};

/// f(p, q) = g(p) g(q), both factors the same isotropic Gaussian.
struct GaussianProduct {
  IsotropicGaussian g;

  explicit GaussianProduct(double delta) : g(delta) {}
  double delta() const { return g.delta(); }
  double amplitude(const Eigen::Vector3d& p, const Eigen::Vector3d& q) const {
    return g.amplitude(p) * g.amplitude(q);
  }
};

/// |f(p, q)|^2 = |g(p)|^2 delta(q - s p). The delta is never discretized:
/// integrals eliminate q symbolically.
struct EntangledMomentum {
  IsotropicGaussian g;
  int correlation_sign;  ///< s in q = s p; -1 anti-correlated (default), +1 correlated

  explicit EntangledMomentum(double delta, int sign = -1);
  double delta() const { return g.delta(); }
  Eigen::Vector3d partner(const Eigen::Vector3d& p) const { return double(correlation_sign) * p; }
};

using MomentumDistribution = std::variant<GaussianProduct, EntangledMomentum>;

double distribution_width(const MomentumDistribution& dist);

/// One quadrature node of the spherical product grid. `weight` already
/// includes the r^2 dr dcos(theta) dphi volume element.
struct GridNode {
  Eigen::Vector3d p;
  double weight;
  double radius;
  double cos_polar;
  double azimuth;
};

struct GridShape {
  int n_r = 32;
  int n_theta = 32;
  int n_phi = 16;
};

/// Gauss-Legendre in r on [0, p_max] and in cos(theta) on [-1, 1], uniform
/// periodic trapezoid in phi. Immutable once built.
class QuadratureGrid {
 public:
  QuadratureGrid(GridShape shape, double p_max);

  const GridShape& shape() const { return shape_; }
  double p_max() const { return p_max_; }
  std::size_t size() const { return nodes_.size(); }
  const std::vector<GridNode>& nodes() const { return nodes_; }
  const GridNode& operator[](std::size_t i) const { return nodes_[i]; }

  const std::vector<double>& radial_nodes() const { return r_; }
  const std::vector<double>& radial_weights() const { return wr_; }
  const std::vector<double>& polar_nodes() const { return ct_; }
  const std::vector<double>& polar_weights() const { return wt_; }
  const std::vector<double>& azimuth_nodes() const { return phi_; }
  const std::vector<double>& azimuth_weights() const { return wphi_; }

  /// Nodes sharing one radial index form one contiguous block; this is the
  /// fixed reduction unit for all parallel integration.
  std::size_t block_size() const {
    return std::size_t(shape_.n_theta) * std::size_t(shape_.n_phi);
  }

 private:
  GridShape shape_;
  double p_max_;
  std::vector<double> r_, wr_, ct_, wt_, phi_, wphi_;
  std::vector<GridNode> nodes_;
};

/// Gauss-Legendre nodes and weights on [-1, 1], ascending.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

QuadratureGrid build_grid(int n_r, int n_theta, int n_phi, double p_max);

/// Radial cutoff covering a Gaussian of width delta to below 1e-15.
double default_cutoff(double delta);

QuadratureGrid default_grid(double delta, GridShape shape = {});

using ScalarField3 = std::function<std::complex<double>(const GridNode&)>;
using ScalarField6 = std::function<std::complex<double>(const GridNode&, const GridNode&)>;

/// sum_i w_i h(p_i). Radial blocks are reduced in index order, so the result
/// is bit-identical for every thread count. Throws NumericError on a
/// non-finite integrand value.
std::complex<double> integrate3(const QuadratureGrid& grid, const ScalarField3& h,
                                Parallelism par = {});

/// Raw tensor-grid sum_ij w_i w_j h(p_i, q_j).
std::complex<double> integrate6(const QuadratureGrid& grid, const ScalarField6& h,
                                Parallelism par = {});

/// Integral of h(p, q) |f(p, q)|^2. For EntangledMomentum the delta is
/// collapsed (q = s p) and this is a 3-d sum.
std::complex<double> integrate6(const QuadratureGrid& grid, const MomentumDistribution& dist,
                                const ScalarField6& h, Parallelism par = {});

/// 1 - sum_i w_i |g(p_i)|^2: the probability mass the grid misses.
double coverage_deficit(const QuadratureGrid& grid, const IsotropicGaussian& g);

/// Throws GridCoverageError when the deficit exceeds `tolerance`.
void require_coverage(const QuadratureGrid& grid, const IsotropicGaussian& g,
                      double tolerance = 1e-4);

}  // namespace relent
