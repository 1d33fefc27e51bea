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

#include "relent/wavepacket.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace relent {

namespace {

using cplx = std::complex<double>;

void check_finite(const cplx& v) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw NumericError("integrand is not finite at a quadrature node");
}

}  // namespace

IsotropicGaussian::IsotropicGaussian(double delta) : delta_(delta) {
  if (!(delta > 0) || !std::isfinite(delta))
    throw std::domain_error("Gaussian width delta must be positive and finite");
  norm_ = std::pow(std::numbers::pi * delta, -1.5);
}

double IsotropicGaussian::density(const Eigen::Vector3d& p) const {
  return norm_ * std::exp(-p.squaredNorm() / delta_);
}

double IsotropicGaussian::amplitude(const Eigen::Vector3d& p) const {
  return std::sqrt(norm_) * std::exp(-p.squaredNorm() / (2 * delta_));
}

EntangledMomentum::EntangledMomentum(double delta, int sign) : g(delta), correlation_sign(sign) {
  if (sign != 1 && sign != -1)
    throw std::domain_error("EntangledMomentum: correlation sign must be +1 or -1");
}

double distribution_width(const MomentumDistribution& dist) {
  return std::visit([](const auto& d) { return d.delta(); }, dist);
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
  nodes.assign(std::size_t(n), 0.0);
  weights.assign(std::size_t(n), 0.0);
  // Newton on P_n from the Tricomi initial guess; roots come in +/- pairs.
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1);
    const double w = 2 / ((1 - x * x) * dp * dp);
    nodes[std::size_t(i)] = -x;
    nodes[std::size_t(n - 1 - i)] = x;
    weights[std::size_t(i)] = weights[std::size_t(n - 1 - i)] = w;
  }
  if (n % 2 == 1) nodes[std::size_t(n / 2)] = 0.0;
}

QuadratureGrid::QuadratureGrid(GridShape shape, double p_max) : shape_(shape), p_max_(p_max) {
  if (shape.n_r < 2 || shape.n_theta < 2 || shape.n_phi < 2) {
    std::ostringstream msg;
    msg << "quadrature grid counts must be >= 2 (got " << shape.n_r << ", " << shape.n_theta
        << ", " << shape.n_phi << ")";
    throw std::invalid_argument(msg.str());
  }
  if (!(p_max > 0) || !std::isfinite(p_max))
    throw std::invalid_argument("quadrature grid p_max must be positive and finite");

  std::vector<double> x, wx;
  gauss_legendre(shape.n_r, x, wx);
  r_.resize(x.size());
  wr_.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    r_[i] = 0.5 * p_max * (x[i] + 1);
    wr_[i] = 0.5 * p_max * wx[i] * r_[i] * r_[i];
  }
  gauss_legendre(shape.n_theta, ct_, wt_);
  phi_.resize(std::size_t(shape.n_phi));
  wphi_.assign(std::size_t(shape.n_phi), 2 * std::numbers::pi / shape.n_phi);
  for (int k = 0; k < shape.n_phi; ++k) phi_[std::size_t(k)] = 2 * std::numbers::pi * k / shape.n_phi;

  nodes_.reserve(r_.size() * ct_.size() * phi_.size());
  for (std::size_t i = 0; i < r_.size(); ++i) {
    for (std::size_t j = 0; j < ct_.size(); ++j) {
      const double st = std::sqrt(std::max(0.0, 1 - ct_[j] * ct_[j]));
      for (std::size_t k = 0; k < phi_.size(); ++k) {
        GridNode n;
        n.radius = r_[i];
        n.cos_polar = ct_[j];
        n.azimuth = phi_[k];
        n.p = r_[i] * Eigen::Vector3d(ct_[j], st * std::cos(phi_[k]), st * std::sin(phi_[k]));
        n.weight = wr_[i] * wt_[j] * wphi_[k];
        nodes_.push_back(n);
      }
    }
  }
}

QuadratureGrid build_grid(int n_r, int n_theta, int n_phi, double p_max) {
  return QuadratureGrid(GridShape{n_r, n_theta, n_phi}, p_max);
}

double default_cutoff(double delta) { return 6.0 * std::sqrt(delta); }

QuadratureGrid default_grid(double delta, GridShape shape) {
  return QuadratureGrid(shape, default_cutoff(delta));
}

std::complex<double> integrate3(const QuadratureGrid& grid, const ScalarField3& h,
                                Parallelism par) {
  const std::size_t block = grid.block_size();
  const auto& nodes = grid.nodes();
  return ordered_sum(
      std::size_t(grid.shape().n_r),
      [&](std::size_t ir) {
        cplx acc = 0;
        for (std::size_t i = ir * block; i < (ir + 1) * block; ++i) {
          const cplx v = h(nodes[i]);
          check_finite(v);
          acc += nodes[i].weight * v;
        }
        return acc;
      },
      cplx(0), par);
}

std::complex<double> integrate6(const QuadratureGrid& grid, const ScalarField6& h,
                                Parallelism par) {
  const std::size_t block = grid.block_size();
  const auto& nodes = grid.nodes();
  return ordered_sum(
      std::size_t(grid.shape().n_r),
      [&](std::size_t ir) {
        cplx acc = 0;
        for (std::size_t i = ir * block; i < (ir + 1) * block; ++i) {
          cplx inner = 0;
          for (const GridNode& q : nodes) {
            const cplx v = h(nodes[i], q);
            check_finite(v);
            inner += q.weight * v;
          }
          acc += nodes[i].weight * inner;
        }
        return acc;
      },
      cplx(0), par);
}

std::complex<double> integrate6(const QuadratureGrid& grid, const MomentumDistribution& dist,
                                const ScalarField6& h, Parallelism par) {
  if (const auto* prod = std::get_if<GaussianProduct>(&dist)) {
    const IsotropicGaussian& g = prod->g;
    return integrate6(
        grid,
        [&](const GridNode& p, const GridNode& q) {
          return g.density(p.p) * g.density(q.p) * h(p, q);
        },
        par);
  }
  const auto& ent = std::get<EntangledMomentum>(dist);
  return integrate3(
      grid,
      [&](const GridNode& p) {
        GridNode q = p;
        q.p = ent.partner(p.p);
        if (ent.correlation_sign < 0) {
          q.cos_polar = -p.cos_polar;
          q.azimuth = std::fmod(p.azimuth + std::numbers::pi, 2 * std::numbers::pi);
        }
        return ent.g.density(p.p) * h(p, q);
      },
      par);
}

double coverage_deficit(const QuadratureGrid& grid, const IsotropicGaussian& g) {
  const cplx mass = integrate3(grid, [&](const GridNode& n) { return cplx(g.density(n.p)); });
  return 1.0 - mass.real();
}

void require_coverage(const QuadratureGrid& grid, const IsotropicGaussian& g, double tolerance) {
  const double deficit = coverage_deficit(grid, g);
  if (std::abs(deficit) > tolerance) {
    std::ostringstream msg;
    msg << "grid (p_max = " << grid.p_max() << ") misses " << deficit
        << " of the Gaussian mass for delta = " << g.delta() << " (tolerance " << tolerance
        << ")";
    throw GridCoverageError(msg.str());
  }
}

}  // namespace relent
