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

#include "relent/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace relent {

namespace {

using cplx = std::complex<double>;

bool is_phi_plus(const SpinVector& spin) {
  return (spin - bell_phi_plus()).cwiseAbs().maxCoeff() < 1e-12;
}

void check_betas(const std::vector<double>& betas) {
  for (std::size_t i = 0; i < betas.size(); ++i) {
    if (!(betas[i] >= 0 && betas[i] < 1))
      throw std::domain_error("measure_sweep: beta outside [0, 1)");
    if (i > 0 && betas[i] < betas[i - 1])
      throw std::domain_error("measure_sweep: betas must be ascending");
  }
}

}  // namespace

Eigen::Vector4d partial_transpose_spectrum(const SpinDensity& rho) {
  const SpinDensity pt = partial_transpose(rho);
  const SpinDensity herm = (pt + pt.adjoint()) / 2;
  Eigen::SelfAdjointEigenSolver<SpinDensity> es(herm, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double entanglement_measure(const SpinDensity& rho) {
  const Eigen::Vector4d ev = partial_transpose_spectrum(rho);
  double negative = 0;
  for (int i = 0; i < 4; ++i) negative += std::min(0.0, ev(i));
  return -2 * negative;
}

std::array<cplx, 4> abcd_from_angles(const WignerAngles& wp, const WignerAngles& wq) {
  const double cp = std::cos(wp.omega / 2), sp = std::sin(wp.omega / 2);
  const double cq = std::cos(wq.omega / 2), sq = std::sin(wq.omega / 2);
  const double cfp = std::cos(wp.phi), sfp = std::sin(wp.phi);
  const double cfq = std::cos(wq.phi), sfq = std::sin(wq.phi);
  return {
      cplx(cp * cq - sp * sq * cfp * cfq, sp * cq * cfp + cp * sq * cfq),
      cplx(cp * sq * sfq, sp * sq * cfp * sfq),
      cplx(sp * cq * sfp, sp * sq * sfp * cfq),
      cplx(sp * sq * sfp * sfq, 0),
  };
}

std::array<cplx, 4> abcd(const FourMomentumd& p, const FourMomentumd& q, const Boostd& b,
                         WignerModel model) {
  return abcd_from_angles(particle_angles(p, b, model), particle_angles(q, b, model));
}

double XStateStats::identity_residual() const {
  const double lhs = mean_a2 * mean_d2;
  const double rhs = mean_b2 * mean_c2;
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  return scale == 0 ? 0 : std::abs(lhs - rhs) / scale;
}

SpinDensity XStateStats::density() const {
  SpinDensity rho = SpinDensity::Zero();
  rho(0, 0) = mean_a2;
  rho(1, 1) = mean_b2;
  rho(2, 2) = mean_c2;
  rho(3, 3) = mean_d2;
  rho(0, 3) = mean_ad;
  rho(3, 0) = std::conj(mean_ad);
  rho(1, 2) = mean_bc;
  rho(2, 1) = std::conj(mean_bc);
  return rho;
}

XStateStats xstate_stats(const EntangledMomentum& dist, const Boostd& b,
                         const QuadratureGrid& grid, WignerModel model, Parallelism par) {
  require_coverage(grid, dist.g);
  using Acc = Eigen::Matrix<cplx, 8, 1>;
  const std::size_t block = grid.block_size();
  const auto& nodes = grid.nodes();
  const Acc sum = ordered_sum(
      std::size_t(grid.shape().n_r),
      [&](std::size_t ir) {
        Acc acc = Acc::Zero();
        for (std::size_t i = ir * block; i < (ir + 1) * block; ++i) {
          const auto [a, bb, c, d] =
              abcd(FourMomentumd(nodes[i].p), FourMomentumd(dist.partner(nodes[i].p)), b, model);
          Acc term;
          term << std::norm(a), std::norm(bb), std::norm(c), std::norm(d), a * std::conj(d),
              bb * std::conj(c), std::norm(a) * std::norm(d), std::norm(bb) * std::norm(c);
          acc += (nodes[i].weight * dist.g.density(nodes[i].p)) * term;
        }
        return acc;
      },
      Acc::Zero().eval(), par);

  XStateStats s;
  s.mean_a2 = sum(0).real();
  s.mean_b2 = sum(1).real();
  s.mean_c2 = sum(2).real();
  s.mean_d2 = sum(3).real();
  s.mean_ad = sum(4);
  s.mean_bc = sum(5);
  s.mean_a2d2 = sum(6).real();
  s.mean_b2c2 = sum(7).real();
  return s;
}

SeparabilityVerdict separability_verdict(const XStateStats& s, double tolerance) {
  SeparabilityVerdict v;
  v.margin_ad = std::norm(s.mean_ad) - s.mean_b2 * s.mean_c2;
  v.margin_bc = std::norm(s.mean_bc) - s.mean_a2 * s.mean_d2;
  v.entangled = v.margin_ad > tolerance || v.margin_bc > tolerance;
  return v;
}

cplx overlap_kernel_generic(const FourMomentumd& p, const FourMomentumd& q, const Boostd& b,
                            const SpinVector& spin) {
  return spin.dot(spin_kernel(p, q, b) * spin);
}

double overlap_kernel_cos(const FourMomentumd& p, const FourMomentumd& q, const Boostd& b) {
  return std::cos(wigner_angle(p, b) / 2) * std::cos(wigner_angle(q, b) / 2);
}

FidelityResult fidelity(const BipartiteState& state, const Boostd& b, const QuadratureGrid& grid,
                        Parallelism par) {
  const auto* prod = std::get_if<GaussianProduct>(&state.dist);
  if (prod == nullptr)
    throw std::invalid_argument("fidelity: requires a GaussianProduct momentum distribution");
  const IsotropicGaussian& g = prod->g;
  require_coverage(grid, g);

  const std::size_t block = grid.block_size();
  const auto& nodes = grid.nodes();
  const Eigen::Matrix2cd m = ordered_sum(
      std::size_t(grid.shape().n_r),
      [&](std::size_t ir) {
        Eigen::Matrix2cd acc = Eigen::Matrix2cd::Zero();
        for (std::size_t i = ir * block; i < (ir + 1) * block; ++i) {
          const FourMomentumd p(nodes[i].p);
          const FourMomentumd boosted = boost_momentum(p, b);
          const double w = nodes[i].weight * std::sqrt(boosted.energy() / p.energy()) *
                           g.amplitude(boosted.spatial()) * g.amplitude(nodes[i].p);
          acc += w * wigner_rotation(p, b).matrix;
        }
        return acc;
      },
      Eigen::Matrix2cd::Zero().eval(), par);

  FidelityResult r;
  r.overlap = state.spin.dot(kron(m, m) * state.spin);
  r.fidelity = std::norm(r.overlap);
  return r;
}

FidelityResult fidelity_cos(const GaussianProduct& dist, const Boostd& b,
                            const QuadratureGrid& grid, Parallelism par) {
  const IsotropicGaussian& g = dist.g;
  require_coverage(grid, g);
  const cplx m = integrate3(
      grid,
      [&](const GridNode& n) {
        const FourMomentumd p(n.p);
        const FourMomentumd boosted = boost_momentum(p, b);
        return cplx(std::sqrt(boosted.energy() / p.energy()) * g.amplitude(boosted.spatial()) *
                    g.amplitude(n.p) * std::cos(wigner_angle(p, b) / 2));
      },
      par);
  FidelityResult r;
  r.overlap = m * m;
  r.fidelity = std::norm(r.overlap);
  return r;
}

std::array<double, 4> bell_weights(double omega_p, double phi_p, double omega_q, double phi_q) {
  const double cp2 = std::pow(std::cos(omega_p / 2), 2), sp2 = std::pow(std::sin(omega_p / 2), 2);
  const double cq2 = std::pow(std::cos(omega_q / 2), 2), sq2 = std::pow(std::sin(omega_q / 2), 2);
  const double sum = phi_p + phi_q;
  return {
      cp2 * cq2 + sp2 * sq2 * std::pow(std::cos(sum), 2),
      sp2 * cq2 * std::pow(std::sin(phi_p), 2) + cp2 * sq2 * std::pow(std::sin(phi_q), 2),
      sp2 * sq2 * std::pow(std::sin(sum), 2),
      sp2 * cq2 * std::pow(std::cos(phi_p), 2) + cp2 * sq2 * std::pow(std::cos(phi_q), 2),
  };
}

ABCDValues bell_ABCD(const GaussianProduct& dist, const Boostd& b, const QuadratureGrid& grid,
                     WignerModel model, Parallelism par) {
  const IsotropicGaussian& g = dist.g;
  require_coverage(grid, g);

  // <cos^2>, <sin^2>, <sin^2 cos^2 phi>, <sin^2 sin^2 phi>, <sin^2 cos 2phi>, <sin^2 sin 2phi>
  using Moments = Eigen::Matrix<double, 6, 1>;
  const std::size_t block = grid.block_size();
  const auto& nodes = grid.nodes();
  const Moments m = ordered_sum(
      std::size_t(grid.shape().n_r),
      [&](std::size_t ir) {
        Moments acc = Moments::Zero();
        for (std::size_t i = ir * block; i < (ir + 1) * block; ++i) {
          const WignerAngles w = particle_angles(FourMomentumd(nodes[i].p), b, model);
          const double c2 = std::pow(std::cos(w.omega / 2), 2);
          const double s2 = std::pow(std::sin(w.omega / 2), 2);
          Moments term;
          term << c2, s2, s2 * std::pow(std::cos(w.phi), 2), s2 * std::pow(std::sin(w.phi), 2),
              s2 * std::cos(2 * w.phi), s2 * std::sin(2 * w.phi);
          acc += (nodes[i].weight * g.density(nodes[i].p)) * term;
        }
        return acc;
      },
      Moments::Zero().eval(), par);

  const double cross = m(4) * m(4) - m(5) * m(5);
  ABCDValues v;
  v.A = m(0) * m(0) + 0.5 * (m(1) * m(1) + cross);
  v.B = 2 * m(0) * m(3);
  v.C = 0.5 * (m(1) * m(1) - cross);
  v.D = 2 * m(0) * m(2);
  v.eta = 2 * m(1);
  return v;
}

ABCDValues abcd_from_eta(double eta) {
  ABCDValues v;
  v.A = 1 - eta + 3 * eta * eta / 8;
  v.B = v.D = eta / 2 - eta * eta / 4;
  v.C = eta * eta / 8;
  v.eta = eta;
  return v;
}

SpinDensity bell_density_from_ABCD(const ABCDValues& v) {
  SpinDensity rho = SpinDensity::Zero();
  rho(0, 0) = rho(3, 3) = (v.A + v.D) / 2;
  rho(0, 3) = rho(3, 0) = (v.A - v.D) / 2;
  rho(1, 1) = rho(2, 2) = (v.B + v.C) / 2;
  rho(1, 2) = rho(2, 1) = -(v.B - v.C) / 2;
  return rho;
}

Eigen::Vector4d bell_pt_spectrum(const ABCDValues& v) {
  Eigen::Vector4d ev((1 - 2 * v.A) / 2, (1 - 2 * v.B) / 2, (1 - 2 * v.C) / 2, (1 - 2 * v.D) / 2);
  std::sort(ev.data(), ev.data() + 4);
  return ev;
}

std::vector<MeasureRow> measure_sweep(const MomentumDistribution& dist, const SpinVector& spin,
                                      const std::vector<double>& betas,
                                      const QuadratureGrid& grid, WignerModel model,
                                      Parallelism par) {
  check_betas(betas);
  const BipartiteState state(dist, spin);
  const auto* prod = std::get_if<GaussianProduct>(&dist);
  return map_indexed<MeasureRow>(
      betas.size(),
      [&](std::size_t i) {
        const Boostd b(betas[i]);
        const SpinDensity rho = reduced_spin_density(state, b, grid, model);
        MeasureRow row;
        row.beta = betas[i];
        row.measure = entanglement_measure(rho);
        row.min_pt_eigenvalue = partial_transpose_spectrum(rho)(0);
        if (prod != nullptr && model == WignerModel::exact)
          row.fidelity = fidelity(state, b, grid).fidelity;
        if (prod != nullptr && is_phi_plus(spin)) row.abcd = bell_ABCD(*prod, b, grid, model);
        return row;
      },
      par);
}

}  // namespace relent
