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

#include "relent/relstate.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace relent {

namespace {

using cplx = std::complex<double>;

double unit_draw(std::mt19937_64& rng) {
  // 53 random mantissa bits; std::uniform_real_distribution is not
  // reproducible across standard library implementations.
  return double(rng() >> 11) * 0x1.0p-53;
}

Eigen::Vector3d random_vector(std::mt19937_64& rng, double scale) {
  const double cos_t = 2 * unit_draw(rng) - 1;
  const double phi = 2 * std::numbers::pi * unit_draw(rng);
  const double mag = scale * (0.5 + unit_draw(rng));
  const double sin_t = std::sqrt(std::max(0.0, 1 - cos_t * cos_t));
  return mag * Eigen::Vector3d(cos_t, sin_t * std::cos(phi), sin_t * std::sin(phi));
}

void require_trace(const SpinDensity& rho) {
  const double err = std::abs(rho.trace() - cplx(1));
  if (err > 1e-4) {
    std::ostringstream msg;
    msg << "reduced spin density has trace error " << err
        << "; the grid does not cover the momentum distribution";
    throw GridCoverageError(msg.str());
  }
}

}  // namespace

SpinVector spin_up_up() { return SpinVector(1, 0, 0, 0); }

SpinVector bell_phi_plus() {
  const double h = std::numbers::sqrt2 / 2;
  return SpinVector(h, 0, 0, h);
}

BipartiteState::BipartiteState(MomentumDistribution d, const SpinVector& s)
    : dist(std::move(d)), spin(s) {
  if (std::abs(s.norm() - 1) > 1e-12)
    throw std::domain_error("BipartiteState: spin amplitudes must have unit norm");
}

WignerAngles particle_angles(const FourMomentumd& p, const Boostd& b, WignerModel model) {
  if (model == WignerModel::ultra_relativistic_limit) return {limiting_wigner_angle(p), p.azimuth()};
  return {wigner_angle(p, b), p.azimuth()};
}

Eigen::Matrix2cd particle_wigner(const FourMomentumd& p, const Boostd& b, WignerModel model) {
  const WignerAngles w = particle_angles(p, b, model);
  return wigner_matrix(w.omega, w.phi);
}

double boost_jacobian(const FourMomentumd& p, const Boostd& b, WignerModel model) {
  if (model == WignerModel::ultra_relativistic_limit) return 1.0;
  return std::sqrt(boost_momentum(p, b).energy() / p.energy());
}

Eigen::Matrix4cd spin_kernel(const FourMomentumd& p, const FourMomentumd& q, const Boostd& b,
                             WignerModel model) {
  return kron(particle_wigner(p, b, model), particle_wigner(q, b, model));
}

Eigen::Matrix4cd local_spin_channel(const IsotropicGaussian& g, const Boostd& b,
                                    const QuadratureGrid& grid, WignerModel model,
                                    Parallelism par) {
  const std::size_t block = grid.block_size();
  const auto& nodes = grid.nodes();
  return ordered_sum(
      std::size_t(grid.shape().n_r),
      [&](std::size_t ir) {
        Eigen::Matrix4cd acc = Eigen::Matrix4cd::Zero();
        for (std::size_t i = ir * block; i < (ir + 1) * block; ++i) {
          const Eigen::Matrix2cd d = particle_wigner(FourMomentumd(nodes[i].p), b, model);
          const Eigen::Matrix4cd term = kron(d, Eigen::Matrix2cd(d.conjugate()));
          acc += (nodes[i].weight * g.density(nodes[i].p)) * term;
        }
        return acc;
      },
      Eigen::Matrix4cd::Zero().eval(), par);
}

SpinDensity apply_local_channels(const Eigen::Matrix4cd& channel_a,
                                 const Eigen::Matrix4cd& channel_b, const SpinDensity& rho) {
  // rho'[(a b), (a' b')] = sum S_A[(a a'), (c c')] S_B[(b b'), (d d')] rho[(c d), (c' d')]
  SpinDensity out = SpinDensity::Zero();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int ap = 0; ap < 2; ++ap)
        for (int bp = 0; bp < 2; ++bp) {
          cplx acc = 0;
          for (int c = 0; c < 2; ++c)
            for (int d = 0; d < 2; ++d)
              for (int cp = 0; cp < 2; ++cp)
                for (int dp = 0; dp < 2; ++dp)
                  acc += channel_a(2 * a + ap, 2 * c + cp) * channel_b(2 * b + bp, 2 * d + dp) *
                         rho(2 * c + d, 2 * cp + dp);
          out(2 * a + b, 2 * ap + bp) = acc;
        }
  return out;
}

SpinDensity reduced_spin_density(const BipartiteState& state, const Boostd& b,
                                 const QuadratureGrid& grid, WignerModel model,
                                 Parallelism par) {
  const SpinDensity rho0 = state.spin * state.spin.adjoint();
  SpinDensity rho;
  if (const auto* prod = std::get_if<GaussianProduct>(&state.dist)) {
    const Eigen::Matrix4cd s = local_spin_channel(prod->g, b, grid, model, par);
    rho = apply_local_channels(s, s, rho0);
  } else {
    const auto& ent = std::get<EntangledMomentum>(state.dist);
    const std::size_t block = grid.block_size();
    const auto& nodes = grid.nodes();
    rho = ordered_sum(
        std::size_t(grid.shape().n_r),
        [&](std::size_t ir) {
          SpinDensity acc = SpinDensity::Zero();
          for (std::size_t i = ir * block; i < (ir + 1) * block; ++i) {
            const FourMomentumd p(nodes[i].p);
            const FourMomentumd q(ent.partner(nodes[i].p));
            const SpinVector v = spin_kernel(p, q, b, model) * state.spin;
            acc += (nodes[i].weight * ent.g.density(nodes[i].p)) * (v * v.adjoint());
          }
          return acc;
        },
        SpinDensity::Zero().eval(), par);
  }
  require_trace(rho);
  return rho;
}

SpinDensity reduced_spin_density_tensor(const BipartiteState& state, const Boostd& b,
                                        const QuadratureGrid& grid, WignerModel model) {
  std::vector<Eigen::Matrix2cd> d(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    d[i] = particle_wigner(FourMomentumd(grid[i].p), b, model);
  auto index_of = [&](const GridNode& n) {
    return std::size_t(&n - grid.nodes().data());
  };

  SpinDensity rho = SpinDensity::Zero();
  const bool entangled = std::holds_alternative<EntangledMomentum>(state.dist);
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      rho(r, c) = integrate6(grid, state.dist, [&](const GridNode& p, const GridNode& q) {
        const Eigen::Matrix2cd& dp = d[index_of(p)];
        // the collapsed partner node is a copy, not a grid node
        const Eigen::Matrix2cd dq = entangled ? particle_wigner(FourMomentumd(q.p), b, model)
                                              : d[index_of(q)];
        const SpinVector v = kron(dp, dq) * state.spin;
        return v(r) * std::conj(v(c));
      });
    }
  }
  require_trace(rho);
  return rho;
}

DensityDefects density_defects(const SpinDensity& rho) {
  DensityDefects out;
  out.hermiticity = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  out.trace_error = std::abs(rho.trace() - cplx(1));
  const SpinDensity herm = (rho + rho.adjoint()) / 2;
  Eigen::SelfAdjointEigenSolver<SpinDensity> es(herm, Eigen::EigenvaluesOnly);
  out.min_eigenvalue = es.eigenvalues().minCoeff();
  return out;
}

std::vector<SamplePair> default_sample_pairs(double scale, std::size_t count,
                                             std::uint64_t seed) {
  if (!(scale > 0)) throw std::domain_error("default_sample_pairs: scale must be positive");
  std::mt19937_64 rng(seed);
  std::vector<SamplePair> pairs;
  pairs.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    SamplePair s;
    s.p = random_vector(rng, scale);
    s.q = random_vector(rng, scale);
    if (i % 4 == 0) {
      s.p_prime = s.p;
      s.q_prime = s.q;
    } else {
      s.p_prime = random_vector(rng, scale);
      s.q_prime = random_vector(rng, scale);
    }
    pairs.push_back(s);
  }
  return pairs;
}

MomentumDensitySample momentum_density_samples(const BipartiteState& state, const Boostd& b,
                                               const std::vector<SamplePair>& pairs) {
  const auto* prod = std::get_if<GaussianProduct>(&state.dist);
  if (prod == nullptr)
    throw std::invalid_argument("momentum_density_samples: requires a GaussianProduct state");
  const IsotropicGaussian& g = prod->g;
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();

  MomentumDensitySample out;
  out.elements.reserve(pairs.size());
  for (const SamplePair& s : pairs) {
    const FourMomentumd p(s.p), q(s.q), pp(s.p_prime), qp(s.q_prime);
    const WignerModel exact = WignerModel::exact;
    const Eigen::Matrix2cd ma = particle_wigner(pp, b, exact).adjoint() * particle_wigner(p, b, exact);
    const Eigen::Matrix2cd mb = particle_wigner(qp, b, exact).adjoint() * particle_wigner(q, b, exact);

    const cplx spin_sum = state.spin.dot(kron(ma, mb) * state.spin);
    const cplx trace_a = state.spin.dot(kron(ma, id) * state.spin);
    const cplx trace_b = state.spin.dot(kron(id, mb) * state.spin);

    const double weight_a = boost_jacobian(p, b, exact) * boost_jacobian(pp, b, exact) *
                            g.amplitude(s.p) * g.amplitude(s.p_prime);
    const double weight_b = boost_jacobian(q, b, exact) * boost_jacobian(qp, b, exact) *
                            g.amplitude(s.q) * g.amplitude(s.q_prime);
    if (!(weight_a * weight_b > 1e-250))
      throw std::domain_error(
          "momentum_density_samples: sample lies in the underflowing Gaussian tail");

    MomentumDensityElement e;
    e.pair = s;
    e.element = weight_a * weight_b * spin_sum;
    e.marginal_a = weight_a * trace_a;
    e.marginal_b = weight_b * trace_b;
    out.elements.push_back(e);
  }
  return out;
}

double product_distance(const MomentumDensitySample& sample) {
  if (sample.elements.empty()) throw std::invalid_argument("product_distance: empty sample");
  double worst = 0;
  for (const auto& e : sample.elements) {
    const cplx prod = e.product();
    worst = std::max(worst, std::abs(e.element - prod) / (std::abs(prod) + 1e-300));
  }
  return worst;
}

}  // namespace relent
