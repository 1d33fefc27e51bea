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

// Four-momenta, Lorentz boosts along +x, and the spin-1/2 Wigner rotation
// they induce. Units: c = 1, momenta in units of the rest mass.

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

namespace relent {

template <typename Scalar>
using Vector3 = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar>
using Vector4 = Eigen::Matrix<Scalar, 4, 1>;
template <typename Scalar>
using Matrix3 = Eigen::Matrix<Scalar, 3, 3>;
template <typename Scalar>
using Matrix4 = Eigen::Matrix<Scalar, 4, 4>;
template <typename Scalar>
using Matrix2c = Eigen::Matrix<std::complex<Scalar>, 2, 2>;

/// On-shell four-momentum of a massive particle. Only the spatial part is
/// stored; the energy is always sqrt(m^2 + |p|^2).
///
/// Spherical coordinates are taken relative to the boost axis:
/// p = (p cos(theta), p sin(theta) cos(phi), p sin(theta) sin(phi)).
template <typename Scalar>
class FourMomentum {
 public:
  explicit FourMomentum(const Vector3<Scalar>& spatial, Scalar mass = Scalar(1))
      : spatial_(spatial), mass_(mass) {
    if (!(mass > Scalar(0))) throw std::domain_error("FourMomentum: mass must be positive");
    if (!spatial.allFinite()) throw std::domain_error("FourMomentum: non-finite momentum");
  }

  static FourMomentum from_spherical(Scalar p, Scalar theta, Scalar phi,
                                     Scalar mass = Scalar(1)) {
    using std::cos;
    using std::sin;
    if (p < Scalar(0)) throw std::domain_error("FourMomentum: negative magnitude");
    return FourMomentum(Vector3<Scalar>(p * cos(theta), p * sin(theta) * cos(phi),
                                        p * sin(theta) * sin(phi)),
                        mass);
  }

  Scalar mass() const { return mass_; }
  const Vector3<Scalar>& spatial() const { return spatial_; }
  Scalar magnitude() const { return spatial_.norm(); }
  Scalar energy() const {
    using std::sqrt;
    return sqrt(mass_ * mass_ + spatial_.squaredNorm());
  }
  /// Momentum transverse to the boost axis.
  Scalar transverse() const {
    using std::hypot;
    return hypot(spatial_.y(), spatial_.z());
  }

  /// Polar angle from +x, in [0, pi]. Zero for the rest momentum.
  Scalar polar() const {
    using std::atan2;
    return atan2(transverse(), spatial_.x());
  }
  /// Azimuth about +x, measured from +y towards +z. Zero when the momentum
  /// is collinear with the boost axis.
  Scalar azimuth() const {
    using std::atan2;
    if (spatial_.y() == Scalar(0) && spatial_.z() == Scalar(0)) return Scalar(0);
    return atan2(spatial_.z(), spatial_.y());
  }

  /// (p^0, p_x, p_y, p_z)
  Vector4<Scalar> components() const {
    Vector4<Scalar> v;
    v << energy(), spatial_;
    return v;
  }

  FourMomentum operator-() const { return FourMomentum(-spatial_, mass_); }

 private:
  Vector3<Scalar> spatial_;
  Scalar mass_;
};

/// Pure boost along +x with speed ratio beta in [0, 1).
template <typename Scalar>
class Boost {
 public:
  explicit Boost(Scalar beta) : beta_(beta) {
    if (!(beta >= Scalar(0) && beta < Scalar(1)))
      throw std::domain_error("Boost: beta must lie in [0, 1)");
    using std::atanh;
    rapidity_ = atanh(beta);
  }

  Scalar beta() const { return beta_; }
  Scalar rapidity() const { return rapidity_; }
  Scalar gamma() const {
    using std::cosh;
    return cosh(rapidity_);
  }
  Scalar gamma_beta() const {
    using std::sinh;
    return sinh(rapidity_);
  }

  Matrix4<Scalar> matrix() const {
    Matrix4<Scalar> m = Matrix4<Scalar>::Identity();
    m(0, 0) = m(1, 1) = gamma();
    m(0, 1) = m(1, 0) = gamma_beta();
    return m;
  }

 private:
  Scalar beta_;
  Scalar rapidity_;
};

using FourMomentumd = FourMomentum<double>;
using Boostd = Boost<double>;

template <typename Scalar>
FourMomentum<Scalar> boost_momentum(const FourMomentum<Scalar>& p, const Boost<Scalar>& b) {
  Vector3<Scalar> out = p.spatial();
  out.x() = b.gamma() * p.spatial().x() + b.gamma_beta() * p.energy();
  return FourMomentum<Scalar>(out, p.mass());
}

/// Canonical (rotation-free) boost taking (m, 0) to k. Symmetric.
template <typename Scalar>
Matrix4<Scalar> standard_boost(const FourMomentum<Scalar>& k) {
  const Scalar m = k.mass();
  const Scalar e = k.energy();
  const Vector3<Scalar>& v = k.spatial();
  Matrix4<Scalar> l;
  l(0, 0) = e / m;
  l.template block<1, 3>(0, 1) = v.transpose() / m;
  l.template block<3, 1>(1, 0) = v / m;
  l.template block<3, 3>(1, 1) =
      Matrix3<Scalar>::Identity() + v * v.transpose() / (m * (e + m));
  return l;
}

/// Spin-1/2 Wigner matrix
///   D = [[cos(w/2) + i sin(w/2) cos(phi), -sin(w/2) sin(phi)],
///        [sin(w/2) sin(phi),              cos(w/2) - i sin(w/2) cos(phi)]].
template <typename Scalar>
Matrix2c<Scalar> wigner_matrix(Scalar omega, Scalar phi) {
  using std::cos;
  using std::sin;
  using C = std::complex<Scalar>;
  const Scalar c = cos(omega / 2), s = sin(omega / 2);
  Matrix2c<Scalar> d;
  d << C(c, s * cos(phi)), C(-s * sin(phi), 0), C(s * sin(phi), 0), C(c, -s * cos(phi));
  return d;
}

template <typename Scalar>
struct WignerRotation {
  Scalar omega;  ///< rotation angle, [0, pi)
  Scalar phi;    ///< azimuth of the momentum about the boost axis
  Matrix2c<Scalar> matrix;
};

/// Closed-form Wigner angle,
///   tan(w/2) = sinh(a/2) sinh(d/2) sin(theta)
///              / (cosh(a/2) cosh(d/2) + sinh(a/2) sinh(d/2) cos(theta)),
/// with a the boost rapidity and d the particle rapidity. Written in terms of
/// half-angle hyperbolics built from (gamma, gamma*beta) and (E/m, p/m) so
/// it stays accurate for tiny momenta and for beta close to one.
template <typename Scalar>
Scalar wigner_angle(const FourMomentum<Scalar>& p, const Boost<Scalar>& b) {
  using std::atan2;
  using std::sqrt;
  const Scalar m = p.mass();
  const Scalar ch_a = sqrt((b.gamma() + 1) / 2);
  const Scalar sh_a = b.gamma_beta() / (2 * ch_a);
  const Scalar e_over_m = p.energy() / m;
  const Scalar ch_d = sqrt((e_over_m + 1) / 2);
  // sinh(d/2) / |p|, so that sinh(d/2) sin(theta) = scale * p_perp
  const Scalar scale = Scalar(1) / (2 * ch_d * m);
  const Scalar num = sh_a * scale * p.transverse();
  const Scalar den = ch_a * ch_d + sh_a * scale * p.spatial().x();
  return 2 * atan2(num, den);
}

/// Ultra-relativistic limit of the Wigner angle (omega -> theta).
template <typename Scalar>
Scalar limiting_wigner_angle(const FourMomentum<Scalar>& p) {
  return p.polar();
}

template <typename Scalar>
WignerRotation<Scalar> wigner_rotation(const FourMomentum<Scalar>& p, const Boost<Scalar>& b) {
  const Scalar omega = wigner_angle(p, b);
  // Collinear momenta: omega is exactly zero and azimuth() already returns 0.
  const Scalar phi = p.azimuth();
  return {omega, phi, wigner_matrix(omega, phi)};
}

/// Brute-force Wigner rotation: spatial block of L(Lambda p)^-1 Lambda L(p).
template <typename Scalar>
Matrix3<Scalar> wigner_oracle(const FourMomentum<Scalar>& p, const Boost<Scalar>& b) {
  const FourMomentum<Scalar> boosted = boost_momentum(p, b);
  // L(k)^-1 = L(k) with the spatial part reversed.
  const Matrix4<Scalar> w = standard_boost(-boosted) * b.matrix() * standard_boost(p);
  return w.template block<3, 3>(1, 1);
}

/// Axis-angle of a proper rotation, robust near 0 (no acos of the trace).
template <typename Scalar>
Scalar rotation_angle(const Matrix3<Scalar>& r) {
  using std::atan2;
  const Vector3<Scalar> v(r(2, 1) - r(1, 2), r(0, 2) - r(2, 0), r(1, 0) - r(0, 1));
  return atan2(v.norm() / 2, (r.trace() - 1) / 2);
}

/// Unit rotation axis; undefined (returns zero) for the identity.
template <typename Scalar>
Vector3<Scalar> rotation_axis(const Matrix3<Scalar>& r) {
  const Vector3<Scalar> v(r(2, 1) - r(1, 2), r(0, 2) - r(2, 0), r(1, 0) - r(0, 1));
  const Scalar n = v.norm();
  return n > Scalar(0) ? Vector3<Scalar>(v / n) : Vector3<Scalar>::Zero();
}

/// a (x) b for single-spin operators; row index of the result is 2 i_a + i_b.
template <typename Scalar>
Eigen::Matrix<std::complex<Scalar>, 4, 4> kron(const Matrix2c<Scalar>& a, const Matrix2c<Scalar>& b) {
  Eigen::Matrix<std::complex<Scalar>, 4, 4> out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.template block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

/// Pauli matrices sigma_x, sigma_y, sigma_z for index 0, 1, 2.
template <typename Scalar>
Matrix2c<Scalar> pauli(int i) {
  using C = std::complex<Scalar>;
  Matrix2c<Scalar> s;
  switch (i) {
    case 0: s << C(0), C(1), C(1), C(0); break;
    case 1: s << C(0), C(0, -1), C(0, 1), C(0); break;
    case 2: s << C(1), C(0), C(0), C(-1); break;
    default: throw std::out_of_range("pauli: index must be 0, 1 or 2");
  }
  return s;
}

/// SU(2) preimage of a rotation: U with U sigma_i U^dagger = sum_j R_ji sigma_j,
/// i.e. U = exp(-i w/2 n.sigma). The sign is chosen so that Re tr U >= 0,
/// which is the branch continuously connected to the identity for w < pi.
template <typename Scalar>
Matrix2c<Scalar> su2_from_so3(const Matrix3<Scalar>& r) {
  using std::sqrt;
  const Scalar tol = Scalar(1e-9);
  if ((r.transpose() * r - Matrix3<Scalar>::Identity()).cwiseAbs().maxCoeff() > tol ||
      r.determinant() <= Scalar(0))
    throw std::invalid_argument("su2_from_so3: input is not a proper rotation");

  // Shepperd's method: pivot on the largest quaternion component.
  Scalar w, x, y, z;
  const Scalar t = r.trace();
  if (t >= r(0, 0) && t >= r(1, 1) && t >= r(2, 2)) {
    w = sqrt(1 + t) / 2;
    x = (r(2, 1) - r(1, 2)) / (4 * w);
    y = (r(0, 2) - r(2, 0)) / (4 * w);
    z = (r(1, 0) - r(0, 1)) / (4 * w);
  } else if (r(0, 0) >= r(1, 1) && r(0, 0) >= r(2, 2)) {
    x = sqrt(1 + 2 * r(0, 0) - t) / 2;
    w = (r(2, 1) - r(1, 2)) / (4 * x);
    y = (r(0, 1) + r(1, 0)) / (4 * x);
    z = (r(0, 2) + r(2, 0)) / (4 * x);
  } else if (r(1, 1) >= r(2, 2)) {
    y = sqrt(1 + 2 * r(1, 1) - t) / 2;
    w = (r(0, 2) - r(2, 0)) / (4 * y);
    x = (r(0, 1) + r(1, 0)) / (4 * y);
    z = (r(1, 2) + r(2, 1)) / (4 * y);
  } else {
    z = sqrt(1 + 2 * r(2, 2) - t) / 2;
    w = (r(1, 0) - r(0, 1)) / (4 * z);
    x = (r(0, 2) + r(2, 0)) / (4 * z);
    y = (r(1, 2) + r(2, 1)) / (4 * z);
  }
  if (w < Scalar(0)) {
    w = -w;
    x = -x;
    y = -y;
    z = -z;
  }
  using C = std::complex<Scalar>;
  // w I - i (x sx + y sy + z sz)
  Matrix2c<Scalar> u;
  u << C(w, -z), C(-y, -x), C(y, -x), C(w, z);
  return u;
}

}  // namespace relent
