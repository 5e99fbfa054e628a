#include "hexstab/material.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "hexstab/errors.hpp"

namespace hexstab {

namespace {

void validate(double E, double nu) {
  if (!(E > 0.0)) throw std::invalid_argument("E must be positive");
  if (!(nu >= 0.0 && nu < 0.5))
    throw std::invalid_argument("nu must satisfy 0 <= nu < 0.5, got " +
                                std::to_string(nu));
}

}  // namespace

MaterialParams MaterialParams::from_E_nu(double E, double nu) {
  validate(E, nu);
  MaterialParams mp;
  mp.E = E;
  mp.nu = nu;
  mp.lambda = E * nu / ((1.0 - 2.0 * nu) * (1.0 + nu));
  mp.mu = E / (2.0 * (1.0 + nu));
  mp.K = E / (3.0 * (1.0 - 2.0 * nu));
  mp.K1 = mp.mu / 2.0;
  mp.K2 = mp.mu / 2.0;
  return mp;
}

MaterialParams MaterialParams::benchmark(double E, double nu, BulkConvention bulk) {
  MaterialParams mp = from_E_nu(E, nu);
  const double K = bulk == BulkConvention::OneMinusNu ? E / (3.0 * (1.0 - nu))
                                                      : E / (3.0 * (1.0 - 2.0 * nu));
  return mp.with_moduli(K, E / (2.0 * (1.0 + nu)), 0.0);
}

MaterialParams MaterialParams::with_moduli(double bulk, double k1, double k2) const {
  MaterialParams mp = *this;
  mp.K = bulk;
  mp.K1 = k1;
  mp.K2 = k2;
  return mp;
}

CauchyGreenVoigt CauchyGreenVoigt::identity() {
  CauchyGreenVoigt C;
  C.c << 1, 1, 1, 0, 0, 0;
  return C;
}

CauchyGreenVoigt CauchyGreenVoigt::from_tensor(const Mat3& C) {
  CauchyGreenVoigt out;
  out.c << C(0, 0), C(1, 1), C(2, 2), 0.5 * (C(0, 1) + C(1, 0)),
      0.5 * (C(1, 2) + C(2, 1)), 0.5 * (C(2, 0) + C(0, 2));
  return out;
}

CauchyGreenVoigt CauchyGreenVoigt::from_deformation_gradient(const Vec9& F) {
  const Mat3 Fm = Eigen::Map<const Eigen::Matrix<double, 3, 3, Eigen::RowMajor>>(F.data());
  return from_tensor(Fm.transpose() * Fm);
}

Mat3 CauchyGreenVoigt::tensor() const { return voigt_to_tensor(c); }

Mat3 voigt_to_tensor(const Vec6& v) {
  Mat3 t;
  t << v[0], v[3], v[5],
       v[3], v[1], v[4],
       v[5], v[4], v[2];
  return t;
}

Mat6 d_matrix(const MaterialParams& mp) {
  Mat6 D = Mat6::Zero();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) D(i, j) = mp.lambda;
    D(i, i) = mp.lambda + 2.0 * mp.mu;
    D(i + 3, i + 3) = mp.mu;
  }
  return D;
}

InvariantSet invariants_and_derivatives(const CauchyGreenVoigt& Cv) {
  const Vec6& c = Cv.c;
  const double C11 = c[0], C22 = c[1], C33 = c[2];
  const double C12 = c[3], C23 = c[4], C31 = c[5];

  InvariantSet s;
  s.v1 = C11 + C22 + C33;
  s.v2 = C11 * C22 + C22 * C33 + C33 * C11 - C12 * C12 - C23 * C23 - C31 * C31;
  s.v3 = Cv.tensor().determinant();
  if (!(s.v3 > 0.0))
    throw NonPositiveDefinite("Cauchy-Green tensor has I3 = " + std::to_string(s.v3));

  s.d1 << 1, 1, 1, 0, 0, 0;
  s.d2 << C33 + C22, C11 + C33, C22 + C11, -C12, -C23, -C31;
  s.d3 << C22 * C33 - C23 * C23,
          C33 * C11 - C31 * C31,
          C11 * C22 - C12 * C12,
          C23 * C31 - C33 * C12,
          C31 * C12 - C11 * C23,
          C12 * C23 - C22 * C31;

  s.dd1.setZero();
  s.dd2 << 0, 1, 1, 0, 0, 0,
           1, 0, 1, 0, 0, 0,
           1, 1, 0, 0, 0, 0,
           0, 0, 0, -0.5, 0, 0,
           0, 0, 0, 0, -0.5, 0,
           0, 0, 0, 0, 0, -0.5;
  // The (31,12) entry is +C23/2; the table this follows prints it with the
  // wrong sign, which breaks symmetry.
  s.dd3 << 0, C33, C22, 0, -C23, 0,
           C33, 0, C11, 0, 0, -C31,
           C22, C11, 0, -C12, 0, 0,
           0, 0, -C12, -C33 / 2, C31 / 2, C23 / 2,
           -C23, 0, 0, C31 / 2, -C11 / 2, C12 / 2,
           0, -C31, 0, C23 / 2, C12 / 2, -C22 / 2;
  return s;
}

InvariantSet modified_invariant_derivatives(const CauchyGreenVoigt& C) {
  const InvariantSet I = invariants_and_derivatives(C);
  const double I1 = I.v1, I2 = I.v2, I3 = I.v3;
  const Mat6 d3d3 = I.d3 * I.d3.transpose();

  InvariantSet m;
  m.v1 = std::pow(I3, -1.0 / 3.0) * I1;
  m.v2 = std::pow(I3, -2.0 / 3.0) * I2;
  m.v3 = std::sqrt(I3);

  m.d1 = std::pow(I3, -1.0 / 3.0) * I.d1 - I1 / 3.0 * std::pow(I3, -4.0 / 3.0) * I.d3;
  m.d2 = std::pow(I3, -2.0 / 3.0) * I.d2 -
         2.0 / 3.0 * I2 * std::pow(I3, -5.0 / 3.0) * I.d3;
  m.d3 = 0.5 / m.v3 * I.d3;

  m.dd1 = std::pow(I3, -1.0 / 3.0) * I.dd1 +
          4.0 / 9.0 * I1 * std::pow(I3, -7.0 / 3.0) * d3d3 -
          std::pow(I3, -4.0 / 3.0) / 3.0 *
              (I.d1 * I.d3.transpose() + I1 * I.dd3 + I.d3 * I.d1.transpose());
  m.dd2 = std::pow(I3, -2.0 / 3.0) * I.dd2 +
          10.0 / 9.0 * I2 * std::pow(I3, -8.0 / 3.0) * d3d3 -
          2.0 / 3.0 * std::pow(I3, -5.0 / 3.0) *
              (I.d2 * I.d3.transpose() + I2 * I.dd3 + I.d3 * I.d2.transpose());
  m.dd3 = 0.5 * std::pow(I3, -0.5) * I.dd3 - 0.25 * std::pow(I3, -1.5) * d3d3;
  return m;
}

StressTangentSplit stress_and_tangent(const CauchyGreenVoigt& C,
                                      const MaterialParams& mp) {
  const InvariantSet J = modified_invariant_derivatives(C);
  StressTangentSplit st;
  st.S_iso = 2.0 * (mp.K1 * J.d1 + mp.K2 * J.d2);
  st.S_vol = 2.0 * mp.K * (J.v3 - 1.0) * J.d3;
  st.L_iso = 4.0 * (mp.K1 * J.dd1 + mp.K2 * J.dd2);
  st.L_vol = 4.0 * mp.K * ((J.v3 - 1.0) * J.dd3 + J.d3 * J.d3.transpose());
  return st;
}

double strain_energy_density(const CauchyGreenVoigt& C, const MaterialParams& mp) {
  const InvariantSet J = modified_invariant_derivatives(C);
  return mp.K1 * (J.v1 - 3.0) + mp.K2 * (J.v2 - 3.0) +
         0.5 * mp.K * (J.v3 - 1.0) * (J.v3 - 1.0);
}

}  // namespace hexstab
