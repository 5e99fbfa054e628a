#pragma once

#include "hexstab/types.hpp"

namespace hexstab {

// Voigt order for symmetric tensors throughout the library:
//   (11, 22, 33, 12, 23, 31)
// Stress-like and Cauchy-Green vectors hold tensor components (off-diagonal
// stored once, unweighted). Strain-like vectors produced by B matrices carry
// engineering shear (2 E_12, ...). A 6x6 tangent L maps engineering strain
// increments to stress increments and stores tensor components L_ijkl.

/// How the bulk modulus K is derived from E and nu.
enum class BulkConvention {
  OneMinusTwoNu,  ///< K = E / (3 (1 - 2 nu)), the standard isotropic relation
  OneMinusNu,     ///< K = E / (3 (1 - nu)), the cantilever benchmark setting
};

struct MaterialParams {
  double E = 0.0;
  double nu = 0.0;
  double lambda = 0.0;
  double mu = 0.0;
  double K = 0.0;   ///< bulk modulus of the volumetric energy
  double K1 = 0.0;  ///< Mooney-Rivlin coefficient of J1
  double K2 = 0.0;  ///< Mooney-Rivlin coefficient of J2

  /// Lame parameters from (E, nu); K = E/(3(1-2nu)), K1 = K2 = mu/2.
  /// Throws std::invalid_argument unless E > 0 and 0 <= nu < 0.5.
  static MaterialParams from_E_nu(double E, double nu);

  /// Benchmark parametrization: K1 = E/(2(1+nu)), K2 = 0 (Neo-Hookean),
  /// K by the given convention.
  static MaterialParams benchmark(double E, double nu,
                                  BulkConvention bulk = BulkConvention::OneMinusNu);

  /// Same E, nu and Lame parameters, explicit hyperelastic moduli.
  MaterialParams with_moduli(double bulk, double k1, double k2) const;
};

/// Right Cauchy-Green tensor C = F^T F in Voigt form.
struct CauchyGreenVoigt {
  Vec6 c = Vec6::Zero();

  static CauchyGreenVoigt identity();
  static CauchyGreenVoigt from_tensor(const Mat3& C);
  /// F given row-major as (F11, F12, F13, F21, ..., F33).
  static CauchyGreenVoigt from_deformation_gradient(const Vec9& F);
  Mat3 tensor() const;
};

/// Scalar invariants with first and second derivatives (tensor components).
struct InvariantSet {
  double v1 = 0.0, v2 = 0.0, v3 = 0.0;
  Vec6 d1, d2, d3;
  Mat6 dd1, dd2, dd3;
};

struct StressTangentSplit {
  Vec6 S_iso, S_vol;
  Mat6 L_iso, L_vol;

  Vec6 S() const { return S_iso + S_vol; }
  Mat6 L() const { return L_iso + L_vol; }
};

/// Isotropic elasticity matrix with engineering shear (mu on the shear
/// diagonal).
Mat6 d_matrix(const MaterialParams& mp);

/// I1, I2, I3 of C with derivatives. Throws NonPositiveDefinite if I3 <= 0.
InvariantSet invariants_and_derivatives(const CauchyGreenVoigt& C);

/// J1 = I3^(-1/3) I1, J2 = I3^(-2/3) I2, J3 = I3^(1/2) with derivatives.
InvariantSet modified_invariant_derivatives(const CauchyGreenVoigt& C);

/// Second Piola-Kirchhoff stress and material tangent of the Mooney-Rivlin
/// energy, split into isochoric (K1, K2) and volumetric (K) parts.
StressTangentSplit stress_and_tangent(const CauchyGreenVoigt& C,
                                      const MaterialParams& mp);

/// K1 (J1 - 3) + K2 (J2 - 3) + K/2 (J3 - 1)^2
double strain_energy_density(const CauchyGreenVoigt& C, const MaterialParams& mp);

/// 3x3 symmetric tensor from a Voigt stress vector.
Mat3 voigt_to_tensor(const Vec6& v);

}  // namespace hexstab
