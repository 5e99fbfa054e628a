#pragma once

#include <optional>
#include <string_view>

#include "hexstab/material.hpp"
#include "hexstab/refelem.hpp"
#include "hexstab/types.hpp"

namespace hexstab {

/// Element integration schemes.
///
///  Full               2x2x2 Gauss.
///  OnePoint           midpoint only, no stabilization (rank deficient).
///  OnePVol            2x2x2 Gauss on isochoric terms, midpoint on volumetric.
///  OnePStab           midpoint + stabilization with the full L and T.
///  OnePStabIso        midpoint + stabilization with L_iso and T_iso only.
///  OnePStabConstJ     OnePStab with A_i = 0.
///  OnePStabIsoConstJ  OnePStabIso with A_i = 0.
enum class IntegrationScheme {
  Full,
  OnePoint,
  OnePVol,
  OnePStab,
  OnePStabIso,
  OnePStabConstJ,
  OnePStabIsoConstJ,
};

inline constexpr IntegrationScheme kAllSchemes[] = {
    IntegrationScheme::Full,        IntegrationScheme::OnePoint,
    IntegrationScheme::OnePVol,     IntegrationScheme::OnePStab,
    IntegrationScheme::OnePStabIso, IntegrationScheme::OnePStabConstJ,
    IntegrationScheme::OnePStabIsoConstJ,
};

/// Display name, e.g. "1-PStabConstJ".
std::string_view scheme_name(IntegrationScheme s);
/// Case-insensitive parse of scheme_name() output; "onepoint"/"1-p" also
/// accepted for OnePoint.
std::optional<IntegrationScheme> parse_scheme(std::string_view name);

/// True for the schemes defined for linear elasticity.
bool supports_linear(IntegrationScheme s);

/// Gradient operator: B * a is the row-major vectorized du/dx
/// (du1/dx1, du1/dx2, du1/dx3, du2/dx1, ...). a is ordered (u1,u2,u3) per node.
Mat9x24 grad_matrix(const Mat83& phys_grads);

/// Small-strain operator with engineering shear rows (12, 23, 31).
Mat6x24 b_linear(const Mat83& phys_grads);

/// xi_axis-derivative of b_linear, evaluated from the reference data.
Mat6x24 b_linear_xi_derivative(const JacobianState& js, const ShapeDerivatives& ref,
                               int axis, JacobianMode mode);

struct ElementKinematics {
  Vec9 grad_u;
  Vec9 F;  ///< row-major, I + grad_u
  CauchyGreenVoigt C;

  static ElementKinematics from(const Mat83& phys_grads, const Vec24& a_e);
  double det_F() const;
};

/// B_L is the Voigt form of the variation of the Green-Lagrange strain
/// (engineering shear); B_NL is the gradient operator.
struct NonlinearB {
  Mat6x24 BL;
  Mat9x24 BNL;
};

NonlinearB b_nonlinear(const Vec9& F, const Mat83& phys_grads);

/// xi_axis-derivatives of B_L and B_NL with F held fixed.
NonlinearB b_nonlinear_xi_derivative(const Vec9& F, const JacobianState& js,
                                     const ShapeDerivatives& ref, int axis,
                                     JacobianMode mode);

/// 9x9 block diagonal holding three copies of the 3x3 stress tensor.
Mat9 stress_block(const Vec6& S);

struct ElementSystem {
  Mat24 K = Mat24::Zero();
  Vec24 f_int = Vec24::Zero();
  double volume = 0.0;
};

/// Small-deformation element stiffness with moduli D. Valid schemes: Full,
/// OnePoint, OnePStab, OnePStabConstJ; others throw std::invalid_argument.
/// f_int is left zero.
ElementSystem element_system_linear(const NodeCoords& geom, const Mat6& D,
                                    IntegrationScheme scheme);
ElementSystem element_system_linear(const NodeCoords& geom, const MaterialParams& mp,
                                    IntegrationScheme scheme);

/// Tangent stiffness and internal force of the Mooney-Rivlin element at the
/// element displacement a_e. Throws ElementInverted if det F <= 0 at a used
/// quadrature point, and SingularJacobian / ElementInverted for bad geometry.
ElementSystem element_system_nonlinear(const NodeCoords& geom, const MaterialParams& mp,
                                       const Vec24& a_e, IntegrationScheme scheme);

/// Consistent nodal load of a constant body force, 2x2x2 Gauss.
Vec24 element_load(const NodeCoords& geom, const Vec3& f_body);

}  // namespace hexstab
