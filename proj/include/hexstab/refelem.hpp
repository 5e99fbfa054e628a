#pragma once

#include <array>
#include <span>

#include "hexstab/types.hpp"

namespace hexstab {

// Trilinear reference element on the unit cube [0,1]^3.
//
// Canonical node order: local node k (0-based) sits at the reference corner
// whose offsets are the bits of k, i.e. (k & 1, (k >> 1) & 1, (k >> 2) & 1).
// Nodes 0-3 form the bottom face (xi_3 = 0), nodes 4-7 the top face. The mesh
// generator, the element routines and the assembly all use this order.
inline constexpr std::array<std::array<int, 3>, 8> kNodeCorners{{
    {0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0},
    {0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1},
}};

/// A point of the reference cube; every component lies in [0, 1].
class RefPoint {
 public:
  /// Throws std::invalid_argument if any component is outside [0, 1].
  explicit RefPoint(const Vec3& xi);
  RefPoint(double x1, double x2, double x3) : RefPoint(Vec3(x1, x2, x3)) {}

  static RefPoint midpoint() { return RefPoint(0.5, 0.5, 0.5); }
  static RefPoint corner(int node);

  const Vec3& xi() const { return xi_; }
  double operator[](int i) const { return xi_[i]; }

 private:
  Vec3 xi_;
};

/// Reference derivatives of the 8 basis functions.
struct ShapeDerivatives {
  /// grad(k, j) = d phi_k / d xi_j
  Mat83 grad;
  /// second[i](k, j) = d^2 phi_k / (d xi_j d xi_i); second[i](k, i) == 0.
  std::array<Mat83, 3> second;
};

/// Whether the xi-derivative of the physical gradients keeps the Jacobian
/// variation term.
enum class JacobianMode {
  ConstJ,  ///< J treated as constant: A_i = 0.
  FullA,   ///< dJ^-1/dxi_i = -A_i J^-1 included.
};

/// Isoparametric map data at one reference point. The Jacobian uses the
/// row convention jac(i, j) = d x_j / d xi_i, so physical gradients are
/// jac_inv * (reference gradient).
struct JacobianState {
  Mat3 jac;
  Mat3 jac_inv;
  double det = 0.0;
  /// A[i] = jac^-1 * d jac / d xi_i
  std::array<Mat3, 3> A;
};

Vec8 shape_values(const RefPoint& p);

ShapeDerivatives shape_ref_derivatives(const RefPoint& p);

/// Throws SingularJacobian when |det J| < 1e-14 * diam^3, where diam is the
/// largest node-to-node distance of the element.
JacobianState jacobian_state(const NodeCoords& geom, const RefPoint& p);

/// Row k holds the physical gradient of basis function k.
Mat83 physical_gradients(const JacobianState& js, const Mat83& ref_grads);

/// d/dxi_axis of the physical basis gradients:
///   jac^-1 [d^2 phi / d xi_j d xi_axis]_j  -  A_axis grad(phi)
/// The second term is dropped in ConstJ mode. axis is 0-based.
Mat83 physical_gradient_xi_derivative(const JacobianState& js,
                                      const Mat83& ref_grads,
                                      const ShapeDerivatives& ref,
                                      int axis, JacobianMode mode);

/// Tensor-product Gauss-Legendre point on the unit cube.
struct QuadraturePoint {
  RefPoint point;
  double weight;
};

/// 1 (midpoint) or 2 points per direction; weights sum to 1.
std::span<const QuadraturePoint> gauss_rule(int points_per_direction);

/// Modified midpoint rule on the unit cube:
///   f(xi_m) + 1/24 * sum_i d^2 f / d xi_i^2 (xi_m)
/// Exact for polynomials of total degree <= 2.
double modified_midpoint_rule(double value_at_midpoint,
                              const Vec3& pure_second_derivatives);

}  // namespace hexstab
