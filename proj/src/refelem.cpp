#include "hexstab/refelem.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "hexstab/errors.hpp"

namespace hexstab {

namespace {

// 1D linear factor of the tensor-product basis: 1 - xi at corner 0, xi at 1.
double linear_factor(double xi, int corner) { return corner == 0 ? 1.0 - xi : xi; }
double linear_slope(int corner) { return corner == 0 ? -1.0 : 1.0; }

std::vector<QuadraturePoint> make_rule(int n) {
  std::vector<double> x, w;
  if (n == 1) {
    x = {0.5};
    w = {1.0};
  } else {
    const double h = 0.5 / std::sqrt(3.0);
    x = {0.5 - h, 0.5 + h};
    w = {0.5, 0.5};
  }
  std::vector<QuadraturePoint> rule;
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        rule.push_back({RefPoint(x[i], x[j], x[k]), w[i] * w[j] * w[k]});
  return rule;
}

}  // namespace

RefPoint::RefPoint(const Vec3& xi) : xi_(xi) {
  for (int i = 0; i < 3; ++i) {
    if (!(xi[i] >= 0.0 && xi[i] <= 1.0))
      throw std::invalid_argument("RefPoint component " + std::to_string(i) +
                                  " outside [0,1]: " + std::to_string(xi[i]));
  }
}

RefPoint RefPoint::corner(int node) {
  const auto& c = kNodeCorners.at(node);
  return RefPoint(c[0], c[1], c[2]);
}

Vec8 shape_values(const RefPoint& p) {
  Vec8 n;
  for (int k = 0; k < 8; ++k) {
    const auto& c = kNodeCorners[k];
    n[k] = linear_factor(p[0], c[0]) * linear_factor(p[1], c[1]) *
           linear_factor(p[2], c[2]);
  }
  return n;
}

ShapeDerivatives shape_ref_derivatives(const RefPoint& p) {
  ShapeDerivatives d;
  for (auto& s : d.second) s.setZero();
  for (int k = 0; k < 8; ++k) {
    const auto& c = kNodeCorners[k];
    double f[3], s[3];
    for (int a = 0; a < 3; ++a) {
      f[a] = linear_factor(p[a], c[a]);
      s[a] = linear_slope(c[a]);
    }
    d.grad(k, 0) = s[0] * f[1] * f[2];
    d.grad(k, 1) = f[0] * s[1] * f[2];
    d.grad(k, 2) = f[0] * f[1] * s[2];
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        if (i == j) continue;
        const int m = 3 - i - j;
        d.second[i](k, j) = s[i] * s[j] * f[m];
      }
    }
  }
  return d;
}

JacobianState jacobian_state(const NodeCoords& geom, const RefPoint& p) {
  const ShapeDerivatives d = shape_ref_derivatives(p);
  JacobianState js;
  js.jac = d.grad.transpose() * geom;
  js.det = js.jac.determinant();

  double diam = 0.0;
  for (int a = 0; a < 8; ++a)
    for (int b = a + 1; b < 8; ++b)
      diam = std::max(diam, (geom.row(a) - geom.row(b)).norm());
  if (!(std::abs(js.det) >= 1e-14 * diam * diam * diam))
    throw SingularJacobian("singular element Jacobian, det J = " +
                           std::to_string(js.det));

  js.jac_inv = js.jac.inverse();
  for (int i = 0; i < 3; ++i)
    js.A[i] = js.jac_inv * (d.second[i].transpose() * geom);
  return js;
}

Mat83 physical_gradients(const JacobianState& js, const Mat83& ref_grads) {
  return ref_grads * js.jac_inv.transpose();
}

Mat83 physical_gradient_xi_derivative(const JacobianState& js,
                                      const Mat83& ref_grads,
                                      const ShapeDerivatives& ref, int axis,
                                      JacobianMode mode) {
  if (axis < 0 || axis > 2)
    throw std::invalid_argument("axis must be 0, 1 or 2");
  Mat83 out = ref.second[axis] * js.jac_inv.transpose();
  if (mode == JacobianMode::FullA)
    out -= physical_gradients(js, ref_grads) * js.A[axis].transpose();
  return out;
}

std::span<const QuadraturePoint> gauss_rule(int points_per_direction) {
  static const std::vector<QuadraturePoint> one = make_rule(1);
  static const std::vector<QuadraturePoint> two = make_rule(2);
  switch (points_per_direction) {
    case 1: return one;
    case 2: return two;
    default:
      throw std::invalid_argument("gauss_rule supports 1 or 2 points per direction");
  }
}

double modified_midpoint_rule(double value_at_midpoint,
                              const Vec3& pure_second_derivatives) {
  return value_at_midpoint + pure_second_derivatives.sum() / 24.0;
}

}  // namespace hexstab
