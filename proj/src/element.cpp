#include "hexstab/element.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <string>

#include "hexstab/errors.hpp"

namespace hexstab {

namespace {

using RowMat3 = Eigen::Matrix<double, 3, 3, Eigen::RowMajor>;

// B_L layout for a fixed F; F = I gives the small-strain operator.
Mat6x24 strain_operator(const RowMat3& F, const Mat83& g) {
  Mat6x24 B;
  for (int k = 0; k < 8; ++k) {
    const double gx = g(k, 0), gy = g(k, 1), gz = g(k, 2);
    for (int c = 0; c < 3; ++c) {
      const int col = 3 * k + c;
      B(0, col) = F(c, 0) * gx;
      B(1, col) = F(c, 1) * gy;
      B(2, col) = F(c, 2) * gz;
      B(3, col) = F(c, 0) * gy + F(c, 1) * gx;
      B(4, col) = F(c, 1) * gz + F(c, 2) * gy;
      B(5, col) = F(c, 2) * gx + F(c, 0) * gz;
    }
  }
  return B;
}

RowMat3 as_matrix(const Vec9& F) {
  return Eigen::Map<const RowMat3>(F.data());
}

JacobianMode mode_of(IntegrationScheme s) {
  return (s == IntegrationScheme::OnePStabConstJ ||
          s == IntegrationScheme::OnePStabIsoConstJ)
             ? JacobianMode::ConstJ
             : JacobianMode::FullA;
}

bool is_stabilized(IntegrationScheme s) {
  return s == IntegrationScheme::OnePStab || s == IntegrationScheme::OnePStabIso ||
         s == IntegrationScheme::OnePStabConstJ ||
         s == IntegrationScheme::OnePStabIsoConstJ;
}

bool iso_only_stabilization(IntegrationScheme s) {
  return s == IntegrationScheme::OnePStabIso ||
         s == IntegrationScheme::OnePStabIsoConstJ;
}

struct PointData {
  JacobianState js;
  ShapeDerivatives ref;
  Mat83 grads;
};

PointData point_data(const NodeCoords& geom, const RefPoint& p) {
  PointData pd{jacobian_state(geom, p), shape_ref_derivatives(p), Mat83::Zero()};
  if (!(pd.js.det > 0.0))
    throw ElementInverted("element Jacobian not positive, det J = " +
                          std::to_string(pd.js.det));
  pd.grads = physical_gradients(pd.js, pd.ref.grad);
  return pd;
}

struct MaterialPoint {
  ElementKinematics kin;
  StressTangentSplit st;
  NonlinearB B;
};

MaterialPoint material_point(const PointData& pd, const MaterialParams& mp,
                             const Vec24& a_e) {
  MaterialPoint m{ElementKinematics::from(pd.grads, a_e), {}, {}};
  const double detF = m.kin.det_F();
  if (!(detF > 0.0))
    throw ElementInverted("deformation gradient not positive, det F = " +
                          std::to_string(detF));
  m.st = stress_and_tangent(m.kin.C, mp);
  m.B = b_nonlinear(m.kin.F, pd.grads);
  return m;
}

void add_tangent(ElementSystem& es, double w, const NonlinearB& B, const Mat6& L,
                 const Vec6& S) {
  es.K.noalias() += w * (B.BL.transpose() * L * B.BL);
  es.K.noalias() += w * (B.BNL.transpose() * stress_block(S) * B.BNL);
  es.f_int.noalias() += w * (B.BL.transpose() * S);
}

}  // namespace

std::string_view scheme_name(IntegrationScheme s) {
  switch (s) {
    case IntegrationScheme::Full: return "Full";
    case IntegrationScheme::OnePoint: return "1-P";
    case IntegrationScheme::OnePVol: return "1-PVol";
    case IntegrationScheme::OnePStab: return "1-PStab";
    case IntegrationScheme::OnePStabIso: return "1-PStabIso";
    case IntegrationScheme::OnePStabConstJ: return "1-PStabConstJ";
    case IntegrationScheme::OnePStabIsoConstJ: return "1-PStabIsoConstJ";
  }
  return "?";
}

std::optional<IntegrationScheme> parse_scheme(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return std::tolower(ch); });
  if (lower == "onepoint" || lower == "1-point") return IntegrationScheme::OnePoint;
  for (IntegrationScheme s : kAllSchemes) {
    std::string n(scheme_name(s));
    std::transform(n.begin(), n.end(), n.begin(),
                   [](unsigned char ch) { return std::tolower(ch); });
    if (n == lower) return s;
  }
  return std::nullopt;
}

bool supports_linear(IntegrationScheme s) {
  return s == IntegrationScheme::Full || s == IntegrationScheme::OnePoint ||
         s == IntegrationScheme::OnePStab || s == IntegrationScheme::OnePStabConstJ;
}

Mat9x24 grad_matrix(const Mat83& g) {
  Mat9x24 B = Mat9x24::Zero();
  for (int k = 0; k < 8; ++k)
    for (int c = 0; c < 3; ++c)
      for (int j = 0; j < 3; ++j) B(3 * c + j, 3 * k + c) = g(k, j);
  return B;
}

Mat6x24 b_linear(const Mat83& phys_grads) {
  return strain_operator(RowMat3::Identity(), phys_grads);
}

Mat6x24 b_linear_xi_derivative(const JacobianState& js, const ShapeDerivatives& ref,
                               int axis, JacobianMode mode) {
  return b_linear(physical_gradient_xi_derivative(js, ref.grad, ref, axis, mode));
}

ElementKinematics ElementKinematics::from(const Mat83& phys_grads, const Vec24& a_e) {
  ElementKinematics k;
  k.grad_u = grad_matrix(phys_grads) * a_e;
  k.F = k.grad_u;
  k.F[0] += 1.0;
  k.F[4] += 1.0;
  k.F[8] += 1.0;
  k.C = CauchyGreenVoigt::from_deformation_gradient(k.F);
  return k;
}

double ElementKinematics::det_F() const { return as_matrix(F).determinant(); }

NonlinearB b_nonlinear(const Vec9& F, const Mat83& phys_grads) {
  return {strain_operator(as_matrix(F), phys_grads), grad_matrix(phys_grads)};
}

NonlinearB b_nonlinear_xi_derivative(const Vec9& F, const JacobianState& js,
                                     const ShapeDerivatives& ref, int axis,
                                     JacobianMode mode) {
  return b_nonlinear(F, physical_gradient_xi_derivative(js, ref.grad, ref, axis, mode));
}

Mat9 stress_block(const Vec6& S) {
  const Mat3 s = voigt_to_tensor(S);
  Mat9 T = Mat9::Zero();
  for (int b = 0; b < 3; ++b) T.block<3, 3>(3 * b, 3 * b) = s;
  return T;
}

ElementSystem element_system_linear(const NodeCoords& geom, const Mat6& D,
                                    IntegrationScheme scheme) {
  if (!supports_linear(scheme))
    throw std::invalid_argument(std::string("scheme ") +
                                std::string(scheme_name(scheme)) +
                                " is not defined for linear elasticity");
  ElementSystem es;
  if (scheme == IntegrationScheme::Full) {
    for (const auto& qp : gauss_rule(2)) {
      const PointData pd = point_data(geom, qp.point);
      const Mat6x24 B = b_linear(pd.grads);
      es.K.noalias() += qp.weight * pd.js.det * (B.transpose() * D * B);
      es.volume += qp.weight * pd.js.det;
    }
    return es;
  }

  const PointData pd = point_data(geom, RefPoint::midpoint());
  const Mat6x24 B = b_linear(pd.grads);
  es.K.noalias() = pd.js.det * (B.transpose() * D * B);
  es.volume = pd.js.det;
  if (is_stabilized(scheme)) {
    const JacobianMode mode = mode_of(scheme);
    for (int i = 0; i < 3; ++i) {
      const Mat6x24 dB = b_linear_xi_derivative(pd.js, pd.ref, i, mode);
      es.K.noalias() += pd.js.det / 12.0 * (dB.transpose() * D * dB);
    }
  }
  return es;
}

ElementSystem element_system_linear(const NodeCoords& geom, const MaterialParams& mp,
                                    IntegrationScheme scheme) {
  return element_system_linear(geom, d_matrix(mp), scheme);
}

ElementSystem element_system_nonlinear(const NodeCoords& geom, const MaterialParams& mp,
                                       const Vec24& a_e, IntegrationScheme scheme) {
  ElementSystem es;

  if (scheme == IntegrationScheme::Full || scheme == IntegrationScheme::OnePVol) {
    const bool iso_only = scheme == IntegrationScheme::OnePVol;
    for (const auto& qp : gauss_rule(2)) {
      const PointData pd = point_data(geom, qp.point);
      const MaterialPoint m = material_point(pd, mp, a_e);
      const double w = qp.weight * pd.js.det;
      if (iso_only)
        add_tangent(es, w, m.B, m.st.L_iso, m.st.S_iso);
      else
        add_tangent(es, w, m.B, m.st.L(), m.st.S());
      es.volume += w;
    }
    if (iso_only) {
      const PointData pd = point_data(geom, RefPoint::midpoint());
      const MaterialPoint m = material_point(pd, mp, a_e);
      add_tangent(es, pd.js.det, m.B, m.st.L_vol, m.st.S_vol);
    }
    return es;
  }

  // Midpoint-based schemes.
  const PointData pd = point_data(geom, RefPoint::midpoint());
  const MaterialPoint m = material_point(pd, mp, a_e);
  const double J = pd.js.det;
  es.volume = J;
  add_tangent(es, J, m.B, m.st.L(), m.st.S());
  if (!is_stabilized(scheme)) return es;

  const bool iso = iso_only_stabilization(scheme);
  const Mat6 L = iso ? m.st.L_iso : m.st.L();
  const Mat9 T = stress_block(iso ? m.st.S_iso : m.st.S());
  const JacobianMode mode = mode_of(scheme);
  Mat24 stab = Mat24::Zero();
  for (int i = 0; i < 3; ++i) {
    const NonlinearB dB = b_nonlinear_xi_derivative(m.kin.F, pd.js, pd.ref, i, mode);
    stab.noalias() += dB.BL.transpose() * L * dB.BL;
    stab.noalias() += dB.BNL.transpose() * T * dB.BNL;
  }
  stab *= J / 12.0;
  es.K += stab;
  es.f_int.noalias() += stab * a_e;
  return es;
}

Vec24 element_load(const NodeCoords& geom, const Vec3& f_body) {
  Vec24 f = Vec24::Zero();
  for (const auto& qp : gauss_rule(2)) {
    const JacobianState js = jacobian_state(geom, qp.point);
    const Vec8 n = shape_values(qp.point);
    const double w = qp.weight * js.det;
    for (int k = 0; k < 8; ++k) f.segment<3>(3 * k) += w * n[k] * f_body;
  }
  return f;
}

}  // namespace hexstab
