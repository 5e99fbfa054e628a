#include "hexstab/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "hexstab/errors.hpp"
#include "hexstab/refelem.hpp"

namespace hexstab {

NodeCoords HexMesh::element_coords(std::size_t e) const {
  NodeCoords X;
  const auto& conn = elements.at(e);
  for (int k = 0; k < 8; ++k) X.row(k) = nodes[conn[k]].transpose();
  return X;
}

Vec24 HexMesh::element_vector(std::size_t e, const Eigen::VectorXd& global) const {
  Vec24 a;
  const auto& conn = elements.at(e);
  for (int k = 0; k < 8; ++k)
    for (int c = 0; c < 3; ++c) a[3 * k + c] = global[dof(conn[k], c)];
  return a;
}

std::vector<int> HexMesh::tip_nodes() const {
  double xmax = -std::numeric_limits<double>::infinity();
  for (const auto& x : nodes) xmax = std::max(xmax, x[0]);
  const double tol = 1e-12 * std::max(1.0, std::abs(xmax));
  std::vector<int> tip;
  for (std::size_t n = 0; n < nodes.size(); ++n)
    if (std::abs(nodes[n][0] - xmax) <= tol) tip.push_back(static_cast<int>(n));
  return tip;
}

HexMesh box_mesh(int nx, int ny, int nz, const Vec3& dims) {
  if (nx < 1 || ny < 1 || nz < 1)
    throw std::invalid_argument("box_mesh: element counts must be >= 1");
  if (!(dims.minCoeff() > 0.0))
    throw std::invalid_argument("box_mesh: dimensions must be positive");

  HexMesh mesh;
  const auto node_id = [&](int i, int j, int k) {
    return i + (nx + 1) * (j + (ny + 1) * k);
  };
  mesh.nodes.reserve(static_cast<std::size_t>(nx + 1) * (ny + 1) * (nz + 1));
  for (int k = 0; k <= nz; ++k)
    for (int j = 0; j <= ny; ++j)
      for (int i = 0; i <= nx; ++i)
        mesh.nodes.emplace_back(dims[0] * i / nx, dims[1] * j / ny, dims[2] * k / nz);

  mesh.elements.reserve(static_cast<std::size_t>(nx) * ny * nz);
  for (int k = 0; k < nz; ++k)
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        std::array<int, 8> conn;
        for (int a = 0; a < 8; ++a) {
          const auto& c = kNodeCorners[a];
          conn[a] = node_id(i + c[0], j + c[1], k + c[2]);
        }
        mesh.elements.push_back(conn);
      }

  const double tol = 1e-12 * dims[0];
  for (std::size_t n = 0; n < mesh.nodes.size(); ++n)
    if (std::abs(mesh.nodes[n][0]) <= tol)
      mesh.dirichlet_nodes.push_back(static_cast<int>(n));
  return mesh;
}

HexMesh box_mesh(const BoxMeshParams& p) { return box_mesh(p.nx, p.ny, p.nz, p.dims); }

HexMesh uniform_refine(const BoxMeshParams& base, int level) {
  if (level < 0) throw std::invalid_argument("refinement level must be >= 0");
  const int f = 1 << level;
  return box_mesh(base.nx * f, base.ny * f, base.nz * f, base.dims);
}

HexMesh distorted_beam_mesh(const BoxMeshParams& p, double d) {
  if (!(d >= 0.0)) throw std::invalid_argument("distortion d must be >= 0");
  HexMesh mesh = box_mesh(p);
  if (d == 0.0) return mesh;

  const double L = p.dims[0], H = p.dims[2];
  const double dx = L / p.nx;
  const double amplitude = d * dx / L;
  for (auto& x : mesh.nodes) {
    const int plane = static_cast<int>(std::lround(x[0] / dx));
    if (plane == 0 || plane == p.nx) continue;
    const double sign = plane % 2 == 0 ? 1.0 : -1.0;
    x[0] += sign * amplitude * (2.0 * x[2] / H - 1.0);
  }
  check_non_inverted(mesh);
  return mesh;
}

void check_non_inverted(const HexMesh& mesh) {
  static const std::array<ShapeDerivatives, 9> points = [] {
    std::array<ShapeDerivatives, 9> p;
    p[0] = shape_ref_derivatives(RefPoint::midpoint());
    for (int k = 0; k < 8; ++k) p[k + 1] = shape_ref_derivatives(RefPoint::corner(k));
    return p;
  }();
  for (std::size_t e = 0; e < mesh.n_elements(); ++e) {
    const NodeCoords X = mesh.element_coords(e);
    for (std::size_t q = 0; q < points.size(); ++q) {
      const double det = (points[q].grad.transpose() * X).determinant();
      if (!(det > 0.0))
        throw ElementInverted("element " + std::to_string(e) + " inverted: det J = " +
                              std::to_string(det) +
                              (q == 0 ? " at the midpoint" : " at local node " +
                                                                 std::to_string(q - 1)));
    }
  }
}

double midpoint_volume(const HexMesh& mesh) {
  double v = 0.0;
  for (std::size_t e = 0; e < mesh.n_elements(); ++e)
    v += jacobian_state(mesh.element_coords(e), RefPoint::midpoint()).det;
  return v;
}

}  // namespace hexstab
