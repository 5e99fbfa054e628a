#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "hexstab/types.hpp"

namespace hexstab {

/// Global DOF of component c (0..2) of node n.
constexpr int dof(int node, int component) { return 3 * node + component; }

struct HexMesh {
  std::vector<Vec3> nodes;
  /// Node indices of each element in canonical local order.
  std::vector<std::array<int, 8>> elements;
  /// Nodes with all three displacement components fixed to zero.
  std::vector<int> dirichlet_nodes;

  std::size_t n_nodes() const { return nodes.size(); }
  std::size_t n_elements() const { return elements.size(); }
  int n_dofs() const { return 3 * static_cast<int>(nodes.size()); }

  NodeCoords element_coords(std::size_t e) const;
  /// Gathers the 24 element DOFs from a global vector.
  Vec24 element_vector(std::size_t e, const Eigen::VectorXd& global) const;
  /// Nodes with x1 equal to the largest x1 in the mesh (the beam tip face).
  std::vector<int> tip_nodes() const;
};

/// Structured box [0,dims] with nx x ny x nz elements along x1, x2, x3.
/// Dirichlet set: every node on x1 = 0.
struct BoxMeshParams {
  int nx = 10;
  int ny = 2;
  int nz = 2;
  Vec3 dims{0.5, 0.1, 0.1};
};

HexMesh box_mesh(int nx, int ny, int nz, const Vec3& dims);
HexMesh box_mesh(const BoxMeshParams& p);

/// Box mesh with every subdivision count multiplied by 2^level.
HexMesh uniform_refine(const BoxMeshParams& base, int level);

/// Cantilever with zigzag-tapered elements. Every interior cross-section
/// plane k (1 <= k < nx) is sheared along x1 by
///   (-1)^k * d * (dx / L) * (2 x3 / H - 1),
/// dx = L / nx, so each element gets the taper of a two-element beam whose
/// middle plane is tilted by d. d = 0 is the plain box mesh; d = L/2 makes
/// elements degenerate. Throws ElementInverted via check_non_inverted.
HexMesh distorted_beam_mesh(const BoxMeshParams& p, double d);

/// Throws ElementInverted naming the first element with det J <= 0 at its
/// midpoint or at one of its corners.
void check_non_inverted(const HexMesh& mesh);

/// Sum of midpoint det J over the elements.
double midpoint_volume(const HexMesh& mesh);

}  // namespace hexstab
