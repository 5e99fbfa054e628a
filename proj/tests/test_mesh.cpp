#include <gtest/gtest.h>

#include <map>
#include <set>

#include "hexstab/errors.hpp"
#include "hexstab/mesh.hpp"
#include "oracles.hpp"

using namespace hexstab;

namespace {

double max_a_norm(const HexMesh& mesh) {
  double m = 0.0;
  for (std::size_t e = 0; e < mesh.n_elements(); ++e) {
    const JacobianState js = jacobian_state(mesh.element_coords(e), RefPoint::midpoint());
    for (const Mat3& A : js.A) m = std::max(m, A.norm());
  }
  return m;
}

// Local node triples spanning each face, as bit masks on the corner offsets.
std::vector<std::array<int, 4>> element_faces(const std::array<int, 8>& conn) {
  std::vector<std::array<int, 4>> faces;
  for (int axis = 0; axis < 3; ++axis)
    for (int side = 0; side < 2; ++side) {
      std::array<int, 4> f;
      int n = 0;
      for (int k = 0; k < 8; ++k)
        if (((k >> axis) & 1) == side) f[n++] = conn[k];
      std::sort(f.begin(), f.end());
      faces.push_back(f);
    }
  return faces;
}

}  // namespace

TEST(BoxMesh, SingleUnitCube) {
  const HexMesh m = box_mesh(1, 1, 1, Vec3(1, 1, 1));
  EXPECT_EQ(m.n_nodes(), 8u);
  EXPECT_EQ(m.n_elements(), 1u);
  EXPECT_EQ(m.dirichlet_nodes.size(), 4u);
  EXPECT_EQ(m.element_coords(0), oracle::unit_cube());
  EXPECT_EQ(m.n_dofs(), 24);
}

TEST(BoxMesh, CantileverCountsAndVolume) {
  const HexMesh m = box_mesh(10, 2, 2, Vec3(0.5, 0.1, 0.1));
  EXPECT_EQ(m.n_nodes(), 99u);
  EXPECT_EQ(m.n_elements(), 40u);
  EXPECT_EQ(m.dirichlet_nodes.size(), 9u);
  for (int n : m.dirichlet_nodes) EXPECT_EQ(m.nodes[n][0], 0.0);
  EXPECT_NEAR(midpoint_volume(m), 0.005, 1e-12 * 0.005);
  EXPECT_EQ(m.tip_nodes().size(), 9u);
  for (int n : m.tip_nodes()) EXPECT_DOUBLE_EQ(m.nodes[n][0], 0.5);
}

TEST(BoxMesh, ConstantDiagonalJacobians) {
  const HexMesh m = box_mesh(BoxMeshParams{});
  EXPECT_EQ(max_a_norm(m), 0.0);
  const JacobianState js = jacobian_state(m.element_coords(7), RefPoint(0.1, 0.8, 0.3));
  EXPECT_NEAR(js.jac(0, 0), 0.05, 1e-15);
  EXPECT_EQ(js.jac(0, 1), 0.0);
}

TEST(BoxMesh, RejectsBadInput) {
  EXPECT_THROW(box_mesh(0, 1, 1, Vec3(1, 1, 1)), std::invalid_argument);
  EXPECT_THROW(box_mesh(1, 1, 1, Vec3(1, -1, 1)), std::invalid_argument);
}

TEST(BoxMesh, ConnectivityIsValid) {
  const HexMesh m = box_mesh(3, 2, 4, Vec3(3, 2, 4));
  std::map<std::array<int, 4>, int> face_count;
  for (const auto& conn : m.elements) {
    std::set<int> distinct(conn.begin(), conn.end());
    EXPECT_EQ(distinct.size(), 8u);
    for (int n : conn) {
      EXPECT_GE(n, 0);
      EXPECT_LT(n, static_cast<int>(m.n_nodes()));
    }
    for (const auto& f : element_faces(conn)) ++face_count[f];
  }
  int boundary = 0;
  for (const auto& [f, count] : face_count) {
    EXPECT_LE(count, 2);
    boundary += count == 1;
  }
  EXPECT_EQ(boundary, 2 * (3 * 2 + 2 * 4 + 4 * 3));
  EXPECT_NO_THROW(check_non_inverted(m));
}

TEST(BoxMesh, ElementVectorGathersNodeDofs) {
  const HexMesh m = box_mesh(2, 1, 1, Vec3(2, 1, 1));
  Eigen::VectorXd g = Eigen::VectorXd::LinSpaced(m.n_dofs(), 0, m.n_dofs() - 1);
  const Vec24 a = m.element_vector(1, g);
  for (int k = 0; k < 8; ++k)
    for (int c = 0; c < 3; ++c) EXPECT_EQ(a[3 * k + c], dof(m.elements[1][k], c));
}

TEST(UniformRefine, CountsAndVolume) {
  const BoxMeshParams p;
  const HexMesh l0 = uniform_refine(p, 0);
  const HexMesh l1 = uniform_refine(p, 1);
  const HexMesh l2 = uniform_refine(p, 2);
  EXPECT_EQ(l0.n_elements(), 40u);
  EXPECT_EQ(l1.n_elements(), 320u);
  EXPECT_EQ(l2.n_elements(), 2560u);
  EXPECT_EQ(l2.dirichlet_nodes.size(), 81u);
  for (const HexMesh* m : {&l0, &l1, &l2})
    EXPECT_NEAR(midpoint_volume(*m), 0.005, 1e-12 * 0.005);
  EXPECT_THROW(uniform_refine(p, -1), std::invalid_argument);
}

TEST(DistortedBeam, ZeroDistortionIsBoxMesh) {
  const BoxMeshParams p;
  const HexMesh a = distorted_beam_mesh(p, 0.0);
  const HexMesh b = box_mesh(p);
  ASSERT_EQ(a.n_nodes(), b.n_nodes());
  for (std::size_t n = 0; n < a.n_nodes(); ++n) EXPECT_EQ(a.nodes[n], b.nodes[n]);
  EXPECT_EQ(a.elements, b.elements);
  EXPECT_EQ(a.dirichlet_nodes, b.dirichlet_nodes);
}

TEST(DistortedBeam, LargestStudiedDistortion) {
  const HexMesh m = distorted_beam_mesh(BoxMeshParams{}, 0.2);
  EXPECT_NO_THROW(check_non_inverted(m));
  EXPECT_NEAR(midpoint_volume(m), 0.005, 1e-12 * 0.005);
  // The clamped face and the tip stay planar.
  for (int n : m.dirichlet_nodes) EXPECT_EQ(m.nodes[n][0], 0.0);
  EXPECT_EQ(m.tip_nodes().size(), 9u);
  EXPECT_GT(max_a_norm(m), 0.1);
}

TEST(DistortedBeam, JacobianVariationGrowsWithDistortion) {
  const BoxMeshParams p;
  const double a0 = max_a_norm(distorted_beam_mesh(p, 0.0));
  const double a1 = max_a_norm(distorted_beam_mesh(p, 0.01));
  const double a2 = max_a_norm(distorted_beam_mesh(p, 0.02));
  EXPECT_EQ(a0, 0.0);
  EXPECT_GT(a1, a0);
  EXPECT_GT(a2, a1);
}

TEST(DistortedBeam, DegenerateDistortionThrows) {
  EXPECT_NO_THROW(distorted_beam_mesh(BoxMeshParams{}, 0.24));
  EXPECT_THROW(distorted_beam_mesh(BoxMeshParams{}, 0.25), ElementInverted);
  EXPECT_THROW(distorted_beam_mesh(BoxMeshParams{}, 0.4), ElementInverted);
  EXPECT_THROW(distorted_beam_mesh(BoxMeshParams{}, -0.1), std::invalid_argument);
}

TEST(CheckNonInverted, MirroredElement) {
  HexMesh m = box_mesh(2, 1, 1, Vec3(2, 1, 1));
  auto& conn = m.elements[1];
  std::swap(conn[0], conn[1]);
  std::swap(conn[2], conn[3]);
  std::swap(conn[4], conn[5]);
  std::swap(conn[6], conn[7]);
  EXPECT_THROW(check_non_inverted(m), ElementInverted);
}
