#pragma once

#include <memory>
#include <vector>

#include <Eigen/Sparse>

#include "hexstab/element.hpp"
#include "hexstab/errors.hpp"
#include "hexstab/material.hpp"
#include "hexstab/mesh.hpp"

namespace hexstab {

using SparseMatrix = Eigen::SparseMatrix<double>;

struct GlobalSystem {
  SparseMatrix K;
  /// Internal force for nonlinear assembly, zero for linear assembly.
  Eigen::VectorXd f;
  /// Sorted DOFs not fixed by Dirichlet conditions.
  std::vector<int> free_dofs;
};

/// Sorted complement of the Dirichlet DOFs.
std::vector<int> free_dofs(const HexMesh& mesh);

/// Linear stiffness assembled from element_system_linear with moduli D.
GlobalSystem assemble_linear(const HexMesh& mesh, const Mat6& D, IntegrationScheme scheme);

/// Tangent and internal force at global displacement a (size n_dofs).
GlobalSystem assemble_nonlinear(const HexMesh& mesh, const MaterialParams& mp,
                                IntegrationScheme scheme, const Eigen::VectorXd& a);

/// Consistent load vector of a constant body force.
Eigen::VectorXd assemble_load(const HexMesh& mesh, const Vec3& f_body);

/// Solves K_ff u_f = b_f on the free DOFs and scatters the result into a
/// full-size vector with zero Dirichlet entries. Sparse Cholesky; the
/// symbolic analysis is done on the first call and reused, so every K passed
/// to one solver must share a sparsity pattern.
///
/// Throws SolveFailure if K_ff is not positive definite or if the smallest
/// pivot is below 1e-10 of the largest. Hourglass singularities of the
/// unstabilized one-point element are reported this way.
class ReducedSolver {
 public:
  ReducedSolver(std::vector<int> free, int n_dofs);
  ~ReducedSolver();
  ReducedSolver(const ReducedSolver&) = delete;
  ReducedSolver& operator=(const ReducedSolver&) = delete;

  Eigen::VectorXd solve(const SparseMatrix& K, const Eigen::VectorXd& b);

 private:
  class Impl;
  std::vector<int> free_;
  std::vector<int> reduced_;
  std::unique_ptr<Impl> impl_;
};

/// One-shot ReducedSolver.
Eigen::VectorXd solve_reduced(const SparseMatrix& K, const Eigen::VectorXd& b,
                              const std::vector<int>& free);

/// Small-deformation solve with D = d_matrix(mp).
Eigen::VectorXd solve_linear(const HexMesh& mesh, const MaterialParams& mp,
                             IntegrationScheme scheme, const Vec3& f_body);
Eigen::VectorXd solve_linear(const HexMesh& mesh, const Mat6& D,
                             IntegrationScheme scheme, const Vec3& f_body);

struct NewtonConfig {
  double rel_tol = 1e-8;
  double abs_tol = 1e-6;  ///< N
  int max_iters = 20;     ///< residual evaluations per load step
  int n_load_steps = 10;

  /// Throws std::invalid_argument for non-positive tolerances or counts.
  void validate() const;
};

struct SolveReport {
  /// Residual evaluations used by each completed (or failing) load step.
  std::vector<int> iterations;
  /// Free-DOF residual norms per load step, one entry per evaluation.
  std::vector<std::vector<double>> residuals;
  bool converged = false;
  /// Last load step (1-based) that converged; 0 if none.
  int last_good_step = 0;

  int total_iterations() const;
};

struct NewtonResult {
  Eigen::VectorXd u;
  SolveReport report;
};

/// Raised when a load step does not converge within max_iters.
class NewtonDivergence : public HexstabError {
 public:
  NewtonDivergence(const std::string& what, SolveReport report)
      : HexstabError(what), report_(std::move(report)) {}
  const SolveReport& report() const { return report_; }

 private:
  SolveReport report_;
};

/// ElementInverted raised inside a Newton solve, with the progress so far.
class NewtonElementInverted : public ElementInverted {
 public:
  NewtonElementInverted(const std::string& what, SolveReport report)
      : ElementInverted(what), report_(std::move(report)) {}
  const SolveReport& report() const { return report_; }

 private:
  SolveReport report_;
};

/// Total-Lagrangian Newton iteration, ramping the body force linearly over
/// cfg.n_load_steps. A step converges when the free-DOF residual norm drops
/// to max(rel_tol * r0, abs_tol), r0 being the residual at the start of the
/// step.
NewtonResult solve_newton(const HexMesh& mesh, const MaterialParams& mp,
                          IntegrationScheme scheme, const Vec3& f_body_final,
                          const NewtonConfig& cfg = {});

struct TipDisplacement {
  Vec3 mean;       ///< average displacement of the tip-face nodes
  double U_r = 0;  ///< Euclidean norm of mean
};

TipDisplacement extract_tip_displacement(const HexMesh& mesh, const Eigen::VectorXd& u);

}  // namespace hexstab
