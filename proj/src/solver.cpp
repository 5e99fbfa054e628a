#include "hexstab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/CholmodSupport>

namespace hexstab {

namespace {

std::string at_element(std::size_t e, const std::exception& ex) {
  return "element " + std::to_string(e) + ": " + ex.what();
}

// Runs fn(e) for every element, attaching the element index to errors.
template <class Fn>
void for_each_element(const HexMesh& mesh, Fn&& fn) {
  for (std::size_t e = 0; e < mesh.n_elements(); ++e) {
    try {
      fn(e);
    } catch (const ElementInverted& ex) {
      throw ElementInverted(at_element(e, ex));
    } catch (const SingularJacobian& ex) {
      throw SingularJacobian(at_element(e, ex));
    } catch (const NonPositiveDefinite& ex) {
      throw NonPositiveDefinite(at_element(e, ex));
    }
  }
}

void scatter(const HexMesh& mesh, std::size_t e, const Mat24& Ke,
             std::vector<Eigen::Triplet<double>>& triplets) {
  const auto& conn = mesh.elements[e];
  int map[24];
  for (int k = 0; k < 8; ++k)
    for (int c = 0; c < 3; ++c) map[3 * k + c] = dof(conn[k], c);
  for (int j = 0; j < 24; ++j)
    for (int i = 0; i < 24; ++i) triplets.emplace_back(map[i], map[j], Ke(i, j));
}

void scatter(const HexMesh& mesh, std::size_t e, const Vec24& fe, Eigen::VectorXd& f) {
  const auto& conn = mesh.elements[e];
  for (int k = 0; k < 8; ++k)
    for (int c = 0; c < 3; ++c) f[dof(conn[k], c)] += fe[3 * k + c];
}

double free_norm(const Eigen::VectorXd& r, const std::vector<int>& free) {
  double s = 0.0;
  for (int i : free) s += r[i] * r[i];
  return std::sqrt(s);
}

// Supernodal Cholesky exposing CHOLMOD's diagonal-ratio estimate.
class CheckedCholesky : public Eigen::CholmodSupernodalLLT<SparseMatrix> {
 public:
  // (min diag L / max diag L)^2, i.e. the smallest-to-largest pivot ratio.
  double pivot_ratio() { return cholmod_rcond(this->m_cholmodFactor, &this->cholmod()); }
};

}  // namespace

class ReducedSolver::Impl {
 public:
  Impl() { llt.cholmod().print = 0; }
  CheckedCholesky llt;
  bool analyzed = false;
};

ReducedSolver::ReducedSolver(std::vector<int> free, int n_dofs)
    : free_(std::move(free)), reduced_(n_dofs, -1), impl_(std::make_unique<Impl>()) {
  for (std::size_t i = 0; i < free_.size(); ++i) reduced_[free_[i]] = static_cast<int>(i);
}

ReducedSolver::~ReducedSolver() = default;

Eigen::VectorXd ReducedSolver::solve(const SparseMatrix& K, const Eigen::VectorXd& b) {
  const int n = static_cast<int>(reduced_.size());
  const int m = static_cast<int>(free_.size());
  if (K.rows() != n || b.size() != n)
    throw std::invalid_argument("system size does not match the DOF map");

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(K.nonZeros());
  for (int col = 0; col < K.outerSize(); ++col) {
    if (reduced_[col] < 0) continue;
    for (SparseMatrix::InnerIterator it(K, col); it; ++it)
      if (reduced_[it.row()] >= 0)
        triplets.emplace_back(reduced_[it.row()], reduced_[col], it.value());
  }
  SparseMatrix Kff(m, m);
  Kff.setFromTriplets(triplets.begin(), triplets.end());
  Eigen::VectorXd bf(m);
  for (int i = 0; i < m; ++i) bf[i] = b[free_[i]];

  auto& llt = impl_->llt;
  if (!impl_->analyzed) {
    llt.analyzePattern(Kff);
    impl_->analyzed = true;
  }
  llt.factorize(Kff);
  if (llt.info() != Eigen::Success)
    throw SolveFailure("reduced stiffness is not positive definite");
  const double ratio = llt.pivot_ratio();
  if (!(ratio > 1e-10))
    throw SolveFailure("reduced stiffness is numerically singular (pivot ratio " +
                       std::to_string(ratio) + ")");
  const Eigen::VectorXd xf = llt.solve(bf);
  if (llt.info() != Eigen::Success || !xf.allFinite())
    throw SolveFailure("triangular solve failed");

  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < m; ++i) x[free_[i]] = xf[i];
  return x;
}

std::vector<int> free_dofs(const HexMesh& mesh) {
  std::vector<char> fixed(mesh.n_dofs(), 0);
  for (int n : mesh.dirichlet_nodes)
    for (int c = 0; c < 3; ++c) fixed[dof(n, c)] = 1;
  std::vector<int> free;
  for (int i = 0; i < mesh.n_dofs(); ++i)
    if (!fixed[i]) free.push_back(i);
  return free;
}

GlobalSystem assemble_linear(const HexMesh& mesh, const Mat6& D, IntegrationScheme scheme) {
  const int n = mesh.n_dofs();
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(mesh.n_elements() * 576);
  for_each_element(mesh, [&](std::size_t e) {
    scatter(mesh, e, element_system_linear(mesh.element_coords(e), D, scheme).K, triplets);
  });
  GlobalSystem sys{SparseMatrix(n, n), Eigen::VectorXd::Zero(n), free_dofs(mesh)};
  sys.K.setFromTriplets(triplets.begin(), triplets.end());
  return sys;
}

GlobalSystem assemble_nonlinear(const HexMesh& mesh, const MaterialParams& mp,
                                IntegrationScheme scheme, const Eigen::VectorXd& a) {
  const int n = mesh.n_dofs();
  if (a.size() != n) throw std::invalid_argument("displacement vector has wrong size");
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(mesh.n_elements() * 576);
  GlobalSystem sys{SparseMatrix(n, n), Eigen::VectorXd::Zero(n), free_dofs(mesh)};
  for_each_element(mesh, [&](std::size_t e) {
    const ElementSystem es = element_system_nonlinear(
        mesh.element_coords(e), mp, mesh.element_vector(e, a), scheme);
    scatter(mesh, e, es.K, triplets);
    scatter(mesh, e, es.f_int, sys.f);
  });
  sys.K.setFromTriplets(triplets.begin(), triplets.end());
  return sys;
}

Eigen::VectorXd assemble_load(const HexMesh& mesh, const Vec3& f_body) {
  Eigen::VectorXd f = Eigen::VectorXd::Zero(mesh.n_dofs());
  for_each_element(mesh, [&](std::size_t e) {
    scatter(mesh, e, element_load(mesh.element_coords(e), f_body), f);
  });
  return f;
}

Eigen::VectorXd solve_reduced(const SparseMatrix& K, const Eigen::VectorXd& b,
                              const std::vector<int>& free) {
  ReducedSolver solver(free, static_cast<int>(K.rows()));
  return solver.solve(K, b);
}

Eigen::VectorXd solve_linear(const HexMesh& mesh, const Mat6& D,
                             IntegrationScheme scheme, const Vec3& f_body) {
  const GlobalSystem sys = assemble_linear(mesh, D, scheme);
  return solve_reduced(sys.K, assemble_load(mesh, f_body), sys.free_dofs);
}

Eigen::VectorXd solve_linear(const HexMesh& mesh, const MaterialParams& mp,
                             IntegrationScheme scheme, const Vec3& f_body) {
  return solve_linear(mesh, d_matrix(mp), scheme, f_body);
}

void NewtonConfig::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
    throw std::invalid_argument("Newton tolerances must be positive");
  if (max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
  if (n_load_steps < 1) throw std::invalid_argument("n_load_steps must be >= 1");
}

int SolveReport::total_iterations() const {
  int s = 0;
  for (int it : iterations) s += it;
  return s;
}

NewtonResult solve_newton(const HexMesh& mesh, const MaterialParams& mp,
                          IntegrationScheme scheme, const Vec3& f_body_final,
                          const NewtonConfig& cfg) {
  cfg.validate();
  const Eigen::VectorXd f_load = assemble_load(mesh, f_body_final);
  NewtonResult res{Eigen::VectorXd::Zero(mesh.n_dofs()), {}};
  SolveReport& rep = res.report;
  ReducedSolver solver(free_dofs(mesh), mesh.n_dofs());

  for (int step = 1; step <= cfg.n_load_steps; ++step) {
    const double factor = static_cast<double>(step) / cfg.n_load_steps;
    rep.iterations.push_back(0);
    rep.residuals.emplace_back();
    double tol = 0.0;
    bool done = false;
    for (int it = 0; it < cfg.max_iters; ++it) {
      GlobalSystem sys;
      try {
        sys = assemble_nonlinear(mesh, mp, scheme, res.u);
      } catch (const ElementInverted& ex) {
        throw NewtonElementInverted("load step " + std::to_string(step) + ": " + ex.what(),
                                    rep);
      }
      const Eigen::VectorXd r = factor * f_load - sys.f;
      const double rn = free_norm(r, sys.free_dofs);
      rep.iterations.back() += 1;
      rep.residuals.back().push_back(rn);
      if (it == 0) tol = std::max(cfg.rel_tol * rn, cfg.abs_tol);
      if (rn <= tol) {
        done = true;
        break;
      }
      res.u += solver.solve(sys.K, r);
    }
    if (!done)
      throw NewtonDivergence("load step " + std::to_string(step) +
                                 " did not converge in " +
                                 std::to_string(cfg.max_iters) + " iterations",
                             rep);
    rep.last_good_step = step;
  }
  rep.converged = true;
  return res;
}

TipDisplacement extract_tip_displacement(const HexMesh& mesh, const Eigen::VectorXd& u) {
  if (u.size() != mesh.n_dofs())
    throw std::invalid_argument("displacement vector has wrong size");
  const std::vector<int> tip = mesh.tip_nodes();
  TipDisplacement t{Vec3::Zero(), 0.0};
  for (int n : tip) t.mean += u.segment<3>(dof(n, 0));
  t.mean /= static_cast<double>(tip.size());
  t.U_r = t.mean.norm();
  return t;
}

}  // namespace hexstab
