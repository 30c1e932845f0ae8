// Brute-force reference computations shared by the unit tests and the
// acceptance suite.

#ifndef DPG_TESTS_ORACLES_HPP
#define DPG_TESTS_ORACLES_HPP

#include <array>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include <dpg/affine_map.hpp>
#include <dpg/dof_map.hpp>
#include <dpg/local_system.hpp>
#include <dpg/mesh.hpp>
#include <dpg/plate_uw.hpp>
#include <dpg/poisson_uw.hpp>
#include <dpg/solver.hpp>

namespace oracle {

/// Inverse of a symmetric matrix through its eigendecomposition.
Eigen::MatrixXd eig_inverse(const Eigen::MatrixXd& g);

/// Dense element-to-global extraction matrix.
Eigen::MatrixXd extraction(const dpg::DofMap& dofs, std::size_t t);

/// Block-diagonal global Gram matrix, stacked B E and load.
struct DenseGlobal {
  Eigen::MatrixXd g, b;
  Eigen::VectorXd l;
};

DenseGlobal dense_global(const dpg::DofMap& dofs, const std::vector<dpg::LocalSystem>& systems);

struct PoissonProblem {
  dpg::Mesh mesh;
  dpg::PoissonDofMap map;
  std::vector<dpg::LocalSystem> systems;
  std::vector<dpg::CondensedLocal> locals;
};

PoissonProblem poisson_problem(const dpg::Mesh& mesh, double d, double gamma, const dpg::ScalarField& f);

/// Solutions of the normal equations (eigendecomposition inverse) and of the
/// saddle-point system [G B; B^T 0].
struct DenseSolutions {
  Eigen::VectorXd normal;
  Eigen::VectorXd saddle;
  double riesz = 0.0;  ///< dual residual norm of the normal-equation solution
};

DenseSolutions dense_solve(const dpg::DofMap& dofs, const std::vector<dpg::LocalSystem>& systems);

/// Largest |b(u, v) - L(v)| over all discrete tests and elements when the
/// exact solution is inserted (-lap w + gamma w = f).
double poisson_consistency_defect(const dpg::Mesh& mesh, const dpg::ScalarField& w, const dpg::VectorField& grad,
                                  const dpg::ScalarField& laplacian, double gamma, int degree);

// u(x, y) = X(x) Y(y); each factor returns derivatives 0..4.
struct Separable {
  std::function<std::array<double, 5>(double)> fx, fy;

  double u(const Eigen::Vector2d& p) const;
  double d(const Eigen::Vector2d& p, int i, int j) const;
  Eigen::Vector2d grad(const Eigen::Vector2d& p) const;
  Eigen::Matrix2d moment(const Eigen::Vector2d& p) const;
  /// d/dx_k of M_ij
  double dmoment(const Eigen::Vector2d& p, int i, int j, int k) const;
  double bilaplacian(const Eigen::Vector2d& p) const;
};

/// t^2 (1 - t)^2 (1 + t)
std::array<double, 5> poly_factor(double t);
/// sin^2(pi t)
std::array<double, 5> sin2_factor(double t);

dpg::PlateTrial plate_exact_trial(const dpg::AffineMap& map, const Separable& w);

/// Load vector of the plate with an explicit quadrature degree.
Eigen::VectorXd plate_reference_load(const dpg::AffineMap& map, const dpg::ScalarField& f, int degree);

double plate_consistency_defect(const dpg::Mesh& mesh, const Separable& w, int degree);

} // namespace oracle

#endif
