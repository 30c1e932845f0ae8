#ifndef DPG_SOLVER_HPP
#define DPG_SOLVER_HPP

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <dpg/dof_map.hpp>
#include <dpg/local_system.hpp>

namespace dpg {

class SolverError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Element normal equations after eliminating the optimal test functions.
/// With G = L L^T, whitened_b = L^{-1} B and whitened_load = L^{-1} l, so
/// S = W^T W, g = W^T w and the element residual is ||w - W x_T||.
struct CondensedLocal {
  Eigen::MatrixXd s;
  Eigen::VectorXd g;
  Eigen::MatrixXd whitened_b;
  Eigen::VectorXd whitened_load;
};

/// Throws SolverError naming the element and d when G is not SPD.
CondensedLocal condense_local(const LocalSystem& ls, std::size_t element = 0, double d = 1.0);

/// Reuses the element operator (factor of G, whitened B, S) for a new load.
void condense_load(const Eigen::LLT<Eigen::MatrixXd>& gram_factor, const Eigen::VectorXd& load, CondensedLocal& out);

struct GlobalSystem {
  Eigen::SparseMatrix<double> a;
  Eigen::VectorXd rhs;
};

/// A = sum_T E_T^T S_T E_T, rhs = sum_T E_T^T g_T over the free unknowns.
/// Elements are summed in `order` (default: index order).
GlobalSystem assemble_global(const DofMap& dofs, std::span<const CondensedLocal> locals,
                             std::span<const std::size_t> order = {});

struct SolverOptions {
  std::size_t direct_limit = 200000;  ///< larger systems use preconditioned CG
  double cg_tolerance = 1e-12;
};

enum class SolverKind { direct, conjugate_gradient };

struct SolveReport {
  SolverKind kind = SolverKind::direct;
  std::size_t iterations = 0;
  double relative_residual = 0.0;
};

/// Solves A x = rhs. Throws SolverError if A is not SPD or CG does not
/// converge within 10 * N iterations.
Eigen::VectorXd solve_spd(const GlobalSystem& gs, const SolverOptions& options = {}, SolveReport* report = nullptr);

struct EnergyResidual {
  std::vector<double> element;  ///< eta_T
  double total = 0.0;           ///< (sum eta_T^2)^{1/2}
};

/// eta_T^2 = r_T^T G_T^{-1} r_T with r_T = l_T - B_T x_T.
EnergyResidual energy_residual(const DofMap& dofs, std::span<const CondensedLocal> locals, const Eigen::VectorXd& x);

} // namespace dpg

#endif
