#ifndef DPG_STUDY_HPP
#define DPG_STUDY_HPP

#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include <dpg/dof_map.hpp>
#include <dpg/local_system.hpp>
#include <dpg/mesh.hpp>
#include <dpg/solver.hpp>

namespace dpg {

enum class Problem { poisson, plate };
enum class BcLayout { dirichlet, mixed };
enum class NormMode { standard, scaled };

struct StudyConfig {
  Problem problem = Problem::poisson;
  double gamma = 0.0;
  double r1 = 1.0;
  double r2 = 1.0;
  BcLayout bc = BcLayout::dirichlet;
  NormMode norm = NormMode::scaled;
  std::optional<double> d_override;
  int levels = 1;
  int ny0 = 2;
  std::string out;
};

/// Throws std::invalid_argument on inconsistent settings.
void validate(const StudyConfig& cfg);

/// Test-norm scaling: 1 for the standard norm, otherwise the Poincare length
/// of the configuration (min(R1,R2) for full Dirichlet/clamped data, R1 when
/// only x = 0 and x = R1 carry essential conditions). An override wins.
double pick_d(const StudyConfig& cfg);

/// Manufactured solution and matching load.
struct ExactBundle {
  ScalarField u;
  VectorField grad;
  TensorField hessian;
  ScalarField f;
};

ExactBundle exact_bundle(const StudyConfig& cfg);

/// Mesh, dof map and condensed element systems of one configuration.
struct Discretization {
  Mesh mesh;
  DofMap dofs;
  std::vector<CondensedLocal> locals;
  double d = 1.0;
};

Mesh study_mesh(const StudyConfig& cfg, std::size_t ny);

/// Elements with equal Jacobians share one factorized operator; only the
/// load is element specific.
Discretization discretize(const StudyConfig& cfg, const Mesh& mesh, const ScalarField& f);

struct ErrorTriple {
  double u = 0.0;
  double flux = 0.0;  ///< sigma for Poisson, M for the plate
  double energy = 0.0;
};

/// L2 errors of the piecewise-constant field unknowns against the exact
/// solution (degree-10 quadrature) plus the given energy residual.
ErrorTriple compute_errors(Problem problem, const Mesh& mesh, const Eigen::VectorXd& x, const ExactBundle& exact,
                           double energy);

struct StudyRow {
  std::size_t dofs = 0;  ///< free trial unknowns
  double err_u = 0.0;
  double err_sigma = 0.0;
  double err = 0.0;
};

StudyRow solve_level(const StudyConfig& cfg, std::size_t ny, const SolverOptions& options = {});

/// One row per level, ny = ny0 * 2^level.
std::vector<StudyRow> run_study(const StudyConfig& cfg, const SolverOptions& options = {});

std::string flag_echo(const StudyConfig& cfg);

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double value);

void write_csv(std::ostream& os, const StudyConfig& cfg, std::span<const StudyRow> rows);

/// Least-squares slope of log(y) against log(x).
double log_log_slope(std::span<const double> x, std::span<const double> y);

} // namespace dpg

#endif
