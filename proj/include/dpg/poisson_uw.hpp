#ifndef DPG_POISSON_UW_HPP
#define DPG_POISSON_UW_HPP

#include <cstddef>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include <dpg/affine_map.hpp>
#include <dpg/dof_map.hpp>
#include <dpg/local_system.hpp>
#include <dpg/mesh.hpp>

namespace dpg {

// Ultraweak Poisson problem -div(grad u) + gamma u = f with unknowns
// (u, sigma, uhat, sigmahat) in P0 x P0^2 x tr(continuous P1) x P0(edges),
// tested with (v, tau) in P2 x P2^2 on each element.
//
// Local trial layout: 0 u | 1,2 sigma | 3..5 uhat at local vertices |
// 6..8 sigmahat on local edges. Local test layout: 0..5 v | 6..11 tau_x |
// 12..17 tau_y. The local sigmahat unknown is the flux sigma . n_T with the
// element's outward normal; the dof map converts to the global edge normal.

inline constexpr int poisson_test_degree = 2;
inline constexpr std::size_t poisson_n_test = 18;
inline constexpr std::size_t poisson_n_trial = 9;
inline constexpr int poisson_gram_quad_degree = 4;
inline constexpr int poisson_form_quad_degree = 4;

/// Constituents of the scaled test inner product
/// d^-2 (v,dv) + (grad v, grad dv) + (tau,dtau) + d^2 (div tau, div dtau).
struct PoissonGramParts {
  Eigen::MatrixXd mass_v;       ///< 6x6
  Eigen::MatrixXd stiffness_v;  ///< 6x6
  Eigen::MatrixXd mass_tau;     ///< 12x12
  Eigen::MatrixXd div_tau;      ///< 12x12

  Eigen::MatrixXd combine(double d) const;
};

PoissonGramParts poisson_gram_parts(const AffineMap& map);
Eigen::MatrixXd local_gram_poisson(const AffineMap& map, double d);

/// A trial function restricted to one element. Empty members are zero.
/// uhat(k, s) and flux(k, s) are evaluated at parameter s on local edge k;
/// flux is sigma . n_T with the outward element normal.
struct PoissonTrial {
  ScalarField u;
  VectorField sigma;
  std::function<double(int, double)> uhat;
  std::function<double(int, double)> flux;
};

/// b(trial, (v,tau)) on T for every local test basis function:
///   (u, div tau + gamma v)_T + (sigma, tau + grad v)_T
///   - <uhat, tau . n_T>_{dT} - <flux, v>_{dT}
Eigen::VectorXd poisson_form(const AffineMap& map, const PoissonTrial& trial, double gamma,
                             int quad_degree = poisson_form_quad_degree);

Eigen::MatrixXd local_b_poisson(const AffineMap& map, double gamma);

/// scale * (f, v)_T in the v rows, zero in the tau rows.
Eigen::VectorXd local_load_poisson(const AffineMap& map, const ScalarField& f, double scale = 1.0);

LocalSystem local_system_poisson(const AffineMap& map, double d, double gamma, const ScalarField& f);

//------------------------------------------------------------------------------
// Degrees of freedom
//------------------------------------------------------------------------------

/// Global numbering: [u, sigma_x, sigma_y] per triangle, then free vertices
/// (uhat), then free edges (sigmahat w.r.t. the global edge normal).
/// uhat vanishes at dirichlet_like vertices, sigmahat on neumann_like edges.
struct PoissonDofMap {
  DofMap dofs;
  std::size_t n_u = 0;
  std::size_t n_sigma = 0;
  std::size_t n_uhat = 0;
  std::size_t n_sigmahat = 0;
  std::vector<std::ptrdiff_t> vertex_dof;  ///< -1 if constrained
  std::vector<std::ptrdiff_t> edge_dof;    ///< -1 if constrained

  static std::size_t u_index(std::size_t t) { return 3 * t; }
  static std::size_t sigma_index(std::size_t t, int c) { return 3 * t + 1 + static_cast<std::size_t>(c); }
  std::size_t n_free() const { return dofs.n_free(); }
};

PoissonDofMap dof_map_poisson(const Mesh& mesh);

} // namespace dpg

#endif
