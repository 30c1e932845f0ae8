#ifndef DPG_PLATE_UW_HPP
#define DPG_PLATE_UW_HPP

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include <dpg/affine_map.hpp>
#include <dpg/dof_map.hpp>
#include <dpg/local_system.hpp>
#include <dpg/mesh.hpp>

namespace dpg {

// Ultraweak Kirchhoff-Love plate: -div div M = f, M + C grad grad u = 0 with
// C = identity. Unknowns (u, M, uhat, mhat); test functions (v, Q) in
// P3 x P4 (symmetric) on each element.
//
// Local trial layout (22):
//   0 u | 1..3 M (M11, M12, M22) | 4..12 uhat (w, w_x, w_y) at local vertices |
//   13..18 mhat (m_nn, q_eff) on local edges | 19..21 corner jumps at local vertices.
// Local test layout (55): 0..9 v | 10..24 Q11 | 25..39 Q12 | 40..54 Q22.
//
// The uhat trace on a local edge is the cubic Hermite interpolant of the
// endpoint values and tangential derivatives, with the normal derivative
// interpolated linearly. The mhat pairing on an element is
//   sum_e int_e (q_eff v - m_nn d_n v) ds + sum_z J_T(z) v(z),
// J_T(z) = (t.Mn)|_{edge leaving z} - (t.Mn)|_{edge entering z}, which is the
// integration by parts of (div div M, v)_T - (M, grad grad v)_T along the
// element boundary. q_eff is taken w.r.t. the outward element normal; the dof
// map converts to the global edge orientation.

inline constexpr int plate_v_degree = 3;
inline constexpr int plate_q_degree = 4;
inline constexpr std::size_t plate_n_v = 10;
inline constexpr std::size_t plate_n_test = 55;
inline constexpr std::size_t plate_n_trial = 22;
inline constexpr int plate_quad_degree = 8;

/// d^-4 (v,dv) + (grad grad v, grad grad dv) + (Q,dQ) + d^4 (divdiv Q, divdiv dQ).
/// The tensor product counts the off-diagonal component twice.
struct PlateGramParts {
  Eigen::MatrixXd mass_v;     ///< 10x10
  Eigen::MatrixXd hessian_v;  ///< 10x10
  Eigen::MatrixXd mass_q;     ///< 45x45
  Eigen::MatrixXd divdiv_q;   ///< 45x45

  Eigen::MatrixXd combine(double d) const;
};

PlateGramParts plate_gram_parts(const AffineMap& map);
Eigen::MatrixXd local_gram_plate(const AffineMap& map, double d);

/// Trace of an H^2 function on a local edge: value and the derivatives along
/// the outward normal and the counterclockwise tangent.
struct GgradTrace {
  double value = 0.0;
  double dn = 0.0;
  double dt = 0.0;
};

/// Normal-normal moment and effective shear n.div M + d_t(t.Mn) on a local
/// edge, both w.r.t. the outward element normal.
struct DdivTrace {
  double mnn = 0.0;
  double q = 0.0;
};

/// A trial function restricted to one element. Empty members are zero.
struct PlateTrial {
  ScalarField u;
  TensorField moment;
  std::function<GgradTrace(int, double)> uhat;
  std::function<DdivTrace(int, double)> mhat;
  std::array<double, 3> corner_jumps{0.0, 0.0, 0.0};
};

/// b(trial, (v,Q)) on T for every local test basis function:
///   (M, grad grad v + Q)_T + (u, div div Q)_T - <uhat, Q>_{dT} + <mhat, v>_{dT}
/// with <uhat, Q> = int_{dT} [w n.div Q - d_n w (n.Qn) - d_t w (t.Qn)] ds.
Eigen::VectorXd plate_form(const AffineMap& map, const PlateTrial& trial, int quad_degree = plate_quad_degree);

Eigen::MatrixXd local_b_plate(const AffineMap& map);

/// -(f, v)_T in the v rows, zero in the Q rows.
Eigen::VectorXd local_load_plate(const AffineMap& map, const ScalarField& f);

LocalSystem local_system_plate(const AffineMap& map, double d, const ScalarField& f);

/// Hermite data of local edge k for unit vertex data: vertex j, component c
/// (0 = value, 1 = d/dx, 2 = d/dy).
GgradTrace hermite_edge_trace(const AffineMap& map, int j, int c, int k, double s);

//------------------------------------------------------------------------------
// Degrees of freedom
//------------------------------------------------------------------------------

enum class PlateBC {
  clamped,           ///< u = grad u = 0 on the whole boundary
  simply_supported,  ///< u = 0, n.Mn = 0 on the whole boundary
  mixed_free,        ///< clamped on dirichlet_like edges, free on neumann_like edges
};

/// Global numbering: [u, M11, M12, M22] per triangle, then uhat unknowns by
/// vertex, then (m_nn, q_eff) by edge, then corner jumps by vertex.
///
/// Corner jumps at a vertex z are one unknown per incident element; where
/// test functions do not vanish at z (interior vertices and free-boundary
/// vertices) they are restricted to sum to zero, represented in an
/// orthonormal basis of that subspace.
struct PlateDofMap {
  DofMap dofs;
  std::size_t n_u = 0;
  std::size_t n_moment = 0;
  std::size_t n_uhat = 0;
  std::size_t n_mhat = 0;
  std::size_t n_corner = 0;

  static std::size_t u_index(std::size_t t) { return 4 * t; }
  static std::size_t moment_index(std::size_t t, int c) { return 4 * t + 1 + static_cast<std::size_t>(c); }
  std::size_t n_free() const { return dofs.n_free(); }
};

PlateDofMap dof_map_plate(const Mesh& mesh, PlateBC bc);

} // namespace dpg

#endif
