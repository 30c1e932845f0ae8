#ifndef DPG_AFFINE_MAP_HPP
#define DPG_AFFINE_MAP_HPP

#include <array>
#include <cstddef>

#include <Eigen/Dense>

#include <dpg/basis.hpp>

namespace dpg {

class Mesh;

/// Local edge k of an element, traversed counterclockwise from vertex k to k+1.
struct EdgeGeometry {
  Eigen::Vector2d start;
  Eigen::Vector2d end;
  Eigen::Vector2d tangent;  ///< unit, counterclockwise along the element boundary
  Eigen::Vector2d normal;   ///< unit outward normal
  double length = 0.0;
};

/// x = translation + jacobian * xhat, mapping (0,0), (1,0), (0,1) onto the
/// element vertices in stored order.
struct AffineMap {
  Eigen::Matrix2d jacobian;
  Eigen::Matrix2d inv_jacobian_t;
  Eigen::Vector2d translation;
  double det = 0.0;
  std::array<EdgeGeometry, 3> edges;

  double area() const { return 0.5 * det; }
  Eigen::Vector2d to_physical(const Eigen::Vector2d& ref) const { return translation + jacobian * ref; }
  Eigen::Vector2d push_gradient(const Eigen::Vector2d& ref_grad) const { return inv_jacobian_t * ref_grad; }
  Eigen::Matrix2d push_hessian(const Eigen::Matrix2d& ref_hess) const
  {
    return inv_jacobian_t * ref_hess * inv_jacobian_t.transpose();
  }
};

/// Throws std::invalid_argument for det <= 0.
AffineMap map_affine(const std::array<Eigen::Vector2d, 3>& vertices);
AffineMap map_affine(const Mesh& mesh, std::size_t t);

/// Reference coordinates of the point at parameter s in [0,1] on local edge k.
Eigen::Vector2d reference_edge_point(int k, double s);

/// Pushes value, gradient and Hessian tables forward to the physical element.
BasisTables push_forward(const BasisTables& ref, const AffineMap& map);

} // namespace dpg

#endif
