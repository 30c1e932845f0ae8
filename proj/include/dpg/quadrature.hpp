#ifndef DPG_QUADRATURE_HPP
#define DPG_QUADRATURE_HPP

#include <vector>

#include <Eigen/Dense>

namespace dpg {

/// Rule on the reference triangle {x, y >= 0, x + y <= 1}; weights sum to 1/2.
struct TriangleQuadRule {
  std::vector<Eigen::Vector2d> points;
  std::vector<double> weights;
  int exactness;
};

/// Gauss rule on [0,1]; weights sum to 1.
struct EdgeQuadRule {
  std::vector<double> points;
  std::vector<double> weights;
  int exactness;
};

inline constexpr int max_quad_degree = 20;

/// Collapsed (Duffy) tensor Gauss rule with positive weights, exact for
/// polynomials of total degree `degree`. Throws for degree outside [0, 20].
TriangleQuadRule quad_triangle(int degree);

/// Gauss-Legendre rule with exactness >= degree. Throws outside [0, 20].
EdgeQuadRule quad_edge(int degree);

} // namespace dpg

#endif
