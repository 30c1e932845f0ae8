#include <dpg/affine_map.hpp>

#include <stdexcept>

#include <dpg/mesh.hpp>

namespace dpg {

AffineMap map_affine(const std::array<Eigen::Vector2d, 3>& vertices)
{
  AffineMap map;
  map.translation = vertices[0];
  map.jacobian.col(0) = vertices[1] - vertices[0];
  map.jacobian.col(1) = vertices[2] - vertices[0];
  map.det = map.jacobian.determinant();
  if (!(map.det > 0.0)) {
    throw std::invalid_argument("map_affine: degenerate or clockwise element");
  }
  map.inv_jacobian_t = map.jacobian.inverse().transpose();
  for (int k = 0; k < 3; ++k) {
    EdgeGeometry& e = map.edges[k];
    e.start = vertices[k];
    e.end = vertices[(k + 1) % 3];
    const Eigen::Vector2d d = e.end - e.start;
    e.length = d.norm();
    e.tangent = d / e.length;
    e.normal = Eigen::Vector2d(e.tangent.y(), -e.tangent.x());
  }
  return map;
}

AffineMap map_affine(const Mesh& mesh, std::size_t t)
{
  const auto& tri = mesh.triangle(t);
  return map_affine({mesh.vertex(tri[0]), mesh.vertex(tri[1]), mesh.vertex(tri[2])});
}

Eigen::Vector2d reference_edge_point(int k, double s)
{
  static const Eigen::Vector2d corners[3] = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
  return (1.0 - s) * corners[k] + s * corners[(k + 1) % 3];
}

BasisTables push_forward(const BasisTables& ref, const AffineMap& map)
{
  const Eigen::Matrix2d& a = map.inv_jacobian_t;
  BasisTables t;
  t.degree = ref.degree;
  t.dim = ref.dim;
  t.val = ref.val;
  t.dx = a(0, 0) * ref.dx + a(0, 1) * ref.dy;
  t.dy = a(1, 0) * ref.dx + a(1, 1) * ref.dy;
  // H = A Href A^T
  const double a00 = a(0, 0), a01 = a(0, 1), a10 = a(1, 0), a11 = a(1, 1);
  t.dxx = a00 * a00 * ref.dxx + 2.0 * a00 * a01 * ref.dxy + a01 * a01 * ref.dyy;
  t.dxy = a00 * a10 * ref.dxx + (a00 * a11 + a01 * a10) * ref.dxy + a01 * a11 * ref.dyy;
  t.dyy = a10 * a10 * ref.dxx + 2.0 * a10 * a11 * ref.dxy + a11 * a11 * ref.dyy;
  return t;
}

} // namespace dpg
