#ifndef DPG_MESH_HPP
#define DPG_MESH_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

namespace dpg {

enum class BoundaryTag : std::uint8_t { interior, dirichlet_like, neumann_like };

/// Which parts of the rectangle carry the essential (Dirichlet/clamped) condition.
enum class BoundaryLayout {
  all_dirichlet,         ///< the whole boundary
  left_right_dirichlet,  ///< only the sides x = 0 and x = R1
};

/// Global edge index together with the element orientation sign:
/// +1 if the element traverses the edge from its lower to its higher vertex.
struct EdgeRef {
  std::size_t edge;
  int sign;
};

//------------------------------------------------------------------------------
// Mesh
//------------------------------------------------------------------------------

/// Conforming triangulation of the rectangle (0,r1) x (0,r2).
///
/// Triangles are counterclockwise. Local edge k of a triangle joins its local
/// vertices k and k+1 (mod 3), so local edges follow the counterclockwise
/// traversal of the element boundary. Global edges store the lower vertex
/// index first; the global unit tangent points from the lower to the higher
/// vertex and the global normal is that tangent rotated clockwise. With this
/// convention the outward normal of a triangle on its local edge equals the
/// global normal times the orientation sign.
///
/// Values are immutable once built.
class Mesh {
public:
  using Triangle = std::array<std::size_t, 3>;
  using Edge = std::array<std::size_t, 2>;

  /// Builds connectivity. Boundary edges and vertices are tagged dirichlet_like.
  Mesh(std::vector<Eigen::Vector2d> vertices, std::vector<Triangle> triangles, double r1, double r2);

  std::size_t n_vertices() const { return m_vertices.size(); }
  std::size_t n_triangles() const { return m_triangles.size(); }
  std::size_t n_edges() const { return m_edges.size(); }

  const Eigen::Vector2d& vertex(std::size_t i) const { return m_vertices[i]; }
  const Triangle& triangle(std::size_t t) const { return m_triangles[t]; }
  const Edge& edge(std::size_t e) const { return m_edges[e]; }
  const std::array<EdgeRef, 3>& tri_edges(std::size_t t) const { return m_tri_edges[t]; }

  BoundaryTag edge_tag(std::size_t e) const { return m_edge_tags[e]; }
  BoundaryTag vertex_tag(std::size_t v) const { return m_vertex_tags[v]; }
  bool is_boundary_edge(std::size_t e) const { return m_edge_tags[e] != BoundaryTag::interior; }
  bool is_boundary_vertex(std::size_t v) const { return m_vertex_tags[v] != BoundaryTag::interior; }

  /// Triangles incident to a vertex, in increasing index order.
  const std::vector<std::size_t>& vertex_triangles(std::size_t v) const { return m_vertex_triangles[v]; }
  /// Number of triangles sharing an edge (1 on the boundary, 2 inside).
  int edge_multiplicity(std::size_t e) const { return m_edge_multiplicity[e]; }

  double r1() const { return m_r1; }
  double r2() const { return m_r2; }

  double signed_area(std::size_t t) const;
  double diameter(std::size_t t) const;
  double total_area() const;
  /// max over triangles of diam(T)^2 / |T|
  double shape_constant() const;

  /// Unit tangent and normal of a global edge (see class comment).
  Eigen::Vector2d edge_tangent(std::size_t e) const;
  Eigen::Vector2d edge_normal(std::size_t e) const;

private:
  friend Mesh classify_boundary(const Mesh& mesh, BoundaryLayout layout);
  friend Mesh refine_uniform(const Mesh& mesh);

  std::vector<Eigen::Vector2d> m_vertices;
  std::vector<Triangle> m_triangles;
  std::vector<Edge> m_edges;
  std::vector<std::array<EdgeRef, 3>> m_tri_edges;
  std::vector<BoundaryTag> m_edge_tags;
  std::vector<BoundaryTag> m_vertex_tags;
  std::vector<std::vector<std::size_t>> m_vertex_triangles;
  std::vector<int> m_edge_multiplicity;
  double m_r1;
  double m_r2;
};

/// Structured mesh of (0,r1) x (0,r2) with ny cells vertically and
/// round(ny*r1/r2) horizontally, each cell split along its lower-left to
/// upper-right diagonal. The boundary is tagged all_dirichlet.
Mesh make_rect_mesh(double r1, double r2, std::size_t ny);

/// Red refinement: every triangle is split into four similar children.
/// Boundary tags are inherited from the parent edges.
Mesh refine_uniform(const Mesh& mesh);

/// Retags boundary edges and vertices for the given layout.
Mesh classify_boundary(const Mesh& mesh, BoundaryLayout layout);

/// Debug dump with `vertex x y`, `tri i j k` and `edge i j tag` records.
void write_mesh(std::ostream& os, const Mesh& mesh);

const char* to_string(BoundaryTag tag);

} // namespace dpg

#endif
