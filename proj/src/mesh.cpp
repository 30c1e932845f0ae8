#include <dpg/mesh.hpp>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace dpg {

namespace {

double cross(const Eigen::Vector2d& a, const Eigen::Vector2d& b)
{
  return a.x() * b.y() - a.y() * b.x();
}

} // namespace

//------------------------------------------------------------------------------
// Construction
//------------------------------------------------------------------------------

Mesh::Mesh(std::vector<Eigen::Vector2d> vertices, std::vector<Triangle> triangles, double r1, double r2)
  : m_vertices(std::move(vertices)),
    m_triangles(std::move(triangles)),
    m_r1(r1),
    m_r2(r2)
{
  const std::size_t nv = m_vertices.size();
  for (std::size_t t = 0; t < m_triangles.size(); ++t) {
    for (std::size_t k : m_triangles[t]) {
      if (k >= nv) {
        throw std::invalid_argument("Mesh: triangle " + std::to_string(t) + " references a missing vertex");
      }
    }
    if (!(signed_area(t) > 0.0)) {
      throw std::invalid_argument("Mesh: triangle " + std::to_string(t) + " is degenerate or clockwise");
    }
  }

  std::unordered_map<std::uint64_t, std::size_t> edge_index;
  edge_index.reserve(3 * m_triangles.size());
  m_tri_edges.resize(m_triangles.size());
  for (std::size_t t = 0; t < m_triangles.size(); ++t) {
    const Triangle& tri = m_triangles[t];
    for (int k = 0; k < 3; ++k) {
      const std::size_t a = tri[k];
      const std::size_t b = tri[(k + 1) % 3];
      const std::size_t lo = std::min(a, b);
      const std::size_t hi = std::max(a, b);
      const std::uint64_t key = static_cast<std::uint64_t>(lo) * nv + hi;
      auto [it, inserted] = edge_index.try_emplace(key, m_edges.size());
      if (inserted) {
        m_edges.push_back({lo, hi});
        m_edge_multiplicity.push_back(0);
      }
      m_tri_edges[t][k] = EdgeRef{it->second, a < b ? 1 : -1};
      ++m_edge_multiplicity[it->second];
    }
  }

  // An interior edge must be traversed once in each direction.
  std::vector<int> sign_sum(m_edges.size(), 0);
  for (const auto& refs : m_tri_edges) {
    for (const EdgeRef& r : refs) {
      sign_sum[r.edge] += r.sign;
    }
  }
  for (std::size_t e = 0; e < m_edges.size(); ++e) {
    if (m_edge_multiplicity[e] > 2 || (m_edge_multiplicity[e] == 2 && sign_sum[e] != 0)) {
      throw std::invalid_argument("Mesh: edge " + std::to_string(e) + " is not shared consistently");
    }
  }

  m_edge_tags.assign(m_edges.size(), BoundaryTag::interior);
  m_vertex_tags.assign(nv, BoundaryTag::interior);
  for (std::size_t e = 0; e < m_edges.size(); ++e) {
    if (m_edge_multiplicity[e] == 1) {
      m_edge_tags[e] = BoundaryTag::dirichlet_like;
      m_vertex_tags[m_edges[e][0]] = BoundaryTag::dirichlet_like;
      m_vertex_tags[m_edges[e][1]] = BoundaryTag::dirichlet_like;
    }
  }

  m_vertex_triangles.resize(nv);
  for (std::size_t t = 0; t < m_triangles.size(); ++t) {
    for (std::size_t k : m_triangles[t]) {
      m_vertex_triangles[k].push_back(t);
    }
  }
}

//------------------------------------------------------------------------------
// Geometry
//------------------------------------------------------------------------------

double Mesh::signed_area(std::size_t t) const
{
  const Triangle& tri = m_triangles[t];
  return 0.5 * cross(m_vertices[tri[1]] - m_vertices[tri[0]], m_vertices[tri[2]] - m_vertices[tri[0]]);
}

double Mesh::diameter(std::size_t t) const
{
  const Triangle& tri = m_triangles[t];
  double diam = 0.0;
  for (int k = 0; k < 3; ++k) {
    diam = std::max(diam, (m_vertices[tri[k]] - m_vertices[tri[(k + 1) % 3]]).norm());
  }
  return diam;
}

double Mesh::total_area() const
{
  double area = 0.0;
  for (std::size_t t = 0; t < m_triangles.size(); ++t) {
    area += signed_area(t);
  }
  return area;
}

double Mesh::shape_constant() const
{
  double c = 0.0;
  for (std::size_t t = 0; t < m_triangles.size(); ++t) {
    const double h = diameter(t);
    c = std::max(c, h * h / signed_area(t));
  }
  return c;
}

Eigen::Vector2d Mesh::edge_tangent(std::size_t e) const
{
  return (m_vertices[m_edges[e][1]] - m_vertices[m_edges[e][0]]).normalized();
}

Eigen::Vector2d Mesh::edge_normal(std::size_t e) const
{
  const Eigen::Vector2d t = edge_tangent(e);
  return {t.y(), -t.x()};
}

//------------------------------------------------------------------------------
// Factories
//------------------------------------------------------------------------------

Mesh make_rect_mesh(double r1, double r2, std::size_t ny)
{
  if (!(r1 > 0.0) || !(r2 > 0.0)) {
    throw std::invalid_argument("make_rect_mesh: domain dimensions must be positive");
  }
  if (ny == 0) {
    throw std::invalid_argument("make_rect_mesh: ny must be at least 1");
  }
  const auto nx = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(static_cast<double>(ny) * r1 / r2)));

  std::vector<Eigen::Vector2d> vertices;
  vertices.reserve((nx + 1) * (ny + 1));
  for (std::size_t j = 0; j <= ny; ++j) {
    for (std::size_t i = 0; i <= nx; ++i) {
      vertices.emplace_back(r1 * static_cast<double>(i) / static_cast<double>(nx),
                            r2 * static_cast<double>(j) / static_cast<double>(ny));
    }
  }

  std::vector<Mesh::Triangle> triangles;
  triangles.reserve(2 * nx * ny);
  const auto id = [nx](std::size_t i, std::size_t j) { return j * (nx + 1) + i; };
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      const std::size_t a = id(i, j), b = id(i + 1, j), c = id(i + 1, j + 1), d = id(i, j + 1);
      triangles.push_back({a, b, c});
      triangles.push_back({a, c, d});
    }
  }
  return Mesh(std::move(vertices), std::move(triangles), r1, r2);
}

Mesh refine_uniform(const Mesh& mesh)
{
  const std::size_t nv = mesh.n_vertices();
  std::vector<Eigen::Vector2d> vertices(mesh.m_vertices);
  vertices.reserve(nv + mesh.n_edges());
  for (const auto& e : mesh.m_edges) {
    vertices.push_back(0.5 * (mesh.m_vertices[e[0]] + mesh.m_vertices[e[1]]));
  }

  std::vector<Mesh::Triangle> triangles;
  triangles.reserve(4 * mesh.n_triangles());
  for (std::size_t t = 0; t < mesh.n_triangles(); ++t) {
    const auto& tri = mesh.triangle(t);
    const auto& refs = mesh.tri_edges(t);
    // mid[k] is the midpoint of local edge k = (v_k, v_k+1)
    const std::size_t m0 = nv + refs[0].edge, m1 = nv + refs[1].edge, m2 = nv + refs[2].edge;
    triangles.push_back({tri[0], m0, m2});
    triangles.push_back({m0, tri[1], m1});
    triangles.push_back({m2, m1, tri[2]});
    triangles.push_back({m0, m1, m2});
  }

  Mesh fine(std::move(vertices), std::move(triangles), mesh.m_r1, mesh.m_r2);

  for (std::size_t v = 0; v < nv; ++v) {
    fine.m_vertex_tags[v] = mesh.m_vertex_tags[v];
  }
  for (std::size_t e = 0; e < mesh.n_edges(); ++e) {
    fine.m_vertex_tags[nv + e] = mesh.m_edge_tags[e];
  }
  for (std::size_t e = 0; e < fine.n_edges(); ++e) {
    if (fine.m_edge_multiplicity[e] != 1) {
      continue;
    }
    // A boundary child edge joins a parent vertex and the midpoint of its parent edge.
    const std::size_t mid = std::max(fine.m_edges[e][0], fine.m_edges[e][1]);
    fine.m_edge_tags[e] = mesh.m_edge_tags[mid - nv];
  }
  return fine;
}

Mesh classify_boundary(const Mesh& mesh, BoundaryLayout layout)
{
  Mesh out(mesh);
  const double tol = 1e-12 * std::min(mesh.r1(), mesh.r2());
  const auto on_left = [&](std::size_t v) { return std::abs(mesh.vertex(v).x()) <= tol; };
  const auto on_right = [&](std::size_t v) { return std::abs(mesh.vertex(v).x() - mesh.r1()) <= tol; };

  bool any_boundary = false;
  for (std::size_t e = 0; e < mesh.n_edges(); ++e) {
    if (mesh.edge_multiplicity(e) != 1) {
      continue;
    }
    any_boundary = true;
    const auto [a, b] = mesh.edge(e);
    bool dirichlet = true;
    if (layout == BoundaryLayout::left_right_dirichlet) {
      dirichlet = (on_left(a) && on_left(b)) || (on_right(a) && on_right(b));
    }
    out.m_edge_tags[e] = dirichlet ? BoundaryTag::dirichlet_like : BoundaryTag::neumann_like;
  }
  if (!any_boundary) {
    throw std::invalid_argument("classify_boundary: mesh has no boundary edges");
  }

  std::fill(out.m_vertex_tags.begin(), out.m_vertex_tags.end(), BoundaryTag::interior);
  for (std::size_t e = 0; e < mesh.n_edges(); ++e) {
    const BoundaryTag tag = out.m_edge_tags[e];
    if (tag == BoundaryTag::interior) {
      continue;
    }
    for (std::size_t v : mesh.edge(e)) {
      if (tag == BoundaryTag::dirichlet_like || out.m_vertex_tags[v] == BoundaryTag::interior) {
        out.m_vertex_tags[v] = tag;
      }
    }
  }
  return out;
}

//------------------------------------------------------------------------------
// Output
//------------------------------------------------------------------------------

const char* to_string(BoundaryTag tag)
{
  switch (tag) {
  case BoundaryTag::interior:
    return "interior";
  case BoundaryTag::dirichlet_like:
    return "dirichlet_like";
  case BoundaryTag::neumann_like:
    return "neumann_like";
  }
  return "unknown";
}

void write_mesh(std::ostream& os, const Mesh& mesh)
{
  for (std::size_t v = 0; v < mesh.n_vertices(); ++v) {
    os << "vertex " << mesh.vertex(v).x() << ' ' << mesh.vertex(v).y() << '\n';
  }
  for (std::size_t t = 0; t < mesh.n_triangles(); ++t) {
    const auto& tri = mesh.triangle(t);
    os << "tri " << tri[0] << ' ' << tri[1] << ' ' << tri[2] << '\n';
  }
  for (std::size_t e = 0; e < mesh.n_edges(); ++e) {
    os << "edge " << mesh.edge(e)[0] << ' ' << mesh.edge(e)[1] << ' ' << to_string(mesh.edge_tag(e)) << '\n';
  }
}

} // namespace dpg
