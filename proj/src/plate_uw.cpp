#include <dpg/plate_uw.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <dpg/element_tables.hpp>

namespace dpg {

namespace {

constexpr Eigen::Index nv = 10;  // dim P3
constexpr Eigen::Index nq = 15;  // dim P4
constexpr Eigen::Index q11 = nv, q12 = nv + nq, q22 = nv + 2 * nq;

// Cubic Hermite shape functions on [0,1] and their derivatives.
std::array<double, 4> hermite(double s)
{
  return {1.0 - 3.0 * s * s + 2.0 * s * s * s, s - 2.0 * s * s + s * s * s, 3.0 * s * s - 2.0 * s * s * s,
          -s * s + s * s * s};
}

std::array<double, 4> hermite_ds(double s)
{
  return {-6.0 * s + 6.0 * s * s, 1.0 - 4.0 * s + 3.0 * s * s, 6.0 * s - 6.0 * s * s, -2.0 * s + 3.0 * s * s};
}

} // namespace

//------------------------------------------------------------------------------
// Gram matrix
//------------------------------------------------------------------------------

Eigen::MatrixXd PlateGramParts::combine(double d) const
{
  if (!(d > 0.0)) {
    throw std::invalid_argument("local_gram_plate: scaling d must be positive");
  }
  const double d4 = d * d * d * d;
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(plate_n_test),
                                            static_cast<Eigen::Index>(plate_n_test));
  g.topLeftCorner(nv, nv) = mass_v / d4 + hessian_v;
  g.bottomRightCorner(3 * nq, 3 * nq) = mass_q + d4 * divdiv_q;
  return g;
}

PlateGramParts plate_gram_parts(const AffineMap& map)
{
  const ElementTables& tv = element_tables(plate_v_degree, plate_quad_degree);
  const ElementTables& tq = element_tables(plate_q_degree, plate_quad_degree);
  const BasisTables pv = push_forward(tv.volume, map);
  const BasisTables pq = push_forward(tq.volume, map);
  Eigen::VectorXd w(static_cast<Eigen::Index>(tv.volume_rule.weights.size()));
  for (Eigen::Index q = 0; q < w.size(); ++q) {
    w(q) = tv.volume_rule.weights[q] * map.det;
  }
  const auto wd = w.asDiagonal();

  PlateGramParts parts;
  parts.mass_v = pv.val.transpose() * wd * pv.val;
  parts.hessian_v = pv.dxx.transpose() * wd * pv.dxx + 2.0 * pv.dxy.transpose() * wd * pv.dxy
                    + pv.dyy.transpose() * wd * pv.dyy;
  const Eigen::MatrixXd mq = pq.val.transpose() * wd * pq.val;
  parts.mass_q = Eigen::MatrixXd::Zero(3 * nq, 3 * nq);
  parts.mass_q.block(0, 0, nq, nq) = mq;
  parts.mass_q.block(nq, nq, nq, nq) = 2.0 * mq;
  parts.mass_q.block(2 * nq, 2 * nq, nq, nq) = mq;
  Eigen::MatrixXd dd(pq.val.rows(), 3 * nq);
  dd << pq.dxx, 2.0 * pq.dxy, pq.dyy;
  parts.divdiv_q = dd.transpose() * wd * dd;
  return parts;
}

Eigen::MatrixXd local_gram_plate(const AffineMap& map, double d)
{
  return plate_gram_parts(map).combine(d);
}

//------------------------------------------------------------------------------
// Bilinear form
//------------------------------------------------------------------------------

Eigen::VectorXd plate_form(const AffineMap& map, const PlateTrial& trial, int quad_degree)
{
  const ElementTables& tv = element_tables(plate_v_degree, quad_degree);
  const ElementTables& tq = element_tables(plate_q_degree, quad_degree);
  Eigen::VectorXd res = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(plate_n_test));

  if (trial.u || trial.moment) {
    const BasisTables pv = push_forward(tv.volume, map);
    const BasisTables pq = push_forward(tq.volume, map);
    for (std::size_t q = 0; q < tv.volume_rule.points.size(); ++q) {
      const auto iq = static_cast<Eigen::Index>(q);
      const Eigen::Vector2d x = map.to_physical(tv.volume_rule.points[q]);
      const double w = tv.volume_rule.weights[q] * map.det;
      if (trial.u) {
        const double u = trial.u(x);
        res.segment(q11, nq) += (w * u) * pq.dxx.row(iq).transpose();
        res.segment(q12, nq) += (2.0 * w * u) * pq.dxy.row(iq).transpose();
        res.segment(q22, nq) += (w * u) * pq.dyy.row(iq).transpose();
      }
      if (trial.moment) {
        const Eigen::Matrix2d m = trial.moment(x);
        // C^{-1} = identity; a general material tensor would act on Q here.
        res.head(nv) += w * (m(0, 0) * pv.dxx.row(iq) + 2.0 * m(0, 1) * pv.dxy.row(iq)
                             + m(1, 1) * pv.dyy.row(iq)).transpose();
        res.segment(q11, nq) += (w * m(0, 0)) * pq.val.row(iq).transpose();
        res.segment(q12, nq) += (2.0 * w * m(0, 1)) * pq.val.row(iq).transpose();
        res.segment(q22, nq) += (w * m(1, 1)) * pq.val.row(iq).transpose();
      }
    }
  }

  if (trial.uhat || trial.mhat) {
    for (int k = 0; k < 3; ++k) {
      const EdgeGeometry& e = map.edges[k];
      const double nx = e.normal.x(), ny = e.normal.y(), tx = e.tangent.x(), ty = e.tangent.y();
      const BasisTables pv = push_forward(tv.edge[k], map);
      const BasisTables pq = push_forward(tq.edge[k], map);
      for (std::size_t q = 0; q < tv.edge_rule.points.size(); ++q) {
        const auto iq = static_cast<Eigen::Index>(q);
        const double s = tv.edge_rule.points[q];
        const double w = tv.edge_rule.weights[q] * e.length;
        if (trial.uhat) {
          const GgradTrace g = trial.uhat(k, s);
          const auto psi = pq.val.row(iq);
          const auto px = pq.dx.row(iq);
          const auto py = pq.dy.row(iq);
          // -[w n.div Q - d_n w (n.Qn) - d_t w (t.Qn)]
          res.segment(q11, nq) -= w * (g.value * nx * px - (g.dn * nx * nx + g.dt * tx * nx) * psi).transpose();
          res.segment(q12, nq) -= w * (g.value * (nx * py + ny * px)
                                       - (g.dn * 2.0 * nx * ny + g.dt * (tx * ny + ty * nx)) * psi).transpose();
          res.segment(q22, nq) -= w * (g.value * ny * py - (g.dn * ny * ny + g.dt * ty * ny) * psi).transpose();
        }
        if (trial.mhat) {
          const DdivTrace m = trial.mhat(k, s);
          res.head(nv) += w * (m.q * pv.val.row(iq) - m.mnn * (nx * pv.dx.row(iq) + ny * pv.dy.row(iq))).transpose();
        }
      }
    }
  }

  for (int j = 0; j < 3; ++j) {
    if (trial.corner_jumps[j] != 0.0) {
      res.head(nv) += trial.corner_jumps[j] * tv.vertex[j].val.row(0).transpose();
    }
  }
  return res;
}

GgradTrace hermite_edge_trace(const AffineMap& map, int j, int c, int k, double s)
{
  const int a = k, b = (k + 1) % 3;
  if (j != a && j != b) {
    return {};
  }
  const EdgeGeometry& e = map.edges[k];
  const double value = c == 0 ? 1.0 : 0.0;
  const Eigen::Vector2d grad = c == 0 ? Eigen::Vector2d::Zero().eval() : Eigen::Vector2d::Unit(c - 1).eval();
  const double gt = e.tangent.dot(grad);
  const double gn = e.normal.dot(grad);
  const auto h = hermite(s);
  const auto hs = hermite_ds(s);
  GgradTrace t;
  if (j == a) {
    t.value = h[0] * value + h[1] * e.length * gt;
    t.dt = hs[0] * value / e.length + hs[1] * gt;
    t.dn = (1.0 - s) * gn;
  } else {
    t.value = h[2] * value + h[3] * e.length * gt;
    t.dt = hs[2] * value / e.length + hs[3] * gt;
    t.dn = s * gn;
  }
  return t;
}

Eigen::MatrixXd local_b_plate(const AffineMap& map)
{
  Eigen::MatrixXd b(static_cast<Eigen::Index>(plate_n_test), static_cast<Eigen::Index>(plate_n_trial));

  PlateTrial u;
  u.u = [](const Eigen::Vector2d&) { return 1.0; };
  b.col(0) = plate_form(map, u);

  const Eigen::Matrix2d unit[3] = {(Eigen::Matrix2d() << 1, 0, 0, 0).finished(),
                                   (Eigen::Matrix2d() << 0, 1, 1, 0).finished(),
                                   (Eigen::Matrix2d() << 0, 0, 0, 1).finished()};
  for (int c = 0; c < 3; ++c) {
    PlateTrial m;
    m.moment = [&unit, c](const Eigen::Vector2d&) { return unit[c]; };
    b.col(1 + c) = plate_form(map, m);
  }

  for (int j = 0; j < 3; ++j) {
    for (int c = 0; c < 3; ++c) {
      PlateTrial uh;
      uh.uhat = [&map, j, c](int k, double s) { return hermite_edge_trace(map, j, c, k, s); };
      b.col(4 + 3 * j + c) = plate_form(map, uh);
    }
  }

  for (int k = 0; k < 3; ++k) {
    PlateTrial mnn;
    mnn.mhat = [k](int kk, double) { return kk == k ? DdivTrace{1.0, 0.0} : DdivTrace{}; };
    b.col(13 + 2 * k) = plate_form(map, mnn);
    PlateTrial q;
    q.mhat = [k](int kk, double) { return kk == k ? DdivTrace{0.0, 1.0} : DdivTrace{}; };
    b.col(14 + 2 * k) = plate_form(map, q);
  }

  for (int j = 0; j < 3; ++j) {
    PlateTrial corner;
    corner.corner_jumps[j] = 1.0;
    b.col(19 + j) = plate_form(map, corner);
  }
  return b;
}

Eigen::VectorXd local_load_plate(const AffineMap& map, const ScalarField& f)
{
  const ElementTables& tab = element_tables(plate_v_degree, load_quad_degree);
  Eigen::VectorXd l = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(plate_n_test));
  for (std::size_t q = 0; q < tab.volume_rule.points.size(); ++q) {
    const double w = tab.volume_rule.weights[q] * map.det;
    const double fx = f(map.to_physical(tab.volume_rule.points[q]));
    l.head(nv) -= (w * fx) * tab.volume.val.row(static_cast<Eigen::Index>(q)).transpose();
  }
  return l;
}

LocalSystem local_system_plate(const AffineMap& map, double d, const ScalarField& f)
{
  return LocalSystem{local_gram_plate(map, d), local_b_plate(map), local_load_plate(map, f)};
}

//------------------------------------------------------------------------------
// Degrees of freedom
//------------------------------------------------------------------------------

namespace {

struct VertexDof {
  std::size_t global;
  Eigen::Vector3d weights;  // contribution to (w, w_x, w_y)
};

} // namespace

PlateDofMap dof_map_plate(const Mesh& mesh, PlateBC bc)
{
  PlateDofMap map;
  const std::size_t nt = mesh.n_triangles();
  std::size_t next = 4 * nt;
  map.n_u = nt;
  map.n_moment = 3 * nt;

  const auto vertex_clamped = [&](std::size_t v) {
    return bc == PlateBC::mixed_free ? mesh.vertex_tag(v) == BoundaryTag::dirichlet_like : mesh.is_boundary_vertex(v);
  };

  // uhat
  std::vector<std::vector<VertexDof>> vdofs(mesh.n_vertices());
  std::vector<std::vector<Eigen::Vector2d>> boundary_tangents(mesh.n_vertices());
  for (std::size_t e = 0; e < mesh.n_edges(); ++e) {
    if (mesh.is_boundary_edge(e)) {
      for (std::size_t v : mesh.edge(e)) {
        boundary_tangents[v].push_back(mesh.edge_tangent(e));
      }
    }
  }
  for (std::size_t v = 0; v < mesh.n_vertices(); ++v) {
    if (bc == PlateBC::simply_supported && mesh.is_boundary_vertex(v)) {
      // w = 0 and t.grad w = 0 along every incident boundary edge.
      const auto& ts = boundary_tangents[v];
      bool spans = false;
      for (const auto& t : ts) {
        spans = spans || std::abs(ts.front().x() * t.y() - ts.front().y() * t.x()) > 1e-8;
      }
      if (!spans) {
        const Eigen::Vector2d n(-ts.front().y(), ts.front().x());
        vdofs[v].push_back({next++, Eigen::Vector3d(0.0, n.x(), n.y())});
      }
    } else if (!vertex_clamped(v)) {
      for (int c = 0; c < 3; ++c) {
        vdofs[v].push_back({next++, Eigen::Vector3d::Unit(c)});
      }
    }
    map.n_uhat += vdofs[v].size();
  }

  // mhat
  std::vector<std::array<std::ptrdiff_t, 2>> edofs(mesh.n_edges(), {-1, -1});
  for (std::size_t e = 0; e < mesh.n_edges(); ++e) {
    bool mnn_free = true, q_free = true;
    if (bc == PlateBC::simply_supported && mesh.is_boundary_edge(e)) {
      mnn_free = false;
    }
    if (bc == PlateBC::mixed_free && mesh.edge_tag(e) == BoundaryTag::neumann_like) {
      mnn_free = q_free = false;
    }
    if (mnn_free) {
      edofs[e][0] = static_cast<std::ptrdiff_t>(next++);
      ++map.n_mhat;
    }
    if (q_free) {
      edofs[e][1] = static_cast<std::ptrdiff_t>(next++);
      ++map.n_mhat;
    }
  }

  // corner jumps: corner_dofs[v][p] lists the contributions to the jump of
  // the p-th incident triangle of v.
  std::vector<std::vector<std::vector<DofEntry>>> corner_dofs(mesh.n_vertices());
  for (std::size_t v = 0; v < mesh.n_vertices(); ++v) {
    const std::size_t k = mesh.vertex_triangles(v).size();
    auto& cd = corner_dofs[v];
    cd.resize(k);
    const bool test_vanishes = bc == PlateBC::mixed_free ? mesh.vertex_tag(v) == BoundaryTag::dirichlet_like
                                                         : mesh.is_boundary_vertex(v);
    if (test_vanishes) {
      for (std::size_t p = 0; p < k; ++p) {
        cd[p].push_back({next++, 1.0});
      }
    } else {
      // Helmert basis of {J : sum J = 0}
      for (std::size_t i = 1; i < k; ++i) {
        const std::size_t g = next++;
        const double scale = 1.0 / std::sqrt(static_cast<double>(i * (i + 1)));
        for (std::size_t p = 0; p < i; ++p) {
          cd[p].push_back({g, scale});
        }
        cd[i].push_back({g, -static_cast<double>(i) * scale});
      }
    }
    map.n_corner += test_vanishes ? k : k - 1;
  }

  map.dofs = DofMap(plate_n_trial, next);
  std::vector<std::vector<DofEntry>> slots(plate_n_trial);
  for (std::size_t t = 0; t < nt; ++t) {
    for (auto& s : slots) {
      s.clear();
    }
    slots[0].push_back({PlateDofMap::u_index(t), 1.0});
    for (int c = 0; c < 3; ++c) {
      slots[1 + c].push_back({PlateDofMap::moment_index(t, c), 1.0});
    }
    const auto& tri = mesh.triangle(t);
    for (int j = 0; j < 3; ++j) {
      for (const VertexDof& vd : vdofs[tri[j]]) {
        for (int c = 0; c < 3; ++c) {
          if (vd.weights(c) != 0.0) {
            slots[4 + 3 * j + c].push_back({vd.global, vd.weights(c)});
          }
        }
      }
    }
    const auto& refs = mesh.tri_edges(t);
    for (int k = 0; k < 3; ++k) {
      const auto& ed = edofs[refs[k].edge];
      if (ed[0] >= 0) {
        slots[13 + 2 * k].push_back({static_cast<std::size_t>(ed[0]), 1.0});
      }
      if (ed[1] >= 0) {
        slots[14 + 2 * k].push_back({static_cast<std::size_t>(ed[1]), static_cast<double>(refs[k].sign)});
      }
    }
    for (int j = 0; j < 3; ++j) {
      const auto& incident = mesh.vertex_triangles(tri[j]);
      const auto pos = static_cast<std::size_t>(std::find(incident.begin(), incident.end(), t) - incident.begin());
      slots[19 + j] = corner_dofs[tri[j]][pos];
    }
    map.dofs.append_element(slots);
  }
  return map;
}

} // namespace dpg
