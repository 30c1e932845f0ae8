#include <dpg/poisson_uw.hpp>

#include <stdexcept>

#include <dpg/element_tables.hpp>

namespace dpg {

namespace {

constexpr Eigen::Index nv = 6;  // dim P2

Eigen::VectorXd weights_of(const ElementTables& tab, const AffineMap& map)
{
  Eigen::VectorXd w(static_cast<Eigen::Index>(tab.volume_rule.weights.size()));
  for (Eigen::Index q = 0; q < w.size(); ++q) {
    w(q) = tab.volume_rule.weights[q] * map.det;
  }
  return w;
}

// Hat function of local vertex j restricted to local edge k.
double hat_on_edge(int j, int k, double s)
{
  if (j == k) {
    return 1.0 - s;
  }
  if (j == (k + 1) % 3) {
    return s;
  }
  return 0.0;
}

} // namespace

//------------------------------------------------------------------------------
// Gram matrix
//------------------------------------------------------------------------------

Eigen::MatrixXd PoissonGramParts::combine(double d) const
{
  if (!(d > 0.0)) {
    throw std::invalid_argument("local_gram_poisson: scaling d must be positive");
  }
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(poisson_n_test),
                                            static_cast<Eigen::Index>(poisson_n_test));
  g.topLeftCorner(nv, nv) = mass_v / (d * d) + stiffness_v;
  g.bottomRightCorner(2 * nv, 2 * nv) = mass_tau + (d * d) * div_tau;
  return g;
}

PoissonGramParts poisson_gram_parts(const AffineMap& map)
{
  const ElementTables& tab = element_tables(poisson_test_degree, poisson_gram_quad_degree);
  const BasisTables phys = push_forward(tab.volume, map);
  const Eigen::VectorXd w = weights_of(tab, map);
  const auto wdiag = w.asDiagonal();

  PoissonGramParts parts;
  parts.mass_v = phys.val.transpose() * wdiag * phys.val;
  parts.stiffness_v = phys.dx.transpose() * wdiag * phys.dx + phys.dy.transpose() * wdiag * phys.dy;
  parts.mass_tau = Eigen::MatrixXd::Zero(2 * nv, 2 * nv);
  parts.mass_tau.topLeftCorner(nv, nv) = parts.mass_v;
  parts.mass_tau.bottomRightCorner(nv, nv) = parts.mass_v;
  Eigen::MatrixXd div(phys.val.rows(), 2 * nv);
  div << phys.dx, phys.dy;
  parts.div_tau = div.transpose() * wdiag * div;
  return parts;
}

Eigen::MatrixXd local_gram_poisson(const AffineMap& map, double d)
{
  return poisson_gram_parts(map).combine(d);
}

//------------------------------------------------------------------------------
// Bilinear form
//------------------------------------------------------------------------------

Eigen::VectorXd poisson_form(const AffineMap& map, const PoissonTrial& trial, double gamma, int quad_degree)
{
  const ElementTables& tab = element_tables(poisson_test_degree, quad_degree);
  Eigen::VectorXd res = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(poisson_n_test));
  auto rv = res.segment(0, nv);
  auto rtx = res.segment(nv, nv);
  auto rty = res.segment(2 * nv, nv);

  if (trial.u || trial.sigma) {
    const BasisTables phys = push_forward(tab.volume, map);
    for (std::size_t q = 0; q < tab.volume_rule.points.size(); ++q) {
      const auto iq = static_cast<Eigen::Index>(q);
      const Eigen::Vector2d x = map.to_physical(tab.volume_rule.points[q]);
      const double w = tab.volume_rule.weights[q] * map.det;
      if (trial.u) {
        const double u = trial.u(x);
        rv += (w * u * gamma) * phys.val.row(iq).transpose();
        rtx += (w * u) * phys.dx.row(iq).transpose();
        rty += (w * u) * phys.dy.row(iq).transpose();
      }
      if (trial.sigma) {
        const Eigen::Vector2d s = trial.sigma(x);
        rv += w * (s.x() * phys.dx.row(iq) + s.y() * phys.dy.row(iq)).transpose();
        rtx += (w * s.x()) * phys.val.row(iq).transpose();
        rty += (w * s.y()) * phys.val.row(iq).transpose();
      }
    }
  }

  if (trial.uhat || trial.flux) {
    for (int k = 0; k < 3; ++k) {
      const EdgeGeometry& e = map.edges[k];
      for (std::size_t q = 0; q < tab.edge_rule.points.size(); ++q) {
        const auto iq = static_cast<Eigen::Index>(q);
        const double s = tab.edge_rule.points[q];
        const double w = tab.edge_rule.weights[q] * e.length;
        const auto phi = tab.edge[k].val.row(iq).transpose();
        if (trial.uhat) {
          const double uh = trial.uhat(k, s);
          rtx -= (w * uh * e.normal.x()) * phi;
          rty -= (w * uh * e.normal.y()) * phi;
        }
        if (trial.flux) {
          rv -= (w * trial.flux(k, s)) * phi;
        }
      }
    }
  }
  return res;
}

Eigen::MatrixXd local_b_poisson(const AffineMap& map, double gamma)
{
  if (gamma < 0.0) {
    throw std::invalid_argument("local_b_poisson: gamma must be non-negative");
  }
  Eigen::MatrixXd b(static_cast<Eigen::Index>(poisson_n_test), static_cast<Eigen::Index>(poisson_n_trial));

  PoissonTrial u;
  u.u = [](const Eigen::Vector2d&) { return 1.0; };
  b.col(0) = poisson_form(map, u, gamma);
  for (int c = 0; c < 2; ++c) {
    PoissonTrial sigma;
    sigma.sigma = [c](const Eigen::Vector2d&) { return Eigen::Vector2d::Unit(c); };
    b.col(1 + c) = poisson_form(map, sigma, gamma);
  }
  for (int j = 0; j < 3; ++j) {
    PoissonTrial uhat;
    uhat.uhat = [j](int k, double s) { return hat_on_edge(j, k, s); };
    b.col(3 + j) = poisson_form(map, uhat, gamma);
  }
  for (int j = 0; j < 3; ++j) {
    PoissonTrial flux;
    flux.flux = [j](int k, double) { return k == j ? 1.0 : 0.0; };
    b.col(6 + j) = poisson_form(map, flux, gamma);
  }
  return b;
}

Eigen::VectorXd local_load_poisson(const AffineMap& map, const ScalarField& f, double scale)
{
  const ElementTables& tab = element_tables(poisson_test_degree, load_quad_degree);
  Eigen::VectorXd l = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(poisson_n_test));
  for (std::size_t q = 0; q < tab.volume_rule.points.size(); ++q) {
    const double w = tab.volume_rule.weights[q] * map.det;
    const double fx = f(map.to_physical(tab.volume_rule.points[q]));
    l.head(nv) += (scale * w * fx) * tab.volume.val.row(static_cast<Eigen::Index>(q)).transpose();
  }
  return l;
}

LocalSystem local_system_poisson(const AffineMap& map, double d, double gamma, const ScalarField& f)
{
  return LocalSystem{local_gram_poisson(map, d), local_b_poisson(map, gamma), local_load_poisson(map, f)};
}

//------------------------------------------------------------------------------
// Degrees of freedom
//------------------------------------------------------------------------------

PoissonDofMap dof_map_poisson(const Mesh& mesh)
{
  PoissonDofMap map;
  const std::size_t nt = mesh.n_triangles();
  std::size_t next = 3 * nt;
  map.n_u = nt;
  map.n_sigma = 2 * nt;

  map.vertex_dof.assign(mesh.n_vertices(), -1);
  for (std::size_t v = 0; v < mesh.n_vertices(); ++v) {
    if (mesh.vertex_tag(v) != BoundaryTag::dirichlet_like) {
      map.vertex_dof[v] = static_cast<std::ptrdiff_t>(next++);
      ++map.n_uhat;
    }
  }
  map.edge_dof.assign(mesh.n_edges(), -1);
  for (std::size_t e = 0; e < mesh.n_edges(); ++e) {
    if (mesh.edge_tag(e) != BoundaryTag::neumann_like) {
      map.edge_dof[e] = static_cast<std::ptrdiff_t>(next++);
      ++map.n_sigmahat;
    }
  }

  map.dofs = DofMap(poisson_n_trial, next);
  std::vector<std::vector<DofEntry>> slots(poisson_n_trial);
  for (std::size_t t = 0; t < nt; ++t) {
    for (auto& s : slots) {
      s.clear();
    }
    slots[0].push_back({PoissonDofMap::u_index(t), 1.0});
    slots[1].push_back({PoissonDofMap::sigma_index(t, 0), 1.0});
    slots[2].push_back({PoissonDofMap::sigma_index(t, 1), 1.0});
    const auto& tri = mesh.triangle(t);
    for (int j = 0; j < 3; ++j) {
      if (const auto g = map.vertex_dof[tri[j]]; g >= 0) {
        slots[3 + j].push_back({static_cast<std::size_t>(g), 1.0});
      }
    }
    const auto& refs = mesh.tri_edges(t);
    for (int k = 0; k < 3; ++k) {
      if (const auto g = map.edge_dof[refs[k].edge]; g >= 0) {
        slots[6 + k].push_back({static_cast<std::size_t>(g), static_cast<double>(refs[k].sign)});
      }
    }
    map.dofs.append_element(slots);
  }
  return map;
}

} // namespace dpg
