#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>

#include <dpg/affine_map.hpp>
#include <dpg/basis.hpp>
#include <dpg/mesh.hpp>
#include <dpg/plate_uw.hpp>
#include <dpg/quadrature.hpp>

#include "oracles.hpp"

using namespace dpg;
using oracle::Separable;
using oracle::poly_factor;
using oracle::sin2_factor;

namespace {

const double pi = std::numbers::pi;

AffineMap skewed_map()
{
  return map_affine({Eigen::Vector2d(0.2, 0.1), Eigen::Vector2d(1.3, 0.4), Eigen::Vector2d(0.5, 1.2)});
}

Eigen::VectorXd fit(int p, const AffineMap& map, const ScalarField& g)
{
  const TriangleQuadRule& rule = quad_triangle(2 * p + 2);
  const BasisTables t = basis_p(p, rule.points);
  Eigen::VectorXd y(t.val.rows());
  for (Eigen::Index q = 0; q < y.size(); ++q) {
    y(q) = g(map.to_physical(rule.points[static_cast<std::size_t>(q)]));
  }
  return t.val.colPivHouseholderQr().solve(y);
}

//------------------------------------------------------------------------------
// Raw-monomial Gram oracle
//------------------------------------------------------------------------------

struct Mono {
  int a, b;
  // d^i/dx^i d^j/dy^j of x^a y^b
  double deriv(const Eigen::Vector2d& x, int i, int j) const
  {
    if (i > a || j > b) {
      return 0.0;
    }
    double c = 1.0;
    for (int k = 0; k < i; ++k) {
      c *= a - k;
    }
    for (int k = 0; k < j; ++k) {
      c *= b - k;
    }
    return c * std::pow(x.x(), a - i) * std::pow(x.y(), b - j);
  }
};

std::vector<Mono> monos(int p)
{
  std::vector<Mono> m;
  for (int a = 0; a <= p; ++a) {
    for (int b = 0; a + b <= p; ++b) {
      m.push_back({a, b});
    }
  }
  return m;
}

Eigen::Matrix2d phys_hessian(const Mono& m, const Eigen::Vector2d& x, const Eigen::Matrix2d& jinv)
{
  Eigen::Matrix2d h;
  h << m.deriv(x, 2, 0), m.deriv(x, 1, 1), m.deriv(x, 1, 1), m.deriv(x, 0, 2);
  return jinv.transpose() * h * jinv;
}

Eigen::MatrixXd raw_to_library(int p)
{
  const TriangleQuadRule& rule = quad_triangle(2 * p + 2);
  const auto raw = monos(p);
  Eigen::MatrixXd v(static_cast<Eigen::Index>(rule.points.size()), static_cast<Eigen::Index>(raw.size()));
  for (std::size_t q = 0; q < rule.points.size(); ++q) {
    for (std::size_t m = 0; m < raw.size(); ++m) {
      v(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(m)) = raw[m].deriv(rule.points[q], 0, 0);
    }
  }
  return v.colPivHouseholderQr().solve(basis_p(p, rule.points).val);
}

Eigen::MatrixXd raw_gram(const AffineMap& map, double d)
{
  const auto mv = monos(3), mq = monos(4);
  const auto nv = static_cast<Eigen::Index>(mv.size()), nq = static_cast<Eigen::Index>(mq.size());
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(nv + 3 * nq, nv + 3 * nq);
  const TriangleQuadRule& rule = quad_triangle(8);
  const Eigen::Matrix2d jinv = map.jacobian.inverse();
  const double d4 = std::pow(d, 4);
  for (std::size_t q = 0; q < rule.points.size(); ++q) {
    const double w = rule.weights[q] * map.jacobian.determinant();
    const Eigen::Vector2d& x = rule.points[q];
    for (Eigen::Index i = 0; i < nv; ++i) {
      const Mono& mi = mv[static_cast<std::size_t>(i)];
      const Eigen::Matrix2d hi = phys_hessian(mi, x, jinv);
      for (Eigen::Index j = 0; j < nv; ++j) {
        const Mono& mj = mv[static_cast<std::size_t>(j)];
        const Eigen::Matrix2d hj = phys_hessian(mj, x, jinv);
        g(i, j) += w * (mi.deriv(x, 0, 0) * mj.deriv(x, 0, 0) / d4 + (hi.array() * hj.array()).sum());
      }
    }
    // Q = psi E_c with E_0 = e1e1, E_1 = e1e2 + e2e1, E_2 = e2e2
    const std::array<Eigen::Matrix2d, 3> unit{(Eigen::Matrix2d() << 1, 0, 0, 0).finished(),
                                              (Eigen::Matrix2d() << 0, 1, 1, 0).finished(),
                                              (Eigen::Matrix2d() << 0, 0, 0, 1).finished()};
    for (int c = 0; c < 3; ++c) {
      for (int e = 0; e < 3; ++e) {
        for (Eigen::Index i = 0; i < nq; ++i) {
          const Mono& mi = mq[static_cast<std::size_t>(i)];
          const double ddi = (phys_hessian(mi, x, jinv).array() * unit[static_cast<std::size_t>(c)].array()).sum();
          for (Eigen::Index j = 0; j < nq; ++j) {
            const Mono& mj = mq[static_cast<std::size_t>(j)];
            const double ddj = (phys_hessian(mj, x, jinv).array() * unit[static_cast<std::size_t>(e)].array()).sum();
            const double frob = (unit[static_cast<std::size_t>(c)].array() * unit[static_cast<std::size_t>(e)].array()).sum();
            g(nv + c * nq + i, nv + e * nq + j) += w * (frob * mi.deriv(x, 0, 0) * mj.deriv(x, 0, 0) + d4 * ddi * ddj);
          }
        }
      }
    }
  }
  return g;
}

} // namespace

TEST_CASE("plate Gram matrix")
{
  const AffineMap map = skewed_map();
  const Eigen::MatrixXd t3 = raw_to_library(3), t4 = raw_to_library(4);
  Eigen::MatrixXd tt = Eigen::MatrixXd::Zero(55, 55);
  tt.topLeftCorner(10, 10) = t3;
  for (int c = 0; c < 3; ++c) {
    tt.block(10 + 15 * c, 10 + 15 * c, 15, 15) = t4;
  }
  for (double d : {1.0, 0.5, 3.0}) {
    const Eigen::MatrixXd g = local_gram_plate(map, d);
    CHECK(g.rows() == 55);
    CHECK((g - g.transpose()).norm() <= 1e-12 * g.norm());
    CHECK(Eigen::LLT<Eigen::MatrixXd>(g).info() == Eigen::Success);
    const Eigen::MatrixXd oracle = tt.transpose() * raw_gram(map, d) * tt;
    CHECK((g - oracle).norm() <= 1e-11 * oracle.norm());

    const Eigen::VectorXd one = fit(3, map, [](const Eigen::Vector2d&) { return 1.0; });
    CHECK(one.dot(g.topLeftCorner(10, 10) * one) == doctest::Approx(map.area() / std::pow(d, 4)).epsilon(1e-13));

    const PlateGramParts parts = plate_gram_parts(map);
    Eigen::MatrixXd lit = Eigen::MatrixXd::Zero(55, 55);
    lit.topLeftCorner(10, 10) = parts.mass_v / std::pow(d, 4) + parts.hessian_v;
    lit.bottomRightCorner(45, 45) = parts.mass_q + std::pow(d, 4) * parts.divdiv_q;
    CHECK((g - lit).cwiseAbs().maxCoeff() <= 1e-14 * g.cwiseAbs().maxCoeff());
  }
  CHECK_THROWS_AS(local_gram_plate(map, 0.0), std::invalid_argument);
}

TEST_CASE("plate Gram matrices stay positive definite across scales")
{
  // element sizes and scalings of the plate studies
  for (double h : {10.0 / 2.0, 1.0, 1.0 / 32.0}) {
    const AffineMap map = map_affine({Eigen::Vector2d(0, 0), Eigen::Vector2d(h, 0), Eigen::Vector2d(h, h)});
    for (double d : {1.0, 10.0}) {
      CHECK(Eigen::LLT<Eigen::MatrixXd>(local_gram_plate(map, d)).info() == Eigen::Success);
    }
  }
}

TEST_CASE("plate bilinear form entries")
{
  const AffineMap map = skewed_map();
  const Eigen::MatrixXd b = local_b_plate(map);
  CHECK(b.rows() == 55);
  CHECK(b.cols() == 22);

  Eigen::VectorXd one = Eigen::VectorXd::Zero(55);
  one.head(10) = fit(3, map, [](const Eigen::Vector2d&) { return 1.0; });
  for (int k = 0; k < 3; ++k) {
    // q_eff = 1 on local edge k against v = 1
    CHECK(b.col(14 + 2 * k).dot(one) == doctest::Approx(map.edges[k].length).epsilon(1e-13));
    // m_nn against v = 1 vanishes (d_n v = 0)
    CHECK(std::abs(b.col(13 + 2 * k).dot(one)) < 1e-13);
  }
  for (int j = 0; j < 3; ++j) {
    CHECK(b.col(19 + j).dot(one) == doctest::Approx(1.0).epsilon(1e-13));
  }
  // zero uhat data gives zero columns
  PlateTrial zero;
  zero.uhat = [](int, double) { return GgradTrace{}; };
  CHECK(plate_form(map, zero).norm() == 0.0);

  // u = 1 against Q11 = x^2 / 2: div div Q = 1
  Eigen::VectorXd q = Eigen::VectorXd::Zero(55);
  q.segment(10, 15) = fit(4, map, [](const Eigen::Vector2d& x) { return 0.5 * x.x() * x.x(); });
  CHECK(b.col(0).dot(q) == doctest::Approx(map.area()).epsilon(1e-12));
}

TEST_CASE("Hermite reconstruction reproduces cubic traces")
{
  // w = cubic; its edge traces are cubic, so the Hermite value is exact.
  const AffineMap map = skewed_map();
  auto w = [](const Eigen::Vector2d& p) { return 1 + p.x() - 2 * p.y() + p.x() * p.y() + std::pow(p.x(), 3) - 2 * p.x() * p.y() * p.y(); };
  auto gw = [](const Eigen::Vector2d& p) {
    return Eigen::Vector2d(1 + p.y() + 3 * p.x() * p.x() - 2 * p.y() * p.y(), -2 + p.x() - 4 * p.x() * p.y());
  };
  std::array<Eigen::Vector3d, 3> data;
  for (int j = 0; j < 3; ++j) {
    const Eigen::Vector2d p = map.edges[static_cast<std::size_t>(j)].start;
    data[static_cast<std::size_t>(j)] = Eigen::Vector3d(w(p), gw(p).x(), gw(p).y());
  }
  for (int k = 0; k < 3; ++k) {
    const EdgeGeometry& e = map.edges[static_cast<std::size_t>(k)];
    for (double s : {0.0, 0.3, 0.8, 1.0}) {
      GgradTrace sum;
      for (int j = 0; j < 3; ++j) {
        for (int c = 0; c < 3; ++c) {
          const GgradTrace t = hermite_edge_trace(map, j, c, k, s);
          const double x = data[static_cast<std::size_t>(j)](c);
          sum.value += x * t.value;
          sum.dn += x * t.dn;
          sum.dt += x * t.dt;
        }
      }
      const Eigen::Vector2d p = (1 - s) * e.start + s * e.end;
      CHECK(std::abs(sum.value - w(p)) < 1e-13);
      CHECK(std::abs(sum.dt - gw(p).dot(e.tangent)) < 1e-12);
      // the normal derivative is interpolated linearly
      const double dn_lin = (1 - s) * gw(e.start).dot(e.normal) + s * gw(e.end).dot(e.normal);
      CHECK(std::abs(sum.dn - dn_lin) < 1e-13);
    }
  }
}

TEST_CASE("plate integration-by-parts consistency")
{
  const Separable poly{poly_factor, poly_factor};
  const Separable trig{sin2_factor, sin2_factor};
  struct Case {
    Mesh mesh;
    const Separable* w;
    int degree;
  };
  const std::vector<Case> cases{{make_rect_mesh(1, 1, 1), &poly, 14},
                                {make_rect_mesh(1, 1, 2), &poly, 14},
                                {make_rect_mesh(1, 1, 2), &trig, 20}};
  for (const Case& c : cases) {
    CHECK(oracle::plate_consistency_defect(c.mesh, *c.w, c.degree) < 1e-8);
  }}

TEST_CASE("edge-only moment pairing misses the corner terms")
{
  // With constant M the pairing reduces to the corner sum; dropping it
  // leaves a residual against v = x.
  const AffineMap map = map_affine({Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1)});
  const Separable quad{[](double t) { return std::array<double, 5>{t * t, 2 * t, 2, 0, 0}; },
                       [](double t) { return std::array<double, 5>{1 + t, 1, 0, 0, 0}; }};
  PlateTrial tr = oracle::plate_exact_trial(map, quad);
  tr.u = nullptr;
  tr.uhat = nullptr;
  PlateTrial no_corner = tr;
  no_corner.corner_jumps = {0.0, 0.0, 0.0};
  tr.moment = [&quad](const Eigen::Vector2d& p) { return quad.moment(p); };
  Eigen::VectorXd vx = Eigen::VectorXd::Zero(55);
  vx.head(10) = fit(3, map, [](const Eigen::Vector2d& p) { return p.x(); });
  // (M, grad grad v) = 0 for v = x, so <mhat, v> must vanish too
  PlateTrial edges_and_corners = tr;
  edges_and_corners.moment = nullptr;
  CHECK(std::abs(plate_form(map, edges_and_corners).dot(vx)) < 1e-13);
  no_corner.moment = nullptr;
  CHECK(std::abs(plate_form(map, no_corner).dot(vx)) > 0.1);
}

TEST_CASE("plate load")
{
  const AffineMap unit = map_affine({Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1)});
  const Eigen::VectorXd one = fit(3, unit, [](const Eigen::Vector2d&) { return 1.0; });
  const Eigen::VectorXd l1 = local_load_plate(unit, [](const Eigen::Vector2d&) { return 1.0; });
  CHECK(l1.head(10).dot(one) == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(l1.tail(45).norm() == 0.0);
  CHECK(local_load_plate(unit, [](const Eigen::Vector2d&) { return 0.0; }).norm() == 0.0);

  // f = bilaplacian of sin^2(pi x) sin^2(pi y), nested composite Simpson
  const Separable trig{sin2_factor, sin2_factor};
  auto f = [&trig](const Eigen::Vector2d& p) { return trig.bilaplacian(p); };
  auto simpson = [](auto g, double a, double b, int n) {
    double s = 0.0;
    for (int i = 0; i <= n; ++i) {
      const double w = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
      s += w * g(a + (b - a) * i / n);
    }
    return s * (b - a) / (3.0 * n);
  };
  const double ref = simpson(
      [&](double x) { return simpson([&](double y) { return f(Eigen::Vector2d(x, y)); }, 0.0, 1.0 - x, 1000); }, 0.0,
      1.0, 1000);
  const Eigen::VectorXd lt = local_load_plate(unit, f);
  CHECK(std::abs(lt.head(10).dot(one) + ref) < 1e-9 * std::max(1.0, std::abs(ref)));
}

TEST_CASE("plate dof map counts")
{
  const Mesh sq = classify_boundary(make_rect_mesh(1, 1, 1), BoundaryLayout::all_dirichlet);
  const PlateDofMap c = dof_map_plate(sq, PlateBC::clamped);
  CHECK(c.n_u == 2);
  CHECK(c.n_moment == 6);
  CHECK(c.n_uhat == 0);
  CHECK(c.n_mhat == 10);
  CHECK(c.n_corner == 6);
  CHECK(c.n_free() == 24);

  const PlateDofMap s = dof_map_plate(sq, PlateBC::simply_supported);
  CHECK(s.n_uhat == 0);
  CHECK(s.n_mhat == 6);
  CHECK(s.n_corner == 6);
  CHECK(s.n_free() == 20);

  const Mesh r = refine_uniform(sq);
  const PlateDofMap cr = dof_map_plate(r, PlateBC::clamped);
  CHECK(cr.n_uhat == 3);
  // corner unknowns: one per element corner, minus one per interior vertex
  CHECK(cr.n_corner == 3 * r.n_triangles() - 1);

  // simply supported: a boundary vertex inside a side keeps its normal slope
  const PlateDofMap sr = dof_map_plate(r, PlateBC::simply_supported);
  CHECK(sr.n_uhat == 3 + 4);

  const Mesh strip = classify_boundary(make_rect_mesh(10, 1, 2), BoundaryLayout::left_right_dirichlet);
  const PlateDofMap m = dof_map_plate(strip, PlateBC::mixed_free);
  std::size_t free_vertices = 0, free_edges = 0;
  for (std::size_t v = 0; v < strip.n_vertices(); ++v) {
    free_vertices += strip.vertex_tag(v) != BoundaryTag::dirichlet_like ? 1 : 0;
  }
  for (std::size_t e = 0; e < strip.n_edges(); ++e) {
    free_edges += strip.edge_tag(e) != BoundaryTag::neumann_like ? 1 : 0;
  }
  CHECK(m.n_uhat == 3 * free_vertices);
  CHECK(m.n_mhat == 2 * free_edges);
  CHECK(m.n_corner == 3 * strip.n_triangles() - free_vertices);
  CHECK(m.n_free() == 4 * strip.n_triangles() + m.n_uhat + m.n_mhat + m.n_corner);
}

TEST_CASE("plate dof map orientation and corner constraints")
{
  const Mesh m = refine_uniform(refine_uniform(classify_boundary(make_rect_mesh(1, 1, 1), BoundaryLayout::all_dirichlet)));
  const PlateDofMap pm = dof_map_plate(m, PlateBC::clamped);
  const std::size_t base = 4 * m.n_triangles() + pm.n_uhat;
  const Eigen::Index nx = static_cast<Eigen::Index>(pm.n_free());

  // q_eff: global value is w.r.t. the edge normal, local value w.r.t. n_T
  Eigen::VectorXd x = Eigen::VectorXd::Zero(nx);
  for (std::size_t e = 0; e < m.n_edges(); ++e) {
    x(static_cast<Eigen::Index>(base + 2 * e)) = 1.0 + static_cast<double>(e);
    x(static_cast<Eigen::Index>(base + 2 * e + 1)) = m.edge_normal(e).dot(Eigen::Vector2d(0.3, -0.8));
  }
  for (std::size_t t = 0; t < m.n_triangles(); ++t) {
    const AffineMap map = map_affine(m, t);
    const Eigen::VectorXd xt = pm.dofs.gather(t, x);
    for (int k = 0; k < 3; ++k) {
      CHECK(xt(13 + 2 * k) == 1.0 + static_cast<double>(m.tri_edges(t)[k].edge));
      CHECK(std::abs(xt(14 + 2 * k) - map.edges[k].normal.dot(Eigen::Vector2d(0.3, -0.8))) < 1e-14);
    }
  }

  // any corner dof vector gives jumps that sum to zero at interior vertices
  Eigen::VectorXd y = Eigen::VectorXd::Zero(nx);
  for (Eigen::Index i = static_cast<Eigen::Index>(base + pm.n_mhat); i < nx; ++i) {
    y(i) = std::sin(1.7 * static_cast<double>(i));
  }
  std::vector<double> sum(m.n_vertices(), 0.0);
  std::vector<double> norm2(m.n_vertices(), 0.0);
  for (std::size_t t = 0; t < m.n_triangles(); ++t) {
    const Eigen::VectorXd yt = pm.dofs.gather(t, y);
    for (int j = 0; j < 3; ++j) {
      sum[m.triangle(t)[j]] += yt(19 + j);
      norm2[m.triangle(t)[j]] += yt(19 + j) * yt(19 + j);
    }
  }
  for (std::size_t v = 0; v < m.n_vertices(); ++v) {
    if (!m.is_boundary_vertex(v)) {
      CHECK(std::abs(sum[v]) < 1e-13);
      CHECK(norm2[v] > 0.0);
    }
  }
}
