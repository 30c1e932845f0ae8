#include <dpg/basis.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

#include <dpg/quadrature.hpp>

namespace dpg {

namespace {

double ipow(double x, int k)
{
  double r = 1.0;
  for (int i = 0; i < k; ++i) {
    r *= x;
  }
  return r;
}

// d^n/dx^n x^k evaluated at x
double dmono(double x, int k, int n)
{
  if (n > k) {
    return 0.0;
  }
  double c = 1.0;
  for (int i = 0; i < n; ++i) {
    c *= k - i;
  }
  return c * ipow(x, k - n);
}

// Monomials are centred at the barycentre to limit cancellation.
constexpr double centre = 1.0 / 3.0;

} // namespace

double reference_monomial_integral(int a, int b)
{
  return std::tgamma(a + 1.0) * std::tgamma(b + 1.0) / std::tgamma(a + b + 3.0);
}

ReferenceBasis::ReferenceBasis(int degree)
  : m_degree(degree)
{
  if (degree < 0 || degree > max_basis_degree) {
    throw std::invalid_argument("ReferenceBasis: unsupported degree " + std::to_string(degree));
  }
  for (int total = 0; total <= degree; ++total) {
    for (int b = 0; b <= total; ++b) {
      m_exponents.push_back({total - b, b});
    }
  }
  // Gram-Schmidt by Cholesky against the L2 product (exact quadrature),
  // repeated once to remove the rounding left by the first pass.
  const auto n = static_cast<Eigen::Index>(m_exponents.size());
  m_coeffs = Eigen::MatrixXd::Identity(n, n);
  const TriangleQuadRule rule = quad_triangle(2 * degree);
  const Eigen::Map<const Eigen::VectorXd> w(rule.weights.data(), static_cast<Eigen::Index>(rule.weights.size()));
  for (int pass = 0; pass < 2; ++pass) {
    const Eigen::MatrixXd v = tabulate(rule.points).val;
    const Eigen::MatrixXd mass = v.transpose() * w.asDiagonal() * v;
    const Eigen::LLT<Eigen::MatrixXd> llt(mass);
    const Eigen::MatrixXd linv = llt.matrixL().solve(Eigen::MatrixXd::Identity(n, n));
    m_coeffs = m_coeffs * linv.transpose();
  }
}

BasisTables ReferenceBasis::tabulate(std::span<const Eigen::Vector2d> points) const
{
  const auto np = static_cast<Eigen::Index>(points.size());
  const auto nm = static_cast<Eigen::Index>(m_exponents.size());
  Eigen::MatrixXd v(np, nm), dx(np, nm), dy(np, nm), dxx(np, nm), dxy(np, nm), dyy(np, nm);
  for (Eigen::Index q = 0; q < np; ++q) {
    const double x = points[q].x() - centre, y = points[q].y() - centre;
    for (Eigen::Index m = 0; m < nm; ++m) {
      const int a = m_exponents[m][0], b = m_exponents[m][1];
      v(q, m) = ipow(x, a) * ipow(y, b);
      dx(q, m) = dmono(x, a, 1) * ipow(y, b);
      dy(q, m) = ipow(x, a) * dmono(y, b, 1);
      dxx(q, m) = dmono(x, a, 2) * ipow(y, b);
      dxy(q, m) = dmono(x, a, 1) * dmono(y, b, 1);
      dyy(q, m) = ipow(x, a) * dmono(y, b, 2);
    }
  }
  BasisTables t;
  t.degree = m_degree;
  t.dim = m_exponents.size();
  t.val = v * m_coeffs;
  t.dx = dx * m_coeffs;
  t.dy = dy * m_coeffs;
  t.dxx = dxx * m_coeffs;
  t.dxy = dxy * m_coeffs;
  t.dyy = dyy * m_coeffs;
  return t;
}

BasisTables ReferenceBasis::tabulate(const Eigen::Vector2d& point) const
{
  return tabulate(std::span<const Eigen::Vector2d>(&point, 1));
}

const ReferenceBasis& reference_basis(int degree)
{
  static const ReferenceBasis bases[] = {ReferenceBasis(0), ReferenceBasis(1), ReferenceBasis(2),
                                         ReferenceBasis(3), ReferenceBasis(4)};
  if (degree < 0 || degree > max_basis_degree) {
    throw std::invalid_argument("reference_basis: unsupported degree " + std::to_string(degree));
  }
  return bases[degree];
}

BasisTables basis_p(int degree, std::span<const Eigen::Vector2d> points)
{
  return reference_basis(degree).tabulate(points);
}

} // namespace dpg
