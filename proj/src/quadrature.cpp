#include <dpg/quadrature.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dpg {

namespace {

// n-point Gauss-Legendre nodes/weights on [0,1] by Newton iteration on P_n.
EdgeQuadRule gauss_legendre(int n)
{
  EdgeQuadRule rule;
  rule.points.resize(n);
  rule.weights.resize(n);
  rule.exactness = 2 * n - 1;
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) {
        break;
      }
    }
    // map [-1,1] -> [0,1]
    rule.points[n - 1 - i] = 0.5 * (x + 1.0);
    rule.weights[n - 1 - i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

void check_degree(int degree, const char* who)
{
  if (degree < 0 || degree > max_quad_degree) {
    throw std::invalid_argument(std::string(who) + ": unsupported quadrature degree " + std::to_string(degree));
  }
}

} // namespace

EdgeQuadRule quad_edge(int degree)
{
  check_degree(degree, "quad_edge");
  return gauss_legendre(degree / 2 + 1);
}

TriangleQuadRule quad_triangle(int degree)
{
  check_degree(degree, "quad_triangle");
  // x = xi (1 - eta), y = eta, dA = (1 - eta) dxi deta. A monomial of total
  // degree p becomes degree <= p in xi and <= p + 1 in eta.
  const int n = (degree + 2) / 2 + ((degree + 2) % 2);
  const EdgeQuadRule g = gauss_legendre(n);
  TriangleQuadRule rule;
  rule.points.reserve(n * n);
  rule.weights.reserve(n * n);
  for (int j = 0; j < n; ++j) {
    const double eta = g.points[j];
    for (int i = 0; i < n; ++i) {
      const double xi = g.points[i];
      rule.points.emplace_back(xi * (1.0 - eta), eta);
      rule.weights.push_back(g.weights[i] * g.weights[j] * (1.0 - eta));
    }
  }
  rule.exactness = 2 * n - 2;
  return rule;
}

} // namespace dpg
