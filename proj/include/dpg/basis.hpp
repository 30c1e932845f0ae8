#ifndef DPG_BASIS_HPP
#define DPG_BASIS_HPP

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace dpg {

constexpr std::size_t poly_dim(int degree)
{
  return static_cast<std::size_t>((degree + 1) * (degree + 2) / 2);
}

inline constexpr int max_basis_degree = 4;

/// Tabulated basis: row = evaluation point, column = basis function.
struct BasisTables {
  int degree = 0;
  std::size_t dim = 0;
  Eigen::MatrixXd val;
  Eigen::MatrixXd dx;
  Eigen::MatrixXd dy;
  Eigen::MatrixXd dxx;
  Eigen::MatrixXd dxy;
  Eigen::MatrixXd dyy;
};

//------------------------------------------------------------------------------
// ReferenceBasis
//------------------------------------------------------------------------------

/// Basis of P^p on the reference triangle, orthonormal in L2 of the reference
/// element. Obtained from the monomials (x - 1/3)^a (y - 1/3)^b (a + b <= p)
/// by Cholesky-based Gram-Schmidt against their mass matrix.
class ReferenceBasis {
public:
  explicit ReferenceBasis(int degree);

  int degree() const { return m_degree; }
  std::size_t dim() const { return m_exponents.size(); }

  BasisTables tabulate(std::span<const Eigen::Vector2d> points) const;
  BasisTables tabulate(const Eigen::Vector2d& point) const;

  /// Coefficients w.r.t. the centred monomials; column j holds basis function j.
  const Eigen::MatrixXd& coefficients() const { return m_coeffs; }
  const std::vector<std::array<int, 2>>& exponents() const { return m_exponents; }

private:
  int m_degree;
  std::vector<std::array<int, 2>> m_exponents;
  Eigen::MatrixXd m_coeffs;
};

/// Shared immutable instance for degree 0..4.
const ReferenceBasis& reference_basis(int degree);

/// Tables of the orthonormal P^p basis at the given reference points.
BasisTables basis_p(int degree, std::span<const Eigen::Vector2d> points);

/// Integral of x^a y^b over the reference triangle: a! b! / (a + b + 2)!.
double reference_monomial_integral(int a, int b);

} // namespace dpg

#endif
