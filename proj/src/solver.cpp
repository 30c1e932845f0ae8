#include <dpg/solver.hpp>

#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>

#ifdef DPG_WITH_CHOLMOD
#include <Eigen/CholmodSupport>
#endif

namespace dpg {

CondensedLocal condense_local(const LocalSystem& ls, std::size_t element, double d)
{
  if (ls.gram.rows() != ls.gram.cols() || ls.b.rows() != ls.gram.rows() || ls.load.size() != ls.gram.rows()) {
    throw std::invalid_argument("condense_local: inconsistent local system shapes");
  }
  const Eigen::LLT<Eigen::MatrixXd> llt(ls.gram);
  if (llt.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "Gram matrix not positive definite on element " << element << " (d = " << d << ")";
    throw SolverError(msg.str());
  }
  CondensedLocal c;
  c.whitened_b = llt.matrixL().solve(ls.b);
  c.s = c.whitened_b.transpose() * c.whitened_b;
  condense_load(llt, ls.load, c);
  return c;
}

void condense_load(const Eigen::LLT<Eigen::MatrixXd>& gram_factor, const Eigen::VectorXd& load, CondensedLocal& out)
{
  out.whitened_load = gram_factor.matrixL().solve(load);
  out.g = out.whitened_b.transpose() * out.whitened_load;
}

GlobalSystem assemble_global(const DofMap& dofs, std::span<const CondensedLocal> locals,
                             std::span<const std::size_t> order)
{
  if (locals.size() != dofs.n_elements()) {
    throw std::invalid_argument("assemble_global: one condensed system per element expected");
  }
  std::vector<std::size_t> default_order;
  if (order.empty()) {
    default_order.resize(locals.size());
    std::iota(default_order.begin(), default_order.end(), std::size_t{0});
    order = default_order;
  }
  if (order.size() != locals.size()) {
    throw std::invalid_argument("assemble_global: element order has the wrong length");
  }

  const std::size_t nl = dofs.n_local();
  const auto n = static_cast<Eigen::Index>(dofs.n_free());
  GlobalSystem gs;
  gs.rhs = Eigen::VectorXd::Zero(n);
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(locals.size() * nl * nl);
  for (std::size_t t : order) {
    const CondensedLocal& c = locals[t];
    if (static_cast<std::size_t>(c.s.rows()) != nl) {
      throw std::invalid_argument("assemble_global: local size does not match the dof map");
    }
    for (std::size_t i = 0; i < nl; ++i) {
      for (const DofEntry& ei : dofs.entries(t, i)) {
        gs.rhs(static_cast<Eigen::Index>(ei.global)) += ei.coef * c.g(static_cast<Eigen::Index>(i));
        for (std::size_t j = 0; j < nl; ++j) {
          const double sij = c.s(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
          for (const DofEntry& ej : dofs.entries(t, j)) {
            triplets.emplace_back(static_cast<Eigen::Index>(ei.global), static_cast<Eigen::Index>(ej.global),
                                  ei.coef * ej.coef * sij);
          }
        }
      }
    }
  }
  gs.a.resize(n, n);
  gs.a.setFromTriplets(triplets.begin(), triplets.end());
  gs.a.makeCompressed();
  return gs;
}

namespace {

template <class Factorization>
Eigen::VectorXd direct_solve(const GlobalSystem& gs)
{
  Factorization chol;
  chol.compute(gs.a);
  if (chol.info() != Eigen::Success) {
    throw SolverError("global matrix is not positive definite");
  }
  Eigen::VectorXd x = chol.solve(gs.rhs);
  if (chol.info() != Eigen::Success) {
    throw SolverError("sparse Cholesky solve failed");
  }
  return x;
}

} // namespace

Eigen::VectorXd solve_spd(const GlobalSystem& gs, const SolverOptions& options, SolveReport* report)
{
  const auto n = gs.a.rows();
  if (gs.a.cols() != n || gs.rhs.size() != n) {
    throw std::invalid_argument("solve_spd: shape mismatch");
  }
  if (n == 0) {
    return {};
  }
  SolveReport rep;
  Eigen::VectorXd x;
  if (static_cast<std::size_t>(n) <= options.direct_limit) {
#ifdef DPG_WITH_CHOLMOD
    x = direct_solve<Eigen::CholmodSupernodalLLT<Eigen::SparseMatrix<double>, Eigen::Lower>>(gs);
#else
    x = direct_solve<Eigen::SimplicialLLT<Eigen::SparseMatrix<double>, Eigen::Lower>>(gs);
#endif
  } else {
    rep.kind = SolverKind::conjugate_gradient;
    Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper,
                             Eigen::DiagonalPreconditioner<double>> cg;
    cg.setTolerance(options.cg_tolerance);
    cg.setMaxIterations(10 * n);
    cg.compute(gs.a);
    x = cg.solve(gs.rhs);
    rep.iterations = static_cast<std::size_t>(cg.iterations());
    if (cg.info() != Eigen::Success) {
      throw SolverError("conjugate gradients did not converge within the iteration cap");
    }
  }
  const double bn = gs.rhs.norm();
  rep.relative_residual = bn > 0.0 ? (gs.a * x - gs.rhs).norm() / bn : (gs.a * x).norm();
  if (!std::isfinite(rep.relative_residual)) {
    throw SolverError("non-finite solution");
  }
  if (report) {
    *report = rep;
  }
  return x;
}

EnergyResidual energy_residual(const DofMap& dofs, std::span<const CondensedLocal> locals, const Eigen::VectorXd& x)
{
  if (locals.size() != dofs.n_elements()) {
    throw std::invalid_argument("energy_residual: one condensed system per element expected");
  }
  EnergyResidual res;
  res.element.resize(locals.size());
  double sum = 0.0;
  for (std::size_t t = 0; t < locals.size(); ++t) {
    const CondensedLocal& c = locals[t];
    const Eigen::VectorXd xt = dofs.gather(t, x);
    const double eta2 = (c.whitened_load - c.whitened_b * xt).squaredNorm();
    res.element[t] = std::sqrt(eta2);
    sum += eta2;
  }
  res.total = std::sqrt(sum);
  return res;
}

} // namespace dpg
