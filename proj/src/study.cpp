#include <dpg/study.hpp>

#include <array>
#include <charconv>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <dpg/affine_map.hpp>
#include <dpg/plate_uw.hpp>
#include <dpg/poisson_uw.hpp>
#include <dpg/quadrature.hpp>

namespace dpg {

void validate(const StudyConfig& cfg)
{
  if (!(cfg.r1 > 0.0) || !(cfg.r2 > 0.0)) {
    throw std::invalid_argument("domain lengths must be positive");
  }
  if (!(cfg.gamma >= 0.0)) {
    throw std::invalid_argument("gamma must be non-negative");
  }
  if (cfg.problem == Problem::plate && cfg.gamma != 0.0) {
    throw std::invalid_argument("gamma applies to the poisson problem only");
  }
  if (cfg.d_override && !(*cfg.d_override > 0.0)) {
    throw std::invalid_argument("d must be positive");
  }
  if (cfg.levels < 1) {
    throw std::invalid_argument("levels must be at least 1");
  }
  if (cfg.ny0 < 1) {
    throw std::invalid_argument("ny0 must be at least 1");
  }
}

double pick_d(const StudyConfig& cfg)
{
  if (cfg.d_override) {
    return *cfg.d_override;
  }
  if (cfg.norm == NormMode::standard) {
    return 1.0;
  }
  return cfg.bc == BcLayout::dirichlet ? std::min(cfg.r1, cfg.r2) : cfg.r1;
}

//------------------------------------------------------------------------------
// Manufactured solutions
//------------------------------------------------------------------------------

ExactBundle exact_bundle(const StudyConfig& cfg)
{
  using std::cos;
  using std::sin;
  const double pi = std::numbers::pi;
  const double a = pi / cfg.r1;
  const double b = pi / cfg.r2;
  const double gamma = cfg.gamma;
  ExactBundle e;

  if (cfg.problem == Problem::poisson && cfg.bc == BcLayout::dirichlet) {
    e.u = [a, b](const Eigen::Vector2d& p) { return sin(a * p.x()) * sin(b * p.y()); };
    e.grad = [a, b](const Eigen::Vector2d& p) {
      return Eigen::Vector2d(a * cos(a * p.x()) * sin(b * p.y()), b * sin(a * p.x()) * cos(b * p.y()));
    };
    e.hessian = [a, b](const Eigen::Vector2d& p) {
      const double u = sin(a * p.x()) * sin(b * p.y());
      const double c = a * b * cos(a * p.x()) * cos(b * p.y());
      return (Eigen::Matrix2d() << -a * a * u, c, c, -b * b * u).finished();
    };
    e.f = [a, b, gamma](const Eigen::Vector2d& p) {
      return (a * a + b * b + gamma) * sin(a * p.x()) * sin(b * p.y());
    };
  } else if (cfg.problem == Problem::poisson) {
    e.u = [a](const Eigen::Vector2d& p) { return sin(a * p.x()); };
    e.grad = [a](const Eigen::Vector2d& p) { return Eigen::Vector2d(a * cos(a * p.x()), 0.0); };
    e.hessian = [a](const Eigen::Vector2d& p) {
      return (Eigen::Matrix2d() << -a * a * sin(a * p.x()), 0.0, 0.0, 0.0).finished();
    };
    e.f = [a, gamma](const Eigen::Vector2d& p) { return (a * a + gamma) * sin(a * p.x()); };
  } else {
    // u = X(x) Y(y) with X = sin^2(a x), Y = sin^2(b y) (Y = 1 for the strip).
    const bool strip = cfg.bc == BcLayout::mixed;
    struct Factor {
      double k;
      bool constant;
      std::array<double, 5> operator()(double t) const
      {
        if (constant) {
          return {1.0, 0.0, 0.0, 0.0, 0.0};
        }
        const double s = sin(k * t), c2 = cos(2.0 * k * t);
        return {s * s, k * sin(2.0 * k * t), 2.0 * k * k * c2, -4.0 * k * k * k * sin(2.0 * k * t),
                -8.0 * k * k * k * k * c2};
      }
    };
    const Factor fx{a, false}, fy{b, strip};
    e.u = [fx, fy](const Eigen::Vector2d& p) { return fx(p.x())[0] * fy(p.y())[0]; };
    e.grad = [fx, fy](const Eigen::Vector2d& p) {
      const auto x = fx(p.x()), y = fy(p.y());
      return Eigen::Vector2d(x[1] * y[0], x[0] * y[1]);
    };
    e.hessian = [fx, fy](const Eigen::Vector2d& p) {
      const auto x = fx(p.x()), y = fy(p.y());
      return (Eigen::Matrix2d() << x[2] * y[0], x[1] * y[1], x[1] * y[1], x[0] * y[2]).finished();
    };
    e.f = [fx, fy](const Eigen::Vector2d& p) {
      const auto x = fx(p.x()), y = fy(p.y());
      return x[4] * y[0] + 2.0 * x[2] * y[2] + x[0] * y[4];
    };
  }
  return e;
}

//------------------------------------------------------------------------------
// Discretization
//------------------------------------------------------------------------------

Mesh study_mesh(const StudyConfig& cfg, std::size_t ny)
{
  const BoundaryLayout layout =
      cfg.bc == BcLayout::dirichlet ? BoundaryLayout::all_dirichlet : BoundaryLayout::left_right_dirichlet;
  return classify_boundary(make_rect_mesh(cfg.r1, cfg.r2, ny), layout);
}

namespace {

struct ElementOperator {
  Eigen::LLT<Eigen::MatrixXd> gram_factor;
  CondensedLocal condensed;  // without load
};

using JacobianKey = std::array<long long, 4>;

JacobianKey jacobian_key(const AffineMap& map)
{
  int exponent = 0;
  std::frexp(map.jacobian.cwiseAbs().maxCoeff(), &exponent);
  JacobianKey key{};
  for (int i = 0; i < 4; ++i) {
    key[static_cast<std::size_t>(i)] = std::llround(std::ldexp(map.jacobian(i), 40 - exponent));
  }
  return key;
}

} // namespace

Discretization discretize(const StudyConfig& cfg, const Mesh& mesh, const ScalarField& f)
{
  Discretization disc{mesh, {}, {}, pick_d(cfg)};
  const double d = disc.d;
  const bool plate = cfg.problem == Problem::plate;
  disc.dofs = plate ? dof_map_plate(mesh, cfg.bc == BcLayout::dirichlet ? PlateBC::clamped : PlateBC::mixed_free).dofs
                    : dof_map_poisson(mesh).dofs;

  std::map<JacobianKey, ElementOperator> operators;
  disc.locals.resize(mesh.n_triangles());
  for (std::size_t t = 0; t < mesh.n_triangles(); ++t) {
    const AffineMap map = map_affine(mesh, t);
    auto [it, inserted] = operators.try_emplace(jacobian_key(map));
    ElementOperator& op = it->second;
    if (inserted) {
      LocalSystem ls;
      if (plate) {
        ls = {local_gram_plate(map, d), local_b_plate(map), Eigen::VectorXd::Zero(plate_n_test)};
      } else {
        ls = {local_gram_poisson(map, d), local_b_poisson(map, cfg.gamma), Eigen::VectorXd::Zero(poisson_n_test)};
      }
      op.condensed = condense_local(ls, t, d);
      op.gram_factor.compute(ls.gram);
    }
    CondensedLocal& c = disc.locals[t];
    c.s = op.condensed.s;
    c.whitened_b = op.condensed.whitened_b;
    condense_load(op.gram_factor, plate ? local_load_plate(map, f) : local_load_poisson(map, f), c);
  }
  return disc;
}

ErrorTriple compute_errors(Problem problem, const Mesh& mesh, const Eigen::VectorXd& x, const ExactBundle& exact,
                           double energy)
{
  const TriangleQuadRule& rule = quad_triangle(10);
  const std::size_t stride = problem == Problem::plate ? 4 : 3;
  if (static_cast<std::size_t>(x.size()) < stride * mesh.n_triangles()) {
    throw std::invalid_argument("compute_errors: solution vector too short");
  }
  double eu = 0.0, eflux = 0.0;
  for (std::size_t t = 0; t < mesh.n_triangles(); ++t) {
    const AffineMap map = map_affine(mesh, t);
    const auto base = static_cast<Eigen::Index>(stride * t);
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const Eigen::Vector2d p = map.to_physical(rule.points[q]);
      const double w = rule.weights[q] * map.det;
      const double du = exact.u(p) - x(base);
      eu += w * du * du;
      if (problem == Problem::plate) {
        const Eigen::Matrix2d m = -exact.hessian(p);
        const double d11 = m(0, 0) - x(base + 1), d12 = m(0, 1) - x(base + 2), d22 = m(1, 1) - x(base + 3);
        eflux += w * (d11 * d11 + 2.0 * d12 * d12 + d22 * d22);
      } else {
        const Eigen::Vector2d ds = exact.grad(p) - Eigen::Vector2d(x(base + 1), x(base + 2));
        eflux += w * ds.squaredNorm();
      }
    }
  }
  return {std::sqrt(eu), std::sqrt(eflux), energy};
}

StudyRow solve_level(const StudyConfig& cfg, std::size_t ny, const SolverOptions& options)
{
  const ExactBundle exact = exact_bundle(cfg);
  const Mesh mesh = study_mesh(cfg, ny);
  const Discretization disc = discretize(cfg, mesh, exact.f);
  const GlobalSystem gs = assemble_global(disc.dofs, disc.locals);
  const Eigen::VectorXd x = solve_spd(gs, options);
  const EnergyResidual eta = energy_residual(disc.dofs, disc.locals, x);
  const ErrorTriple err = compute_errors(cfg.problem, mesh, x, exact, eta.total);
  return {disc.dofs.n_free(), err.u, err.flux, err.energy};
}

std::vector<StudyRow> run_study(const StudyConfig& cfg, const SolverOptions& options)
{
  validate(cfg);
  std::vector<StudyRow> rows;
  for (int level = 0; level < cfg.levels; ++level) {
    const std::size_t ny = static_cast<std::size_t>(cfg.ny0) << level;
    try {
      rows.push_back(solve_level(cfg, ny, options));
    } catch (const SolverError& e) {
      throw SolverError("level " + std::to_string(level) + " (ny = " + std::to_string(ny) + "): " + e.what());
    }
  }
  return rows;
}

//------------------------------------------------------------------------------
// Output
//------------------------------------------------------------------------------

std::string format_double(double value)
{
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), res.ptr);
}

std::string flag_echo(const StudyConfig& cfg)
{
  std::ostringstream os;
  os << "--problem " << (cfg.problem == Problem::poisson ? "poisson" : "plate");
  if (cfg.problem == Problem::poisson) {
    os << " --gamma " << format_double(cfg.gamma);
  }
  os << " --r1 " << format_double(cfg.r1) << " --r2 " << format_double(cfg.r2) << " --bc "
     << (cfg.bc == BcLayout::dirichlet ? "dirichlet" : "mixed") << " --norm "
     << (cfg.norm == NormMode::standard ? "standard" : "scaled");
  if (cfg.d_override) {
    os << " --d " << format_double(*cfg.d_override);
  }
  os << " --levels " << cfg.levels << " --ny0 " << cfg.ny0;
  return os.str();
}

void write_csv(std::ostream& os, const StudyConfig& cfg, std::span<const StudyRow> rows)
{
  os << "# dpg-lock study: " << flag_echo(cfg) << " (dofDPG = free trial dofs)\n";
  os << "dofDPG,errU,errSigma,err\n";
  for (const StudyRow& r : rows) {
    os << r.dofs << ',' << format_double(r.err_u) << ',' << format_double(r.err_sigma) << ','
       << format_double(r.err) << '\n';
  }
}

double log_log_slope(std::span<const double> x, std::span<const double> y)
{
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("log_log_slope: need at least two matching points");
  }
  const auto n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace dpg
