#ifndef DPG_LOCAL_SYSTEM_HPP
#define DPG_LOCAL_SYSTEM_HPP

#include <functional>

#include <Eigen/Dense>

namespace dpg {

/// Quadrature degree for loads; the manufactured loads oscillate on coarse
/// elements, so this sits well above the test-space degree.
inline constexpr int load_quad_degree = 20;

using ScalarField = std::function<double(const Eigen::Vector2d&)>;
using VectorField = std::function<Eigen::Vector2d(const Eigen::Vector2d&)>;
using TensorField = std::function<Eigen::Matrix2d(const Eigen::Vector2d&)>;

/// Element contribution of a DPG problem over the local test basis:
/// gram = test inner product, b = trial-to-test form, load = L(v).
struct LocalSystem {
  Eigen::MatrixXd gram;
  Eigen::MatrixXd b;
  Eigen::VectorXd load;
};

} // namespace dpg

#endif
