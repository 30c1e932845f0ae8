#include <dpg/element_tables.hpp>

#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include <dpg/affine_map.hpp>

namespace dpg {

namespace {

std::unique_ptr<ElementTables> build(int basis_degree, int quad_degree)
{
  const ReferenceBasis& basis = reference_basis(basis_degree);
  auto t = std::make_unique<ElementTables>();
  t->volume_rule = quad_triangle(quad_degree);
  t->edge_rule = quad_edge(quad_degree);
  t->volume = basis.tabulate(t->volume_rule.points);
  for (int k = 0; k < 3; ++k) {
    std::vector<Eigen::Vector2d> pts;
    for (double s : t->edge_rule.points) {
      pts.push_back(reference_edge_point(k, s));
    }
    t->edge[k] = basis.tabulate(pts);
    t->vertex[k] = basis.tabulate(reference_edge_point(k, 0.0));
  }
  return t;
}

} // namespace

const ElementTables& element_tables(int basis_degree, int quad_degree)
{
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<ElementTables>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{basis_degree, quad_degree}];
  if (!slot) {
    slot = build(basis_degree, quad_degree);
  }
  return *slot;
}

} // namespace dpg
