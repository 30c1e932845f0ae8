#ifndef DPG_DOF_MAP_HPP
#define DPG_DOF_MAP_HPP

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace dpg {

struct DofEntry {
  std::size_t global;
  double coef;
};

//------------------------------------------------------------------------------
// DofMap
//------------------------------------------------------------------------------

/// Element-to-global extraction over the free trial unknowns.
///
/// Local trial coefficient i of element T is sum_j coef_j * x[global_j] over
/// the entries of slot (T, i). An empty slot is a constrained (homogeneous)
/// unknown. Signs of oriented traces and linear constraints such as vertex
/// sums are carried by the coefficients.
class DofMap {
public:
  DofMap() = default;
  DofMap(std::size_t n_local, std::size_t n_free);

  std::size_t n_local() const { return m_n_local; }
  std::size_t n_free() const { return m_n_free; }
  std::size_t n_elements() const { return m_n_elements; }

  /// Appends the next element; slots.size() must equal n_local().
  void append_element(std::span<const std::vector<DofEntry>> slots);

  std::span<const DofEntry> entries(std::size_t element, std::size_t local) const;

  /// x_T = E_T x
  Eigen::VectorXd gather(std::size_t element, const Eigen::VectorXd& x) const;

private:
  std::size_t m_n_local = 0;
  std::size_t m_n_free = 0;
  std::size_t m_n_elements = 0;
  std::vector<std::size_t> m_offsets{0};
  std::vector<DofEntry> m_entries;
};

} // namespace dpg

#endif
