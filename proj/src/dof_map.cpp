#include <dpg/dof_map.hpp>

#include <stdexcept>

namespace dpg {

DofMap::DofMap(std::size_t n_local, std::size_t n_free)
  : m_n_local(n_local),
    m_n_free(n_free)
{
}

void DofMap::append_element(std::span<const std::vector<DofEntry>> slots)
{
  if (slots.size() != m_n_local) {
    throw std::invalid_argument("DofMap: wrong number of local slots");
  }
  for (const auto& slot : slots) {
    for (const DofEntry& e : slot) {
      if (e.global >= m_n_free) {
        throw std::out_of_range("DofMap: global index out of range");
      }
      m_entries.push_back(e);
    }
    m_offsets.push_back(m_entries.size());
  }
  ++m_n_elements;
}

std::span<const DofEntry> DofMap::entries(std::size_t element, std::size_t local) const
{
  const std::size_t slot = element * m_n_local + local;
  return {m_entries.data() + m_offsets[slot], m_offsets[slot + 1] - m_offsets[slot]};
}

Eigen::VectorXd DofMap::gather(std::size_t element, const Eigen::VectorXd& x) const
{
  if (static_cast<std::size_t>(x.size()) != m_n_free) {
    throw std::invalid_argument("DofMap::gather: vector size does not match the free DOF count");
  }
  Eigen::VectorXd local = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m_n_local));
  for (std::size_t i = 0; i < m_n_local; ++i) {
    for (const DofEntry& e : entries(element, i)) {
      local(static_cast<Eigen::Index>(i)) += e.coef * x(static_cast<Eigen::Index>(e.global));
    }
  }
  return local;
}

} // namespace dpg
