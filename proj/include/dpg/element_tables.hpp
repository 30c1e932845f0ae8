#ifndef DPG_ELEMENT_TABLES_HPP
#define DPG_ELEMENT_TABLES_HPP

#include <array>

#include <dpg/basis.hpp>
#include <dpg/quadrature.hpp>

namespace dpg {

/// Reference basis tabulated at the volume and edge quadrature points and at
/// the three reference vertices. Shared between all affine elements.
struct ElementTables {
  TriangleQuadRule volume_rule;
  EdgeQuadRule edge_rule;
  BasisTables volume;
  std::array<BasisTables, 3> edge;    ///< at edge_rule points of local edge k
  std::array<BasisTables, 3> vertex;  ///< single row at reference vertex k
};

/// Cached, thread-safe; entries live for the program lifetime.
const ElementTables& element_tables(int basis_degree, int quad_degree);

} // namespace dpg

#endif
