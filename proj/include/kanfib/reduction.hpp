#pragma once

#include "kanfib/groupoid.hpp"

namespace kanfib {

// 2-isotropy of a 0-cell z: the 2-cells all of whose faces are the degenerate
// edge at z. The set is "free" when it contains only the doubly degenerate cell.
std::vector<std::vector<Cell>> two_isotropy_sets(const SimplicialSet& z);
CheckReport check_2_isotropy_free(const SimplicialSet& z);

// Consequences of 2-isotropy-freeness for a 2-groupoid:
// (1) a 2-cell with the boundary of a degenerate edge-square is that
//     degeneracy; (2) 2-cells are determined by their boundaries.
CheckReport check_isotropy_consequences(const SimplicialSet& z);

// Reduce a 2-isotropy-free 2-groupoid to a 1-groupoid: edges are identified
// when a 2-cell with degenerate third face connects them; composition is read
// off the 2-cells and must be single-valued.
struct ReduceResult {
  FiniteGroupoid groupoid;
  SimplicialMap proj;                 // Z -> nerve(groupoid)
  std::vector<int> edge_class;        // Z_1 -> arrow of the quotient
};
ReduceResult reduce_to_1(const SimplicialSet& z);

} // namespace kanfib
