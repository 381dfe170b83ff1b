#pragma once

#include <array>
#include <functional>
#include <map>

#include "kanfib/sset.hpp"

namespace kanfib {

// ---- hom-set enumeration ---------------------------------------------------
// Backtracking over the nondegenerate cells of the domain in (level, id) order;
// a candidate image must match the already-determined images of all faces.
// Images of degenerate cells follow from the Eilenberg-Zilber normal form.

struct MapSearchOptions {
  // fixed images of specific domain cells (degenerate domain cells allowed:
  // the constraint is checked once the base image is known)
  std::map<std::pair<int, Cell>, Cell> pinned;
  // veto candidate images of nondegenerate cells
  std::function<bool(int, Cell, Cell)> allow;
  long long limit = -1; // stop after this many maps; -1 = enumerate all
};

std::vector<SimplicialMap> enumerate_maps(SSetPtr a, SSetPtr x,
                                          const MapSearchOptions& opt = {});
long long count_maps(SSetPtr a, SSetPtr x, const MapSearchOptions& opt = {});
bool exists_map(SSetPtr a, SSetPtr x, const MapSearchOptions& opt = {});

// ---- horn and boundary restriction sets -------------------------------------
// A (m,j)-horn of X is a compatible tuple of (m-1)-cells (x_0,..,x^j..,x_m):
// d_a(x_b) = d_{b-1}(x_a) for a < b, both != j. `restrict_of` sends an m-cell
// to its horn; `fillers` lists the m-cells over each horn.

struct HornTuple {
  int m = 0, j = 0;
  std::vector<Cell> face; // size m, ordered by increasing face index, skipping j
  Cell at(int i) const { return face[i < j ? i : i - 1]; } // face index -> cell
};

struct HornSet {
  int m = 0, j = 0;
  std::vector<HornTuple> tuples;
  std::map<std::vector<Cell>, int> index;
  std::vector<int> restrict_of;           // per m-cell of X
  std::vector<std::vector<Cell>> fillers; // per tuple, ascending
};

HornSet horn_restriction(const SimplicialSet& x, int m, int j);

struct BoundarySet {
  int m = 0;
  std::vector<std::vector<Cell>> tuples; // size m+1 each
  std::map<std::vector<Cell>, int> index;
  std::vector<int> restrict_of;
  std::vector<std::vector<Cell>> fillers;
};

BoundarySet boundary_restriction(const SimplicialSet& x, int m);

// All m-cells with the given faces at the slots != j (horn filling).
std::vector<Cell> horn_filler_candidates(const SimplicialSet& x, const HornTuple& t);

// ---- cylinders / internal hom -----------------------------------------------
// Level n of X^{[k]} is Hom(Delta[n] x Delta[k], X), materialized to `depth`.
// A prism is stored as its image vector over the nondegenerate cells of the
// product (in (level, id) order), which is a canonical key.

struct Cylinder {
  SSetPtr base;       // X
  SSetPtr base_trunc; // X truncated to `depth`; target/source of the bold maps
  int k = 1;
  int depth = 0;
  SSetPtr ss;
  // per level n: Delta[n] x Delta[k], both factors built at depth X.depth
  std::vector<ProductComplex> prod;
  std::vector<StandardComplex> level_simplex;
  StandardComplex k_simplex;
  std::vector<std::vector<std::pair<int, Cell>>> prod_nd; // nondeg cells, (level, id) order
  std::vector<std::vector<std::vector<int>>> nd_pos;      // prod cell -> key position (-1 if degen)
  std::vector<std::vector<std::vector<Cell>>> keys;       // keys[n][cell] = image vector
  std::vector<std::map<std::vector<Cell>, Cell>> key_index;

  SimplicialMap cell_as_map(int n, Cell c) const; // the prism as a map prod[n].ss -> base
  // image in X of a single product cell under prism c
  Cell prism_value(int n, Cell c, int plevel, Cell pcell) const;
  Cell cell_with_key(int n, const std::vector<Cell>& key) const; // lookup; error if absent
};

Cylinder cylinder(SSetPtr x, int k, int depth);

// Bold structure maps of X^{[k]} (they act on the Delta[k] factor):
// end(v) evaluates at the vertex v of Delta[k]; section() is the constant prism.
SimplicialMap cylinder_end(const Cylinder& cyl, int v);      // X^{[k]} -> X truncated
SimplicialMap cylinder_section(const Cylinder& cyl);         // X truncated -> X^{[k]}

// Natural transformations f => g between maps X -> Y, as maps into Y^{[1]}
// materialized to `depth` (<= min(X.depth, Y.depth - 1)); bottom end = f, top = g.
std::vector<SimplicialMap> find_natural_transformations(const SimplicialMap& f,
                                                        const SimplicialMap& g,
                                                        int depth);

} // namespace kanfib
