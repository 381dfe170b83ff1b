#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kanfib/error.hpp"

namespace kanfib {

using Cell = int32_t;
inline constexpr Cell no_cell = -1;

// A simplicial set truncated at level `depth`: finite cell tables per level,
// face maps for levels 1..depth and degeneracy maps for levels 0..depth-1.
// All five simplicial identities are enforced by build_simplicial_set.
struct SimplicialSet {
  std::string name;
  int depth = 0;
  std::vector<int> sizes;                             // sizes[n] = |X_n|
  std::vector<std::vector<std::vector<Cell>>> faces;  // faces[n][i][x], 1<=n<=depth, 0<=i<=n
  std::vector<std::vector<std::vector<Cell>>> degens; // degens[n][i][x], 0<=n<depth, 0<=i<=n
  std::vector<std::vector<std::string>> labels;       // optional; empty vector per level allowed

  int size(int n) const { return sizes[n]; }
  Cell face(int n, int i, Cell x) const { return faces[n][i][x]; }
  Cell degen(int n, int i, Cell x) const { return degens[n][i][x]; }
  std::string label(int n, Cell x) const;
  std::string describe(int n, Cell x) const; // "2#5" or "2#5(011)" when labeled

  bool is_degenerate(int n, Cell x) const;
  // smallest i with x = s_i(d_{i+1} x), together with that base cell
  std::optional<std::pair<int, Cell>> degeneracy_of(int n, Cell x) const;
  std::vector<Cell> nondegenerate(int n) const;

  // Eilenberg-Zilber normal form: x = s_{word[0]}(s_{word[1]}(...(base)))
  // with base nondegenerate at base_level = n - word.size().
  struct EzForm {
    int base_level = 0;
    Cell base = no_cell;
    std::vector<int> word;
  };
  EzForm ez(int n, Cell x) const;
  Cell apply_word(int base_level, Cell base, const std::vector<int>& word) const;

  // cells at level n >= 1 keyed by their face tuple (d_0 x, ..., d_n x);
  // built lazily and kept, since the hom searches consult it repeatedly
  using FaceKeyMap = std::map<std::vector<Cell>, std::vector<Cell>>;
  const FaceKeyMap& cells_by_faces(int n) const;

  struct FaceKeyCache {
    std::vector<std::shared_ptr<const FaceKeyMap>> per_level;
    FaceKeyCache() = default;
    FaceKeyCache(const FaceKeyCache&) {} // a copied complex starts cold
    FaceKeyCache& operator=(const FaceKeyCache&) { return *this; }
    FaceKeyCache(FaceKeyCache&&) = default;
    FaceKeyCache& operator=(FaceKeyCache&&) = default;
  };
  mutable FaceKeyCache face_cache;
};

// Validates table shapes and the simplicial identities; throws Error otherwise.
SimplicialSet build_simplicial_set(SimplicialSet raw);

using SSetPtr = std::shared_ptr<const SimplicialSet>;
SSetPtr share(SimplicialSet s);

// Copy of the levels 0..d of X.
SimplicialSet truncate(const SimplicialSet& x, int d, const std::string& name = "");

// A simplicial map defined on all levels of `from` (requires from->depth <= to->depth).
struct SimplicialMap {
  SSetPtr from, to;
  std::vector<std::vector<Cell>> level; // level[n][x]
  Cell at(int n, Cell x) const { return level[n][x]; }
};

SimplicialMap build_map(SSetPtr from, SSetPtr to, std::vector<std::vector<Cell>> level);
SimplicialMap identity_map(SSetPtr x);
SimplicialMap compose(const SimplicialMap& f, const SimplicialMap& g); // f then g
bool same_map(const SimplicialMap& a, const SimplicialMap& b);

// ---- standard complexes ------------------------------------------------
// Cells of Delta[m], its boundary and its horns are weakly monotone vertex
// sequences; the struct keeps the sequence <-> cell id dictionary.
using VertexSeq = std::vector<int8_t>;

enum class StdKind { simplex, boundary, horn };

struct StandardComplex {
  StdKind kind = StdKind::simplex;
  int m = 0, j = -1;
  SSetPtr ss;
  std::vector<std::vector<VertexSeq>> seq;      // seq[n][cell]
  std::vector<std::map<VertexSeq, Cell>> index; // per level
  Cell cell_of(int n, const VertexSeq& s) const;
};

StandardComplex standard_simplex(int m, int depth);
StandardComplex boundary_complex(int m, int depth);
StandardComplex horn_complex(int m, int j, int depth);
StandardComplex make_standard(StdKind kind, int m, int j, int depth);

// Simplicial map A -> B induced by a monotone vertex map zeta: [A.m] -> [B.m];
// every sequence of A must land in B (e.g. horn inclusions, boundary inclusions).
SimplicialMap standard_map(const StandardComplex& a, const StandardComplex& b, const VertexSeq& zeta);

// Image of the n-cell c under the operator X(mu) for monotone mu: [r] -> [n],
// computed by the face-then-degeneracy factorization of mu. r = mu.size()-1.
Cell apply_operator(const SimplicialSet& x, int n, Cell c, const VertexSeq& mu);

// ---- products, fiber products, skeleta ---------------------------------

struct ProductComplex {
  SSetPtr ss;
  SSetPtr a, b;
  // cell id at level n is pair_id = pa * |B_n| + pb
  Cell pair(int n, Cell pa, Cell pb) const;
  std::pair<Cell, Cell> parts(int n, Cell x) const;
  SimplicialMap pr1() const;
  SimplicialMap pr2() const;
};

ProductComplex product(SSetPtr a, SSetPtr b);
// Map A x C -> B x C induced by u: A -> B (on products built from these factors).
SimplicialMap product_map(const ProductComplex& from, const ProductComplex& to, const SimplicialMap& u);

struct FiberProductComplex {
  SSetPtr ss;
  SimplicialMap pr1, pr2;
  std::vector<std::vector<std::pair<Cell, Cell>>> parts; // per level
  std::vector<std::map<std::pair<Cell, Cell>, Cell>> index;
};

FiberProductComplex fiber_product(const SimplicialMap& f, const SimplicialMap& g);

struct Subcomplex {
  SSetPtr ss;
  SimplicialMap incl;
};

Subcomplex skeleton(SSetPtr x, int k);

// Level-wise bijection commuting with faces and degeneracies, if one exists.
// `allow(level, cell, image)` can restrict candidate images of nondegenerate cells.
std::optional<SimplicialMap> find_isomorphism(
    SSetPtr a, SSetPtr b,
    const std::function<bool(int, Cell, Cell)>& allow = nullptr);

} // namespace kanfib
