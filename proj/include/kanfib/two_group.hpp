#pragma once

#include "kanfib/groupoid.hpp"

namespace kanfib {

// Crossed module (H -> G, bnd, act): bnd a homomorphism, act a left G-action
// on H by automorphisms, with equivariance bnd(act(g,h)) = g bnd(h) g^-1 and
// the Peiffer rule act(bnd(h), h') = h h' h^-1.
struct CrossedModule {
  std::string name;
  FiniteGroup h, g;
  std::vector<int> bnd;              // H -> G
  std::vector<std::vector<int>> act; // act[g][h]
};

CrossedModule build_crossed_module(CrossedModule raw);

// Group-like groupoid: a groupoid with a strictly associative unital tensor
// (star) on objects and arrows, a strict inverse iota, and cancellation
// witnesses psi_l/psi_r: iota(x) * x -> e (natural in x).
struct GroupLikeGroupoid {
  FiniteGroupoid g;
  std::vector<std::vector<int>> star_obj;
  std::vector<std::vector<int>> star_arr;
  int e = 0; // unit object
  std::vector<int> iota_obj, iota_arr;
  std::vector<int> psi_l, psi_r; // per object

  int arrows_from(int x) const; // count, used for size estimates
};

GroupLikeGroupoid build_group_like(GroupLikeGroupoid raw);
GroupLikeGroupoid crossed_module_to_group_like(const CrossedModule& xm);

// Classifying space of a group-like groupoid: one 0-cell, 1-cells the objects,
// 2-cells (a12, a02, a01, u: a01*a12 -> a02), 3- and 4-cells the face tuples
// satisfying the pasting equation; a 2-group when validation passes.
struct Classifying2Group {
  GroupLikeGroupoid gl;
  SSetPtr ss;
  struct Cell2 {
    int a12, a02, a01, u;
  };
  std::vector<Cell2> cell2;                    // by 2-cell id
  std::map<std::array<int, 4>, Cell> index2;
  std::vector<std::array<Cell, 4>> cell3;      // faces (d0,d1,d2,d3), by 3-cell id
  std::map<std::array<Cell, 4>, Cell> index3;
  std::vector<std::array<Cell, 5>> cell4;
  std::map<std::array<Cell, 5>, Cell> index4;

  Cell two_cell(int a12, int a02, int a01, int u) const;
};

Classifying2Group classifying_2group(const GroupLikeGroupoid& gl, int depth = 4,
                                     const std::string& name = "");

// An alpha-cylinder at level n: a prism Delta[n] x Delta[1] -> X whose vertical
// edges are all alpha. Returned as prism maps.
std::vector<SimplicialMap> enumerate_cylinders(const SimplicialSet& x, Cell alpha, int n);

// e-cylinder at level 1, i.e. a square with both verticals the degenerate edge
// at the basepoint: a transformation from its bottom end to its top end.
struct Transformation {
  Cell lower = no_cell; // image of the (011,001) triangle
  Cell upper = no_cell; // image of the (001,011) triangle
  Cell src = no_cell;   // bottom end (Delta[1] x {0})
  Cell dst = no_cell;   // top end (Delta[1] x {1})
};

std::vector<Transformation> enumerate_transformations(const SimplicialSet& x);

// 1-cells e' admitting a transformation from the degenerate unit, with witnesses.
struct UnitElements {
  std::vector<Cell> units;
  std::vector<std::vector<Transformation>> witnesses; // parallel to units
};
UnitElements unit_elements(const SimplicialSet& x);

// Re-point the degeneracies of a 2-group along a transformation omega with
// source the degenerate unit: same cells, new degeneracy tables.
SimplicialSet reunitize(const SimplicialSet& x, const Transformation& omega);

} // namespace kanfib
