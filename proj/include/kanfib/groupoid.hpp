#pragma once

#include "kanfib/kan.hpp"

namespace kanfib {

// A finite groupoid with arrows composed left to right: comp(a,b) is "a then b"
// and requires tgt(a) = src(b).
struct FiniteGroupoid {
  std::string name;
  int n_objects = 0;
  std::vector<int> src, tgt;           // per arrow
  std::vector<int> unit;               // per object
  std::vector<int> inv;                // per arrow
  std::vector<std::vector<int>> comp;  // comp[a][b], -1 when not composable
  std::vector<std::string> object_label, arrow_label; // optional

  int n_arrows() const { return (int)src.size(); }
  int compose(int a, int b) const;
  bool composable(int a, int b) const { return tgt[a] == src[b]; }
};

// Validates units, inverses, associativity and typing.
FiniteGroupoid build_groupoid(FiniteGroupoid raw);

struct GroupoidFunctor {
  std::vector<int> obj, arr;
};

// Validates that (obj, arr) is a functor from a to b.
GroupoidFunctor build_functor(const FiniteGroupoid& a, const FiniteGroupoid& b, GroupoidFunctor f);
GroupoidFunctor compose_functor(const GroupoidFunctor& f, const GroupoidFunctor& g); // f then g
GroupoidFunctor identity_functor(const FiniteGroupoid& g);

// Nerve: level n = length-n composable strings of arrows; d_1 on edges is the
// source, d_0 the target, s_0 the unit.
struct Nerve {
  FiniteGroupoid g;
  SSetPtr ss;
  std::vector<std::vector<std::vector<int>>> strings; // strings[n][cell] = arrow ids
  std::vector<std::map<std::vector<int>, Cell>> index;
  Cell cell_of(int n, const std::vector<int>& s) const;
  int string_vertex(int n, Cell c, int v) const; // object at vertex v of the string
};

Nerve nerve(const FiniteGroupoid& g, int depth, const std::string& name = "");

// Inverse of the nerve on 1-groupoid complexes: objects = 0-cells, arrows =
// 1-cells, composition by unique (2,1)-horn filling, inverses by (2,2)/(2,0)
// filling (checked against each other).
FiniteGroupoid to_groupoid(const SimplicialSet& x);

// The canonical comparison X -> nerve(to_groupoid(X)) sending a cell to its
// spine of consecutive edges; an isomorphism exactly when X is a 1-groupoid.
SimplicialMap spine_map(SSetPtr x, const Nerve& n);

SimplicialMap functor_to_map(const GroupoidFunctor& f, const Nerve& from, const Nerve& to);
GroupoidFunctor map_to_functor(const SimplicialMap& m, const Nerve& from, const Nerve& to);

bool groupoid_isomorphic(const FiniteGroupoid& a, const FiniteGroupoid& b);
std::optional<GroupoidFunctor> find_groupoid_isomorphism(const FiniteGroupoid& a,
                                                         const FiniteGroupoid& b);

// One-object groupoid of a finite group given by its multiplication table.
struct FiniteGroup {
  std::string name;
  int n = 0;
  std::vector<std::vector<int>> mul;
  int unit = 0;
  std::vector<int> inv;
  std::vector<std::string> label;
  int op(int a, int b) const { return mul[a][b]; }
};

FiniteGroup build_group(FiniteGroup raw);
FiniteGroup cyclic_group(int k);
FiniteGroup klein_group();
FiniteGroup symmetric_group_3();
FiniteGroup dihedral_group_8();   // order 8
FiniteGroup quaternion_group();
FiniteGroup group_product(const FiniteGroup& a, const FiniteGroup& b);

FiniteGroupoid one_object_groupoid(const FiniteGroup& g, const std::string& name = "");
// Inverse: a groupoid with one object as a group (arrows = elements).
FiniteGroup group_of_one_object(const FiniteGroupoid& g);

} // namespace kanfib
