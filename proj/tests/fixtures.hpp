#pragma once

// Shared fixture groupoids, crossed modules and actions used across the tests.

#include "kanfib/action.hpp"

namespace fixtures {

using namespace kanfib;

inline FiniteGroupoid cyclic_groupoid(int k) {
  return one_object_groupoid(cyclic_group(k));
}

inline FiniteGroupoid discrete_groupoid(int k) {
  FiniteGroupoid g;
  g.name = "disc" + std::to_string(k);
  g.n_objects = k;
  g.src.resize(k);
  g.tgt.resize(k);
  g.unit.resize(k);
  g.inv.resize(k);
  g.comp.assign(k, std::vector<int>(k, -1));
  for (int i = 0; i < k; ++i) {
    g.src[i] = g.tgt[i] = i;
    g.unit[i] = i;
    g.inv[i] = i;
    g.comp[i][i] = i;
  }
  return build_groupoid(std::move(g));
}

inline FiniteGroupoid pair_groupoid(int k) {
  FiniteGroupoid g;
  g.name = "pair" + std::to_string(k);
  g.n_objects = k;
  int na = k * k; // arrow x*k+y : x -> y
  g.src.resize(na);
  g.tgt.resize(na);
  g.inv.resize(na);
  g.unit.resize(k);
  g.comp.assign(na, std::vector<int>(na, -1));
  for (int x = 0; x < k; ++x)
    for (int y = 0; y < k; ++y) {
      int a = x * k + y;
      g.src[a] = x;
      g.tgt[a] = y;
      g.inv[a] = y * k + x;
      if (x == y) g.unit[x] = a;
      for (int z = 0; z < k; ++z) g.comp[a][y * k + z] = x * k + z;
    }
  return build_groupoid(std::move(g));
}

// disjoint union of two copies of the one-object groupoid of C2
inline FiniteGroupoid two_circles() {
  FiniteGroupoid g;
  g.name = "c2+c2";
  g.n_objects = 2;
  g.src = {0, 0, 1, 1};
  g.tgt = {0, 0, 1, 1};
  g.unit = {0, 2};
  g.inv = {0, 1, 2, 3};
  g.comp.assign(4, std::vector<int>(4, -1));
  for (int a : {0, 1})
    for (int b : {0, 1}) g.comp[a][b] = (a + b) % 2;
  for (int a : {2, 3})
    for (int b : {2, 3}) g.comp[a][b] = 2 + (a + b) % 2;
  return build_groupoid(std::move(g));
}

// connected two-object groupoid with C2 vertex groups ("thick C2"):
// arrow (x, y, s) for s in C2, encoded 4x + 2y + s... kept as x*4 + y*2 + s
inline FiniteGroupoid thick_c2() {
  FiniteGroupoid g;
  g.name = "thickc2";
  g.n_objects = 2;
  int na = 8;
  g.src.resize(na);
  g.tgt.resize(na);
  g.inv.resize(na);
  g.unit.resize(2);
  g.comp.assign(na, std::vector<int>(na, -1));
  auto enc = [](int x, int y, int s) { return 4 * x + 2 * y + s; };
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int s = 0; s < 2; ++s) {
        int a = enc(x, y, s);
        g.src[a] = x;
        g.tgt[a] = y;
        g.inv[a] = enc(y, x, s);
        if (x == y && s == 0) g.unit[x] = a;
        for (int z = 0; z < 2; ++z)
          for (int t = 0; t < 2; ++t) g.comp[a][enc(y, z, t)] = enc(x, z, (s + t) % 2);
      }
  return build_groupoid(std::move(g));
}

// crossed modules ---------------------------------------------------------

inline CrossedModule xm0() { // C2 -> 1
  CrossedModule m;
  m.name = "xm0";
  m.h = cyclic_group(2);
  m.g = cyclic_group(1);
  m.bnd = {0, 0};
  m.act = {{0, 1}};
  return build_crossed_module(std::move(m));
}

inline CrossedModule xm1() { // 1 -> C2
  CrossedModule m;
  m.name = "xm1";
  m.h = cyclic_group(1);
  m.g = cyclic_group(2);
  m.bnd = {0};
  m.act = {{0}, {0}};
  return build_crossed_module(std::move(m));
}

inline CrossedModule xm2() { // C2 -> C4 doubling, trivial action
  CrossedModule m;
  m.name = "xm2";
  m.h = cyclic_group(2);
  m.g = cyclic_group(4);
  m.bnd = {0, 2};
  m.act.assign(4, {0, 1});
  return build_crossed_module(std::move(m));
}

// strict actions -----------------------------------------------------------

// C2 swapping the two objects of the discrete groupoid
inline StrictAction swap_action() {
  StrictAction a;
  a.name = "swap";
  a.x = discrete_groupoid(2);
  a.g = cyclic_group(2);
  a.phi.resize(2);
  a.phi[0] = identity_functor(a.x);
  a.phi[1].obj = {1, 0};
  a.phi[1].arr = {1, 0};
  return build_strict_action(std::move(a));
}

// C2 acting trivially on the pair groupoid with two objects
inline StrictAction trivial_action_pair2() {
  StrictAction a;
  a.name = "triv";
  a.x = pair_groupoid(2);
  a.g = cyclic_group(2);
  a.phi.assign(2, identity_functor(a.x));
  return build_strict_action(std::move(a));
}

// the 2-group of xm0 = (C2 -> 1) acting on the one-object groupoid of C2:
// phi trivial, theta[1] the central nontrivial loop
inline Strict2GroupAction xm0_on_c2() {
  Strict2GroupAction a;
  a.name = "xm0c2";
  a.x = cyclic_groupoid(2);
  a.xm = xm0();
  a.phi = {identity_functor(a.x)};
  a.theta = {{0}, {1}};
  return build_strict_2group_action(std::move(a));
}

// the 2-group of xm2 acting on nerve-like data: phi[g] trivial for even g is
// impossible here (bnd has image {0,2}), so act through C4 on four objects
// by rotation; theta[h] = units at phi[bnd h]... built when needed in tests.

} // namespace fixtures
