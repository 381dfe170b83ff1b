#include "kanfib/action.hpp"

#include "kanfib/homsearch.hpp"
#include "kanfib/kan.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

namespace kanfib {

namespace {

constexpr long long level_cell_budget = 2'000'000;

std::string ith(int i) { return std::to_string(i); }

// phi must be a unit-preserving right action by functors: phi[e] = id and
// phi[g] then phi[h] equal to phi[g h].
void validate_action_functors(const FiniteGroupoid& x, const FiniteGroup& g,
                              std::vector<GroupoidFunctor>& phi) {
  if ((int)phi.size() != g.n)
    fail(Errc::not_a_strict_action,
         "need one functor per element of " + g.name + ", got " + ith((int)phi.size()));
  for (int a = 0; a < g.n; ++a) {
    try {
      phi[a] = build_functor(x, x, phi[a]);
    } catch (const Error& e) {
      fail(Errc::not_a_strict_action, "phi[" + ith(a) + "] is not a functor: " + e.what());
    }
  }
  const GroupoidFunctor& at_unit = phi[g.unit];
  for (int o = 0; o < x.n_objects; ++o)
    if (at_unit.obj[o] != o)
      fail(Errc::not_a_strict_action, "phi at the unit moves object " + ith(o));
  for (int a = 0; a < x.n_arrows(); ++a)
    if (at_unit.arr[a] != a)
      fail(Errc::not_a_strict_action, "phi at the unit moves arrow " + ith(a));
  for (int a = 0; a < g.n; ++a)
    for (int b = 0; b < g.n; ++b) {
      GroupoidFunctor ab = compose_functor(phi[a], phi[b]);
      const GroupoidFunctor& want = phi[g.op(a, b)];
      if (ab.obj != want.obj || ab.arr != want.arr)
        fail(Errc::not_a_strict_action,
             "phi[" + ith(a) + "] then phi[" + ith(b) + "] differs from phi[" +
                 ith(g.op(a, b)) + "]");
    }
}

std::vector<Cell> basepoint_chain(const SimplicialSet& b, Cell v) {
  std::vector<Cell> bp(b.depth + 1);
  bp[0] = v;
  for (int n = 0; n < b.depth; ++n) bp[n + 1] = b.degen(n, 0, bp[n]);
  return bp;
}

// Action groupoid X x| G: arrows (alpha, g): src(alpha) -> phi[g](tgt(alpha)).
FiniteGroupoid action_groupoid_of(const StrictAction& a) {
  const FiniteGroupoid& x = a.x;
  const FiniteGroup& g = a.g;
  int nx = x.n_arrows(), ng = g.n;
  auto id = [&](int alpha, int e) { return alpha * ng + e; };
  FiniteGroupoid k;
  k.name = a.name.empty() ? x.name + "x" + g.name : a.name;
  k.n_objects = x.n_objects;
  int na = nx * ng;
  k.src.resize(na);
  k.tgt.resize(na);
  k.inv.resize(na);
  k.unit.resize(x.n_objects);
  k.comp.assign(na, std::vector<int>(na, -1));
  for (int alpha = 0; alpha < nx; ++alpha)
    for (int e = 0; e < ng; ++e) {
      int arr = id(alpha, e);
      k.src[arr] = x.src[alpha];
      k.tgt[arr] = a.phi[e].obj[x.tgt[alpha]];
      k.inv[arr] = id(x.inv[a.phi[e].arr[alpha]], g.inv[e]);
    }
  for (int o = 0; o < x.n_objects; ++o) k.unit[o] = id(x.unit[o], g.unit);
  for (int alpha = 0; alpha < nx; ++alpha)
    for (int e = 0; e < ng; ++e)
      for (int beta = 0; beta < nx; ++beta)
        for (int f = 0; f < ng; ++f)
          if (x.src[beta] == k.tgt[id(alpha, e)])
            k.comp[id(alpha, e)][id(beta, f)] =
                id(x.compose(alpha, a.phi[g.inv[e]].arr[beta]), g.op(e, f));
  return build_groupoid(std::move(k));
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

} // namespace

StrictAction build_strict_action(StrictAction raw) {
  raw.x = build_groupoid(std::move(raw.x));
  raw.g = build_group(std::move(raw.g));
  validate_action_functors(raw.x, raw.g, raw.phi);
  return raw;
}

Strict2GroupAction build_strict_2group_action(Strict2GroupAction raw) {
  raw.x = build_groupoid(std::move(raw.x));
  raw.xm = build_crossed_module(std::move(raw.xm));
  const FiniteGroupoid& x = raw.x;
  const FiniteGroup& g = raw.xm.g;
  const FiniteGroup& h = raw.xm.h;
  validate_action_functors(x, g, raw.phi);

  if ((int)raw.theta.size() != h.n)
    fail(Errc::not_a_strict_action,
         "need one transformation per element of " + h.name + ", got " + ith((int)raw.theta.size()));
  for (int a = 0; a < h.n; ++a) {
    const auto& th = raw.theta[a];
    const GroupoidFunctor& dst = raw.phi[raw.xm.bnd[a]];
    if ((int)th.size() != x.n_objects)
      fail(Errc::not_a_strict_action, "theta[" + ith(a) + "] needs one arrow per object");
    for (int o = 0; o < x.n_objects; ++o) {
      if (th[o] < 0 || th[o] >= x.n_arrows())
        fail(Errc::not_a_strict_action, "theta[" + ith(a) + "][" + ith(o) + "] is not an arrow");
      if (x.src[th[o]] != o || x.tgt[th[o]] != dst.obj[o])
        fail(Errc::not_a_strict_action,
             "theta[" + ith(a) + "][" + ith(o) + "] is not an arrow from the object to its image");
    }
  }
  for (int o = 0; o < x.n_objects; ++o)
    if (raw.theta[h.unit][o] != x.unit[o])
      fail(Errc::not_a_strict_action, "theta at the unit must be the identity transformation");
  for (int a = 0; a < h.n; ++a) {
    const GroupoidFunctor& dst = raw.phi[raw.xm.bnd[a]];
    for (int arr = 0; arr < x.n_arrows(); ++arr) {
      int s = x.src[arr], t = x.tgt[arr];
      if (x.compose(arr, raw.theta[a][t]) != x.compose(raw.theta[a][s], dst.arr[arr]))
        fail(Errc::not_a_strict_action,
             "theta[" + ith(a) + "] is not natural at arrow " + ith(arr));
    }
  }
  for (int a = 0; a < h.n; ++a)
    for (int b = 0; b < h.n; ++b) {
      const GroupoidFunctor& dst = raw.phi[raw.xm.bnd[a]];
      for (int o = 0; o < x.n_objects; ++o)
        if (raw.theta[h.op(a, b)][o] != x.compose(raw.theta[a][o], raw.theta[b][dst.obj[o]]))
          fail(Errc::not_a_strict_action,
               "theta cocycle fails at (" + ith(a) + "," + ith(b) + ") on object " + ith(o));
    }

  // Pasting coherence over every tetrahedron of the classifying space: the two
  // composite transformations from the (0123)-spine to the (03)-edge agree.
  auto aobj = [&](int e, int o) { return raw.phi[e].obj[o]; };
  for (int a01 = 0; a01 < g.n; ++a01)
    for (int a12 = 0; a12 < g.n; ++a12) {
      int r = g.op(a01, a12);
      for (int a23 = 0; a23 < g.n; ++a23) {
        int p = g.op(r, a23);
        int a23i = g.inv[a23];
        for (int h012 = 0; h012 < h.n; ++h012) {
          int a02 = g.op(r, raw.xm.bnd[h012]);
          int s = g.op(a02, a23);
          int tw = raw.xm.act[a23i][h012];
          for (int h123 = 0; h123 < h.n; ++h123) {
            int q = g.op(p, raw.xm.bnd[h123]);
            for (int h013 = 0; h013 < h.n; ++h013) {
              int h023 = h.op(h.inv[tw], h.op(h123, h013));
              for (int z = 0; z < x.n_objects; ++z) {
                int lhs = x.compose(raw.theta[h123][aobj(p, z)],
                                    raw.theta[h013][aobj(q, z)]);
                int rhs = x.compose(raw.phi[a23].arr[raw.theta[h012][aobj(r, z)]],
                                    raw.theta[h023][aobj(s, z)]);
                if (lhs != rhs)
                  fail(Errc::coherence_failure,
                       "pasting over the tetrahedron (a01=" + ith(a01) + ",a12=" + ith(a12) +
                           ",a23=" + ith(a23) + ";h012=" + ith(h012) + ",h123=" + ith(h123) +
                           ",h013=" + ith(h013) + ") disagrees at object " + ith(z));
              }
            }
          }
        }
      }
    }
  return raw;
}

FibrationBundle strict_action_groupoid(const StrictAction& a0, int depth) {
  StrictAction a = build_strict_action(a0);
  FiniteGroupoid ag = action_groupoid_of(a);
  Nerve tot = nerve(ag, depth);
  FiniteGroupoid bg = one_object_groupoid(a.g);
  Nerve bas = nerve(bg, depth);
  int ng = a.g.n;

  GroupoidFunctor pf;
  pf.obj.assign(ag.n_objects, 0);
  pf.arr.resize(ag.n_arrows());
  for (int arr = 0; arr < ag.n_arrows(); ++arr) pf.arr[arr] = arr % ng;
  pf = build_functor(ag, bg, pf);
  SimplicialMap pi = functor_to_map(pf, tot, bas);

  Nerve fib = nerve(a.x, depth);
  GroupoidFunctor inc;
  inc.obj.resize(a.x.n_objects);
  std::iota(inc.obj.begin(), inc.obj.end(), 0);
  inc.arr.resize(a.x.n_arrows());
  for (int arr = 0; arr < a.x.n_arrows(); ++arr) inc.arr[arr] = arr * ng + a.g.unit;
  inc = build_functor(a.x, ag, inc);
  SimplicialMap incl = functor_to_map(inc, fib, tot);

  CheckReport cert = check_fibration(pi, 1);
  if (!cert.ok())
    fail(Errc::not_a_fibration, "action groupoid projection failed verification: " +
                                    (cert.witnesses.empty() ? cert.condition : cert.witnesses.front()));
  return {tot.ss, bas.ss, fib.ss, pi, incl, 1, cert};
}

FibrationBundle strict_2group_action_groupoid(const Strict2GroupAction& a0) {
  Strict2GroupAction a = build_strict_2group_action(a0);
  const FiniteGroupoid& x = a.x;
  const FiniteGroup& g = a.xm.g;
  const FiniteGroup& h = a.xm.h;
  int depth = 4;
  GroupLikeGroupoid gl = crossed_module_to_group_like(a.xm);
  Classifying2Group bg = classifying_2group(gl, depth);
  const SimplicialSet& b = *bg.ss;
  int nh = h.n;
  auto aobj = [&](int e, int o) { return a.phi[e].obj[o]; };
  auto budget = [&](long long n, int level) {
    if (n > level_cell_budget)
      fail(Errc::validation_error, "level " + ith(level) + " cell budget exceeded");
  };

  // Level 1: (e, o, arr) with arr an arrow out of phi[e](o); the cell projects
  // to the base edge e, starting at o and ending at tgt(arr).
  struct E1 {
    int e, o, arr;
  };
  std::vector<E1> e1;
  std::map<std::array<int, 3>, Cell> idx1;
  std::vector<std::vector<int>> from(x.n_objects);
  for (int arr = 0; arr < x.n_arrows(); ++arr) from[x.src[arr]].push_back(arr);
  for (int e = 0; e < g.n; ++e)
    for (int o = 0; o < x.n_objects; ++o)
      for (int arr : from[aobj(e, o)]) {
        idx1[{e, o, arr}] = (Cell)e1.size();
        e1.push_back({e, o, arr});
        budget((long long)e1.size(), 1);
      }
  auto unit_edge = [&](int o) { return idx1.at({g.unit, o, x.unit[o]}); };
  auto edge_end = [&](Cell c) { return x.tgt[e1[c].arr]; };
  std::vector<std::vector<std::vector<Cell>>> efrom(
      g.n, std::vector<std::vector<Cell>>(x.n_objects));
  for (Cell c = 0; c < (Cell)e1.size(); ++c) efrom[e1[c].e][e1[c].o].push_back(c);

  // Level 2: (base 2-cell, spine edges e01, e12); the third edge is determined
  // by theta(u) twisting the transported composite.
  struct T2 {
    Cell c, e01, e12, e02;
  };
  std::vector<T2> k2;
  std::map<std::array<Cell, 3>, Cell> idx2;
  auto third_edge = [&](Cell c, Cell i01, Cell i12) -> std::array<int, 3> {
    const auto& t = bg.cell2[c];
    const E1& a01 = e1[i01];
    const E1& a12 = e1[i12];
    int hu = t.u % nh;
    int tw = a.theta[hu][aobj(g.op(t.a01, t.a12), a01.o)];
    int b02 = x.compose(x.inv[tw], x.compose(a.phi[t.a12].arr[a01.arr], a12.arr));
    return {t.a02, a01.o, b02};
  };
  for (Cell c = 0; c < (Cell)b.sizes[2]; ++c) {
    const auto& t = bg.cell2[c];
    for (int o = 0; o < x.n_objects; ++o)
      for (Cell i01 : efrom[t.a01][o])
        for (Cell i12 : efrom[t.a12][edge_end(i01)]) {
          auto key = third_edge(c, i01, i12);
          idx2[{c, i01, i12}] = (Cell)k2.size();
          k2.push_back({c, i01, i12, idx1.at({key[0], key[1], key[2]})});
          budget((long long)k2.size(), 2);
        }
  }

  // Level 3: (base 3-cell, spine); faces assembled from the four triangles,
  // with the two routes to the (03)-edge required to agree.
  struct T3 {
    Cell c, e01, e12, e23;
    std::array<Cell, 4> f;
  };
  std::vector<T3> k3;
  std::map<std::array<Cell, 4>, Cell> idx3;
  for (Cell c = 0; c < (Cell)b.sizes[3]; ++c) {
    Cell c123 = bg.cell3[c][0], c023 = bg.cell3[c][1], c013 = bg.cell3[c][2],
         c012 = bg.cell3[c][3];
    int a01 = bg.cell2[c012].a01, a12 = bg.cell2[c012].a12, a23 = bg.cell2[c123].a12;
    for (int o = 0; o < x.n_objects; ++o)
      for (Cell i01 : efrom[a01][o])
        for (Cell i12 : efrom[a12][edge_end(i01)])
          for (Cell i23 : efrom[a23][edge_end(i12)]) {
            Cell d3 = idx2.at({c012, i01, i12});
            Cell d0 = idx2.at({c123, i12, i23});
            Cell i13 = k2[d0].e02;
            Cell d2 = idx2.at({c013, i01, i13});
            Cell i02 = k2[d3].e02;
            Cell d1 = idx2.at({c023, i02, i23});
            if (k2[d1].e02 != k2[d2].e02)
              fail(Errc::internal_error, "tetrahedron routes to the long edge disagree");
            idx3[{c, i01, i12, i23}] = (Cell)k3.size();
            k3.push_back({c, i01, i12, i23, {d0, d1, d2, d3}});
            budget((long long)k3.size(), 3);
          }
  }

  // Level 4: (base 4-cell, spine); diagonal edges come from the recorded
  // triangle data, the five faces from the level-3 index.
  struct T4 {
    Cell c;
    std::array<Cell, 5> f;
  };
  std::vector<T4> k4;
  std::map<std::array<Cell, 5>, Cell> spine4; // (base, spine) -> cell id
  auto tet = [&](Cell c, Cell i01, Cell i12, Cell i23, const char* what) -> Cell {
    auto it = idx3.find({c, i01, i12, i23});
    if (it == idx3.end()) fail(Errc::internal_error, std::string("missing ") + what);
    return it->second;
  };
  for (Cell c = 0; c < (Cell)b.sizes[4]; ++c) {
    Cell c1234 = bg.cell4[c][0], c0234 = bg.cell4[c][1], c0134 = bg.cell4[c][2],
         c0124 = bg.cell4[c][3], c0123 = bg.cell4[c][4];
    Cell c012 = bg.cell3[c0123][3];
    int a01 = bg.cell2[c012].a01, a12 = bg.cell2[c012].a12;
    int a23 = bg.cell2[bg.cell3[c0123][0]].a12;
    int a34 = bg.cell2[bg.cell3[c1234][0]].a12;
    for (int o = 0; o < x.n_objects; ++o)
      for (Cell i01 : efrom[a01][o])
        for (Cell i12 : efrom[a12][edge_end(i01)])
          for (Cell i23 : efrom[a23][edge_end(i12)])
            for (Cell i34 : efrom[a34][edge_end(i23)]) {
              Cell d4 = tet(c0123, i01, i12, i23, "front tetrahedron");
              Cell d0 = tet(c1234, i12, i23, i34, "back tetrahedron");
              Cell i02 = k2[k3[d4].f[3]].e02;
              Cell i13 = k2[k3[d4].f[0]].e02;
              Cell i24 = k2[k3[d0].f[0]].e02;
              Cell d3 = tet(c0124, i01, i12, i24, "tetrahedron over (0124)");
              Cell d2 = tet(c0134, i01, i13, i34, "tetrahedron over (0134)");
              Cell d1 = tet(c0234, i02, i23, i34, "tetrahedron over (0234)");
              spine4[{c, i01, i12, i23, i34}] = (Cell)k4.size();
              k4.push_back({c, {d0, d1, d2, d3, d4}});
              budget((long long)k4.size(), 4);
            }
  }

  SimplicialSet raw;
  raw.name = a.name.empty() ? x.name + "x|" + a.xm.name : a.name;
  raw.depth = depth;
  raw.sizes = {x.n_objects, (int)e1.size(), (int)k2.size(), (int)k3.size(), (int)k4.size()};
  raw.faces.resize(depth + 1);
  raw.degens.resize(depth);
  raw.faces[1].assign(2, std::vector<Cell>(e1.size()));
  for (Cell c = 0; c < (Cell)e1.size(); ++c) {
    raw.faces[1][0][c] = edge_end(c);
    raw.faces[1][1][c] = e1[c].o;
  }
  raw.faces[2].assign(3, std::vector<Cell>(k2.size()));
  for (Cell c = 0; c < (Cell)k2.size(); ++c) {
    raw.faces[2][0][c] = k2[c].e12;
    raw.faces[2][1][c] = k2[c].e02;
    raw.faces[2][2][c] = k2[c].e01;
  }
  raw.faces[3].assign(4, std::vector<Cell>(k3.size()));
  for (Cell c = 0; c < (Cell)k3.size(); ++c)
    for (int i = 0; i < 4; ++i) raw.faces[3][i][c] = k3[c].f[i];
  raw.faces[4].assign(5, std::vector<Cell>(k4.size()));
  for (Cell c = 0; c < (Cell)k4.size(); ++c)
    for (int i = 0; i < 5; ++i) raw.faces[4][i][c] = k4[c].f[i];

  raw.degens[0].assign(1, std::vector<Cell>(x.n_objects));
  for (int o = 0; o < x.n_objects; ++o) raw.degens[0][0][o] = unit_edge(o);
  raw.degens[1].assign(2, std::vector<Cell>(e1.size()));
  for (Cell c = 0; c < (Cell)e1.size(); ++c) {
    raw.degens[1][0][c] = idx2.at({b.degen(1, 0, e1[c].e), unit_edge(e1[c].o), c});
    raw.degens[1][1][c] = idx2.at({b.degen(1, 1, e1[c].e), c, unit_edge(edge_end(c))});
  }
  raw.degens[2].assign(3, std::vector<Cell>(k2.size()));
  for (Cell c = 0; c < (Cell)k2.size(); ++c) {
    Cell i01 = k2[c].e01, i12 = k2[c].e12;
    raw.degens[2][0][c] =
        idx3.at({b.degen(2, 0, k2[c].c), unit_edge(e1[i01].o), i01, i12});
    raw.degens[2][1][c] =
        idx3.at({b.degen(2, 1, k2[c].c), i01, unit_edge(edge_end(i01)), i12});
    raw.degens[2][2][c] =
        idx3.at({b.degen(2, 2, k2[c].c), i01, i12, unit_edge(edge_end(i12))});
  }
  raw.degens[3].assign(4, std::vector<Cell>(k3.size()));
  for (Cell c = 0; c < (Cell)k3.size(); ++c) {
    Cell i01 = k3[c].e01, i12 = k3[c].e12, i23 = k3[c].e23;
    raw.degens[3][0][c] =
        spine4.at({b.degen(3, 0, k3[c].c), unit_edge(e1[i01].o), i01, i12, i23});
    raw.degens[3][1][c] =
        spine4.at({b.degen(3, 1, k3[c].c), i01, unit_edge(edge_end(i01)), i12, i23});
    raw.degens[3][2][c] =
        spine4.at({b.degen(3, 2, k3[c].c), i01, i12, unit_edge(edge_end(i12)), i23});
    raw.degens[3][3][c] =
        spine4.at({b.degen(3, 3, k3[c].c), i01, i12, i23, unit_edge(edge_end(i23))});
  }
  SSetPtr total = share(build_simplicial_set(std::move(raw)));

  std::vector<std::vector<Cell>> plv(depth + 1);
  plv[0].assign(x.n_objects, 0);
  plv[1].resize(e1.size());
  for (Cell c = 0; c < (Cell)e1.size(); ++c) plv[1][c] = e1[c].e;
  plv[2].resize(k2.size());
  for (Cell c = 0; c < (Cell)k2.size(); ++c) plv[2][c] = k2[c].c;
  plv[3].resize(k3.size());
  for (Cell c = 0; c < (Cell)k3.size(); ++c) plv[3][c] = k3[c].c;
  plv[4].resize(k4.size());
  for (Cell c = 0; c < (Cell)k4.size(); ++c) plv[4][c] = k4[c].c;
  SimplicialMap pi = build_map(total, bg.ss, std::move(plv));

  Nerve fib = nerve(x, depth);
  Cell u1 = b.degen(0, 0, 0);
  Cell u2 = b.degen(1, 0, u1);
  Cell u3 = b.degen(2, 0, u2);
  std::vector<std::vector<Cell>> ilv(depth + 1);
  ilv[0].resize(x.n_objects);
  std::iota(ilv[0].begin(), ilv[0].end(), 0);
  auto fiber_edge = [&](int arr) { return idx1.at({g.unit, x.src[arr], arr}); };
  ilv[1].resize(fib.ss->sizes[1]);
  for (Cell c = 0; c < (Cell)fib.ss->sizes[1]; ++c) ilv[1][c] = fiber_edge(fib.strings[1][c][0]);
  ilv[2].resize(fib.ss->sizes[2]);
  for (Cell c = 0; c < (Cell)fib.ss->sizes[2]; ++c) {
    const auto& s = fib.strings[2][c];
    ilv[2][c] = idx2.at({u1, fiber_edge(s[0]), fiber_edge(s[1])});
  }
  ilv[3].resize(fib.ss->sizes[3]);
  for (Cell c = 0; c < (Cell)fib.ss->sizes[3]; ++c) {
    const auto& s = fib.strings[3][c];
    ilv[3][c] = idx3.at({u2, fiber_edge(s[0]), fiber_edge(s[1]), fiber_edge(s[2])});
  }
  ilv[4].resize(fib.ss->sizes[4]);
  for (Cell c = 0; c < (Cell)fib.ss->sizes[4]; ++c) {
    const auto& s = fib.strings[4][c];
    ilv[4][c] =
        spine4.at({u3, fiber_edge(s[0]), fiber_edge(s[1]), fiber_edge(s[2]), fiber_edge(s[3])});
  }
  SimplicialMap incl = build_map(fib.ss, total, std::move(ilv));

  CheckReport cert = check_fibration(pi, 2);
  if (!cert.ok())
    fail(Errc::not_a_fibration, "action groupoid projection failed verification: " +
                                    (cert.witnesses.empty() ? cert.condition : cert.witnesses.front()));
  return {total, bg.ss, fib.ss, pi, incl, 2, cert};
}

SimplicialSet fiber_over_basepoint(const FibrationBundle& k) {
  const SimplicialSet& b = *k.base;
  if (b.sizes[0] < 1) fail(Errc::validation_error, "bundle base has no vertices");
  auto pt = standard_simplex(0, b.depth);
  auto bp = basepoint_chain(b, 0);
  std::vector<std::vector<Cell>> lv(b.depth + 1);
  for (int n = 0; n <= b.depth; ++n) lv[n] = {bp[n]};
  SimplicialMap at_base = build_map(pt.ss, k.base, std::move(lv));
  auto fp = fiber_product(at_base, k.pi);
  SimplicialSet out = *fp.ss;
  out.name = k.total->name + ".fiber";
  return out;
}

ActionSpanData lambda_extract(const FibrationBundle& k) {
  const SimplicialSet& e = *k.total;
  const SimplicialSet& b = *k.base;
  if (e.depth < 2 || b.depth < 2)
    fail(Errc::depth_exceeds_truncation, "span extraction needs 2-cells on both sides");

  ActionSpanData out;
  out.fiber = to_groupoid(*k.fiber);

  // Inverses of the fiber inclusion at levels 0 and 1.
  std::vector<Cell> inv0(e.sizes[0], no_cell), inv1(e.sizes[1], no_cell);
  for (Cell c = 0; c < (Cell)k.fiber->sizes[0]; ++c) {
    Cell img = k.incl.at(0, c);
    if (inv0[img] != no_cell) fail(Errc::validation_error, "fiber inclusion is not injective");
    inv0[img] = c;
  }
  for (Cell c = 0; c < (Cell)k.fiber->sizes[1]; ++c) {
    Cell img = k.incl.at(1, c);
    if (inv1[img] != no_cell) fail(Errc::validation_error, "fiber inclusion is not injective");
    inv1[img] = c;
  }
  auto fiber_obj = [&](Cell v) {
    if (inv0[v] == no_cell)
      fail(Errc::validation_error, "vertex " + ith(v) + " is not in the fiber image");
    return inv0[v];
  };
  auto fiber_arrow = [&](Cell c) {
    if (inv1[c] == no_cell)
      fail(Errc::validation_error, "edge " + ith(c) + " over the unit is not in the fiber image");
    return inv1[c];
  };

  // Two-cell lookup tables keyed by (d2, d0, base) and (d1, d2, base).
  std::map<std::array<Cell, 3>, std::vector<Cell>> by20, by12;
  for (Cell t = 0; t < (Cell)e.sizes[2]; ++t) {
    Cell pb = k.pi.at(2, t);
    by20[{e.face(2, 2, t), e.face(2, 0, t), pb}].push_back(t);
    by12[{e.face(2, 1, t), e.face(2, 2, t), pb}].push_back(t);
  }
  auto unique20 = [&](Cell d2, Cell d0, Cell base, const char* what) -> Cell {
    auto it = by20.find({d2, d0, base});
    if (it == by20.end() || it->second.empty())
      fail(Errc::no_filler, std::string("no square for the ") + what);
    if (it->second.size() > 1)
      fail(Errc::non_unique_filler, std::string("ambiguous square for the ") + what);
    return it->second.front();
  };
  auto unique12 = [&](Cell d1, Cell d2, Cell base, const char* what) -> Cell {
    auto it = by12.find({d1, d2, base});
    if (it == by12.end() || it->second.empty())
      fail(Errc::no_filler, std::string("no square for the ") + what);
    if (it->second.size() > 1)
      fail(Errc::non_unique_filler, std::string("ambiguous square for the ") + what);
    return it->second.front();
  };

  std::vector<std::vector<Cell>> edges_over(b.sizes[1]);
  for (Cell c = 0; c < (Cell)e.sizes[1]; ++c) edges_over[k.pi.at(1, c)].push_back(c);

  for (Cell ge = 0; ge < (Cell)b.sizes[1]; ++ge) {
    ActionSpan span;
    span.base_edge = ge;
    span.obj_cell = edges_over[ge];
    std::map<Cell, int> oidx;
    for (int i = 0; i < (int)span.obj_cell.size(); ++i) oidx[span.obj_cell[i]] = i;
    Cell s0g = b.degen(1, 0, ge);
    Cell s1g = b.degen(1, 1, ge);

    // Arrows: squares (upper, lower) over the degenerate square of the edge,
    // glued along the shared diagonal.
    std::map<Cell, std::vector<Cell>> upper_by_diag, lower_by_diag;
    for (Cell t = 0; t < (Cell)e.sizes[2]; ++t) {
      if (k.pi.at(2, t) == s0g) upper_by_diag[e.face(2, 1, t)].push_back(t);
      if (k.pi.at(2, t) == s1g) lower_by_diag[e.face(2, 1, t)].push_back(t);
    }
    std::vector<std::pair<Cell, Cell>> sq; // (upper, lower)
    std::map<std::pair<Cell, Cell>, int> qidx;
    for (auto& [diag, ups] : upper_by_diag) {
      auto lo = lower_by_diag.find(diag);
      if (lo == lower_by_diag.end()) continue;
      for (Cell u : ups)
        for (Cell l : lo->second) {
          qidx[{u, l}] = (int)sq.size();
          sq.emplace_back(u, l);
        }
    }

    FiniteGroupoid y;
    y.name = (e.name.empty() ? "e" : e.name) + ".y" + ith(ge);
    y.n_objects = (int)span.obj_cell.size();
    int na = (int)sq.size();
    y.src.resize(na);
    y.tgt.resize(na);
    y.inv.assign(na, -1);
    y.unit.resize(y.n_objects);
    y.comp.assign(na, std::vector<int>(na, -1));
    for (int q = 0; q < na; ++q) {
      y.src[q] = oidx.at(e.face(2, 2, sq[q].second));
      y.tgt[q] = oidx.at(e.face(2, 0, sq[q].first));
    }
    for (int o = 0; o < y.n_objects; ++o) {
      Cell sig = span.obj_cell[o];
      auto it = qidx.find({e.degen(1, 0, sig), e.degen(1, 1, sig)});
      if (it == qidx.end())
        fail(Errc::internal_error, "degenerate square of an edge is not a span arrow");
      y.unit[o] = it->second;
    }
    for (int q = 0; q < na; ++q)
      for (int r = 0; r < na; ++r) {
        if (y.tgt[q] != y.src[r]) continue;
        Cell psi0 = k.incl.at(
            1, out.fiber.compose(fiber_arrow(e.face(2, 2, sq[q].first)),
                                 fiber_arrow(e.face(2, 2, sq[r].first))));
        Cell psi1 = k.incl.at(
            1, out.fiber.compose(fiber_arrow(e.face(2, 0, sq[q].second)),
                                 fiber_arrow(e.face(2, 0, sq[r].second))));
        Cell low = unique20(e.face(2, 2, sq[q].second), psi1, s1g, "pasted lower triangle");
        Cell up = unique20(psi0, e.face(2, 0, sq[r].first), s0g, "pasted upper triangle");
        if (e.face(2, 1, up) != e.face(2, 1, low))
          fail(Errc::coherence_failure, "pasted square diagonals disagree over edge " + ith(ge));
        auto it = qidx.find({up, low});
        if (it == qidx.end()) fail(Errc::internal_error, "pasted square escaped the span");
        y.comp[q][r] = it->second;
      }
    for (int q = 0; q < na; ++q) {
      for (int r = 0; r < na; ++r)
        if (y.src[r] == y.tgt[q] && y.comp[q][r] == y.unit[y.src[q]]) {
          y.inv[q] = r;
          break;
        }
      if (y.inv[q] < 0)
        fail(Errc::coherence_failure, "span arrow " + ith(q) + " over edge " + ith(ge) +
                                          " has no inverse");
    }
    span.y = build_groupoid(std::move(y));

    GroupoidFunctor left, right;
    left.obj.resize(span.y.n_objects);
    right.obj.resize(span.y.n_objects);
    for (int o = 0; o < span.y.n_objects; ++o) {
      left.obj[o] = fiber_obj(e.face(1, 1, span.obj_cell[o]));
      right.obj[o] = fiber_obj(e.face(1, 0, span.obj_cell[o]));
    }
    left.arr.resize(na);
    right.arr.resize(na);
    for (int q = 0; q < na; ++q) {
      left.arr[q] = fiber_arrow(e.face(2, 2, sq[q].first));
      right.arr[q] = fiber_arrow(e.face(2, 0, sq[q].second));
    }
    span.left = build_functor(span.y, out.fiber, std::move(left));
    span.right = build_functor(span.y, out.fiber, std::move(right));
    out.spans.push_back(std::move(span));
  }

  for (Cell c = 0; c < (Cell)b.sizes[2]; ++c) {
    ActionSpanData::Transport tr;
    tr.base2 = c;
    Cell g01 = b.face(2, 2, c), g12 = b.face(2, 0, c), g02 = b.face(2, 1, c);
    Cell s1g02 = b.degen(1, 1, g02);
    for (Cell y01 : edges_over[g01])
      for (Cell y12 : edges_over[g12]) {
        if (e.face(1, 0, y01) != e.face(1, 1, y12)) continue;
        Cell t = unique20(y01, y12, c, "transport triangle");
        Cell y02 = e.face(2, 1, t);
        for (Cell y02p : edges_over[g02]) {
          if (e.face(1, 1, y02p) != e.face(1, 1, y02)) continue;
          Cell z = unique12(y02p, y02, s1g02, "transport comparison triangle");
          tr.phi[{(int)y02p, (int)y01, (int)y12}] = fiber_arrow(e.face(2, 0, z));
        }
      }
    out.transports.push_back(std::move(tr));
  }
  return out;
}

FibrationBundle pullback_bundle(const FibrationBundle& k, const SimplicialMap& along) {
  if (along.to != k.base)
    fail(Errc::validation_error, "pullback map must land in the bundle base");
  if (k.fiber->sizes[0] < 1) fail(Errc::validation_error, "bundle fiber has no vertices");
  Cell bv = k.pi.at(0, k.incl.at(0, 0));
  Cell hv = no_cell;
  for (Cell v = 0; v < (Cell)along.from->sizes[0]; ++v)
    if (along.at(0, v) == bv) {
      hv = v;
      break;
    }
  if (hv == no_cell)
    fail(Errc::validation_error, "pullback map misses the fiber basepoint");
  auto fp = fiber_product(along, k.pi);
  auto bp = basepoint_chain(*along.from, hv);
  std::vector<std::vector<Cell>> lv(k.fiber->depth + 1);
  for (int n = 0; n <= k.fiber->depth; ++n) {
    lv[n].resize(k.fiber->sizes[n]);
    for (Cell c = 0; c < (Cell)k.fiber->sizes[n]; ++c)
      lv[n][c] = fp.index[n].at({bp[n], k.incl.at(n, c)});
  }
  SimplicialMap incl = build_map(k.fiber, fp.ss, std::move(lv));
  CheckReport cert = check_fibration(fp.pr1, k.degree);
  if (!cert.ok())
    fail(Errc::not_a_fibration, "pullback projection failed verification: " +
                                    (cert.witnesses.empty() ? cert.condition : cert.witnesses.front()));
  return {fp.ss, along.from, k.fiber, fp.pr1, incl, k.degree, cert};
}

PushforwardResult pushforward_bundle(const FibrationBundle& k, const SimplicialMap& f) {
  if (f.from != k.base)
    fail(Errc::validation_error, "pushforward map must be defined on the bundle base");
  const SimplicialSet& e = *k.total;
  const SimplicialSet& y = *f.to;
  int d = e.depth;
  if (y.depth != d)
    fail(Errc::truncation_mismatch, "pushforward target has a different depth");
  CheckReport hc = check_hypercover(f, k.degree);
  if (!hc.ok())
    fail(Errc::not_a_hypercover, "pushforward needs a hypercover: " +
                                     (hc.witnesses.empty() ? hc.condition : hc.witnesses.front()));
  if (f.from->sizes[0] != y.sizes[0])
    fail(Errc::base_vertex_map_not_bijective, "base vertex counts differ");
  {
    std::vector<char> seen(y.sizes[0], 0);
    for (Cell v = 0; v < (Cell)f.from->sizes[0]; ++v) {
      if (seen[f.at(0, v)])
        fail(Errc::base_vertex_map_not_bijective, "two base vertices share an image");
      seen[f.at(0, v)] = 1;
    }
  }

  std::vector<std::vector<Cell>> fpi(d + 1);
  for (int n = 0; n <= d; ++n) {
    fpi[n].resize(e.sizes[n]);
    for (Cell c = 0; c < (Cell)e.sizes[n]; ++c) fpi[n][c] = f.at(n, k.pi.at(n, c));
  }

  // Prism-connected classes: two n-cells are identified when a cylinder joins
  // them whose projected image is the degenerate cylinder of the shared image
  // and whose vertical edges are degenerate.
  std::vector<std::vector<int>> cls(d + 1);
  std::vector<std::vector<Cell>> reps(d + 1);
  for (int n = 0; n < d; ++n) {
    auto a = standard_simplex(n, n + 1);
    auto i1 = standard_simplex(1, n + 1);
    auto p = product(a.ss, i1.ss);
    std::vector<std::vector<VertexSeq>> aseq(n + 2);
    std::vector<std::vector<char>> is_vertical(n + 2), is_bottom(n + 2), is_top(n + 2);
    for (int l = 0; l <= n + 1; ++l) {
      int sz = p.ss->size(l);
      aseq[l].resize(sz);
      is_vertical[l].assign(sz, 0);
      is_bottom[l].assign(sz, 0);
      is_top[l].assign(sz, 0);
      for (Cell c = 0; c < (Cell)sz; ++c) {
        auto [pa, pb] = p.parts(l, c);
        aseq[l][c] = a.seq[l][pa];
        const VertexSeq& bs = i1.seq[l][pb];
        bool const_a = true, const0 = true, const1 = true;
        for (int v : aseq[l][c]) const_a = const_a && v == aseq[l][c][0];
        for (int v : bs) {
          const0 = const0 && v == 0;
          const1 = const1 && v == 1;
        }
        is_bottom[l][c] = const0;
        is_top[l][c] = const1;
        if (l == 1) is_vertical[l][c] = const_a && bs[0] == 0 && bs[1] == 1;
      }
    }
    // candidate tops grouped by projected image, computed once per level
    std::vector<std::vector<Cell>> by_beta(y.sizes[n]);
    for (Cell c = 0; c < (Cell)e.sizes[n]; ++c) by_beta[fpi[n][c]].push_back(c);

    cls[n].assign(e.sizes[n], -1);
    for (Cell c0 = 0; c0 < (Cell)e.sizes[n]; ++c0) {
      if (cls[n][c0] >= 0) continue;
      int cid = (int)reps[n].size();
      reps[n].push_back(c0);
      cls[n][c0] = cid;
      Cell beta = fpi[n][c0];
      std::vector<std::vector<Cell>> bold(n + 2);
      for (int l = 0; l <= n + 1; ++l) {
        bold[l].resize(p.ss->size(l));
        for (Cell c = 0; c < (Cell)p.ss->size(l); ++c)
          bold[l][c] = apply_operator(y, n, beta, aseq[l][c]);
      }
      MapSearchOptions opt;
      opt.limit = 1;
      for (int l = 0; l <= n + 1; ++l)
        for (Cell c : p.ss->nondegenerate(l))
          if (is_bottom[l][c]) opt.pinned[{l, c}] = apply_operator(e, n, c0, aseq[l][c]);
      opt.allow = [&](int l, Cell c, Cell img) {
        if (fpi[l][img] != bold[l][c]) return false;
        if (is_vertical[l][c] && !e.is_degenerate(1, img)) return false;
        return true;
      };
      // one existence search per candidate top, with both prism ends pinned;
      // a cylinder restricts to cylinders on faces, so face classes must agree
      bool self = false;
      for (Cell c1 : by_beta[beta]) {
        if (c1 != c0 && cls[n][c1] == cid) continue;
        bool face_ok = true;
        for (int i = 0; face_ok && n > 0 && i <= n; ++i)
          face_ok = cls[n - 1][e.face(n, i, c0)] == cls[n - 1][e.face(n, i, c1)];
        if (!face_ok) continue;
        MapSearchOptions topped = opt;
        for (int l = 0; l <= n + 1; ++l)
          for (Cell c : p.ss->nondegenerate(l))
            if (is_top[l][c]) topped.pinned[{l, c}] = apply_operator(e, n, c1, aseq[l][c]);
        if (!exists_map(p.ss, k.total, topped)) continue;
        if (c1 == c0) {
          self = true;
        } else if (cls[n][c1] < 0) {
          cls[n][c1] = cid;
        } else if (cls[n][c1] != cid) {
          fail(Errc::internal_error, "pushforward classes overlap at level " + ith(n));
        }
      }
      if (!self)
        fail(Errc::internal_error, "pushforward relation misses the constant cylinder");
    }
  }
  // Top level: classes keyed by the projected image and the face classes.
  {
    cls[d].assign(e.sizes[d], -1);
    std::map<std::vector<Cell>, int> key_to_class;
    for (Cell c = 0; c < (Cell)e.sizes[d]; ++c) {
      std::vector<Cell> key{fpi[d][c]};
      for (int i = 0; i <= d; ++i) key.push_back(cls[d - 1][e.face(d, i, c)]);
      auto [it, fresh] = key_to_class.emplace(std::move(key), (int)reps[d].size());
      if (fresh) reps[d].push_back(c);
      cls[d][c] = it->second;
    }
  }

  SimplicialSet q;
  q.name = e.name + ".push";
  q.depth = d;
  q.sizes.resize(d + 1);
  q.faces.resize(d + 1);
  q.degens.resize(d);
  for (int n = 0; n <= d; ++n) q.sizes[n] = (int)reps[n].size();
  for (int n = 1; n <= d; ++n) {
    q.faces[n].assign(n + 1, std::vector<Cell>(q.sizes[n]));
    for (Cell c = 0; c < (Cell)q.sizes[n]; ++c)
      for (int i = 0; i <= n; ++i) q.faces[n][i][c] = cls[n - 1][e.face(n, i, reps[n][c])];
  }
  for (int n = 0; n < d; ++n) {
    q.degens[n].assign(n + 1, std::vector<Cell>(q.sizes[n]));
    for (Cell c = 0; c < (Cell)q.sizes[n]; ++c)
      for (int i = 0; i <= n; ++i) q.degens[n][i][c] = cls[n + 1][e.degen(n, i, reps[n][c])];
  }
  SSetPtr qp;
  SimplicialMap proj;
  try {
    qp = share(build_simplicial_set(std::move(q)));
    std::vector<std::vector<Cell>> plv(d + 1);
    for (int n = 0; n <= d; ++n) plv[n].assign(cls[n].begin(), cls[n].end());
    proj = build_map(k.total, qp, std::move(plv));
  } catch (const Error& err) {
    fail(Errc::internal_error, std::string("pushforward classes are not simplicial: ") + err.what());
  }

  std::vector<std::vector<Cell>> qlv(d + 1);
  for (int n = 0; n <= d; ++n) {
    qlv[n].resize(reps[n].size());
    for (Cell c = 0; c < (Cell)reps[n].size(); ++c) qlv[n][c] = fpi[n][reps[n][c]];
  }
  SimplicialMap qpi = build_map(qp, f.to, std::move(qlv));
  if (!same_map(compose(proj, qpi), compose(k.pi, f)))
    fail(Errc::internal_error, "pushforward projection does not cover the hypercover");

  SimplicialMap incl = compose(k.incl, proj);
  CheckReport cert = check_fibration(qpi, k.degree);
  if (!cert.ok())
    fail(Errc::not_a_fibration, "pushforward projection failed verification: " +
                                    (cert.witnesses.empty() ? cert.condition : cert.witnesses.front()));
  return {{qp, f.to, k.fiber, qpi, incl, k.degree, cert}, proj};
}

StrictifyResult strictify(const FibrationBundle& k) {
  const SimplicialSet& b = *k.base;
  if (b.sizes[0] != 1 || !classify_n_groupoid(b, 1).ok())
    fail(Errc::base_not_a_1_group, "strictify needs the nerve of a group as base");
  FiniteGroupoid kg = to_groupoid(*k.total);
  FiniteGroup g = group_of_one_object(to_groupoid(b));
  int ng = g.n;
  auto oid = [&](int m, int e) { return m * ng + e; };
  auto aid = [&](int arr, int e) { return arr * ng + e; };
  auto pia = [&](int arr) { return (int)k.pi.at(1, arr); };

  FiniteGroupoid xt;
  xt.name = (k.total->name.empty() ? "k" : k.total->name) + ".strict";
  xt.n_objects = kg.n_objects * ng;
  int na = kg.n_arrows() * ng;
  xt.src.resize(na);
  xt.tgt.resize(na);
  xt.inv.resize(na);
  xt.unit.resize(xt.n_objects);
  xt.comp.assign(na, std::vector<int>(na, -1));
  for (int arr = 0; arr < kg.n_arrows(); ++arr)
    for (int e = 0; e < ng; ++e) {
      int id = aid(arr, e);
      xt.src[id] = oid(kg.src[arr], e);
      xt.tgt[id] = oid(kg.tgt[arr], g.op(e, pia(arr)));
      xt.inv[id] = aid(kg.inv[arr], g.op(e, pia(arr)));
    }
  for (int m = 0; m < kg.n_objects; ++m)
    for (int e = 0; e < ng; ++e) xt.unit[oid(m, e)] = aid(kg.unit[m], e);
  for (int arr = 0; arr < kg.n_arrows(); ++arr)
    for (int e = 0; e < ng; ++e)
      for (int brr = 0; brr < kg.n_arrows(); ++brr)
        if (kg.composable(arr, brr))
          xt.comp[aid(arr, e)][aid(brr, g.op(e, pia(arr)))] = aid(kg.compose(arr, brr), e);
  xt = build_groupoid(std::move(xt));

  StrictAction act;
  act.name = xt.name;
  act.x = xt;
  act.g = g;
  act.phi.resize(ng);
  for (int t = 0; t < ng; ++t) {
    int ti = g.inv[t];
    act.phi[t].obj.resize(xt.n_objects);
    act.phi[t].arr.resize(na);
    for (int m = 0; m < kg.n_objects; ++m)
      for (int e = 0; e < ng; ++e) act.phi[t].obj[oid(m, e)] = oid(m, g.op(ti, e));
    for (int arr = 0; arr < kg.n_arrows(); ++arr)
      for (int e = 0; e < ng; ++e) act.phi[t].arr[aid(arr, e)] = aid(arr, g.op(ti, e));
  }
  act = build_strict_action(std::move(act));

  FiniteGroupoid fg = to_groupoid(*k.fiber);
  Nerve nf = nerve(fg, k.fiber->depth);
  GroupoidFunctor ff;
  ff.obj.resize(fg.n_objects);
  ff.arr.resize(fg.n_arrows());
  for (int m = 0; m < fg.n_objects; ++m) ff.obj[m] = oid(k.incl.at(0, m), g.unit);
  for (int arr = 0; arr < fg.n_arrows(); ++arr) ff.arr[arr] = aid(k.incl.at(1, arr), g.unit);
  ff = build_functor(fg, act.x, std::move(ff));
  Nerve nx = nerve(act.x, k.fiber->depth);
  SimplicialMap fe = compose(spine_map(k.fiber, nf), functor_to_map(ff, nf, nx));
  CheckReport eq = check_equivalence(fe, 1);
  if (!eq.ok())
    fail(Errc::internal_error, "strictified fiber comparison is not an equivalence: " +
                                   (eq.witnesses.empty() ? eq.condition : eq.witnesses.front()));
  return {std::move(act), std::move(fe)};
}

std::vector<Cell> invariant_objects(const FibrationBundle& k) {
  const SimplicialSet& e = *k.total;
  std::vector<std::set<Cell>> loops(e.sizes[0]);
  for (Cell c = 0; c < (Cell)e.sizes[1]; ++c)
    if (e.face(1, 1, c) == e.face(1, 0, c)) loops[e.face(1, 1, c)].insert(k.pi.at(1, c));
  std::vector<char> inv(k.fiber->sizes[0], 0);
  std::vector<Cell> out;
  for (Cell c = 0; c < (Cell)k.fiber->sizes[0]; ++c) {
    inv[c] = (int)loops[k.incl.at(0, c)].size() == k.base->sizes[1];
    if (inv[c]) out.push_back(c);
  }
  const SimplicialSet& fb = *k.fiber;
  for (Cell c = 0; c < (Cell)fb.sizes[1]; ++c)
    if (inv[fb.face(1, 1, c)] && !inv[fb.face(1, 0, c)])
      fail(Errc::internal_error, "invariant objects are not saturated under fiber arrows");
  return out;
}

QuotientResult free_quotient(const StrictAction& a0, int depth) {
  StrictAction a = build_strict_action(a0);
  const FiniteGroupoid& x = a.x;
  const FiniteGroup& g = a.g;
  for (int e = 0; e < g.n; ++e) {
    if (e == g.unit) continue;
    for (int o = 0; o < x.n_objects; ++o)
      if (a.phi[e].obj[o] == o)
        fail(Errc::action_not_free,
             "object " + ith(o) + " is fixed by group element " + ith(e));
  }

  UnionFind uo(x.n_objects), ua(x.n_arrows());
  for (int e = 0; e < g.n; ++e) {
    for (int o = 0; o < x.n_objects; ++o) uo.unite(o, a.phi[e].obj[o]);
    for (int arr = 0; arr < x.n_arrows(); ++arr) ua.unite(arr, a.phi[e].arr[arr]);
  }
  std::map<int, int> ocls, acls;
  std::vector<int> orep, arep;
  for (int o = 0; o < x.n_objects; ++o)
    if (ocls.emplace(uo.find(o), (int)orep.size()).second) orep.push_back(o);
  for (int arr = 0; arr < x.n_arrows(); ++arr)
    if (acls.emplace(ua.find(arr), (int)arep.size()).second) arep.push_back(arr);
  auto oc = [&](int o) { return ocls.at(uo.find(o)); };
  auto ac = [&](int arr) { return acls.at(ua.find(arr)); };

  FiniteGroupoid q;
  q.name = (x.name.empty() ? "x" : x.name) + "/" + (g.name.empty() ? "g" : g.name);
  q.n_objects = (int)orep.size();
  int na = (int)arep.size();
  q.src.resize(na);
  q.tgt.resize(na);
  q.inv.resize(na);
  q.unit.resize(q.n_objects);
  q.comp.assign(na, std::vector<int>(na, -1));
  for (int c = 0; c < na; ++c) {
    q.src[c] = oc(x.src[arep[c]]);
    q.tgt[c] = oc(x.tgt[arep[c]]);
    q.inv[c] = ac(x.inv[arep[c]]);
  }
  for (int c = 0; c < q.n_objects; ++c) q.unit[c] = ac(x.unit[orep[c]]);
  for (int c = 0; c < na; ++c)
    for (int cb = 0; cb < na; ++cb) {
      if (q.tgt[c] != q.src[cb]) continue;
      int alpha = arep[c], beta = arep[cb];
      int moved = -1;
      for (int e = 0; e < g.n && moved < 0; ++e)
        if (a.phi[e].obj[x.src[beta]] == x.tgt[alpha]) moved = a.phi[e].arr[beta];
      if (moved < 0)
        fail(Errc::well_definedness_failure,
             "quotient composite has no representative for arrows " + ith(c) + "," + ith(cb));
      q.comp[c][cb] = ac(x.compose(alpha, moved));
    }
  q = build_groupoid(std::move(q));

  FiniteGroupoid ag = action_groupoid_of(a);
  GroupoidFunctor p;
  p.obj.resize(ag.n_objects);
  p.arr.resize(ag.n_arrows());
  for (int o = 0; o < ag.n_objects; ++o) p.obj[o] = oc(o);
  for (int arr = 0; arr < ag.n_arrows(); ++arr) p.arr[arr] = ac(arr / g.n);
  try {
    p = build_functor(ag, q, std::move(p));
  } catch (const Error& err) {
    fail(Errc::well_definedness_failure,
         std::string("quotient composition is not orbit-invariant: ") + err.what());
  }
  Nerve nag = nerve(ag, depth);
  Nerve nq = nerve(q, depth);
  SimplicialMap proj = functor_to_map(p, nag, nq);
  CheckReport hc = check_hypercover(proj, 1);
  if (!hc.ok())
    fail(Errc::internal_error, "quotient projection failed the hypercover check: " +
                                   (hc.witnesses.empty() ? hc.condition : hc.witnesses.front()));
  return {std::move(q), std::move(proj)};
}

bool bundle_isomorphic(const FibrationBundle& a, const FibrationBundle& b) {
  if (a.base != b.base) {
    const SimplicialSet& x = *a.base;
    const SimplicialSet& y = *b.base;
    if (x.depth != y.depth || x.sizes != y.sizes || x.faces != y.faces || x.degens != y.degens)
      fail(Errc::validation_error, "bundles do not share a base");
  }
  if (a.total->depth != b.total->depth) return false;
  auto iso = find_isomorphism(a.total, b.total, [&](int l, Cell c, Cell img) {
    return a.pi.at(l, c) == b.pi.at(l, img);
  });
  return iso.has_value();
}

} // namespace kanfib
