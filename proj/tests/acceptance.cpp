// Acceptance gate: ten end-to-end properties of the library checked at desk
// scale on randomized corpora and the shared fixtures. Prints one PASS/FAIL
// line per criterion (with its runtime and budget) and exits nonzero if any
// criterion fails. --seed N reseeds every sampler; the default is fixed so
// repeated runs see the same corpus.

#include "kanfib/io.hpp"
#include "kanfib/reduction.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace kanfib;

namespace {

using Rng = std::mt19937;

int pick(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// ---- shared fixtures (same shapes as the unit-test fixtures) ----------------

FiniteGroupoid discrete_groupoid(int k) {
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

FiniteGroupoid pair_groupoid(int k) {
  FiniteGroupoid g;
  g.name = "pair" + std::to_string(k);
  g.n_objects = k;
  int na = k * k;
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

CrossedModule xm0() { // C2 -> 1
  CrossedModule m;
  m.name = "xm0";
  m.h = cyclic_group(2);
  m.g = cyclic_group(1);
  m.bnd = {0, 0};
  m.act = {{0, 1}};
  return build_crossed_module(std::move(m));
}

CrossedModule xm1() { // 1 -> C2
  CrossedModule m;
  m.name = "xm1";
  m.h = cyclic_group(1);
  m.g = cyclic_group(2);
  m.bnd = {0};
  m.act = {{0}, {0}};
  return build_crossed_module(std::move(m));
}

CrossedModule xm2() { // C2 -> C4 doubling, trivial action
  CrossedModule m;
  m.name = "xm2";
  m.h = cyclic_group(2);
  m.g = cyclic_group(4);
  m.bnd = {0, 2};
  m.act.assign(4, {0, 1});
  return build_crossed_module(std::move(m));
}

StrictAction swap_action() {
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

StrictAction trivial_action_pair2() {
  StrictAction a;
  a.name = "triv";
  a.x = pair_groupoid(2);
  a.g = cyclic_group(2);
  a.phi.assign(2, identity_functor(a.x));
  return build_strict_action(std::move(a));
}

Strict2GroupAction xm0_on_c2() {
  Strict2GroupAction a;
  a.name = "xm0c2";
  a.x = one_object_groupoid(cyclic_group(2), "c2");
  a.xm = xm0();
  a.phi = {identity_functor(a.x)};
  a.theta = {{0}, {1}};
  return build_strict_2group_action(std::move(a));
}

Strict2GroupAction xm1_on_point() {
  Strict2GroupAction a;
  a.name = "xm1pt";
  a.x = discrete_groupoid(1);
  a.xm = xm1();
  a.phi.assign(2, identity_functor(a.x));
  a.theta = {{0}};
  return build_strict_2group_action(std::move(a));
}

Strict2GroupAction xm2_on_point() {
  Strict2GroupAction a;
  a.name = "xm2pt";
  a.x = discrete_groupoid(1);
  a.xm = xm2();
  a.phi.assign(4, identity_functor(a.x));
  a.theta = {{0}, {0}};
  return build_strict_2group_action(std::move(a));
}

// ---- random groupoids --------------------------------------------------------

const std::vector<FiniteGroup>& group_catalog() {
  static const std::vector<FiniteGroup> cat = [] {
    std::vector<FiniteGroup> v;
    for (int k = 1; k <= 8; ++k) v.push_back(cyclic_group(k));
    v.push_back(klein_group());
    v.push_back(symmetric_group_3());
    v.push_back(dihedral_group_8());
    v.push_back(quaternion_group());
    return v;
  }();
  return cat;
}

bool is_abelian(const FiniteGroup& g) {
  for (int a = 0; a < g.n; ++a)
    for (int b = 0; b < a; ++b)
      if (g.mul[a][b] != g.mul[b][a]) return false;
  return true;
}

// connected groupoid on k objects with vertex group v: arrow (x,y,s), and
// (x,y,s) then (y,z,t) composes to (x,z,s*t)
FiniteGroupoid thick_groupoid(int k, const FiniteGroup& v, const std::string& name) {
  FiniteGroupoid g;
  g.name = name;
  g.n_objects = k;
  int na = k * k * v.n;
  auto enc = [&](int x, int y, int s) { return (x * k + y) * v.n + s; };
  g.src.resize(na);
  g.tgt.resize(na);
  g.inv.resize(na);
  g.unit.resize(k);
  g.comp.assign(na, std::vector<int>(na, -1));
  for (int x = 0; x < k; ++x)
    for (int y = 0; y < k; ++y)
      for (int s = 0; s < v.n; ++s) {
        int a = enc(x, y, s);
        g.src[a] = x;
        g.tgt[a] = y;
        g.inv[a] = enc(y, x, v.inv[s]);
        if (x == y && s == v.unit) g.unit[x] = a;
        for (int z = 0; z < k; ++z)
          for (int t = 0; t < v.n; ++t) g.comp[a][enc(y, z, t)] = enc(x, z, v.mul[s][t]);
      }
  return build_groupoid(std::move(g));
}

FiniteGroupoid disjoint_union(const FiniteGroupoid& a, const FiniteGroupoid& b) {
  FiniteGroupoid g;
  g.name = a.name;
  g.n_objects = a.n_objects + b.n_objects;
  int ao = a.n_arrows();
  int na = ao + b.n_arrows();
  g.src = a.src;
  g.tgt = a.tgt;
  g.inv = a.inv;
  g.unit = a.unit;
  for (int x : b.src) g.src.push_back(x + a.n_objects);
  for (int y : b.tgt) g.tgt.push_back(y + a.n_objects);
  for (int i : b.inv) g.inv.push_back(i + ao);
  for (int u : b.unit) g.unit.push_back(u + ao);
  g.comp.assign(na, std::vector<int>(na, -1));
  for (int i = 0; i < ao; ++i)
    for (int j = 0; j < ao; ++j) g.comp[i][j] = a.comp[i][j];
  for (int i = 0; i < b.n_arrows(); ++i)
    for (int j = 0; j < b.n_arrows(); ++j)
      g.comp[ao + i][ao + j] = b.comp[i][j] < 0 ? -1 : b.comp[i][j] + ao;
  return build_groupoid(std::move(g));
}

// every isomorphism class with <= 4 objects and <= 12 arrows is a disjoint
// union of thick components, so sampling partitions + vertex groups under the
// arrow budget covers the whole corpus the criteria ask for
FiniteGroupoid random_groupoid(Rng& rng, const std::string& name) {
  const auto& cat = group_catalog();
  for (;;) {
    int nobj = pick(rng, 1, 4);
    std::vector<int> parts;
    for (int left = nobj; left > 0;) {
      int c = pick(rng, 1, std::min(left, 3));
      parts.push_back(c);
      left -= c;
    }
    int budget = 12;
    std::vector<FiniteGroupoid> comps;
    bool feasible = true;
    for (int k : parts) {
      std::vector<int> options;
      for (int i = 0; i < (int)cat.size(); ++i)
        if (k * k * cat[i].n <= budget) options.push_back(i);
      if (options.empty()) {
        feasible = false;
        break;
      }
      int i = options[pick(rng, 0, (int)options.size() - 1)];
      budget -= k * k * cat[i].n;
      comps.push_back(thick_groupoid(k, cat[i], name));
    }
    if (!feasible) continue;
    FiniteGroupoid g = comps[0];
    for (size_t i = 1; i < comps.size(); ++i) g = disjoint_union(g, comps[i]);
    g.name = name;
    return g;
  }
}

// ---- random crossed modules ----------------------------------------------------

std::vector<int> subgroup_closure(const FiniteGroup& g, const std::vector<int>& seed) {
  std::set<int> s(seed.begin(), seed.end());
  s.insert(g.unit);
  for (;;) {
    std::set<int> next = s;
    for (int a : s) {
      next.insert(g.inv[a]);
      for (int b : s) next.insert(g.mul[a][b]);
    }
    if (next.size() == s.size()) break;
    s.swap(next);
  }
  return {s.begin(), s.end()};
}

bool is_normal_subgroup(const FiniteGroup& g, const std::vector<int>& sub) {
  std::set<int> s(sub.begin(), sub.end());
  for (int x = 0; x < g.n; ++x)
    for (int a : sub)
      if (!s.count(g.mul[g.mul[x][a]][g.inv[x]])) return false;
  return true;
}

std::vector<int> group_center(const FiniteGroup& g) {
  std::vector<int> z;
  for (int a = 0; a < g.n; ++a) {
    bool central = true;
    for (int b = 0; central && b < g.n; ++b) central = g.mul[a][b] == g.mul[b][a];
    if (central) z.push_back(a);
  }
  return z;
}

FiniteGroup subgroup_of(const FiniteGroup& g, const std::vector<int>& elems,
                        const std::string& name) {
  std::map<int, int> pos;
  for (int i = 0; i < (int)elems.size(); ++i) pos[elems[i]] = i;
  FiniteGroup h;
  h.name = name;
  h.n = (int)elems.size();
  h.mul.assign(h.n, std::vector<int>(h.n));
  for (int i = 0; i < h.n; ++i)
    for (int j = 0; j < h.n; ++j) h.mul[i][j] = pos.at(g.mul[elems[i]][elems[j]]);
  h.unit = pos.at(g.unit);
  h.inv.resize(h.n);
  for (int i = 0; i < h.n; ++i) h.inv[i] = pos.at(g.inv[elems[i]]);
  return build_group(std::move(h));
}

FiniteGroup quotient_by_central(const FiniteGroup& h, const std::vector<int>& z,
                                std::vector<int>& coset_of, std::vector<int>& reps,
                                const std::string& name) {
  std::vector<int> rep(h.n);
  for (int x = 0; x < h.n; ++x) {
    int r = h.n;
    for (int zi : z) r = std::min(r, h.mul[x][zi]);
    rep[x] = r;
  }
  reps.clear();
  std::map<int, int> idx;
  for (int x = 0; x < h.n; ++x)
    if (rep[x] == x) {
      idx[x] = (int)reps.size();
      reps.push_back(x);
    }
  coset_of.resize(h.n);
  for (int x = 0; x < h.n; ++x) coset_of[x] = idx.at(rep[x]);
  FiniteGroup q;
  q.name = name;
  q.n = (int)reps.size();
  q.mul.assign(q.n, std::vector<int>(q.n));
  for (int i = 0; i < q.n; ++i)
    for (int j = 0; j < q.n; ++j) q.mul[i][j] = coset_of[h.mul[reps[i]][reps[j]]];
  q.unit = coset_of[h.unit];
  q.inv.resize(q.n);
  for (int i = 0; i < q.n; ++i) q.inv[i] = coset_of[h.inv[reps[i]]];
  return build_group(std::move(q));
}

// three families: central extensions of trivial boundary, normal inclusions
// with conjugation, and quotients by a central subgroup. level4_budget caps
// |G|^4 |H|^6 (the level-4 size of the classifying space); <= 0 disables it.
CrossedModule random_crossed_module(Rng& rng, long long level4_budget, int* family_out) {
  const auto& cat = group_catalog();
  for (;;) {
    int fam = pick(rng, 0, 2);
    CrossedModule m;
    m.name = "rxm";
    if (fam == 0) {
      const FiniteGroup* h;
      do h = &cat[pick(rng, 0, (int)cat.size() - 1)];
      while (!is_abelian(*h));
      m.h = *h;
      m.g = cat[pick(rng, 0, (int)cat.size() - 1)];
      m.bnd.assign(m.h.n, m.g.unit);
      std::vector<int> id_row(m.h.n);
      std::iota(id_row.begin(), id_row.end(), 0);
      m.act.assign(m.g.n, id_row);
    } else if (fam == 1) {
      m.g = cat[pick(rng, 0, (int)cat.size() - 1)];
      std::vector<int> seed = {pick(rng, 0, m.g.n - 1)};
      if (pick(rng, 0, 1)) seed.push_back(pick(rng, 0, m.g.n - 1));
      auto sub = subgroup_closure(m.g, seed);
      if (!is_normal_subgroup(m.g, sub)) continue;
      m.h = subgroup_of(m.g, sub, "h");
      std::map<int, int> pos;
      for (int i = 0; i < (int)sub.size(); ++i) pos[sub[i]] = i;
      m.bnd.assign(sub.begin(), sub.end());
      m.act.assign(m.g.n, std::vector<int>(m.h.n));
      for (int x = 0; x < m.g.n; ++x)
        for (int i = 0; i < m.h.n; ++i)
          m.act[x][i] = pos.at(m.g.mul[m.g.mul[x][sub[i]]][m.g.inv[x]]);
    } else {
      m.h = cat[pick(rng, 0, (int)cat.size() - 1)];
      auto zall = group_center(m.h);
      std::vector<int> nz;
      for (int zi : zall)
        if (zi != m.h.unit) nz.push_back(zi);
      if (nz.empty()) continue;
      auto z = subgroup_closure(m.h, {nz[pick(rng, 0, (int)nz.size() - 1)]});
      std::vector<int> coset_of, reps;
      m.g = quotient_by_central(m.h, z, coset_of, reps, "q");
      m.bnd = coset_of;
      m.act.assign(m.g.n, std::vector<int>(m.h.n));
      for (int gi = 0; gi < m.g.n; ++gi)
        for (int a = 0; a < m.h.n; ++a)
          m.act[gi][a] = m.h.mul[m.h.mul[reps[gi]][a]][m.h.inv[reps[gi]]];
    }
    if (level4_budget > 0) {
      long long cost = 1;
      for (int i = 0; i < 4; ++i) cost *= m.g.n;
      for (int i = 0; i < 6; ++i) cost *= m.h.n;
      if (cost > level4_budget) continue;
    }
    if (family_out) *family_out = fam;
    return build_crossed_module(std::move(m));
  }
}

// ---- random strict 1-group actions ---------------------------------------------

// families: trivial actions, a cyclic group permuting identical components,
// and C2 inverting an abelian vertex group. max_total caps |X_arr| * |G|.
StrictAction random_strict_action(Rng& rng, int max_total) {
  const auto& cat = group_catalog();
  for (;;) {
    int fam = pick(rng, 0, 2);
    StrictAction a;
    a.name = "ract";
    if (fam == 0) {
      const FiniteGroup* g;
      do g = &cat[pick(rng, 0, (int)cat.size() - 1)];
      while (g->n < 2 || g->n > 6);
      a.x = random_groupoid(rng, "rx");
      a.g = *g;
      a.phi.assign(a.g.n, identity_functor(a.x));
    } else if (fam == 1) {
      static const int ms[] = {2, 3, 4, 6};
      int mm = ms[pick(rng, 0, 3)];
      std::vector<int> divs;
      for (int c = 2; c <= mm; ++c)
        if (mm % c == 0) divs.push_back(c);
      int c = divs[pick(rng, 0, (int)divs.size() - 1)];
      std::vector<std::pair<int, int>> options; // (objects, catalog index)
      for (int k = 1; k <= 2; ++k)
        for (int i = 0; i < (int)cat.size(); ++i)
          if (c * k * k * cat[i].n <= 12) options.emplace_back(k, i);
      if (options.empty()) continue;
      auto [k, vi] = options[pick(rng, 0, (int)options.size() - 1)];
      FiniteGroupoid y = thick_groupoid(k, cat[vi], "y");
      FiniteGroupoid x = y;
      for (int i = 1; i < c; ++i) x = disjoint_union(x, y);
      x.name = "rx";
      int no = y.n_objects, na = y.n_arrows();
      a.x = x;
      a.g = cyclic_group(mm);
      a.phi.resize(mm);
      for (int e = 0; e < mm; ++e) {
        int shift = e % c;
        a.phi[e].obj.resize(x.n_objects);
        a.phi[e].arr.resize(x.n_arrows());
        for (int o = 0; o < x.n_objects; ++o)
          a.phi[e].obj[o] = ((o / no + shift) % c) * no + o % no;
        for (int r = 0; r < x.n_arrows(); ++r)
          a.phi[e].arr[r] = ((r / na + shift) % c) * na + r % na;
      }
    } else {
      std::vector<std::pair<int, int>> options;
      for (int k = 1; k <= 2; ++k)
        for (int i = 0; i < (int)cat.size(); ++i)
          if (cat[i].n >= 2 && is_abelian(cat[i]) && k * k * cat[i].n <= 12)
            options.emplace_back(k, i);
      auto [k, vi] = options[pick(rng, 0, (int)options.size() - 1)];
      const FiniteGroup& v = cat[vi];
      a.x = thick_groupoid(k, v, "rx");
      a.g = cyclic_group(2);
      a.phi.resize(2);
      a.phi[0] = identity_functor(a.x);
      a.phi[1].obj.resize(a.x.n_objects);
      std::iota(a.phi[1].obj.begin(), a.phi[1].obj.end(), 0);
      a.phi[1].arr.resize(a.x.n_arrows());
      for (int r = 0; r < a.x.n_arrows(); ++r)
        a.phi[1].arr[r] = (r / v.n) * v.n + v.inv[r % v.n];
    }
    if (a.x.n_arrows() * a.g.n > max_total) continue;
    return build_strict_action(std::move(a));
  }
}

bool same_groupoid_tables(const FiniteGroupoid& a, const FiniteGroupoid& b) {
  return a.n_objects == b.n_objects && a.src == b.src && a.tgt == b.tgt && a.unit == b.unit &&
         a.inv == b.inv && a.comp == b.comp;
}

// ---- the ten criteria -----------------------------------------------------------

bool criterion_homset(Rng& rng, std::string& detail) {
  for (int t = 0; t < 50; ++t) {
    FiniteGroupoid g = random_groupoid(rng, "g" + std::to_string(t));
    Nerve nv = nerve(g, 3);
    for (int n = 0; n <= 3; ++n) {
      long long want = nv.ss->size(n);
      long long got = count_maps(standard_simplex(n, 3).ss, nv.ss);
      if (got != want) {
        detail = "maps(simplex " + std::to_string(n) + ", nerve of " + g.name + ") = " +
                 std::to_string(got) + ", level size " + std::to_string(want);
        return false;
      }
    }
  }
  detail = "50 random groupoids, n <= 3";
  return true;
}

bool criterion_roundtrip_1(Rng& rng, std::string& detail) {
  for (int t = 0; t < 50; ++t) {
    FiniteGroupoid g = random_groupoid(rng, "g" + std::to_string(t));
    Nerve nv = nerve(g, 3);
    FiniteGroupoid gg = to_groupoid(*nv.ss);
    if (!groupoid_isomorphic(gg, g)) {
      detail = "to_groupoid(nerve(" + g.name + ")) not isomorphic to the input";
      return false;
    }
    Nerve back = nerve(gg, 3);
    if (!find_isomorphism(nv.ss, back.ss)) {
      detail = "nerve(to_groupoid(X)) not isomorphic to X for X = nerve(" + g.name + ")";
      return false;
    }
  }
  detail = "50 random groupoids, both directions";
  return true;
}

bool criterion_b2group(Rng& rng, std::string& detail) {
  int fams[3] = {0, 0, 0};
  for (int t = 0; t < 20; ++t) {
    int fam = 0;
    CrossedModule m = random_crossed_module(rng, 300000, &fam);
    ++fams[fam];
    auto bg = classifying_2group(crossed_module_to_group_like(m), 4);
    CheckReport rep = classify_n_groupoid(*bg.ss, 2);
    if (!rep.ok()) {
      detail = "sample " + std::to_string(t) + " (|H|=" + std::to_string(m.h.n) +
               ", |G|=" + std::to_string(m.g.n) + "): " + rep.to_text();
      return false;
    }
  }
  detail = "20 random crossed modules (" + std::to_string(fams[0]) + " central, " +
           std::to_string(fams[1]) + " inclusion, " + std::to_string(fams[2]) + " quotient)";
  return true;
}

bool criterion_fibrations(Rng&, std::string& detail) {
  struct Case {
    std::string name;
    FibrationBundle k;
    const FiniteGroupoid* x;
  };
  StrictAction sa = swap_action(), ta = trivial_action_pair2();
  Strict2GroupAction a0 = xm0_on_c2(), a1 = xm1_on_point(), a2 = xm2_on_point();
  std::vector<Case> cases;
  cases.push_back({"swap", strict_action_groupoid(sa), &sa.x});
  cases.push_back({"trivial", strict_action_groupoid(ta), &ta.x});
  cases.push_back({"xm0 on c2", strict_2group_action_groupoid(a0), &a0.x});
  cases.push_back({"xm1 on point", strict_2group_action_groupoid(a1), &a1.x});
  cases.push_back({"xm2 on point", strict_2group_action_groupoid(a2), &a2.x});
  for (const Case& c : cases) {
    if (!c.k.certificate.ok()) {
      detail = c.name + ": stored certificate does not hold";
      return false;
    }
    CheckReport rep = check_fibration(c.k.pi, c.k.degree);
    if (!rep.ok()) {
      detail = c.name + ": " + rep.to_text();
      return false;
    }
    SimplicialSet fib = fiber_over_basepoint(c.k);
    Nerve nx = nerve(*c.x, fib.depth);
    if (!find_isomorphism(share(std::move(fib)), nx.ss)) {
      detail = c.name + ": fiber over the basepoint is not isomorphic to the input nerve";
      return false;
    }
  }
  detail = "5 fixture bundles: certificates re-verified, fibers match";
  return true;
}

// Span objects are total 1-cells over the edge, i.e. action-groupoid arrows
// (alpha, g) packed as alpha * |G| + g (nerve 1-cells are arrows in id order).
// The canonical identification keeps the cells (1_x, g); the right leg on
// those gives the action on objects, and the unique span arrow between them
// with a prescribed left arrow gives the action on arrows.
bool criterion_lambda(Rng& rng, std::string& detail) {
  for (int t = 0; t < 20; ++t) {
    StrictAction a = random_strict_action(rng, 72);
    FibrationBundle k = strict_action_groupoid(a, 2);
    ActionSpanData lam = lambda_extract(k);
    std::string tag = "sample " + std::to_string(t) + " (|G|=" + std::to_string(a.g.n) +
                      ", |X arrows|=" + std::to_string(a.x.n_arrows()) + ")";
    if (!same_groupoid_tables(lam.fiber, a.x)) {
      detail = tag + ": fiber groupoid differs from the input tables";
      return false;
    }
    if ((int)lam.spans.size() != a.g.n) {
      detail = tag + ": expected one span per group element";
      return false;
    }
    for (int g = 0; g < a.g.n; ++g) {
      const ActionSpan& span = lam.spans[g];
      if (span.base_edge != g) {
        detail = tag + ": span order does not follow base edges";
        return false;
      }
      std::map<Cell, int> owner;
      for (int o = 0; o < span.y.n_objects; ++o) owner[span.obj_cell[o]] = o;
      std::vector<int> ox(a.x.n_objects, -1);
      for (int x = 0; x < a.x.n_objects; ++x) {
        auto it = owner.find((Cell)a.x.unit[x] * a.g.n + g);
        if (it == owner.end()) {
          detail = tag + ": unit cell over edge " + std::to_string(g) + " missing from the span";
          return false;
        }
        ox[x] = it->second;
        if (span.left.obj[ox[x]] != x || span.right.obj[ox[x]] != a.phi[g].obj[x]) {
          detail = tag + ": object " + std::to_string(x) + " over edge " + std::to_string(g) +
                   " recovers " + std::to_string(span.right.obj[ox[x]]) + ", action says " +
                   std::to_string(a.phi[g].obj[x]);
          return false;
        }
      }
      for (int b = 0; b < a.x.n_arrows(); ++b) {
        int o1 = ox[a.x.src[b]], o2 = ox[a.x.tgt[b]];
        int found = -1;
        for (int q = 0; q < (int)span.y.src.size(); ++q) {
          if (span.y.src[q] != o1 || span.y.tgt[q] != o2 || span.left.arr[q] != b) continue;
          if (found != -1) {
            detail = tag + ": two span arrows share the left arrow " + std::to_string(b);
            return false;
          }
          found = q;
        }
        if (found < 0) {
          detail = tag + ": no span arrow over edge " + std::to_string(g) + " lifts arrow " +
                   std::to_string(b);
          return false;
        }
        if (span.right.arr[found] != a.phi[g].arr[b]) {
          detail = tag + ": arrow " + std::to_string(b) + " over edge " + std::to_string(g) +
                   " recovers " + std::to_string(span.right.arr[found]) + ", action says " +
                   std::to_string(a.phi[g].arr[b]);
          return false;
        }
      }
    }
  }
  detail = "20 random strict actions, objects and arrows recovered exactly";
  return true;
}

bool criterion_isotropy(Rng& rng, std::string& detail) {
  int n_free = 0, n_nonfree = 0;
  for (int t = 0; t < 50; ++t) {
    CrossedModule m = random_crossed_module(rng, 0, nullptr);
    auto bg = classifying_2group(crossed_module_to_group_like(m), 2);
    bool free = check_2_isotropy_free(*bg.ss).ok();
    // independent boundary-injectivity oracle on the 2-cells
    bool injective = true;
    std::map<std::array<Cell, 3>, Cell> seen;
    for (Cell c = 0; c < bg.ss->size(2); ++c) {
      std::array<Cell, 3> key = {bg.ss->face(2, 0, c), bg.ss->face(2, 1, c),
                                 bg.ss->face(2, 2, c)};
      if (!seen.emplace(key, c).second) {
        injective = false;
        break;
      }
    }
    (free ? n_free : n_nonfree)++;
    if (free && !injective) {
      detail = "sample " + std::to_string(t) + " (|H|=" + std::to_string(m.h.n) +
               ", |G|=" + std::to_string(m.g.n) +
               "): 2-isotropy free but two 2-cells share a boundary";
      return false;
    }
    if (free != check_isotropy_consequences(*bg.ss).ok()) {
      detail = "sample " + std::to_string(t) + ": consequence checker disagrees (free=" +
               std::to_string(free) + ")";
      return false;
    }
  }
  if (n_free == 0 || n_nonfree == 0) {
    detail = "degenerate corpus: " + std::to_string(n_free) + " free / " +
             std::to_string(n_nonfree) + " non-free samples";
    return false;
  }
  detail = "50 random 2-groupoids (" + std::to_string(n_free) + " free, " +
           std::to_string(n_nonfree) + " non-free), zero violations";
  return true;
}

bool criterion_reduce(Rng& rng, std::string& detail) {
  auto bg = classifying_2group(crossed_module_to_group_like(xm2()), 4);
  ReduceResult r = reduce_to_1(*bg.ss);
  if (!groupoid_isomorphic(r.groupoid, one_object_groupoid(cyclic_group(2)))) {
    detail = "reduction of the doubling classifying space is not the one-object C2 groupoid";
    return false;
  }
  CheckReport rep = check_hypercover(r.proj, 2);
  if (!rep.ok()) {
    detail = "reduction projection: " + rep.to_text();
    return false;
  }
  for (int t = 0; t < 20; ++t) {
    FiniteGroupoid g = random_groupoid(rng, "g" + std::to_string(t));
    Nerve nv = nerve(g, 4);
    ReduceResult rr = reduce_to_1(*nv.ss);
    if (!groupoid_isomorphic(rr.groupoid, g)) {
      detail = "reduce(nerve(" + g.name + ")) is not isomorphic to the input";
      return false;
    }
  }
  detail = "doubling fixture reduced to C2 with hypercover projection; 20 nerves round-trip";
  return true;
}

bool criterion_pushforward(Rng& rng, std::string& detail) {
  // fixture: product bundle over the doubling classifying space, pushed
  // forward along its reduction hypercover and pulled back again
  auto bg = classifying_2group(crossed_module_to_group_like(xm2()), 4);
  ReduceResult r = reduce_to_1(*bg.ss);
  SSetPtr base = r.proj.from;
  Nerve nf = nerve(one_object_groupoid(cyclic_group(2)), 4);
  ProductComplex prod = product(base, nf.ss);
  FibrationBundle eb;
  eb.total = prod.ss;
  eb.base = base;
  eb.fiber = nf.ss;
  eb.pi = prod.pr1();
  std::vector<std::vector<Cell>> lv(base->depth + 1);
  Cell bp = 0;
  for (int n = 0; n <= base->depth; ++n) {
    lv[n].resize(nf.ss->sizes[n]);
    for (Cell c = 0; c < (Cell)nf.ss->sizes[n]; ++c) lv[n][c] = prod.pair(n, bp, c);
    if (n < base->depth) bp = base->degen(n, 0, bp);
  }
  eb.incl = build_map(nf.ss, prod.ss, std::move(lv));
  eb.degree = 2;
  eb.certificate = check_fibration(eb.pi, 2);
  if (!eb.certificate.ok()) {
    detail = "product bundle is not a fibration: " + eb.certificate.to_text();
    return false;
  }
  PushforwardResult pf = pushforward_bundle(eb, r.proj);
  if (!pf.bundle.certificate.ok()) {
    detail = "pushforward certificate: " + pf.bundle.certificate.to_text();
    return false;
  }
  FibrationBundle back = pullback_bundle(pf.bundle, r.proj);
  if (!bundle_isomorphic(back, eb)) {
    detail = "pullback of the pushforward is not isomorphic to the product bundle";
    return false;
  }
  // corpus: pushforward along the identity hypercover round-trips
  for (int t = 0; t < 10; ++t) {
    StrictAction a = random_strict_action(rng, 48);
    FibrationBundle k = strict_action_groupoid(a, 3);
    SimplicialMap f = identity_map(k.base);
    PushforwardResult idpf = pushforward_bundle(k, f);
    if (!bundle_isomorphic(idpf.bundle, k)) {
      detail = "sample " + std::to_string(t) + ": identity pushforward changed the bundle";
      return false;
    }
    FibrationBundle idback = pullback_bundle(idpf.bundle, f);
    if (!bundle_isomorphic(idback, k)) {
      detail = "sample " + std::to_string(t) + ": identity round-trip lost the bundle";
      return false;
    }
  }
  detail = "doubling fixture round-trips; 10 identity hypercovers round-trip";
  return true;
}

bool criterion_strictify(Rng&, std::string& detail) {
  FibrationBundle kb = strict_action_groupoid(swap_action());
  StrictifyResult st = strictify(kb);
  CheckReport rep = check_equivalence(st.fiber_equivalence, 1);
  if (!rep.ok()) {
    detail = "fiber comparison: " + rep.to_text();
    return false;
  }
  QuotientResult fq = free_quotient(st.action);
  Nerve qn = nerve(fq.quotient, kb.total->depth);
  if (!find_isomorphism(qn.ss, kb.total)) {
    detail = "free quotient of the strictified action is not isomorphic to the total space";
    return false;
  }
  detail = "strictified swap: equivalence holds, quotient recovers the total space";
  return true;
}

bool criterion_serialization(Rng&, std::string& detail) {
  FiniteGroupoid c2 = one_object_groupoid(cyclic_group(2), "c2");
  FiniteGroupoid p2 = pair_groupoid(2);
  FiniteGroupoid d2 = discrete_groupoid(2);
  Nerve np2 = nerve(p2, 3, "np2");
  auto bg = classifying_2group(crossed_module_to_group_like(xm0()), 3, "bxm0");

  Document doc;
  add_groupoid(doc, "c2", c2);
  add_groupoid(doc, "pair2", p2);
  add_groupoid(doc, "disc2", d2);
  doc.crossed_modules.emplace_back("xm0", xm0());
  doc.crossed_modules.emplace_back("xm1", xm1());
  doc.crossed_modules.emplace_back("xm2", xm2());
  add_sset(doc, "np2", *np2.ss);
  add_sset(doc, "bxm0", *bg.ss);
  add_map(doc, "id_np2", "np2", "np2", identity_map(np2.ss));
  StrictAction sa = swap_action();
  ActionBlock ab;
  ab.name = "swap";
  ab.groupoid = "disc2";
  ab.group = "c2g";
  add_groupoid(doc, "c2g", one_object_groupoid(sa.g, "c2g"));
  ab.phi = sa.phi;
  doc.actions.push_back(ab);
  Strict2GroupAction a0 = xm0_on_c2();
  ActionBlock ab2;
  ab2.name = "xm0c2";
  ab2.groupoid = "c2";
  ab2.crossed_module = "xm0";
  ab2.phi = a0.phi;
  ab2.theta = a0.theta;
  doc.actions.push_back(ab2);

  std::string s1 = serialize_document(doc);
  std::string s2 = serialize_document(doc);
  std::string s3 = serialize_document(doc);
  if (s1 != s2 || s2 != s3) {
    detail = "serialize is not byte-stable across repeated runs";
    return false;
  }
  Document re = parse_document(s1);
  if (serialize_document(re) != s1) {
    detail = "serialize(parse(s)) differs from s";
    return false;
  }
  // structural identity of the round-tripped blocks
  const SimplicialSet* rebg = re.find_sset("bxm0");
  if (!rebg || rebg->sizes != bg.ss->sizes || rebg->faces != bg.ss->faces ||
      rebg->degens != bg.ss->degens) {
    detail = "classifying-space block changed structurally across the round-trip";
    return false;
  }
  const FiniteGroupoid* rep2 = re.find_groupoid("pair2");
  if (!rep2 || !same_groupoid_tables(*rep2, p2)) {
    detail = "groupoid block changed structurally across the round-trip";
    return false;
  }
  const CrossedModule* rexm = re.find_crossed_module("xm2");
  if (!rexm || rexm->bnd != xm2().bnd || rexm->act != xm2().act ||
      rexm->h.mul != xm2().h.mul || rexm->g.mul != xm2().g.mul) {
    detail = "crossed-module block changed structurally across the round-trip";
    return false;
  }
  const ActionBlock* reab = re.find_action("xm0c2");
  if (!reab || reab->theta != a0.theta || reab->phi.size() != a0.phi.size() ||
      reab->phi[0].obj != a0.phi[0].obj || reab->phi[0].arr != a0.phi[0].arr) {
    detail = "action block changed structurally across the round-trip";
    return false;
  }
  const MapBlock* remap = re.find_map("id_np2");
  if (!remap || remap->level != identity_map(np2.ss).level) {
    detail = "map block changed structurally across the round-trip";
    return false;
  }
  // the parsed blocks must still resolve and validate
  (void)action_from_block(re, *re.find_action("swap"));
  (void)action2_from_block(re, *reab);
  detail = "3x byte-identical; parse then serialize is the identity on all block types";
  return true;
}

} // namespace

int main(int argc, char** argv) {
  unsigned long seed = 20260818;
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg == "--seed" && i + 1 < argc) {
      std::string v = argv[++i];
      auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), seed);
      if (ec != std::errc() || p != v.data() + v.size()) {
        std::cerr << "error: --seed expects an unsigned integer\n";
        return 2;
      }
    } else if (arg == "--help" || arg == "-h") {
      std::cout << "usage: acceptance [--seed N]\n";
      return 0;
    } else {
      std::cerr << "error: unknown argument '" << arg << "'\n";
      return 2;
    }
  }

  struct Criterion {
    const char* name;
    double limit_s;
    bool (*run)(Rng&, std::string&);
  };
  const Criterion table[] = {
      {"hom-set law: maps from the n-simplex count the n-cells of a nerve", 10, criterion_homset},
      {"1-groupoid round-trip between groupoids and their nerves", 10, criterion_roundtrip_1},
      {"classifying spaces of crossed modules verify as 2-groups", 60, criterion_b2group},
      {"action bundles certify as fibrations with the expected fibers", 30, criterion_fibrations},
      {"span extraction recovers strict actions exactly", 30, criterion_lambda},
      {"2-isotropy-free implies 2-cells are determined by their boundaries", 30,
       criterion_isotropy},
      {"reduction to a 1-groupoid: doubling fixture and nerve round-trips", 30, criterion_reduce},
      {"pushforward then pullback along a hypercover returns the bundle", 60,
       criterion_pushforward},
      {"strictified swap action: fiber equivalence and free quotient", 30, criterion_strictify},
      {"serialization is deterministic and structurally faithful", 5, criterion_serialization},
  };

  std::cout << "acceptance gate, seed " << seed << "\n";
  int failed = 0;
  for (int i = 0; i < 10; ++i) {
    Rng rng(static_cast<unsigned long>(seed * 1000003ULL + i));
    std::string detail;
    bool ok = false;
    auto t0 = std::chrono::steady_clock::now();
    try {
      ok = table[i].run(rng, detail);
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (ok && secs > table[i].limit_s) {
      ok = false;
      detail += " — but exceeded the time budget";
    }
    char line[512];
    std::snprintf(line, sizeof line, "criterion %2d: %s  %s — %s (%.1fs, budget %.0fs)", i + 1,
                  ok ? "PASS" : "FAIL", table[i].name, detail.c_str(), secs, table[i].limit_s);
    std::cout << line << "\n";
    failed += ok ? 0 : 1;
  }
  std::cout << (failed == 0 ? "acceptance: all 10 criteria passed"
                            : "acceptance: " + std::to_string(failed) + " criterion(s) failed")
            << "\n";
  return failed == 0 ? 0 : 1;
}
