#include "kanfib/groupoid.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <sstream>

namespace kanfib {

int FiniteGroupoid::compose(int a, int b) const {
  int c = comp[a][b];
  if (c < 0)
    fail(Errc::validation_error, name + ": arrows " + std::to_string(a) + ", " +
                                     std::to_string(b) + " not composable");
  return c;
}

FiniteGroupoid build_groupoid(FiniteGroupoid raw) {
  FiniteGroupoid& g = raw;
  int no = g.n_objects, na = g.n_arrows();
  auto bad = [&](const std::string& m) { fail(Errc::validation_error, g.name + ": " + m); };
  if (no < 0) bad("negative object count");
  if ((int)g.tgt.size() != na || (int)g.inv.size() != na || (int)g.unit.size() != no ||
      (int)g.comp.size() != na)
    bad("table sizes disagree");
  for (int a = 0; a < na; ++a) {
    if (g.src[a] < 0 || g.src[a] >= no || g.tgt[a] < 0 || g.tgt[a] >= no) bad("arrow endpoints out of range");
    if (g.inv[a] < 0 || g.inv[a] >= na) bad("inverse out of range");
    if ((int)g.comp[a].size() != na) bad("composition row size");
  }
  for (int x = 0; x < no; ++x) {
    int u = g.unit[x];
    if (u < 0 || u >= na || g.src[u] != x || g.tgt[u] != x) bad("unit arrow mistyped");
  }
  for (int a = 0; a < na; ++a)
    for (int b = 0; b < na; ++b) {
      int c = g.comp[a][b];
      if ((c >= 0) != g.composable(a, b)) bad("composability pattern wrong");
      if (c >= 0 && (g.src[c] != g.src[a] || g.tgt[c] != g.tgt[b])) bad("composite mistyped");
    }
  for (int a = 0; a < na; ++a) {
    if (g.comp[g.unit[g.src[a]]][a] != a || g.comp[a][g.unit[g.tgt[a]]] != a) bad("unit law fails");
    int i = g.inv[a];
    if (g.src[i] != g.tgt[a] || g.tgt[i] != g.src[a]) bad("inverse mistyped");
    if (g.comp[a][i] != g.unit[g.src[a]] || g.comp[i][a] != g.unit[g.tgt[a]]) bad("inverse law fails");
  }
  for (int a = 0; a < na; ++a)
    for (int b = 0; b < na; ++b) {
      if (!g.composable(a, b)) continue;
      for (int c = 0; c < na; ++c) {
        if (!g.composable(b, c)) continue;
        if (g.comp[g.comp[a][b]][c] != g.comp[a][g.comp[b][c]]) bad("associativity fails");
      }
    }
  return raw;
}

GroupoidFunctor build_functor(const FiniteGroupoid& a, const FiniteGroupoid& b, GroupoidFunctor f) {
  if ((int)f.obj.size() != a.n_objects || (int)f.arr.size() != a.n_arrows())
    fail(Errc::validation_error, "functor table sizes disagree");
  for (int x = 0; x < a.n_objects; ++x)
    if (f.obj[x] < 0 || f.obj[x] >= b.n_objects)
      fail(Errc::validation_error, "functor object image out of range");
  for (int r = 0; r < a.n_arrows(); ++r) {
    int i = f.arr[r];
    if (i < 0 || i >= b.n_arrows()) fail(Errc::validation_error, "functor arrow image out of range");
    if (b.src[i] != f.obj[a.src[r]] || b.tgt[i] != f.obj[a.tgt[r]])
      fail(Errc::validation_error, "functor breaks typing at arrow " + std::to_string(r));
  }
  for (int x = 0; x < a.n_objects; ++x)
    if (f.arr[a.unit[x]] != b.unit[f.obj[x]])
      fail(Errc::validation_error, "functor breaks units at object " + std::to_string(x));
  for (int r = 0; r < a.n_arrows(); ++r)
    for (int s = 0; s < a.n_arrows(); ++s)
      if (a.composable(r, s) && f.arr[a.comp[r][s]] != b.comp[f.arr[r]][f.arr[s]])
        fail(Errc::validation_error, "functor breaks composition at arrows " + std::to_string(r) +
                                         ", " + std::to_string(s));
  return f;
}

GroupoidFunctor compose_functor(const GroupoidFunctor& f, const GroupoidFunctor& g) {
  GroupoidFunctor h;
  h.obj.resize(f.obj.size());
  h.arr.resize(f.arr.size());
  for (size_t i = 0; i < f.obj.size(); ++i) h.obj[i] = g.obj[f.obj[i]];
  for (size_t i = 0; i < f.arr.size(); ++i) h.arr[i] = g.arr[f.arr[i]];
  return h;
}

GroupoidFunctor identity_functor(const FiniteGroupoid& g) {
  GroupoidFunctor f;
  f.obj.resize(g.n_objects);
  f.arr.resize(g.n_arrows());
  std::iota(f.obj.begin(), f.obj.end(), 0);
  std::iota(f.arr.begin(), f.arr.end(), 0);
  return f;
}

// ---- nerve -------------------------------------------------------------------

Cell Nerve::cell_of(int n, const std::vector<int>& s) const {
  auto it = index[n].find(s);
  if (it == index[n].end()) fail(Errc::internal_error, "string is not a nerve cell");
  return it->second;
}

int Nerve::string_vertex(int n, Cell c, int v) const {
  const auto& s = strings[n][c];
  if (n == 0) return (int)c;
  return v == 0 ? g.src[s[0]] : g.tgt[s[v - 1]];
}

Nerve nerve(const FiniteGroupoid& g, int depth, const std::string& name) {
  Nerve nv;
  nv.g = g;
  nv.strings.resize(depth + 1);
  nv.index.resize(depth + 1);
  SimplicialSet s;
  s.name = name.empty() ? "N(" + g.name + ")" : name;
  s.depth = depth;
  s.sizes.resize(depth + 1);
  s.faces.resize(depth + 1);
  s.degens.resize(std::max(0, depth));
  // level 0: objects (the empty string at each object)
  for (int x = 0; x < g.n_objects; ++x) {
    nv.strings[0].push_back({});
    (void)x;
  }
  s.sizes[0] = g.n_objects;
  for (int n = 1; n <= depth; ++n) {
    if (n == 1) {
      for (int a = 0; a < g.n_arrows(); ++a) nv.strings[1].push_back({a});
    } else {
      for (const auto& prev : nv.strings[n - 1])
        for (int a = 0; a < g.n_arrows(); ++a)
          if (g.src[a] == g.tgt[prev.back()]) {
            auto str = prev;
            str.push_back(a);
            nv.strings[n].push_back(std::move(str));
          }
      std::sort(nv.strings[n].begin(), nv.strings[n].end());
    }
    s.sizes[n] = (int)nv.strings[n].size();
    for (Cell c = 0; c < s.sizes[n]; ++c) nv.index[n].emplace(nv.strings[n][c], c);
  }

  auto vertex_of = [&](int n, Cell c, int v) { return nv.string_vertex(n, c, v); };
  for (int n = 1; n <= depth; ++n) {
    s.faces[n].assign(n + 1, std::vector<Cell>(s.sizes[n]));
    for (Cell c = 0; c < s.sizes[n]; ++c) {
      const auto& str = nv.strings[n][c];
      for (int i = 0; i <= n; ++i) {
        std::vector<int> r;
        r.reserve(n - 1);
        if (i == 0)
          r.assign(str.begin() + 1, str.end());
        else if (i == n)
          r.assign(str.begin(), str.end() - 1);
        else {
          r.assign(str.begin(), str.begin() + (i - 1));
          r.push_back(g.comp[str[i - 1]][str[i]]);
          r.insert(r.end(), str.begin() + i + 1, str.end());
        }
        s.faces[n][i][c] = (n == 1) ? (Cell)vertex_of(1, c, 1 - i) : nv.cell_of(n - 1, r);
      }
    }
  }
  for (int n = 0; n < depth; ++n) {
    s.degens[n].assign(n + 1, std::vector<Cell>(s.sizes[n]));
    for (Cell c = 0; c < s.sizes[n]; ++c) {
      const auto& str = nv.strings[n][c];
      for (int i = 0; i <= n; ++i) {
        std::vector<int> r(str.begin(), str.begin() + i);
        r.push_back(g.unit[vertex_of(n, c, i)]);
        r.insert(r.end(), str.begin() + i, str.end());
        s.degens[n][i][c] = nv.cell_of(n + 1, r);
      }
    }
  }
  nv.ss = share(build_simplicial_set(std::move(s)));
  return nv;
}

// ---- inverse of the nerve ------------------------------------------------------

FiniteGroupoid to_groupoid(const SimplicialSet& x) {
  CheckReport cls = classify_n_groupoid(x, 1);
  if (cls.verdict == Verdict::fails)
    fail(Errc::not_a_1_groupoid, x.name + " is not a 1-groupoid: " +
                                     (cls.witnesses.empty() ? "" : cls.witnesses.front()));
  FiniteGroupoid g;
  g.name = "Pi1(" + x.name + ")";
  g.n_objects = x.size(0);
  int na = x.size(1);
  g.src.resize(na);
  g.tgt.resize(na);
  g.inv.assign(na, -1);
  g.unit.resize(x.size(0));
  for (int a = 0; a < na; ++a) {
    g.src[a] = x.face(1, 1, a);
    g.tgt[a] = x.face(1, 0, a);
  }
  for (Cell v = 0; v < x.size(0); ++v) g.unit[v] = x.degen(0, 0, v);
  HornSet inner = horn_restriction(x, 2, 1);
  g.comp.assign(na, std::vector<int>(na, -1));
  for (int a = 0; a < na; ++a)
    for (int b = 0; b < na; ++b) {
      if (!g.composable(a, b)) continue;
      auto it = inner.index.find({b, a}); // slots: d_0 = b, d_2 = a
      if (it == inner.index.end() || inner.fillers[it->second].size() != 1)
        fail(Errc::not_a_1_groupoid, x.name + ": composite of edges not uniquely filled");
      g.comp[a][b] = x.face(2, 1, inner.fillers[it->second][0]);
    }
  // right inverse b solves a.b = unit: fill the (2,0)-horn [d_1 = unit_{s a}, d_2 = a],
  // read off d_0; left inverse c solves c.a = unit: fill the (2,2)-horn
  // [d_0 = a, d_1 = unit_{t a}], read off d_2. Both must agree.
  HornSet h20 = horn_restriction(x, 2, 0);
  HornSet h22 = horn_restriction(x, 2, 2);
  for (int a = 0; a < na; ++a) {
    Cell ut = g.unit[g.tgt[a]], us = g.unit[g.src[a]];
    auto itr = h20.index.find({us, (Cell)a});
    if (itr == h20.index.end() || h20.fillers[itr->second].size() != 1)
      fail(Errc::not_a_1_groupoid, x.name + ": right inverse horn not uniquely filled");
    int rinv = (int)x.face(2, 0, h20.fillers[itr->second][0]);
    auto itl = h22.index.find({(Cell)a, ut});
    if (itl == h22.index.end() || h22.fillers[itl->second].size() != 1)
      fail(Errc::not_a_1_groupoid, x.name + ": left inverse horn not uniquely filled");
    int linv = (int)x.face(2, 2, h22.fillers[itl->second][0]);
    if (rinv != linv)
      fail(Errc::not_a_1_groupoid, x.name + ": left and right inverses disagree at arrow " +
                                       std::to_string(a));
    g.inv[a] = rinv;
  }
  return build_groupoid(std::move(g));
}

SimplicialMap spine_map(SSetPtr x, const Nerve& n) {
  if (n.ss->depth < x->depth) fail(Errc::truncation_mismatch, "nerve shallower than source");
  std::vector<std::vector<Cell>> lv(x->depth + 1);
  lv[0].resize(x->size(0));
  for (Cell c = 0; c < x->size(0); ++c) lv[0][c] = c;
  for (int m = 1; m <= x->depth; ++m) {
    lv[m].resize(x->size(m));
    for (Cell c = 0; c < x->size(m); ++c) {
      std::vector<int> spine(m);
      for (int i = 0; i < m; ++i) {
        // edge between vertices i, i+1: strike all others
        VertexSeq mu = {(int8_t)i, (int8_t)(i + 1)};
        spine[i] = (int)apply_operator(*x, m, c, mu);
      }
      lv[m][c] = n.cell_of(m, spine);
    }
  }
  return build_map(std::move(x), n.ss, std::move(lv));
}

SimplicialMap functor_to_map(const GroupoidFunctor& f, const Nerve& from, const Nerve& to) {
  if (to.ss->depth < from.ss->depth) fail(Errc::truncation_mismatch, "target nerve too shallow");
  std::vector<std::vector<Cell>> lv(from.ss->depth + 1);
  lv[0].resize(from.ss->size(0));
  for (Cell c = 0; c < from.ss->size(0); ++c) lv[0][c] = f.obj[c];
  for (int n = 1; n <= from.ss->depth; ++n) {
    lv[n].resize(from.ss->size(n));
    for (Cell c = 0; c < from.ss->size(n); ++c) {
      std::vector<int> img(from.strings[n][c]);
      for (auto& a : img) a = f.arr[a];
      lv[n][c] = to.cell_of(n, img);
    }
  }
  return build_map(from.ss, to.ss, std::move(lv));
}

GroupoidFunctor map_to_functor(const SimplicialMap& m, const Nerve& from, const Nerve& to) {
  if (m.from != from.ss || m.to != to.ss) fail(Errc::validation_error, "map endpoints are not the nerves");
  GroupoidFunctor f;
  f.obj.assign(m.level[0].begin(), m.level[0].end());
  f.arr.resize(from.g.n_arrows());
  for (int a = 0; a < from.g.n_arrows(); ++a) {
    Cell img = m.at(1, from.cell_of(1, {a}));
    f.arr[a] = to.strings[1][img][0];
  }
  return build_functor(from.g, to.g, std::move(f));
}

// ---- isomorphism search ----------------------------------------------------------

std::optional<GroupoidFunctor> find_groupoid_isomorphism(const FiniteGroupoid& a,
                                                         const FiniteGroupoid& b) {
  if (a.n_objects != b.n_objects || a.n_arrows() != b.n_arrows()) return std::nullopt;
  int no = a.n_objects, na = a.n_arrows();
  std::vector<int> obj(no, -1), arr(na, -1);
  std::vector<char> oused(no, 0), aused(na, 0);
  // assign objects first, then arrows grouped by (src, tgt)
  std::function<bool(int)> arrows = [&](int r) -> bool {
    if (r == na) {
      // composition table must match
      for (int p = 0; p < na; ++p)
        for (int q = 0; q < na; ++q)
          if (a.composable(p, q) && arr[a.comp[p][q]] != b.comp[arr[p]][arr[q]]) return false;
      return true;
    }
    for (int t = 0; t < na; ++t) {
      if (aused[t] || b.src[t] != obj[a.src[r]] || b.tgt[t] != obj[a.tgt[r]]) continue;
      if (a.inv[r] < r && arr[a.inv[r]] != b.inv[t]) continue;
      bool unit_ok = true;
      for (int x = 0; x < no && unit_ok; ++x)
        if (a.unit[x] == r && b.unit[obj[x]] != t) unit_ok = false;
      if (!unit_ok) continue;
      // partial composition check against already-assigned arrows
      bool ok = true;
      for (int p = 0; p < r && ok; ++p) {
        if (a.composable(p, r) && arr[a.comp[p][r]] >= 0 &&
            arr[a.comp[p][r]] != b.comp[arr[p]][t])
          ok = false;
        if (a.composable(r, p) && arr[a.comp[r][p]] >= 0 &&
            arr[a.comp[r][p]] != b.comp[t][arr[p]])
          ok = false;
      }
      if (a.composable(r, r) && arr[a.comp[r][r]] >= 0 && arr[a.comp[r][r]] != b.comp[t][t])
        ok = false;
      if (!ok) continue;
      arr[r] = t;
      aused[t] = 1;
      if (arrows(r + 1)) return true;
      arr[r] = -1;
      aused[t] = 0;
    }
    return false;
  };
  std::function<bool(int)> objects = [&](int x) -> bool {
    if (x == no) return arrows(0);
    for (int y = 0; y < no; ++y) {
      if (oused[y]) continue;
      obj[x] = y;
      oused[y] = 1;
      if (objects(x + 1)) return true;
      obj[x] = -1;
      oused[y] = 0;
    }
    return false;
  };
  if (!objects(0)) return std::nullopt;
  GroupoidFunctor f;
  f.obj = obj;
  f.arr = arr;
  return build_functor(a, b, std::move(f));
}

bool groupoid_isomorphic(const FiniteGroupoid& a, const FiniteGroupoid& b) {
  return find_groupoid_isomorphism(a, b).has_value();
}

// ---- groups ------------------------------------------------------------------------

FiniteGroup build_group(FiniteGroup raw) {
  FiniteGroup& g = raw;
  auto bad = [&](const std::string& m) { fail(Errc::validation_error, g.name + ": " + m); };
  if (g.n <= 0) bad("empty group");
  if ((int)g.mul.size() != g.n) bad("multiplication table size");
  for (auto& row : g.mul) {
    if ((int)row.size() != g.n) bad("multiplication row size");
    for (int v : row)
      if (v < 0 || v >= g.n) bad("multiplication entry out of range");
  }
  if (g.unit < 0 || g.unit >= g.n) bad("unit out of range");
  for (int a = 0; a < g.n; ++a)
    if (g.mul[g.unit][a] != a || g.mul[a][g.unit] != a) bad("unit law fails");
  if ((int)g.inv.size() != g.n) bad("inverse table size");
  for (int a = 0; a < g.n; ++a) {
    if (g.inv[a] < 0 || g.inv[a] >= g.n) bad("inverse out of range");
    if (g.mul[a][g.inv[a]] != g.unit || g.mul[g.inv[a]][a] != g.unit) bad("inverse law fails");
  }
  for (int a = 0; a < g.n; ++a)
    for (int b = 0; b < g.n; ++b)
      for (int c = 0; c < g.n; ++c)
        if (g.mul[g.mul[a][b]][c] != g.mul[a][g.mul[b][c]]) bad("associativity fails");
  return raw;
}

FiniteGroup cyclic_group(int k) {
  FiniteGroup g;
  g.name = "C" + std::to_string(k);
  g.n = k;
  g.mul.assign(k, std::vector<int>(k));
  g.inv.resize(k);
  for (int a = 0; a < k; ++a) {
    g.inv[a] = (k - a) % k;
    for (int b = 0; b < k; ++b) g.mul[a][b] = (a + b) % k;
  }
  g.unit = 0;
  return build_group(std::move(g));
}

FiniteGroup klein_group() {
  FiniteGroup g;
  g.name = "K4";
  g.n = 4;
  g.mul.assign(4, std::vector<int>(4));
  g.inv.resize(4);
  for (int a = 0; a < 4; ++a) {
    g.inv[a] = a;
    for (int b = 0; b < 4; ++b) g.mul[a][b] = a ^ b;
  }
  g.unit = 0;
  return build_group(std::move(g));
}

FiniteGroup symmetric_group_3() {
  // permutations of {0,1,2} in lexicographic one-line order
  std::vector<std::array<int, 3>> perms = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                           {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  auto find = [&](const std::array<int, 3>& p) {
    for (int i = 0; i < 6; ++i)
      if (perms[i] == p) return i;
    return -1;
  };
  FiniteGroup g;
  g.name = "S3";
  g.n = 6;
  g.mul.assign(6, std::vector<int>(6));
  g.inv.resize(6);
  for (int a = 0; a < 6; ++a) {
    std::array<int, 3> ia{};
    for (int v = 0; v < 3; ++v) ia[perms[a][v]] = v;
    g.inv[a] = find(ia);
    for (int b = 0; b < 6; ++b) {
      std::array<int, 3> c{};
      for (int v = 0; v < 3; ++v) c[v] = perms[b][perms[a][v]]; // a then b
      g.mul[a][b] = find(c);
    }
  }
  g.unit = 0;
  return build_group(std::move(g));
}

FiniteGroup dihedral_group_8() {
  // elements r^i s^j, id = 2*i + j... encoded as i + 4*j for i in 0..3, j in 0..1
  FiniteGroup g;
  g.name = "D4";
  g.n = 8;
  g.mul.assign(8, std::vector<int>(8));
  g.inv.resize(8);
  auto enc = [](int i, int j) { return i + 4 * j; };
  for (int i1 = 0; i1 < 4; ++i1)
    for (int j1 = 0; j1 < 2; ++j1)
      for (int i2 = 0; i2 < 4; ++i2)
        for (int j2 = 0; j2 < 2; ++j2) {
          // (r^i1 s^j1)(r^i2 s^j2) = r^(i1 + (j1 ? -i2 : i2)) s^(j1+j2)
          int i = ((i1 + (j1 ? 4 - i2 : i2)) % 4 + 4) % 4;
          int j = (j1 + j2) % 2;
          g.mul[enc(i1, j1)][enc(i2, j2)] = enc(i, j);
        }
  g.unit = 0;
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b)
      if (g.mul[a][b] == 0) g.inv[a] = b;
  return build_group(std::move(g));
}

FiniteGroup quaternion_group() {
  // 0..7 = 1, i, j, k, -1, -i, -j, -k
  auto neg = [](int x) { return x < 4 ? x + 4 : x - 4; };
  FiniteGroup g;
  g.name = "Q8";
  g.n = 8;
  g.mul.assign(8, std::vector<int>(8));
  g.inv.resize(8);
  // base table on {1,i,j,k}: i*j=k, j*k=i, k*i=j, x*x=-1 for x in {i,j,k}
  auto base = [&](int a, int b) -> int {
    if (a == 0) return b;
    if (b == 0) return a;
    if (a == b) return 4; // -1
    if (a == 1 && b == 2) return 3;
    if (a == 2 && b == 3) return 1;
    if (a == 3 && b == 1) return 2;
    if (a == 2 && b == 1) return neg(3);
    if (a == 3 && b == 2) return neg(1);
    if (a == 1 && b == 3) return neg(2);
    fail(Errc::internal_error, "quaternion table");
  };
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      int r = base(a % 4, b % 4);
      if ((a >= 4) != (b >= 4)) r = neg(r);
      g.mul[a][b] = r;
    }
  g.unit = 0;
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b)
      if (g.mul[a][b] == 0) g.inv[a] = b;
  return build_group(std::move(g));
}

FiniteGroup group_product(const FiniteGroup& a, const FiniteGroup& b) {
  FiniteGroup g;
  g.name = a.name + "x" + b.name;
  g.n = a.n * b.n;
  g.mul.assign(g.n, std::vector<int>(g.n));
  g.inv.resize(g.n);
  for (int x = 0; x < g.n; ++x) {
    g.inv[x] = a.inv[x / b.n] * b.n + b.inv[x % b.n];
    for (int y = 0; y < g.n; ++y)
      g.mul[x][y] = a.mul[x / b.n][y / b.n] * b.n + b.mul[x % b.n][y % b.n];
  }
  g.unit = a.unit * b.n + b.unit;
  return build_group(std::move(g));
}

FiniteGroupoid one_object_groupoid(const FiniteGroup& g, const std::string& name) {
  FiniteGroupoid go;
  go.name = name.empty() ? "B" + g.name : name;
  go.n_objects = 1;
  go.src.assign(g.n, 0);
  go.tgt.assign(g.n, 0);
  go.unit = {g.unit};
  go.inv = g.inv;
  go.comp.assign(g.n, std::vector<int>(g.n));
  for (int a = 0; a < g.n; ++a)
    for (int b = 0; b < g.n; ++b) go.comp[a][b] = g.mul[a][b];
  go.arrow_label = g.label;
  return build_groupoid(std::move(go));
}

FiniteGroup group_of_one_object(const FiniteGroupoid& g) {
  if (g.n_objects != 1) fail(Errc::validation_error, g.name + " has more than one object");
  FiniteGroup gr;
  gr.name = g.name;
  gr.n = g.n_arrows();
  gr.mul = g.comp;
  gr.unit = g.unit[0];
  gr.inv = g.inv;
  gr.label = g.arrow_label;
  return build_group(std::move(gr));
}

} // namespace kanfib
