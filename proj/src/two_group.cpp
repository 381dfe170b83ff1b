#include "kanfib/two_group.hpp"

#include <algorithm>

#include "kanfib/homsearch.hpp"

namespace kanfib {

namespace {

constexpr long long level_cell_budget = 2'000'000;

[[noreturn]] void xm_fail(const CrossedModule& m, const std::string& what) {
  fail(Errc::not_a_crossed_module,
       (m.name.empty() ? std::string("crossed module") : m.name) + ": " + what);
}

} // namespace

CrossedModule build_crossed_module(CrossedModule raw) {
  raw.h = build_group(std::move(raw.h));
  raw.g = build_group(std::move(raw.g));
  const FiniteGroup& h = raw.h;
  const FiniteGroup& g = raw.g;

  if ((int)raw.bnd.size() != h.n) xm_fail(raw, "bnd table has wrong size");
  for (int a = 0; a < h.n; ++a)
    if (raw.bnd[a] < 0 || raw.bnd[a] >= g.n) xm_fail(raw, "bnd value out of range");
  for (int a = 0; a < h.n; ++a)
    for (int b = 0; b < h.n; ++b)
      if (raw.bnd[h.op(a, b)] != g.op(raw.bnd[a], raw.bnd[b]))
        xm_fail(raw, "bnd is not a homomorphism");

  if ((int)raw.act.size() != g.n) xm_fail(raw, "act table has wrong size");
  for (int x = 0; x < g.n; ++x) {
    if ((int)raw.act[x].size() != h.n) xm_fail(raw, "act row has wrong size");
    for (int a = 0; a < h.n; ++a)
      if (raw.act[x][a] < 0 || raw.act[x][a] >= h.n) xm_fail(raw, "act value out of range");
    for (int a = 0; a < h.n; ++a)
      for (int b = 0; b < h.n; ++b)
        if (raw.act[x][h.op(a, b)] != h.op(raw.act[x][a], raw.act[x][b]))
          xm_fail(raw, "act is not by homomorphisms");
  }
  for (int a = 0; a < h.n; ++a)
    if (raw.act[g.unit][a] != a) xm_fail(raw, "act of the unit is not the identity");
  for (int x = 0; x < g.n; ++x)
    for (int y = 0; y < g.n; ++y)
      for (int a = 0; a < h.n; ++a)
        if (raw.act[g.op(x, y)][a] != raw.act[x][raw.act[y][a]])
          xm_fail(raw, "act is not a left action");
  for (int x = 0; x < g.n; ++x)
    for (int a = 0; a < h.n; ++a)
      if (raw.bnd[raw.act[x][a]] != g.op(g.op(x, raw.bnd[a]), g.inv[x]))
        xm_fail(raw, "equivariance fails");
  for (int a = 0; a < h.n; ++a)
    for (int b = 0; b < h.n; ++b)
      if (raw.act[raw.bnd[a]][b] != h.op(h.op(a, b), h.inv[a]))
        xm_fail(raw, "Peiffer rule fails");
  return raw;
}

int GroupLikeGroupoid::arrows_from(int x) const {
  int c = 0;
  for (int s : g.src)
    if (s == x) ++c;
  return c;
}

GroupLikeGroupoid build_group_like(GroupLikeGroupoid raw) {
  raw.g = build_groupoid(std::move(raw.g));
  const FiniteGroupoid& gg = raw.g;
  int no = gg.n_objects, na = gg.n_arrows();
  auto bad = [&](const std::string& what) {
    fail(Errc::not_group_like, (gg.name.empty() ? std::string("groupoid") : gg.name) + ": " + what);
  };

  auto table_ok = [&](const std::vector<std::vector<int>>& t, int rows, int cols, int lim) {
    if ((int)t.size() != rows) return false;
    for (const auto& row : t) {
      if ((int)row.size() != cols) return false;
      for (int v : row)
        if (v < 0 || v >= lim) return false;
    }
    return true;
  };
  if (!table_ok(raw.star_obj, no, no, no)) bad("star_obj table malformed");
  if (!table_ok(raw.star_arr, na, na, na)) bad("star_arr table malformed");
  if (raw.e < 0 || raw.e >= no) bad("unit object out of range");
  auto vec_ok = [&](const std::vector<int>& v, int rows, int lim) {
    if ((int)v.size() != rows) return false;
    for (int x : v)
      if (x < 0 || x >= lim) return false;
    return true;
  };
  if (!vec_ok(raw.iota_obj, no, no)) bad("iota_obj table malformed");
  if (!vec_ok(raw.iota_arr, na, na)) bad("iota_arr table malformed");
  if (!vec_ok(raw.psi_l, no, na) || !vec_ok(raw.psi_r, no, na)) bad("psi tables malformed");

  auto so = [&](int x, int y) { return raw.star_obj[x][y]; };
  auto sa = [&](int a, int b) { return raw.star_arr[a][b]; };

  for (int x = 0; x < no; ++x) {
    if (so(raw.e, x) != x || so(x, raw.e) != x) bad("unit object is not strict");
    for (int y = 0; y < no; ++y)
      for (int z = 0; z < no; ++z)
        if (so(so(x, y), z) != so(x, so(y, z))) bad("star_obj is not associative");
  }
  for (int a = 0; a < na; ++a) {
    if (sa(a, gg.unit[raw.e]) != a || sa(gg.unit[raw.e], a) != a) bad("unit arrow is not strict");
    for (int b = 0; b < na; ++b) {
      if (gg.src[sa(a, b)] != so(gg.src[a], gg.src[b]) ||
          gg.tgt[sa(a, b)] != so(gg.tgt[a], gg.tgt[b]))
        bad("star_arr typing fails");
      for (int c = 0; c < na; ++c)
        if (sa(sa(a, b), c) != sa(a, sa(b, c))) bad("star_arr is not associative");
    }
  }
  for (int x = 0; x < no; ++x)
    for (int y = 0; y < no; ++y)
      if (sa(gg.unit[x], gg.unit[y]) != gg.unit[so(x, y)]) bad("star_arr does not preserve units");
  // interchange: (a.a') * (b.b') = (a*b).(a'*b')
  std::vector<std::pair<int, int>> cpairs;
  for (int a = 0; a < na; ++a)
    for (int a2 = 0; a2 < na; ++a2)
      if (gg.composable(a, a2)) cpairs.emplace_back(a, a2);
  for (auto [a, a2] : cpairs)
    for (auto [b, b2] : cpairs)
      if (sa(gg.compose(a, a2), gg.compose(b, b2)) != gg.compose(sa(a, b), sa(a2, b2)))
        bad("interchange fails");
  for (int a = 0; a < na; ++a) {
    if (gg.src[raw.iota_arr[a]] != raw.iota_obj[gg.src[a]] ||
        gg.tgt[raw.iota_arr[a]] != raw.iota_obj[gg.tgt[a]])
      bad("iota_arr typing fails");
  }
  for (int x = 0; x < no; ++x)
    if (raw.iota_arr[gg.unit[x]] != gg.unit[raw.iota_obj[x]]) bad("iota does not preserve units");
  for (int a = 0; a < na; ++a)
    for (int b = 0; b < na; ++b) {
      if (!gg.composable(a, b)) continue;
      if (raw.iota_arr[gg.compose(a, b)] != gg.compose(raw.iota_arr[a], raw.iota_arr[b]))
        bad("iota is not functorial");
    }
  for (int x = 0; x < no; ++x) {
    if (gg.src[raw.psi_l[x]] != so(raw.iota_obj[x], x) || gg.tgt[raw.psi_l[x]] != raw.e)
      bad("psi_l typing fails");
    if (gg.src[raw.psi_r[x]] != so(x, raw.iota_obj[x]) || gg.tgt[raw.psi_r[x]] != raw.e)
      bad("psi_r typing fails");
  }
  for (int a = 0; a < na; ++a) {
    int x = gg.src[a], y = gg.tgt[a];
    if (gg.compose(sa(raw.iota_arr[a], a), raw.psi_l[y]) != raw.psi_l[x])
      bad("psi_l is not natural");
    if (gg.compose(sa(a, raw.iota_arr[a]), raw.psi_r[y]) != raw.psi_r[x])
      bad("psi_r is not natural");
  }
  return raw;
}

GroupLikeGroupoid crossed_module_to_group_like(const CrossedModule& xm) {
  const FiniteGroup& h = xm.h;
  const FiniteGroup& g = xm.g;
  int nh = h.n, ng = g.n;
  int na = ng * nh;
  auto aid = [&](int x, int a) { return x * nh + a; };
  auto glab = [&](int x) { return x < (int)g.label.size() ? g.label[x] : std::to_string(x); };
  auto hlab = [&](int a) { return a < (int)h.label.size() ? h.label[a] : std::to_string(a); };

  FiniteGroupoid gg;
  gg.name = xm.name.empty() ? "gl" : xm.name;
  gg.n_objects = ng;
  gg.src.resize(na);
  gg.tgt.resize(na);
  gg.inv.resize(na);
  gg.unit.resize(ng);
  gg.comp.assign(na, std::vector<int>(na, -1));
  gg.object_label.resize(ng);
  gg.arrow_label.resize(na);
  for (int x = 0; x < ng; ++x) {
    gg.unit[x] = aid(x, h.unit);
    gg.object_label[x] = glab(x);
    for (int a = 0; a < nh; ++a) {
      int id = aid(x, a);
      gg.src[id] = x;
      gg.tgt[id] = g.op(x, xm.bnd[a]);
      gg.inv[id] = aid(gg.tgt[id], h.inv[a]);
      gg.arrow_label[id] = "(" + glab(x) + "," + hlab(a) + ")";
    }
  }
  for (int x = 0; x < ng; ++x)
    for (int a = 0; a < nh; ++a)
      for (int b = 0; b < nh; ++b)
        gg.comp[aid(x, a)][aid(g.op(x, xm.bnd[a]), b)] = aid(x, h.op(a, b));

  GroupLikeGroupoid gl;
  gl.g = std::move(gg);
  gl.e = g.unit;
  gl.star_obj = g.mul;
  gl.iota_obj = g.inv;
  gl.star_arr.assign(na, std::vector<int>(na));
  for (int x = 0; x < ng; ++x)
    for (int a = 0; a < nh; ++a)
      for (int y = 0; y < ng; ++y)
        for (int b = 0; b < nh; ++b)
          gl.star_arr[aid(x, a)][aid(y, b)] =
              aid(g.op(x, y), h.op(xm.act[g.inv[y]][a], b));
  gl.iota_arr.resize(na);
  for (int x = 0; x < ng; ++x)
    for (int a = 0; a < nh; ++a)
      gl.iota_arr[aid(x, a)] = aid(g.inv[x], xm.act[x][h.inv[a]]);
  gl.psi_l.assign(ng, gl.g.unit[g.unit]);
  gl.psi_r.assign(ng, gl.g.unit[g.unit]);
  return build_group_like(std::move(gl));
}

Cell Classifying2Group::two_cell(int a12, int a02, int a01, int u) const {
  auto it = index2.find({a12, a02, a01, u});
  if (it == index2.end())
    fail(Errc::validation_error, "no 2-cell with the given boundary and arrow");
  return it->second;
}

Classifying2Group classifying_2group(const GroupLikeGroupoid& gl0, int depth,
                                     const std::string& name) {
  if (depth < 0) fail(Errc::validation_error, "negative depth");
  if (depth > 4)
    fail(Errc::depth_exceeds_truncation, "classifying space is materialized to depth 4");
  Classifying2Group b;
  b.gl = build_group_like(gl0);
  const GroupLikeGroupoid& gl = b.gl;
  const FiniteGroupoid& gg = gl.g;
  int no = gg.n_objects, na = gg.n_arrows();

  auto so = [&](int x, int y) { return gl.star_obj[x][y]; };
  auto sa = [&](int a, int c) { return gl.star_arr[a][c]; };
  std::vector<std::vector<int>> from(no);
  for (int a = 0; a < na; ++a) from[gg.src[a]].push_back(a);

  SimplicialSet raw;
  raw.name = name.empty() ? "B(" + (gg.name.empty() ? std::string("G") : gg.name) + ")" : name;
  raw.depth = depth;
  raw.sizes.assign(depth + 1, 0);
  raw.faces.resize(depth + 1);
  raw.degens.resize(depth);
  raw.labels.resize(depth + 1);
  raw.sizes[0] = 1;
  raw.labels[0] = {"*"};
  if (depth >= 1) {
    raw.sizes[1] = no;
    raw.faces[1].assign(2, std::vector<Cell>(no, 0));
    raw.degens[0].assign(1, {Cell(gl.e)});
    raw.labels[1].resize(no);
    for (int x = 0; x < no; ++x)
      raw.labels[1][x] = x < (int)gg.object_label.size() ? gg.object_label[x] : std::to_string(x);
  }
  if (depth >= 2) {
    for (int a01 = 0; a01 < no; ++a01)
      for (int a12 = 0; a12 < no; ++a12)
        for (int u : from[so(a01, a12)]) {
          Cell id = (Cell)b.cell2.size();
          b.cell2.push_back({a12, gg.tgt[u], a01, u});
          b.index2[{a12, gg.tgt[u], a01, u}] = id;
        }
    int n2 = (int)b.cell2.size();
    raw.sizes[2] = n2;
    raw.faces[2].assign(3, std::vector<Cell>(n2));
    for (int c = 0; c < n2; ++c) {
      raw.faces[2][0][c] = b.cell2[c].a12;
      raw.faces[2][1][c] = b.cell2[c].a02;
      raw.faces[2][2][c] = b.cell2[c].a01;
    }
    raw.degens[1].assign(2, std::vector<Cell>(no));
    for (int x = 0; x < no; ++x) {
      raw.degens[1][0][x] = b.index2.at({x, x, gl.e, gg.unit[x]});
      raw.degens[1][1][x] = b.index2.at({gl.e, x, x, gg.unit[x]});
    }
  }
  // the odd-one-out arrow of a tetrahedron: u023 solves
  // (1_{a01} * u123) . u013 = (u012 * 1_{a23}) . u023
  auto tet_u = [&](int a01, int a23, int u012, int u123, int u013) {
    return gg.compose(gg.inv[sa(u012, gg.unit[a23])],
                      gg.compose(sa(gg.unit[a01], u123), u013));
  };
  auto two_id = [&](int a12, int a02, int a01, int u) {
    auto it = b.index2.find({a12, a02, a01, u});
    if (it == b.index2.end()) fail(Errc::internal_error, "missing 2-cell");
    return it->second;
  };
  if (depth >= 3) {
    for (int a01 = 0; a01 < no; ++a01)
      for (int a12 = 0; a12 < no; ++a12)
        for (int u012 : from[so(a01, a12)]) {
          int a02 = gg.tgt[u012];
          for (int a23 = 0; a23 < no; ++a23)
            for (int u123 : from[so(a12, a23)]) {
              int a13 = gg.tgt[u123];
              for (int u013 : from[so(a01, a13)]) {
                int a03 = gg.tgt[u013];
                int u023 = tet_u(a01, a23, u012, u123, u013);
                std::array<Cell, 4> f = {two_id(a23, a13, a12, u123),
                                         two_id(a23, a03, a02, u023),
                                         two_id(a13, a03, a01, u013),
                                         two_id(a12, a02, a01, u012)};
                if ((long long)b.cell3.size() >= level_cell_budget)
                  fail(Errc::validation_error, raw.name + ": level-3 cell budget exceeded");
                b.index3[f] = (Cell)b.cell3.size();
                b.cell3.push_back(f);
              }
            }
        }
    int n3 = (int)b.cell3.size();
    raw.sizes[3] = n3;
    raw.faces[3].assign(4, std::vector<Cell>(n3));
    for (int c = 0; c < n3; ++c)
      for (int i = 0; i < 4; ++i) raw.faces[3][i][c] = b.cell3[c][i];
    raw.degens[2].assign(3, std::vector<Cell>(raw.sizes[2]));
    for (Cell c = 0; c < raw.sizes[2]; ++c)
      for (int j = 0; j <= 2; ++j) {
        std::array<Cell, 4> f{};
        for (int i = 0; i <= 3; ++i) {
          if (i < j) f[i] = raw.degens[1][j - 1][raw.faces[2][i][c]];
          else if (i <= j + 1) f[i] = c;
          else f[i] = raw.degens[1][j][raw.faces[2][i - 1][c]];
        }
        auto it = b.index3.find(f);
        if (it == b.index3.end()) fail(Errc::internal_error, "degenerate 3-cell missing");
        raw.degens[2][j][c] = it->second;
      }
  }
  if (depth >= 4) {
    for (int a01 = 0; a01 < no; ++a01)
      for (int a12 = 0; a12 < no; ++a12)
        for (int u012 : from[so(a01, a12)]) {
          int a02 = gg.tgt[u012];
          for (int a23 = 0; a23 < no; ++a23)
            for (int u123 : from[so(a12, a23)]) {
              int a13 = gg.tgt[u123];
              for (int a34 = 0; a34 < no; ++a34)
                for (int u234 : from[so(a23, a34)]) {
                  int a24 = gg.tgt[u234];
                  for (int u013 : from[so(a01, a13)]) {
                    int a03 = gg.tgt[u013];
                    int u023 = tet_u(a01, a23, u012, u123, u013);
                    for (int u124 : from[so(a12, a24)]) {
                      int a14 = gg.tgt[u124];
                      int u134 = tet_u(a12, a34, u123, u234, u124);
                      for (int u014 : from[so(a01, a14)]) {
                        int a04 = gg.tgt[u014];
                        int u024 = tet_u(a01, a24, u012, u124, u014);
                        int u034 = tet_u(a01, a34, u013, u134, u014);
                        if (gg.compose(gg.inv[sa(u023, gg.unit[a34])],
                                       gg.compose(sa(gg.unit[a02], u234), u024)) != u034)
                          fail(Errc::internal_error, "pasting coherence failed at a 4-cell");
                        auto t3 = [&](std::array<Cell, 4> f) {
                          auto it = b.index3.find(f);
                          if (it == b.index3.end())
                            fail(Errc::internal_error, "missing 3-cell");
                          return it->second;
                        };
                        Cell c123 = two_id(a23, a13, a12, u123);
                        Cell c023 = two_id(a23, a03, a02, u023);
                        Cell c013 = two_id(a13, a03, a01, u013);
                        Cell c012 = two_id(a12, a02, a01, u012);
                        Cell c234 = two_id(a34, a24, a23, u234);
                        Cell c134 = two_id(a34, a14, a13, u134);
                        Cell c124 = two_id(a24, a14, a12, u124);
                        Cell c034 = two_id(a34, a04, a03, u034);
                        Cell c024 = two_id(a24, a04, a02, u024);
                        Cell c014 = two_id(a14, a04, a01, u014);
                        std::array<Cell, 5> f = {
                            t3({c234, c134, c124, c123}),  // d0 = 1234
                            t3({c234, c034, c024, c023}),  // d1 = 0234
                            t3({c134, c034, c014, c013}),  // d2 = 0134
                            t3({c124, c024, c014, c012}),  // d3 = 0124
                            t3({c123, c023, c013, c012})}; // d4 = 0123
                        if ((long long)b.cell4.size() >= level_cell_budget)
                          fail(Errc::validation_error,
                               raw.name + ": level-4 cell budget exceeded");
                        b.index4[f] = (Cell)b.cell4.size();
                        b.cell4.push_back(f);
                      }
                    }
                  }
                }
            }
        }
    int n4 = (int)b.cell4.size();
    raw.sizes[4] = n4;
    raw.faces[4].assign(5, std::vector<Cell>(n4));
    for (int c = 0; c < n4; ++c)
      for (int i = 0; i < 5; ++i) raw.faces[4][i][c] = b.cell4[c][i];
    raw.degens[3].assign(4, std::vector<Cell>(raw.sizes[3]));
    for (Cell c = 0; c < raw.sizes[3]; ++c)
      for (int j = 0; j <= 3; ++j) {
        std::array<Cell, 5> f{};
        for (int i = 0; i <= 4; ++i) {
          if (i < j) f[i] = raw.degens[2][j - 1][raw.faces[3][i][c]];
          else if (i <= j + 1) f[i] = c;
          else f[i] = raw.degens[2][j][raw.faces[3][i - 1][c]];
        }
        auto it = b.index4.find(f);
        if (it == b.index4.end()) fail(Errc::internal_error, "degenerate 4-cell missing");
        raw.degens[3][j][c] = it->second;
      }
  }
  b.ss = share(build_simplicial_set(std::move(raw)));
  return b;
}

std::vector<SimplicialMap> enumerate_cylinders(const SimplicialSet& x, Cell alpha, int n) {
  if (n < 0) fail(Errc::validation_error, "negative cylinder level");
  if (x.depth < n + 1)
    fail(Errc::depth_exceeds_truncation,
         "level-" + std::to_string(n) + " cylinders need depth " + std::to_string(n + 1));
  if (alpha < 0 || alpha >= x.size(1)) fail(Errc::validation_error, "alpha is not a 1-cell");
  int d = x.depth;
  StandardComplex a = standard_simplex(n, d);
  StandardComplex k = standard_simplex(1, d);
  ProductComplex p = product(a.ss, k.ss);
  MapSearchOptions opt;
  for (int v = 0; v <= n; ++v) {
    Cell pa = a.cell_of(1, VertexSeq{(int8_t)v, (int8_t)v});
    Cell pk = k.cell_of(1, VertexSeq{0, 1});
    opt.pinned[{1, p.pair(1, pa, pk)}] = alpha;
  }
  return enumerate_maps(p.ss, share(x), opt);
}

std::vector<Transformation> enumerate_transformations(const SimplicialSet& x) {
  if (x.depth < 2) fail(Errc::depth_exceeds_truncation, "transformations need 2-cells");
  std::vector<Transformation> out;
  for (Cell up = 0; up < x.size(2); ++up) {
    if (!x.is_degenerate(1, x.face(2, 2, up))) continue;
    for (Cell lo = 0; lo < x.size(2); ++lo) {
      if (x.face(2, 1, lo) != x.face(2, 1, up)) continue;
      if (!x.is_degenerate(1, x.face(2, 0, lo))) continue;
      out.push_back({lo, up, x.face(2, 2, lo), x.face(2, 0, up)});
    }
  }
  return out;
}

UnitElements unit_elements(const SimplicialSet& x) {
  std::map<Cell, std::vector<Transformation>> by_dst;
  for (const Transformation& t : enumerate_transformations(x))
    if (x.is_degenerate(1, t.src)) by_dst[t.dst].push_back(t);
  UnitElements u;
  for (auto& [dst, ws] : by_dst) {
    u.units.push_back(dst);
    u.witnesses.push_back(std::move(ws));
  }
  return u;
}

SimplicialSet reunitize(const SimplicialSet& x, const Transformation& omega) {
  if (x.depth < 3) fail(Errc::depth_exceeds_truncation, "reunitize needs depth >= 3");
  if (x.size(0) != 1) fail(Errc::validation_error, "reunitize expects a one-vertex complex");
  Cell e_old = x.degen(0, 0, 0);
  auto in_range = [&](int lvl, Cell c) { return c >= 0 && c < x.size(lvl); };
  if (!in_range(2, omega.lower) || !in_range(2, omega.upper) || !in_range(1, omega.src) ||
      !in_range(1, omega.dst))
    fail(Errc::not_a_transformation, "cells out of range");
  if (x.face(2, 1, omega.upper) != x.face(2, 1, omega.lower) ||
      x.face(2, 2, omega.lower) != omega.src || x.face(2, 0, omega.upper) != omega.dst ||
      x.face(2, 2, omega.upper) != e_old || x.face(2, 0, omega.lower) != e_old)
    fail(Errc::not_a_transformation, "not a square with degenerate vertical edges");
  if (omega.src != e_old) fail(Errc::not_a_transformation, "source is not the unit edge");

  SimplicialSet y = x; // same cells and faces; only the degeneracies move
  y.degens[0][0][0] = omega.dst;

  // level 1: the re-pointed s_i(g) is the top of the unique prism over s_i(g)
  // whose (i,i+1) side is omega and whose other sides are constant
  SSetPtr xp = share(x);
  StandardComplex a2 = standard_simplex(2, 3);
  StandardComplex k1 = standard_simplex(1, 3);
  ProductComplex pr = product(a2.ss, k1.ss);
  auto pcell = [&](const VertexSeq& av, const VertexSeq& kv) {
    int lvl = (int)av.size() - 1;
    return std::pair<int, Cell>(lvl, pr.pair(lvl, a2.cell_of(lvl, av), k1.cell_of(lvl, kv)));
  };
  const std::array<std::array<int8_t, 2>, 3> sides = {{{0, 1}, {1, 2}, {0, 2}}};
  const std::array<int, 3> side_face = {2, 0, 1}; // face index of the opposite vertex
  for (int i = 0; i <= 1; ++i)
    for (Cell g = 0; g < x.size(1); ++g) {
      Cell bot = x.degen(1, i, g);
      MapSearchOptions opt;
      opt.pinned[pcell({0, 1, 2}, {0, 0, 0})] = bot;
      for (int s = 0; s < 3; ++s) {
        auto [j, k] = sides[s];
        Cell edge = x.face(2, side_face[s], bot);
        Cell lo = (j == i && k == i + 1) ? omega.lower : x.degen(1, 1, edge);
        Cell up = (j == i && k == i + 1) ? omega.upper : x.degen(1, 0, edge);
        opt.pinned[pcell({j, k, k}, {0, 0, 1})] = lo;
        opt.pinned[pcell({j, j, k}, {0, 1, 1})] = up;
      }
      for (int8_t v = 0; v <= 2; ++v) opt.pinned[pcell({v, v}, {0, 1})] = e_old;
      auto prisms = enumerate_maps(pr.ss, xp, opt);
      std::string ctx = "re-pointing s_" + std::to_string(i) + " of " + x.describe(1, g);
      if (prisms.empty()) fail(Errc::no_filler, "no prism " + ctx);
      if (prisms.size() > 1) fail(Errc::non_unique_filler, "ambiguous prism " + ctx);
      auto [tl, tc] = pcell({0, 1, 2}, {1, 1, 1});
      y.degens[1][i][g] = prisms[0].at(tl, tc);
    }

  // higher levels: the boundary of the re-pointed s_j is forced by the
  // simplicial identities, and cells there are boundary-determined
  for (int lvl = 2; lvl < x.depth; ++lvl) {
    BoundarySet bs = boundary_restriction(x, lvl + 1);
    for (int j = 0; j <= lvl; ++j)
      for (Cell c = 0; c < x.size(lvl); ++c) {
        std::vector<Cell> f(lvl + 2);
        for (int i = 0; i <= lvl + 1; ++i) {
          if (i < j) f[i] = y.degens[lvl - 1][j - 1][x.face(lvl, i, c)];
          else if (i <= j + 1) f[i] = c;
          else f[i] = y.degens[lvl - 1][j][x.face(lvl, i - 1, c)];
        }
        auto it = bs.index.find(f);
        std::string ctx = "for re-pointed s_" + std::to_string(j) + " of " + x.describe(lvl, c);
        if (it == bs.index.end() || bs.fillers[it->second].empty())
          fail(Errc::no_filler, "no cell with the forced boundary " + ctx);
        if (bs.fillers[it->second].size() > 1)
          fail(Errc::non_unique_filler, "boundary does not determine the cell " + ctx);
        y.degens[lvl][j][c] = bs.fillers[it->second][0];
      }
  }
  return build_simplicial_set(std::move(y));
}

} // namespace kanfib
