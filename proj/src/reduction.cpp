#include "kanfib/reduction.hpp"

#include "kanfib/kan.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace kanfib {

namespace {

std::string ith(int i) { return std::to_string(i); }

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// faces of a 2-cell as a lookup key, in the order (d0, d1, d2)
std::array<Cell, 3> boundary_triple(const SimplicialSet& z, Cell t) {
  return {z.face(2, 0, t), z.face(2, 1, t), z.face(2, 2, t)};
}

} // namespace

std::vector<std::vector<Cell>> two_isotropy_sets(const SimplicialSet& z) {
  if (z.depth < 2)
    fail(Errc::depth_exceeds_truncation, "2-isotropy needs level 2, have depth " + ith(z.depth));
  std::vector<std::vector<Cell>> out(z.sizes[0]);
  for (Cell t = 0; t < (Cell)z.sizes[2]; ++t) {
    Cell e = z.face(2, 0, t);
    if (z.face(2, 1, t) != e || z.face(2, 2, t) != e) continue;
    if (!z.is_degenerate(1, e)) continue;
    out[z.face(1, 0, e)].push_back(t);
  }
  return out;
}

CheckReport check_2_isotropy_free(const SimplicialSet& z) {
  CheckReport r;
  r.subject = z.name;
  r.condition = "2-isotropy-free";
  r.checked_to = 2;
  auto sets = two_isotropy_sets(z);
  for (Cell v = 0; v < (Cell)sets.size(); ++v)
    if (sets[v].size() != 1) {
      r.verdict = Verdict::fails;
      r.witnesses.push_back("vertex " + ith(v) + " carries " + ith((int)sets[v].size()) +
                            " central 2-cells");
    }
  return r;
}

CheckReport check_isotropy_consequences(const SimplicialSet& z) {
  CheckReport r;
  r.subject = z.name;
  r.condition = "2-cells pinned by their boundaries";
  r.checked_to = 2;
  if (z.depth < 2)
    fail(Errc::depth_exceeds_truncation, "needs level 2, have depth " + ith(z.depth));

  std::map<std::array<Cell, 3>, std::vector<Cell>> by_boundary;
  for (Cell t = 0; t < (Cell)z.sizes[2]; ++t) by_boundary[boundary_triple(z, t)].push_back(t);

  // a 2-cell sharing all faces with a degeneracy of an edge must be it
  for (Cell g = 0; g < (Cell)z.sizes[1]; ++g)
    for (int j = 0; j < 2; ++j) {
      Cell sg = z.degen(1, j, g);
      for (Cell t : by_boundary.at(boundary_triple(z, sg)))
        if (t != sg) {
          r.verdict = Verdict::fails;
          r.witnesses.push_back("2-cell " + ith(t) + " has the boundary of degeneracy " +
                                ith(j) + " of edge " + ith(g) + " without being it");
        }
    }

  // boundary restriction is injective on 2-cells
  for (const auto& [key, cells] : by_boundary)
    if (cells.size() > 1) {
      r.verdict = Verdict::fails;
      r.witnesses.push_back("2-cells " + ith(cells[0]) + " and " + ith(cells[1]) +
                            " share all three faces");
    }
  return r;
}

ReduceResult reduce_to_1(const SimplicialSet& z) {
  CheckReport cls = classify_n_groupoid(z, 2);
  if (!cls.ok())
    fail(Errc::not_a_2_groupoid,
         z.name + " is not a 2-groupoid" +
             (cls.witnesses.empty() ? " at this depth" : ": " + cls.witnesses.front()));
  CheckReport iso = check_2_isotropy_free(z);
  if (!iso.ok()) fail(Errc::not_2_isotropy_free, iso.witnesses.front());

  // identify edges joined by a 2-cell whose last face is degenerate
  UnionFind uf(z.sizes[1]);
  for (Cell t = 0; t < (Cell)z.sizes[2]; ++t)
    if (z.is_degenerate(1, z.face(2, 0, t))) uf.unite(z.face(2, 2, t), z.face(2, 1, t));

  // number the classes by their least member, in increasing order
  std::vector<Cell> least(z.sizes[1], no_cell);
  for (Cell c = 0; c < (Cell)z.sizes[1]; ++c) {
    Cell& m = least[uf.find(c)];
    if (m == no_cell || c < m) m = c;
  }
  std::vector<Cell> reps;
  for (Cell c = 0; c < (Cell)z.sizes[1]; ++c)
    if (least[c] != no_cell) reps.push_back(least[c]);
  std::sort(reps.begin(), reps.end());
  std::map<Cell, int> class_of_rep;
  for (int i = 0; i < (int)reps.size(); ++i) class_of_rep[reps[i]] = i;
  std::vector<int> edge_class(z.sizes[1]);
  for (Cell c = 0; c < (Cell)z.sizes[1]; ++c)
    edge_class[c] = class_of_rep.at(least[uf.find(c)]);

  FiniteGroupoid q;
  q.name = z.name + ".reduced";
  q.n_objects = z.sizes[0];
  int na = (int)reps.size();
  q.src.resize(na);
  q.tgt.resize(na);
  q.inv.assign(na, -1);
  q.unit.resize(q.n_objects);
  q.comp.assign(na, std::vector<int>(na, -1));
  for (int a = 0; a < na; ++a) {
    q.src[a] = z.face(1, 1, reps[a]);
    q.tgt[a] = z.face(1, 0, reps[a]);
  }
  for (Cell v = 0; v < (Cell)z.sizes[0]; ++v) q.unit[v] = edge_class[z.degen(0, 0, v)];

  // multiplication is read off the 2-cells and must be single-valued
  for (Cell t = 0; t < (Cell)z.sizes[2]; ++t) {
    int a = edge_class[z.face(2, 2, t)];
    int b = edge_class[z.face(2, 0, t)];
    int c = edge_class[z.face(2, 1, t)];
    int& slot = q.comp[a][b];
    if (slot == -1)
      slot = c;
    else if (slot != c)
      fail(Errc::well_definedness_failure,
           "2-cell " + ith(t) + " composes classes " + ith(a) + " and " + ith(b) + " to " +
               ith(c) + ", but an earlier 2-cell gave " + ith(slot));
  }
  for (int a = 0; a < na; ++a)
    for (int b = 0; b < na; ++b) {
      if (q.tgt[a] != q.src[b]) {
        if (q.comp[a][b] != -1)
          fail(Errc::internal_error, "composite of non-composable edge classes");
        continue;
      }
      if (q.comp[a][b] == -1)
        fail(Errc::internal_error,
             "no 2-cell composes classes " + ith(a) + " and " + ith(b));
      if (q.comp[a][b] == q.unit[q.src[a]]) q.inv[a] = b;
    }
  for (int a = 0; a < na; ++a)
    if (q.inv[a] == -1) fail(Errc::internal_error, "edge class " + ith(a) + " has no inverse");
  q = build_groupoid(std::move(q));

  // projection: identity on vertices, class map on edges, spine classes above
  Nerve nq = nerve(q, z.depth);
  std::vector<std::vector<Cell>> lv(z.depth + 1);
  lv[0].resize(z.sizes[0]);
  for (Cell v = 0; v < (Cell)z.sizes[0]; ++v) lv[0][v] = v;
  for (int n = 1; n <= z.depth; ++n) {
    lv[n].resize(z.sizes[n]);
    for (Cell c = 0; c < (Cell)z.sizes[n]; ++c) {
      std::vector<int> str(n);
      for (int i = 0; i < n; ++i)
        str[i] = edge_class[apply_operator(z, n, c, {(int8_t)i, (int8_t)(i + 1)})];
      lv[n][c] = nq.cell_of(n, str);
    }
  }
  SimplicialMap proj;
  try {
    proj = build_map(share(z), nq.ss, std::move(lv));
  } catch (const Error& e) {
    fail(Errc::internal_error, std::string("class projection is not simplicial: ") + e.what());
  }
  CheckReport hc = check_hypercover(proj, 2);
  if (!hc.ok())
    fail(Errc::internal_error,
         "class projection is not a hypercover: " + hc.witnesses.front());
  return {std::move(q), std::move(proj), std::move(edge_class)};
}

} // namespace kanfib
