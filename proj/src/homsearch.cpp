#include "kanfib/homsearch.hpp"

#include <algorithm>
#include <numeric>

namespace kanfib {

namespace {

struct SearchState {
  SSetPtr a, x;
  const MapSearchOptions* opt;
  std::vector<std::vector<Cell>> img; // per level, no_cell = unassigned
  std::vector<std::pair<int, Cell>> order;
  std::vector<const SimplicialSet::FaceKeyMap*> fidx; // cached on x
  // pins on degenerate domain cells, re-keyed by their nondegenerate base
  std::map<std::pair<int, Cell>, std::vector<std::pair<std::vector<int>, Cell>>> base_pins;
  long long found = 0;
  std::vector<SimplicialMap> out;
  bool collect = true;

  Cell image(int n, Cell c) const {
    if (img[n][c] != no_cell) return img[n][c];
    auto f = a->ez(n, c);
    Cell b = img[f.base_level][f.base];
    if (b == no_cell) return no_cell;
    return x->apply_word(f.base_level, b, f.word);
  }

  void emit() {
    ++found;
    if (!collect) return;
    std::vector<std::vector<Cell>> lv(a->depth + 1);
    for (int n = 0; n <= a->depth; ++n) {
      lv[n].resize(a->size(n));
      for (Cell c = 0; c < a->size(n); ++c) lv[n][c] = image(n, c);
    }
    SimplicialMap m;
    m.from = a;
    m.to = x;
    m.level = std::move(lv);
    out.push_back(std::move(m));
  }

  bool rec(size_t pos) {
    if (pos == order.size()) {
      emit();
      return opt->limit >= 0 && found >= opt->limit;
    }
    auto [n, c] = order[pos];
    // candidates matching the already-determined face images
    std::vector<Cell> forced(n + 1);
    const std::vector<Cell>* cands = nullptr;
    std::vector<Cell> all;
    if (n == 0) {
      all.resize(x->size(0));
      std::iota(all.begin(), all.end(), 0);
      cands = &all;
    } else {
      for (int i = 0; i <= n; ++i) {
        Cell fi = image(n - 1, a->face(n, i, c));
        if (fi == no_cell) fail(Errc::internal_error, "face image not determined yet");
        forced[i] = fi;
      }
      auto it = fidx[n]->find(forced);
      if (it == fidx[n]->end()) return false;
      cands = &it->second;
    }
    auto pin = opt->pinned.find({n, c});
    auto bp = base_pins.find({n, c});
    for (Cell t : *cands) {
      if (pin != opt->pinned.end() && pin->second != t) continue;
      if (opt->allow && !opt->allow(n, c, t)) continue;
      if (bp != base_pins.end()) {
        bool ok = true;
        for (auto& [word, want] : bp->second)
          if (x->apply_word(n, t, word) != want) {
            ok = false;
            break;
          }
        if (!ok) continue;
      }
      img[n][c] = t;
      if (rec(pos + 1)) return true;
      img[n][c] = no_cell;
    }
    return false;
  }
};

void run_search(SearchState& st) {
  if (st.a->depth > st.x->depth)
    fail(Errc::truncation_mismatch, "hom search from deeper domain " + st.a->name);
  int d = st.a->depth;
  st.img.resize(d + 1);
  st.fidx.assign(d + 1, nullptr);
  for (int n = 0; n <= d; ++n) {
    st.img[n].assign(st.a->size(n), no_cell);
    if (n >= 1) st.fidx[n] = &st.x->cells_by_faces(n);
    for (Cell c : st.a->nondegenerate(n)) st.order.emplace_back(n, c);
  }
  for (auto& [key, val] : st.opt->pinned) {
    auto [n, c] = key;
    if (n < 0 || n > d || c < 0 || c >= st.a->size(n))
      fail(Errc::validation_error, "pinned cell out of range");
    if (val < 0 || val >= st.x->size(n))
      fail(Errc::validation_error, "pinned image out of range");
    auto f = st.a->ez(n, c);
    if (f.base_level != n)
      st.base_pins[{f.base_level, f.base}].emplace_back(f.word, val);
  }
  st.rec(0);
}

} // namespace

std::vector<SimplicialMap> enumerate_maps(SSetPtr a, SSetPtr x, const MapSearchOptions& opt) {
  SearchState st;
  st.a = std::move(a);
  st.x = std::move(x);
  st.opt = &opt;
  run_search(st);
  return std::move(st.out);
}

long long count_maps(SSetPtr a, SSetPtr x, const MapSearchOptions& opt) {
  SearchState st;
  st.a = std::move(a);
  st.x = std::move(x);
  st.opt = &opt;
  st.collect = false;
  run_search(st);
  return st.found;
}

bool exists_map(SSetPtr a, SSetPtr x, const MapSearchOptions& opt) {
  MapSearchOptions o = opt;
  o.limit = 1;
  SearchState st;
  st.a = std::move(a);
  st.x = std::move(x);
  st.opt = &o;
  st.collect = false;
  run_search(st);
  return st.found > 0;
}

// ---- horn / boundary restriction sets ---------------------------------------

namespace {

// buckets[i][v] = cells y at level m-1 of X with d_i(y) = v; used to intersect
// the compatibility constraints while enumerating tuples.
std::vector<std::map<Cell, std::vector<Cell>>> face_buckets(const SimplicialSet& x, int m) {
  std::vector<std::map<Cell, std::vector<Cell>>> buckets(m);
  for (int i = 0; i < m; ++i)
    for (Cell y = 0; y < x.size(m - 1); ++y) buckets[i][x.face(m - 1, i, y)].push_back(y);
  return buckets;
}

// enumerate compatible tuples over the face indexes `slots` (ascending)
void enumerate_tuples(const SimplicialSet& x, int m, const std::vector<int>& slots,
                      std::vector<std::vector<Cell>>& out) {
  auto buckets = (m >= 2) ? face_buckets(x, m) : std::vector<std::map<Cell, std::vector<Cell>>>{};
  std::vector<Cell> cur(slots.size(), no_cell);
  std::function<void(size_t)> rec = [&](size_t p) {
    if (p == slots.size()) {
      out.push_back(cur);
      return;
    }
    int b = slots[p];
    // constraints from earlier slots a < b: d_a(x_b) = d_{b-1}(x_a)
    if (p == 0 || m < 2) {
      for (Cell y = 0; y < x.size(m - 1); ++y) {
        cur[p] = y;
        rec(p + 1);
      }
      return;
    }
    int a0 = slots[0];
    Cell want0 = x.face(m - 1, b - 1, cur[0]); // d_{b-1}(x_{a0})
    auto it = buckets[a0].find(want0);
    if (it == buckets[a0].end()) return;
    for (Cell y : it->second) {
      bool ok = true;
      for (size_t q = 1; q < p && ok; ++q) {
        int a = slots[q];
        if (x.face(m - 1, a, y) != x.face(m - 1, b - 1, cur[q])) ok = false;
      }
      if (ok) {
        cur[p] = y;
        rec(p + 1);
      }
    }
  };
  rec(0);
}

} // namespace

HornSet horn_restriction(const SimplicialSet& x, int m, int j) {
  if (m < 1 || m > x.depth)
    fail(Errc::depth_exceeds_truncation,
         "horn level " + std::to_string(m) + " outside truncation of " + x.name);
  if (j < 0 || j > m) fail(Errc::validation_error, "horn index out of range");
  HornSet hs;
  hs.m = m;
  hs.j = j;
  std::vector<int> slots;
  for (int i = 0; i <= m; ++i)
    if (i != j) slots.push_back(i);
  std::vector<std::vector<Cell>> tuples;
  enumerate_tuples(x, m, slots, tuples);
  std::sort(tuples.begin(), tuples.end());
  hs.tuples.reserve(tuples.size());
  for (auto& t : tuples) {
    hs.index.emplace(t, (int)hs.tuples.size());
    HornTuple ht;
    ht.m = m;
    ht.j = j;
    ht.face = t;
    hs.tuples.push_back(std::move(ht));
  }
  hs.fillers.resize(hs.tuples.size());
  hs.restrict_of.resize(x.size(m));
  std::vector<Cell> key(slots.size());
  for (Cell c = 0; c < x.size(m); ++c) {
    for (size_t p = 0; p < slots.size(); ++p) key[p] = x.face(m, slots[p], c);
    auto it = hs.index.find(key);
    if (it == hs.index.end()) fail(Errc::internal_error, "cell restriction missing from horn set");
    hs.restrict_of[c] = it->second;
    hs.fillers[it->second].push_back(c);
  }
  return hs;
}

BoundarySet boundary_restriction(const SimplicialSet& x, int m) {
  if (m < 1 || m > x.depth)
    fail(Errc::depth_exceeds_truncation,
         "boundary level " + std::to_string(m) + " outside truncation of " + x.name);
  BoundarySet bs;
  bs.m = m;
  std::vector<int> slots(m + 1);
  std::iota(slots.begin(), slots.end(), 0);
  enumerate_tuples(x, m, slots, bs.tuples);
  std::sort(bs.tuples.begin(), bs.tuples.end());
  for (size_t i = 0; i < bs.tuples.size(); ++i) bs.index.emplace(bs.tuples[i], (int)i);
  bs.fillers.resize(bs.tuples.size());
  bs.restrict_of.resize(x.size(m));
  std::vector<Cell> key(m + 1);
  for (Cell c = 0; c < x.size(m); ++c) {
    for (int i = 0; i <= m; ++i) key[i] = x.face(m, i, c);
    auto it = bs.index.find(key);
    if (it == bs.index.end()) fail(Errc::internal_error, "cell restriction missing from boundary set");
    bs.restrict_of[c] = it->second;
    bs.fillers[it->second].push_back(c);
  }
  return bs;
}

std::vector<Cell> horn_filler_candidates(const SimplicialSet& x, const HornTuple& t) {
  std::vector<Cell> out;
  for (Cell c = 0; c < x.size(t.m); ++c) {
    bool ok = true;
    for (int i = 0; ok && i <= t.m; ++i)
      if (i != t.j && x.face(t.m, i, c) != t.at(i)) ok = false;
    if (ok) out.push_back(c);
  }
  return out;
}

// ---- cylinders ----------------------------------------------------------------

Cell Cylinder::prism_value(int n, Cell c, int plevel, Cell pcell) const {
  int pos = nd_pos[n][plevel][pcell];
  if (pos >= 0) return keys[n][c][pos];
  auto f = prod[n].ss->ez(plevel, pcell);
  int bpos = nd_pos[n][f.base_level][f.base];
  if (bpos < 0) fail(Errc::internal_error, "prism base cell not indexed");
  return base->apply_word(f.base_level, keys[n][c][bpos], f.word);
}

SimplicialMap Cylinder::cell_as_map(int n, Cell c) const {
  std::vector<std::vector<Cell>> lv(prod[n].ss->depth + 1);
  for (int pl = 0; pl <= prod[n].ss->depth; ++pl) {
    lv[pl].resize(prod[n].ss->size(pl));
    for (Cell pc = 0; pc < prod[n].ss->size(pl); ++pc) lv[pl][pc] = prism_value(n, c, pl, pc);
  }
  return build_map(prod[n].ss, base, std::move(lv));
}

Cell Cylinder::cell_with_key(int n, const std::vector<Cell>& key) const {
  auto it = key_index[n].find(key);
  if (it == key_index[n].end())
    fail(Errc::internal_error, "no cylinder cell with the requested restriction");
  return it->second;
}

Cylinder cylinder(SSetPtr x, int k, int depth) {
  if (k < 1) fail(Errc::validation_error, "cylinder direction k must be >= 1");
  if (depth < 0 || depth + k > x->depth)
    fail(Errc::depth_exceeds_truncation,
         "cylinder depth " + std::to_string(depth) + " needs level " + std::to_string(depth + k) +
             " of " + x->name + " (truncated at " + std::to_string(x->depth) + ")");
  Cylinder cyl;
  cyl.base = x;
  cyl.base_trunc = share(truncate(*x, depth));
  cyl.k = k;
  cyl.depth = depth;
  cyl.k_simplex = standard_simplex(k, x->depth);
  cyl.prod.resize(depth + 1);
  cyl.level_simplex.resize(depth + 1);
  cyl.prod_nd.resize(depth + 1);
  cyl.nd_pos.resize(depth + 1);
  cyl.keys.resize(depth + 1);
  cyl.key_index.resize(depth + 1);

  SimplicialSet s;
  s.name = x->name + "^[" + std::to_string(k) + "]";
  s.depth = depth;
  s.sizes.resize(depth + 1);
  s.faces.resize(depth + 1);
  s.degens.resize(std::max(0, depth));

  for (int n = 0; n <= depth; ++n) {
    cyl.level_simplex[n] = standard_simplex(n, x->depth);
    cyl.prod[n] = product(cyl.level_simplex[n].ss, cyl.k_simplex.ss);
    const SimplicialSet& p = *cyl.prod[n].ss;
    cyl.nd_pos[n].resize(p.depth + 1);
    for (int pl = 0; pl <= p.depth; ++pl) {
      cyl.nd_pos[n][pl].assign(p.size(pl), -1);
      for (Cell c : p.nondegenerate(pl)) {
        cyl.nd_pos[n][pl][c] = (int)cyl.prod_nd[n].size();
        cyl.prod_nd[n].emplace_back(pl, c);
      }
    }
    auto maps = enumerate_maps(cyl.prod[n].ss, x);
    std::vector<std::vector<Cell>> ks;
    ks.reserve(maps.size());
    for (auto& m : maps) {
      std::vector<Cell> key(cyl.prod_nd[n].size());
      for (size_t i = 0; i < cyl.prod_nd[n].size(); ++i)
        key[i] = m.at(cyl.prod_nd[n][i].first, cyl.prod_nd[n][i].second);
      ks.push_back(std::move(key));
    }
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    for (Cell c = 0; c < (Cell)ks.size(); ++c) cyl.key_index[n].emplace(ks[c], c);
    cyl.keys[n] = std::move(ks);
    s.sizes[n] = (int)cyl.keys[n].size();
  }

  // structure maps act on the level factor by precomposition
  auto transported_key = [&](int from_lvl, int to_lvl, const SimplicialMap& pm, Cell c) {
    std::vector<Cell> key(cyl.prod_nd[from_lvl].size());
    for (size_t i = 0; i < cyl.prod_nd[from_lvl].size(); ++i) {
      auto [pl, pc] = cyl.prod_nd[from_lvl][i];
      key[i] = cyl.prism_value(to_lvl, c, pl, pm.at(pl, pc));
    }
    return key;
  };
  for (int n = 1; n <= depth; ++n) {
    s.faces[n].assign(n + 1, std::vector<Cell>(s.sizes[n]));
    for (int i = 0; i <= n; ++i) {
      VertexSeq delta;
      for (int v = 0; v <= n; ++v)
        if (v != i) delta.push_back((int8_t)v);
      auto u = standard_map(cyl.level_simplex[n - 1], cyl.level_simplex[n], delta);
      auto pm = product_map(cyl.prod[n - 1], cyl.prod[n], u);
      for (Cell c = 0; c < s.sizes[n]; ++c)
        s.faces[n][i][c] = cyl.cell_with_key(n - 1, transported_key(n - 1, n, pm, c));
    }
  }
  for (int n = 0; n < depth; ++n) {
    s.degens[n].assign(n + 1, std::vector<Cell>(s.sizes[n]));
    for (int i = 0; i <= n; ++i) {
      VertexSeq sigma;
      for (int v = 0; v <= n; ++v) {
        sigma.push_back((int8_t)v);
        if (v == i) sigma.push_back((int8_t)v);
      }
      auto u = standard_map(cyl.level_simplex[n + 1], cyl.level_simplex[n], sigma);
      auto pm = product_map(cyl.prod[n + 1], cyl.prod[n], u);
      for (Cell c = 0; c < s.sizes[n]; ++c)
        s.degens[n][i][c] = cyl.cell_with_key(n + 1, transported_key(n + 1, n, pm, c));
    }
  }
  cyl.ss = share(build_simplicial_set(std::move(s)));
  return cyl;
}

SimplicialMap cylinder_end(const Cylinder& cyl, int v) {
  if (v < 0 || v > cyl.k) fail(Errc::validation_error, "cylinder end vertex out of range");
  std::vector<std::vector<Cell>> lv(cyl.depth + 1);
  for (int n = 0; n <= cyl.depth; ++n) {
    lv[n].resize(cyl.ss->size(n));
    VertexSeq top, vseq;
    for (int p = 0; p <= n; ++p) {
      top.push_back((int8_t)p);
      vseq.push_back((int8_t)v);
    }
    Cell pa = cyl.level_simplex[n].cell_of(n, top);
    Cell pb = cyl.k_simplex.cell_of(n, vseq);
    Cell pc = cyl.prod[n].pair(n, pa, pb);
    for (Cell c = 0; c < cyl.ss->size(n); ++c) lv[n][c] = cyl.prism_value(n, c, n, pc);
  }
  return build_map(cyl.ss, cyl.base_trunc, std::move(lv));
}

SimplicialMap cylinder_section(const Cylinder& cyl) {
  std::vector<std::vector<Cell>> lv(cyl.depth + 1);
  for (int n = 0; n <= cyl.depth; ++n) {
    lv[n].resize(cyl.base_trunc->size(n));
    for (Cell c = 0; c < cyl.base_trunc->size(n); ++c) {
      std::vector<Cell> key(cyl.prod_nd[n].size());
      for (size_t i = 0; i < cyl.prod_nd[n].size(); ++i) {
        auto [pl, pc] = cyl.prod_nd[n][i];
        auto [pa, pb] = cyl.prod[n].parts(pl, pc);
        (void)pb; // constant prisms ignore the Delta[k] coordinate
        key[i] = apply_operator(*cyl.base, n, c, cyl.level_simplex[n].seq[pl][pa]);
      }
      lv[n][c] = cyl.cell_with_key(n, key);
    }
  }
  return build_map(cyl.base_trunc, cyl.ss, std::move(lv));
}

std::vector<SimplicialMap> find_natural_transformations(const SimplicialMap& f,
                                                        const SimplicialMap& g,
                                                        int depth) {
  if (f.from != g.from || f.to != g.to)
    fail(Errc::validation_error, "transformation endpoints do not match");
  int dmax = std::min(f.from->depth, f.to->depth - 1);
  if (depth > dmax)
    fail(Errc::depth_exceeds_truncation,
         "transformations verifiable only to depth " + std::to_string(dmax));
  Cylinder cyl = cylinder(f.to, 1, depth);
  auto end_bottom = cylinder_end(cyl, 0);
  auto end_top = cylinder_end(cyl, 1);
  SSetPtr xtr = share(truncate(*f.from, depth));
  MapSearchOptions opt;
  opt.allow = [&](int n, Cell c, Cell img) {
    return end_bottom.at(n, img) == f.at(n, c) && end_top.at(n, img) == g.at(n, c);
  };
  return enumerate_maps(xtr, cyl.ss, opt);
}

} // namespace kanfib
