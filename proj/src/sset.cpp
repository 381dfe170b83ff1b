#include "kanfib/sset.hpp"

#include <algorithm>
#include <sstream>

namespace kanfib {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::validation_error: return "ValidationError";
    case Errc::identity_violation: return "IdentityViolation";
    case Errc::truncation_mismatch: return "TruncationMismatch";
    case Errc::depth_exceeds_truncation: return "DepthExceedsTruncation";
    case Errc::no_filler: return "NoFiller";
    case Errc::non_unique_filler: return "NonUniqueFiller";
    case Errc::not_a_1_groupoid: return "NotA1Groupoid";
    case Errc::not_a_2_groupoid: return "NotA2Groupoid";
    case Errc::not_group_like: return "NotGroupLike";
    case Errc::not_a_crossed_module: return "NotACrossedModule";
    case Errc::not_a_transformation: return "NotATransformation";
    case Errc::coherence_failure: return "CoherenceFailure";
    case Errc::not_a_strict_action: return "NotAStrictAction";
    case Errc::not_a_fibration: return "NotAFibration";
    case Errc::not_a_hypercover: return "NotAHypercover";
    case Errc::base_vertex_map_not_bijective: return "BaseVertexMapNotBijective";
    case Errc::base_not_a_1_group: return "BaseNotA1Group";
    case Errc::action_not_free: return "ActionNotFree";
    case Errc::well_definedness_failure: return "WellDefinednessFailure";
    case Errc::not_2_isotropy_free: return "Not2IsotropyFree";
    case Errc::parse_error: return "ParseError";
    case Errc::internal_error: return "InternalError";
  }
  return "Error";
}

std::string SimplicialSet::label(int n, Cell x) const {
  if (n < (int)labels.size() && x < (Cell)labels[n].size()) return labels[n][x];
  return "";
}

std::string SimplicialSet::describe(int n, Cell x) const {
  std::ostringstream os;
  os << n << '#' << x;
  std::string l = label(n, x);
  if (!l.empty()) os << '(' << l << ')';
  return os.str();
}

bool SimplicialSet::is_degenerate(int n, Cell x) const {
  return degeneracy_of(n, x).has_value();
}

std::optional<std::pair<int, Cell>> SimplicialSet::degeneracy_of(int n, Cell x) const {
  if (n == 0) return std::nullopt;
  for (int i = 0; i < n; ++i) {
    Cell y = face(n, i + 1, x);
    if (degen(n - 1, i, y) == x) return std::make_pair(i, y);
  }
  return std::nullopt;
}

std::vector<Cell> SimplicialSet::nondegenerate(int n) const {
  std::vector<Cell> out;
  for (Cell x = 0; x < size(n); ++x)
    if (!is_degenerate(n, x)) out.push_back(x);
  return out;
}

SimplicialSet::EzForm SimplicialSet::ez(int n, Cell x) const {
  EzForm f;
  f.word.clear();
  int lvl = n;
  Cell c = x;
  while (lvl > 0) {
    auto d = degeneracy_of(lvl, c);
    if (!d) break;
    f.word.push_back(d->first);
    c = d->second;
    --lvl;
  }
  f.base_level = lvl;
  f.base = c;
  return f;
}

Cell SimplicialSet::apply_word(int base_level, Cell base, const std::vector<int>& word) const {
  Cell c = base;
  int lvl = base_level;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    c = degen(lvl, *it, c);
    ++lvl;
  }
  return c;
}

const SimplicialSet::FaceKeyMap& SimplicialSet::cells_by_faces(int n) const {
  if ((int)face_cache.per_level.size() <= n) face_cache.per_level.resize(depth + 1);
  if (!face_cache.per_level[n]) {
    auto m = std::make_shared<FaceKeyMap>();
    std::vector<Cell> key(n + 1);
    for (Cell c = 0; c < size(n); ++c) {
      for (int i = 0; i <= n; ++i) key[i] = face(n, i, c);
      (*m)[key].push_back(c);
    }
    face_cache.per_level[n] = std::move(m);
  }
  return *face_cache.per_level[n];
}

namespace {

void check_table(const SimplicialSet& s, const std::vector<Cell>& tab, int dom, int cod,
                 const std::string& what) {
  if ((int)tab.size() != s.sizes[dom])
    fail(Errc::validation_error, s.name + ": " + what + " has " + std::to_string(tab.size()) +
                                     " entries, expected " + std::to_string(s.sizes[dom]));
  for (Cell v : tab)
    if (v < 0 || v >= s.sizes[cod])
      fail(Errc::validation_error, s.name + ": " + what + " hits out-of-range cell " + std::to_string(v));
}

} // namespace

SimplicialSet build_simplicial_set(SimplicialSet raw) {
  SimplicialSet& s = raw;
  if (s.depth < 0) fail(Errc::validation_error, s.name + ": negative depth");
  if ((int)s.sizes.size() != s.depth + 1)
    fail(Errc::validation_error, s.name + ": sizes has " + std::to_string(s.sizes.size()) +
                                     " levels, expected " + std::to_string(s.depth + 1));
  for (int n = 0; n <= s.depth; ++n)
    if (s.sizes[n] < 0) fail(Errc::validation_error, s.name + ": negative level size");
  if ((int)s.faces.size() != s.depth + 1 || (s.depth > 0 && (int)s.degens.size() != s.depth))
    fail(Errc::validation_error, s.name + ": face/degeneracy level count mismatch");
  for (int n = 1; n <= s.depth; ++n) {
    if ((int)s.faces[n].size() != n + 1)
      fail(Errc::validation_error, s.name + ": level " + std::to_string(n) + " needs " +
                                       std::to_string(n + 1) + " face maps");
    for (int i = 0; i <= n; ++i)
      check_table(s, s.faces[n][i], n, n - 1, "face " + std::to_string(n) + "," + std::to_string(i));
  }
  for (int n = 0; n < s.depth; ++n) {
    if ((int)s.degens[n].size() != n + 1)
      fail(Errc::validation_error, s.name + ": level " + std::to_string(n) + " needs " +
                                       std::to_string(n + 1) + " degeneracy maps");
    for (int i = 0; i <= n; ++i)
      check_table(s, s.degens[n][i], n, n + 1, "degen " + std::to_string(n) + "," + std::to_string(i));
  }

  auto bad = [&](const std::string& ident, int n, Cell x) {
    fail(Errc::identity_violation, s.name + ": " + ident + " fails at " + s.describe(n, x));
  };

  // d_i d_j = d_{j-1} d_i for i < j
  for (int n = 2; n <= s.depth; ++n)
    for (Cell x = 0; x < s.sizes[n]; ++x)
      for (int j = 1; j <= n; ++j)
        for (int i = 0; i < j; ++i)
          if (s.face(n - 1, i, s.face(n, j, x)) != s.face(n - 1, j - 1, s.face(n, i, x)))
            bad("d" + std::to_string(i) + " d" + std::to_string(j), n, x);

  // d_i s_j identities, checked on x in X_n with s_j(x) in X_{n+1}
  for (int n = 0; n < s.depth; ++n)
    for (Cell x = 0; x < s.sizes[n]; ++x)
      for (int j = 0; j <= n; ++j) {
        Cell sx = s.degen(n, j, x);
        for (int i = 0; i <= n + 1; ++i) {
          Cell got = s.face(n + 1, i, sx);
          Cell want;
          if (i < j)
            want = s.degen(n - 1, j - 1, s.face(n, i, x));
          else if (i == j || i == j + 1)
            want = x;
          else
            want = s.degen(n - 1, j, s.face(n, i - 1, x));
          if (got != want) bad("d" + std::to_string(i) + " s" + std::to_string(j), n, x);
        }
      }

  // s_i s_j = s_{j+1} s_i for i <= j
  for (int n = 0; n + 2 <= s.depth; ++n)
    for (Cell x = 0; x < s.sizes[n]; ++x)
      for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= j; ++i)
          if (s.degen(n + 1, i, s.degen(n, j, x)) != s.degen(n + 1, j + 1, s.degen(n, i, x)))
            bad("s" + std::to_string(i) + " s" + std::to_string(j), n, x);

  return raw;
}

SSetPtr share(SimplicialSet s) { return std::make_shared<const SimplicialSet>(std::move(s)); }

SimplicialSet truncate(const SimplicialSet& x, int d, const std::string& name) {
  if (d < 0 || d > x.depth)
    fail(Errc::depth_exceeds_truncation,
         x.name + ": cannot truncate depth-" + std::to_string(x.depth) + " set at " + std::to_string(d));
  SimplicialSet t;
  t.name = name.empty() ? x.name + "|" + std::to_string(d) : name;
  t.depth = d;
  t.sizes.assign(x.sizes.begin(), x.sizes.begin() + d + 1);
  t.faces.assign(x.faces.begin(), x.faces.begin() + d + 1);
  t.degens.assign(x.degens.begin(), x.degens.begin() + std::min((size_t)d, x.degens.size()));
  for (int n = 0; n <= d && n < (int)x.labels.size(); ++n) t.labels.push_back(x.labels[n]);
  return t;
}

// ---- maps ----------------------------------------------------------------

SimplicialMap build_map(SSetPtr from, SSetPtr to, std::vector<std::vector<Cell>> level) {
  if (!from || !to) fail(Errc::validation_error, "map endpoints missing");
  if (from->depth > to->depth)
    fail(Errc::truncation_mismatch, "map from depth " + std::to_string(from->depth) +
                                        " into shallower depth " + std::to_string(to->depth));
  if ((int)level.size() != from->depth + 1)
    fail(Errc::validation_error, "map level count != domain depth+1");
  for (int n = 0; n <= from->depth; ++n) {
    if ((int)level[n].size() != from->size(n))
      fail(Errc::validation_error, "map level " + std::to_string(n) + " size mismatch");
    for (Cell x = 0; x < from->size(n); ++x)
      if (level[n][x] < 0 || level[n][x] >= to->size(n))
        fail(Errc::validation_error, "map image out of range at level " + std::to_string(n));
  }
  for (int n = 1; n <= from->depth; ++n)
    for (Cell x = 0; x < from->size(n); ++x)
      for (int i = 0; i <= n; ++i)
        if (level[n - 1][from->face(n, i, x)] != to->face(n, i, level[n][x]))
          fail(Errc::validation_error,
               "map does not commute with d" + std::to_string(i) + " at " + from->describe(n, x));
  for (int n = 0; n < from->depth; ++n)
    for (Cell x = 0; x < from->size(n); ++x)
      for (int i = 0; i <= n; ++i)
        if (level[n + 1][from->degen(n, i, x)] != to->degen(n, i, level[n][x]))
          fail(Errc::validation_error,
               "map does not commute with s" + std::to_string(i) + " at " + from->describe(n, x));
  SimplicialMap m;
  m.from = std::move(from);
  m.to = std::move(to);
  m.level = std::move(level);
  return m;
}

SimplicialMap identity_map(SSetPtr x) {
  std::vector<std::vector<Cell>> lv(x->depth + 1);
  for (int n = 0; n <= x->depth; ++n) {
    lv[n].resize(x->size(n));
    for (Cell c = 0; c < x->size(n); ++c) lv[n][c] = c;
  }
  SimplicialMap m;
  m.from = x;
  m.to = x;
  m.level = std::move(lv);
  return m;
}

SimplicialMap compose(const SimplicialMap& f, const SimplicialMap& g) {
  if (f.to != g.from)
    fail(Errc::validation_error, "compose: middle objects differ (" + f.to->name + " vs " + g.from->name + ")");
  SimplicialMap m;
  m.from = f.from;
  m.to = g.to;
  m.level.resize(f.level.size());
  for (int n = 0; n < (int)f.level.size(); ++n) {
    m.level[n].resize(f.level[n].size());
    for (size_t x = 0; x < f.level[n].size(); ++x) m.level[n][x] = g.level[n][f.level[n][x]];
  }
  return m;
}

bool same_map(const SimplicialMap& a, const SimplicialMap& b) {
  return a.from == b.from && a.to == b.to && a.level == b.level;
}

// ---- standard complexes ---------------------------------------------------

Cell StandardComplex::cell_of(int n, const VertexSeq& s) const {
  auto it = index[n].find(s);
  if (it == index[n].end())
    fail(Errc::validation_error, ss->name + ": no cell for the given vertex sequence");
  return it->second;
}

namespace {

bool seq_allowed(StdKind kind, int m, int j, const VertexSeq& s) {
  if (kind == StdKind::simplex) return true;
  std::vector<char> hit(m + 1, 0);
  for (int8_t v : s) hit[v] = 1;
  if (kind == StdKind::boundary) {
    for (int v = 0; v <= m; ++v)
      if (!hit[v]) return true;
    return false;
  }
  // horn: some vertex other than j must be missed
  for (int v = 0; v <= m; ++v)
    if (v != j && !hit[v]) return true;
  return false;
}

std::string seq_to_string(const VertexSeq& s) {
  std::string out;
  for (int8_t v : s) {
    if (v >= 10) out += ',';
    out += std::to_string((int)v);
    if (v >= 10) out += ',';
  }
  return out;
}

StandardComplex make_standard_impl(StdKind kind, int m, int j, int depth, std::string name) {
  if (m < 0 || depth < 0) fail(Errc::validation_error, "standard complex needs m, depth >= 0");
  if (kind == StdKind::horn && (m < 1 || j < 0 || j > m))
    fail(Errc::validation_error, "horn index out of range");
  if (kind == StdKind::boundary && m < 1)
    fail(Errc::validation_error, "boundary needs m >= 1");
  StandardComplex sc;
  sc.kind = kind;
  sc.m = m;
  sc.j = (kind == StdKind::horn) ? j : -1;
  sc.seq.resize(depth + 1);
  sc.index.resize(depth + 1);
  SimplicialSet s;
  s.name = std::move(name);
  s.depth = depth;
  s.sizes.resize(depth + 1);
  s.faces.resize(depth + 1);
  s.degens.resize(depth);
  s.labels.resize(depth + 1);
  for (int n = 0; n <= depth; ++n) {
    // enumerate monotone sequences of length n+1 over 0..m, lexicographically
    VertexSeq cur(n + 1, 0);
    std::function<void(int, int)> rec = [&](int pos, int low) {
      if (pos == n + 1) {
        if (seq_allowed(kind, m, j, cur)) {
          Cell id = (Cell)sc.seq[n].size();
          sc.seq[n].push_back(cur);
          sc.index[n].emplace(cur, id);
          s.labels[n].push_back(seq_to_string(cur));
        }
        return;
      }
      for (int v = low; v <= m; ++v) {
        cur[pos] = (int8_t)v;
        rec(pos + 1, v);
      }
    };
    rec(0, 0);
    s.sizes[n] = (int)sc.seq[n].size();
  }
  for (int n = 1; n <= depth; ++n) {
    s.faces[n].assign(n + 1, std::vector<Cell>(s.sizes[n]));
    for (Cell x = 0; x < s.sizes[n]; ++x) {
      const VertexSeq& q = sc.seq[n][x];
      for (int i = 0; i <= n; ++i) {
        VertexSeq r;
        r.reserve(n);
        for (int p = 0; p <= n; ++p)
          if (p != i) r.push_back(q[p]);
        s.faces[n][i][x] = sc.index[n - 1].at(r);
      }
    }
  }
  for (int n = 0; n < depth; ++n) {
    s.degens[n].assign(n + 1, std::vector<Cell>(s.sizes[n]));
    for (Cell x = 0; x < s.sizes[n]; ++x) {
      const VertexSeq& q = sc.seq[n][x];
      for (int i = 0; i <= n; ++i) {
        VertexSeq r;
        r.reserve(n + 2);
        for (int p = 0; p <= n; ++p) {
          r.push_back(q[p]);
          if (p == i) r.push_back(q[p]);
        }
        s.degens[n][i][x] = sc.index[n + 1].at(r);
      }
    }
  }
  sc.ss = share(build_simplicial_set(std::move(s)));
  return sc;
}

} // namespace

StandardComplex standard_simplex(int m, int depth) {
  return make_standard_impl(StdKind::simplex, m, -1, depth, "Delta[" + std::to_string(m) + "]");
}

StandardComplex boundary_complex(int m, int depth) {
  return make_standard_impl(StdKind::boundary, m, -1, depth, "dDelta[" + std::to_string(m) + "]");
}

StandardComplex horn_complex(int m, int j, int depth) {
  return make_standard_impl(StdKind::horn, m, j, depth,
                            "Lambda[" + std::to_string(m) + "," + std::to_string(j) + "]");
}

StandardComplex make_standard(StdKind kind, int m, int j, int depth) {
  switch (kind) {
    case StdKind::simplex: return standard_simplex(m, depth);
    case StdKind::boundary: return boundary_complex(m, depth);
    case StdKind::horn: return horn_complex(m, j, depth);
  }
  fail(Errc::validation_error, "unknown standard complex kind");
}

SimplicialMap standard_map(const StandardComplex& a, const StandardComplex& b, const VertexSeq& zeta) {
  if ((int)zeta.size() != a.m + 1)
    fail(Errc::validation_error, "vertex map has wrong arity");
  for (size_t p = 0; p + 1 < zeta.size(); ++p)
    if (zeta[p] > zeta[p + 1]) fail(Errc::validation_error, "vertex map not monotone");
  for (int8_t v : zeta)
    if (v < 0 || v > b.m) fail(Errc::validation_error, "vertex map out of range");
  std::vector<std::vector<Cell>> lv(a.ss->depth + 1);
  for (int n = 0; n <= a.ss->depth; ++n) {
    lv[n].resize(a.ss->size(n));
    for (Cell x = 0; x < a.ss->size(n); ++x) {
      VertexSeq img(a.seq[n][x]);
      for (auto& v : img) v = zeta[v];
      lv[n][x] = b.cell_of(n, img);
    }
  }
  return build_map(a.ss, b.ss, std::move(lv));
}

Cell apply_operator(const SimplicialSet& x, int n, Cell c, const VertexSeq& mu) {
  int r = (int)mu.size() - 1;
  if (r < 0) fail(Errc::validation_error, "empty operator");
  for (int p = 0; p < r; ++p)
    if (mu[p] > mu[p + 1]) fail(Errc::validation_error, "operator not monotone");
  if (mu[0] < 0 || mu[r] > n) fail(Errc::validation_error, "operator out of range");
  // faces: strike the vertices of [n] missed by mu, highest first
  std::vector<char> hit(n + 1, 0);
  for (int8_t v : mu) hit[v] = 1;
  Cell cur = c;
  int lvl = n;
  for (int v = n; v >= 0; --v)
    if (!hit[v]) {
      cur = x.face(lvl, v, cur);
      --lvl;
    }
  // degeneracies: realize the surjection [r] ->> [lvl] given by rank of mu values
  std::vector<int> rank(mu.size());
  {
    int rk = -1;
    int8_t prev = -1;
    for (size_t p = 0; p < mu.size(); ++p) {
      if (p == 0 || mu[p] != prev) ++rk;
      prev = mu[p];
      rank[p] = rk;
    }
  }
  std::vector<int> word; // s-indices, outermost first
  std::vector<int> t(rank);
  while ((int)t.size() - 1 > lvl) {
    for (size_t i = 0; i + 1 < t.size(); ++i)
      if (t[i] == t[i + 1]) {
        word.push_back((int)i);
        t.erase(t.begin() + i + 1);
        break;
      }
  }
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    cur = x.degen(lvl, *it, cur);
    ++lvl;
  }
  return cur;
}

// ---- products --------------------------------------------------------------

Cell ProductComplex::pair(int n, Cell pa, Cell pb) const { return pa * b->size(n) + pb; }

std::pair<Cell, Cell> ProductComplex::parts(int n, Cell x) const {
  return {x / b->size(n), x % b->size(n)};
}

SimplicialMap ProductComplex::pr1() const {
  std::vector<std::vector<Cell>> lv(ss->depth + 1);
  for (int n = 0; n <= ss->depth; ++n) {
    lv[n].resize(ss->size(n));
    for (Cell x = 0; x < ss->size(n); ++x) lv[n][x] = x / b->size(n);
  }
  return build_map(ss, a, std::move(lv));
}

SimplicialMap ProductComplex::pr2() const {
  std::vector<std::vector<Cell>> lv(ss->depth + 1);
  for (int n = 0; n <= ss->depth; ++n) {
    lv[n].resize(ss->size(n));
    for (Cell x = 0; x < ss->size(n); ++x) lv[n][x] = x % b->size(n);
  }
  return build_map(ss, b, std::move(lv));
}

ProductComplex product(SSetPtr a, SSetPtr b) {
  if (a->depth != b->depth)
    fail(Errc::truncation_mismatch,
         "product factors " + a->name + " and " + b->name + " have different depths");
  SimplicialSet s;
  s.name = a->name + "x" + b->name;
  s.depth = a->depth;
  s.sizes.resize(s.depth + 1);
  s.faces.resize(s.depth + 1);
  s.degens.resize(std::max(0, s.depth));
  for (int n = 0; n <= s.depth; ++n) s.sizes[n] = a->size(n) * b->size(n);
  for (int n = 1; n <= s.depth; ++n) {
    s.faces[n].assign(n + 1, std::vector<Cell>(s.sizes[n]));
    for (Cell pa = 0; pa < a->size(n); ++pa)
      for (Cell pb = 0; pb < b->size(n); ++pb)
        for (int i = 0; i <= n; ++i)
          s.faces[n][i][pa * b->size(n) + pb] =
              a->face(n, i, pa) * b->size(n - 1) + b->face(n, i, pb);
  }
  for (int n = 0; n < s.depth; ++n) {
    s.degens[n].assign(n + 1, std::vector<Cell>(s.sizes[n]));
    for (Cell pa = 0; pa < a->size(n); ++pa)
      for (Cell pb = 0; pb < b->size(n); ++pb)
        for (int i = 0; i <= n; ++i)
          s.degens[n][i][pa * b->size(n) + pb] =
              a->degen(n, i, pa) * b->size(n + 1) + b->degen(n, i, pb);
  }
  ProductComplex p;
  p.ss = share(build_simplicial_set(std::move(s)));
  p.a = std::move(a);
  p.b = std::move(b);
  return p;
}

SimplicialMap product_map(const ProductComplex& from, const ProductComplex& to, const SimplicialMap& u) {
  if (u.from != from.a || u.to != to.a || from.b != to.b)
    fail(Errc::validation_error, "product_map factors do not line up");
  int d = from.ss->depth;
  std::vector<std::vector<Cell>> lv(d + 1);
  for (int n = 0; n <= d; ++n) {
    lv[n].resize(from.ss->size(n));
    for (Cell x = 0; x < from.ss->size(n); ++x) {
      auto [pa, pb] = from.parts(n, x);
      lv[n][x] = to.pair(n, u.at(n, pa), pb);
    }
  }
  return build_map(from.ss, to.ss, std::move(lv));
}

// ---- fiber products ---------------------------------------------------------

FiberProductComplex fiber_product(const SimplicialMap& f, const SimplicialMap& g) {
  if (f.to != g.to) fail(Errc::validation_error, "fiber product legs have different targets");
  if (f.from->depth != g.from->depth)
    fail(Errc::truncation_mismatch, "fiber product factors have different depths");
  int d = f.from->depth;
  FiberProductComplex fp;
  fp.parts.resize(d + 1);
  fp.index.resize(d + 1);
  SimplicialSet s;
  s.name = f.from->name + "x_" + f.to->name + "_" + g.from->name;
  s.depth = d;
  s.sizes.resize(d + 1);
  s.faces.resize(d + 1);
  s.degens.resize(std::max(0, d));
  for (int n = 0; n <= d; ++n) {
    for (Cell x = 0; x < f.from->size(n); ++x)
      for (Cell y = 0; y < g.from->size(n); ++y)
        if (f.at(n, x) == g.at(n, y)) {
          fp.index[n].emplace(std::make_pair(x, y), (Cell)fp.parts[n].size());
          fp.parts[n].emplace_back(x, y);
        }
    s.sizes[n] = (int)fp.parts[n].size();
  }
  for (int n = 1; n <= d; ++n) {
    s.faces[n].assign(n + 1, std::vector<Cell>(s.sizes[n]));
    for (Cell c = 0; c < s.sizes[n]; ++c) {
      auto [x, y] = fp.parts[n][c];
      for (int i = 0; i <= n; ++i)
        s.faces[n][i][c] = fp.index[n - 1].at({f.from->face(n, i, x), g.from->face(n, i, y)});
    }
  }
  for (int n = 0; n < d; ++n) {
    s.degens[n].assign(n + 1, std::vector<Cell>(s.sizes[n]));
    for (Cell c = 0; c < s.sizes[n]; ++c) {
      auto [x, y] = fp.parts[n][c];
      for (int i = 0; i <= n; ++i)
        s.degens[n][i][c] = fp.index[n + 1].at({f.from->degen(n, i, x), g.from->degen(n, i, y)});
    }
  }
  fp.ss = share(build_simplicial_set(std::move(s)));
  {
    std::vector<std::vector<Cell>> lv1(d + 1), lv2(d + 1);
    for (int n = 0; n <= d; ++n) {
      lv1[n].resize(fp.parts[n].size());
      lv2[n].resize(fp.parts[n].size());
      for (Cell c = 0; c < (Cell)fp.parts[n].size(); ++c) {
        lv1[n][c] = fp.parts[n][c].first;
        lv2[n][c] = fp.parts[n][c].second;
      }
    }
    fp.pr1 = build_map(fp.ss, f.from, std::move(lv1));
    fp.pr2 = build_map(fp.ss, g.from, std::move(lv2));
  }
  return fp;
}

// ---- skeleta ----------------------------------------------------------------

Subcomplex skeleton(SSetPtr x, int k) {
  if (k < 0 || k > x->depth)
    fail(Errc::depth_exceeds_truncation, "skeleton index outside truncation");
  int d = x->depth;
  // keep[n]: sorted list of X-cells in the skeleton at level n
  std::vector<std::vector<Cell>> keep(d + 1);
  std::vector<std::vector<Cell>> back(d + 1); // X-cell -> new id or no_cell
  for (int n = 0; n <= d; ++n) back[n].assign(x->size(n), no_cell);
  for (int n = 0; n <= d; ++n) {
    if (n <= k) {
      keep[n].resize(x->size(n));
      for (Cell c = 0; c < x->size(n); ++c) keep[n][c] = c;
    } else {
      for (Cell c : keep[n - 1])
        for (int i = 0; i <= n - 1; ++i) {
          Cell s = x->degen(n - 1, i, c);
          if (back[n][s] == no_cell) back[n][s] = 0; // mark
        }
      for (Cell c = 0; c < x->size(n); ++c)
        if (back[n][c] != no_cell) keep[n].push_back(c);
    }
    for (Cell i = 0; i < (Cell)keep[n].size(); ++i) back[n][keep[n][i]] = i;
  }
  SimplicialSet s;
  s.name = "sk" + std::to_string(k) + "(" + x->name + ")";
  s.depth = d;
  s.sizes.resize(d + 1);
  s.faces.resize(d + 1);
  s.degens.resize(std::max(0, d));
  for (int n = 0; n <= d; ++n) s.sizes[n] = (int)keep[n].size();
  for (int n = 1; n <= d; ++n) {
    s.faces[n].assign(n + 1, std::vector<Cell>(s.sizes[n]));
    for (Cell c = 0; c < s.sizes[n]; ++c)
      for (int i = 0; i <= n; ++i) {
        Cell img = back[n - 1][x->face(n, i, keep[n][c])];
        if (img == no_cell) fail(Errc::internal_error, "skeleton not face-closed");
        s.faces[n][i][c] = img;
      }
  }
  for (int n = 0; n < d; ++n) {
    s.degens[n].assign(n + 1, std::vector<Cell>(s.sizes[n]));
    for (Cell c = 0; c < s.sizes[n]; ++c)
      for (int i = 0; i <= n; ++i) {
        Cell img = back[n + 1][x->degen(n, i, keep[n][c])];
        if (img == no_cell) fail(Errc::internal_error, "skeleton not degeneracy-closed");
        s.degens[n][i][c] = img;
      }
  }
  Subcomplex sub;
  sub.ss = share(build_simplicial_set(std::move(s)));
  std::vector<std::vector<Cell>> lv(d + 1);
  for (int n = 0; n <= d; ++n) lv[n] = keep[n];
  sub.incl = build_map(sub.ss, std::move(x), std::move(lv));
  return sub;
}

// ---- isomorphism search -------------------------------------------------------

std::optional<SimplicialMap> find_isomorphism(
    SSetPtr a, SSetPtr b, const std::function<bool(int, Cell, Cell)>& allow) {
  if (a->depth != b->depth) return std::nullopt;
  int d = a->depth;
  std::vector<std::vector<Cell>> nda(d + 1), ndb(d + 1);
  for (int n = 0; n <= d; ++n) {
    if (a->size(n) != b->size(n)) return std::nullopt;
    nda[n] = a->nondegenerate(n);
    ndb[n] = b->nondegenerate(n);
    if (nda[n].size() != ndb[n].size()) return std::nullopt;
  }
  // assignment order: nondegenerate cells by (level, id)
  std::vector<std::pair<int, Cell>> order;
  for (int n = 0; n <= d; ++n)
    for (Cell c : nda[n]) order.emplace_back(n, c);
  // candidates for a level-n cell (n >= 1) must match its already-determined
  // face images exactly, so index the targets by face tuple up front
  std::vector<std::map<std::vector<Cell>, std::vector<Cell>>> bucket(d + 1);
  for (int n = 1; n <= d; ++n)
    for (Cell t : ndb[n]) {
      std::vector<Cell> key(n + 1);
      for (int i = 0; i <= n; ++i) key[i] = b->face(n, i, t);
      bucket[n][std::move(key)].push_back(t);
    }
  std::vector<std::vector<Cell>> img(d + 1);
  std::vector<std::vector<char>> used(d + 1);
  for (int n = 0; n <= d; ++n) {
    img[n].assign(a->size(n), no_cell);
    used[n].assign(b->size(n), 0);
  }
  // image of a possibly-degenerate cell, from images of nondegenerate bases
  auto image = [&](int n, Cell c) -> Cell {
    if (img[n][c] != no_cell) return img[n][c];
    auto f = a->ez(n, c);
    Cell base_img = img[f.base_level][f.base];
    if (base_img == no_cell) return no_cell;
    return b->apply_word(f.base_level, base_img, f.word);
  };
  // iterative backtracking, one frame per nondegenerate cell of a
  static const std::vector<Cell> no_candidates;
  std::vector<const std::vector<Cell>*> cand(order.size(), nullptr);
  std::vector<size_t> at(order.size(), 0);
  size_t pos = 0;
  while (pos < order.size()) {
    auto [n, c] = order[pos];
    if (cand[pos] == nullptr) {
      if (n == 0) {
        cand[pos] = &ndb[0];
      } else {
        // level-major order: every lower level is fully assigned here
        std::vector<Cell> key(n + 1);
        for (int i = 0; i <= n; ++i) key[i] = image(n - 1, a->face(n, i, c));
        auto it = bucket[n].find(key);
        cand[pos] = it == bucket[n].end() ? &no_candidates : &it->second;
      }
      at[pos] = 0;
    }
    bool placed = false;
    while (at[pos] < cand[pos]->size()) {
      Cell t = (*cand[pos])[at[pos]++];
      if (used[n][t]) continue;
      if (allow && !allow(n, c, t)) continue;
      img[n][c] = t;
      used[n][t] = 1;
      placed = true;
      break;
    }
    if (placed) {
      ++pos;
      continue;
    }
    cand[pos] = nullptr;
    if (pos == 0) return std::nullopt;
    --pos;
    auto [pn, pc] = order[pos];
    used[pn][img[pn][pc]] = 0;
    img[pn][pc] = no_cell;
  }
  std::vector<std::vector<Cell>> lv(d + 1);
  for (int n = 0; n <= d; ++n) {
    lv[n].resize(a->size(n));
    for (Cell c = 0; c < a->size(n); ++c) {
      Cell i = image(n, c);
      if (i == no_cell) fail(Errc::internal_error, "isomorphism image incomplete");
      lv[n][c] = i;
    }
  }
  auto m = build_map(std::move(a), std::move(b), std::move(lv));
  // nondegenerate bijection per level implies level-wise bijection
  return m;
}

} // namespace kanfib
