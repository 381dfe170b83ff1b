#include "kanfib/kan.hpp"

#include <algorithm>
#include <sstream>

namespace kanfib {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    case Verdict::partial: return "partial";
  }
  return "?";
}

std::string CheckReport::to_text() const {
  std::ostringstream os;
  os << condition << " on " << subject << ": " << verdict_name(verdict)
     << " (checked to level " << checked_to << ")";
  for (auto& w : witnesses) os << "\n  witness: " << w;
  for (auto& n : notes) os << "\n  note: " << n;
  return os.str();
}

namespace {

std::string tuple_text(const SimplicialSet& x, const HornTuple& t) {
  std::ostringstream os;
  os << "horn(" << t.m << "," << t.j << ")[";
  bool first = true;
  for (int i = 0; i <= t.m; ++i) {
    if (i == t.j) continue;
    if (!first) os << ' ';
    first = false;
    os << 'd' << i << '=' << x.describe(t.m - 1, t.at(i));
  }
  os << ']';
  return os.str();
}

constexpr size_t max_witnesses = 4;

void add_witness(CheckReport& r, const std::string& w) {
  if (r.witnesses.size() < max_witnesses) r.witnesses.push_back(w);
}

} // namespace

CheckReport check_kan(const SimplicialSet& x, int m, int j, bool unique) {
  CheckReport r;
  r.subject = x.name;
  r.condition = (unique ? "Kan!(" : "Kan(") + std::to_string(m) + "," + std::to_string(j) + ")";
  r.checked_to = x.depth;
  HornSet hs = horn_restriction(x, m, j);
  for (size_t t = 0; t < hs.tuples.size(); ++t) {
    size_t n = hs.fillers[t].size();
    if (n == 0 || (unique && n != 1)) {
      r.verdict = Verdict::fails;
      add_witness(r, tuple_text(x, hs.tuples[t]) + " has " + std::to_string(n) + " fillers");
    }
  }
  return r;
}

CheckReport classify_n_groupoid(const SimplicialSet& x, int n) {
  CheckReport r;
  r.subject = x.name;
  r.condition = std::to_string(n) + "-groupoid";
  r.checked_to = x.depth;
  if (n < 0) fail(Errc::validation_error, "groupoid degree must be >= 0");
  bool failed = false;
  for (int m = 1; m <= x.depth; ++m)
    for (int j = 0; j <= m; ++j) {
      CheckReport c = check_kan(x, m, j, m > n);
      if (!c.ok()) {
        failed = true;
        for (auto& w : c.witnesses) add_witness(r, c.condition + ": " + w);
      }
    }
  if (failed)
    r.verdict = Verdict::fails;
  else if (x.depth < n + 2) {
    r.verdict = Verdict::partial;
    r.notes.push_back("uniqueness above level " + std::to_string(x.depth) +
                      " is outside the truncation (need depth " + std::to_string(n + 2) + ")");
  }
  return r;
}

FillResult fill_horn(const SimplicialSet& x, const HornTuple& t) {
  auto cands = horn_filler_candidates(x, t);
  if (cands.empty())
    fail(Errc::no_filler, tuple_text(x, t) + " has no filler in " + x.name);
  FillResult f;
  f.filler = cands.front();
  f.count = (int)cands.size();
  f.unique = cands.size() == 1;
  return f;
}

// ---- fibrations ------------------------------------------------------------

namespace {

// shared skeleton of the fibration / hypercover checks; `horn` selects the
// restriction flavor (relative horns vs full boundaries).
CheckReport relative_check(const SimplicialMap& f, int n, bool horn) {
  const SimplicialSet& e = *f.from;
  const SimplicialSet& b = *f.to;
  CheckReport r;
  r.subject = e.name + " -> " + b.name;
  r.condition = horn ? "Kan fibration (degree " + std::to_string(n) + ")"
                     : "hypercover (degree " + std::to_string(n) + ")";
  r.checked_to = e.depth;
  if (e.depth != b.depth)
    fail(Errc::truncation_mismatch, "map endpoints have different depths");

  // level 0: tau_0 = f_0 against the point; hypercovers need bijectivity from
  // degree n on, horn lifting only strictly above it
  {
    bool unique0 = horn ? (0 > n) : (0 >= n);
    std::vector<int> hit(b.size(0), 0);
    for (Cell c = 0; c < e.size(0); ++c) ++hit[f.at(0, c)];
    for (Cell y = 0; y < b.size(0); ++y) {
      if (hit[y] == 0) {
        r.verdict = Verdict::fails;
        add_witness(r, "tau_0: nothing above " + b.describe(0, y));
      } else if (unique0 && hit[y] != 1) {
        r.verdict = Verdict::fails;
        add_witness(r, "tau_0: " + std::to_string(hit[y]) + " cells above " + b.describe(0, y));
      }
    }
  }

  struct Task {
    int m, j; // j = -1 for boundary
  };
  std::vector<Task> tasks;
  for (int m = 1; m <= e.depth; ++m) {
    if (horn)
      for (int j = 0; j <= m; ++j) tasks.push_back({m, j});
    else
      tasks.push_back({m, -1});
  }

  for (auto [m, j] : tasks) {
    // horn lifting (fibration): unique only strictly above degree n, since an
    // n-groupoid still has free fillers at level n; boundary lifting
    // (hypercover): bijective from level n on
    bool unique_here = horn ? (m > n) : (m >= n);
    // tuple sets on both sides, and f's action on tuples
    std::vector<std::vector<Cell>> etuples;
    std::vector<std::vector<Cell>> efillers;
    std::map<std::vector<Cell>, int> bindex;
    std::vector<std::vector<Cell>> bfillers;
    std::vector<int> erestrict;
    std::vector<std::vector<Cell>> btuples;
    if (j >= 0) {
      HornSet he = horn_restriction(e, m, j);
      HornSet hb = horn_restriction(b, m, j);
      for (auto& t : he.tuples) etuples.push_back(t.face);
      efillers = he.fillers;
      erestrict = he.restrict_of;
      for (auto& t : hb.tuples) btuples.push_back(t.face);
      bindex = hb.index;
      bfillers = hb.fillers;
    } else {
      BoundarySet be = boundary_restriction(e, m);
      BoundarySet bb = boundary_restriction(b, m);
      etuples = be.tuples;
      efillers = be.fillers;
      erestrict = be.restrict_of;
      btuples = bb.tuples;
      bindex = bb.index;
      bfillers = bb.fillers;
    }
    (void)erestrict;
    std::string tau = j >= 0 ? "tau_(" + std::to_string(m) + "," + std::to_string(j) + ")"
                             : "tau_" + std::to_string(m);

    // walk the fiber product of tuple sets: pairs (upstairs tuple, downstairs filler)
    std::vector<Cell> key(etuples.empty() ? 0 : etuples[0].size());
    for (size_t t = 0; t < etuples.size(); ++t) {
      for (size_t p = 0; p < etuples[t].size(); ++p) key[p] = f.at(m - 1, etuples[t][p]);
      auto it = bindex.find(key);
      if (it == bindex.end())
        fail(Errc::internal_error, "image tuple missing downstairs");
      // group the upstairs fillers by their f-image
      std::map<Cell, int> above;
      for (Cell c : efillers[t]) ++above[f.at(m, c)];
      for (Cell y : bfillers[it->second]) {
        auto hit = above.find(y);
        int cnt = hit == above.end() ? 0 : hit->second;
        if (cnt == 0) {
          r.verdict = Verdict::fails;
          add_witness(r, tau + ": no cell over (" +
                             (j >= 0 ? tuple_text(e, {m, j, etuples[t]})
                                     : "boundary tuple #" + std::to_string(t)) +
                             ", " + b.describe(m, y) + ")");
        } else if (unique_here && cnt != 1) {
          r.verdict = Verdict::fails;
          add_witness(r, tau + ": " + std::to_string(cnt) + " cells over (" +
                             (j >= 0 ? tuple_text(e, {m, j, etuples[t]})
                                     : "boundary tuple #" + std::to_string(t)) +
                             ", " + b.describe(m, y) + ")");
        }
      }
    }
  }

  // levels through n+1 certify the map between n-groupoids; above that the
  // unique-filling conditions pin everything, so a shallower truncation is
  // the only reason to stay undecided.
  if (r.verdict == Verdict::holds && e.depth < n + 1) {
    r.verdict = Verdict::partial;
    r.notes.push_back("conditions above level " + std::to_string(e.depth) +
                      " are outside the truncation");
  }
  r.notes.push_back("finite model: surjections replace surjective submersions, vacuous smoothness conditions hold");
  return r;
}

} // namespace

CheckReport check_fibration(const SimplicialMap& f, int n) { return relative_check(f, n, true); }

CheckReport check_hypercover(const SimplicialMap& f, int n) { return relative_check(f, n, false); }

CheckReport check_equivalence(const SimplicialMap& f, int n) {
  const SimplicialSet& y = *f.from;
  const SimplicialSet& x = *f.to;
  int depth = std::min(y.depth, x.depth - 1);
  if (depth < 0) fail(Errc::depth_exceeds_truncation, "target truncated below level 1");
  Cylinder cyl = cylinder(f.to, 1, depth);
  SimplicialMap bottom = cylinder_end(cyl, 0);
  SimplicialMap top = cylinder_end(cyl, 1);
  // paths starting at f: Y x_X X^{[1]} along (f truncated, bottom end)
  SSetPtr ytr = share(truncate(y, depth));
  std::vector<std::vector<Cell>> flv(depth + 1);
  for (int m = 0; m <= depth; ++m) flv[m] = std::vector<Cell>(f.level[m].begin(), f.level[m].end());
  SimplicialMap ftr = build_map(ytr, cyl.base_trunc, std::move(flv));
  FiberProductComplex fp = fiber_product(ftr, bottom);
  SimplicialMap eval = compose(fp.pr2, top);
  CheckReport inner = check_hypercover(eval, n);
  CheckReport r;
  r.subject = y.name + " -> " + x.name;
  r.condition = "equivalence (degree " + std::to_string(n) + ")";
  r.checked_to = depth;
  r.verdict = inner.verdict;
  r.witnesses = inner.witnesses;
  for (auto& note : inner.notes) r.notes.push_back(note);
  if (depth < y.depth)
    r.notes.push_back("path space materializes to level " + std::to_string(depth) +
                      "; higher levels follow by unique filling");
  return r;
}

} // namespace kanfib
