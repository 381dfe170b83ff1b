#include "kanfib/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace kanfib {

namespace {

struct Token {
  std::string text;
  int col = 0; // 1-based
};

[[noreturn]] void parse_fail(int line, int col, const std::string& expected) {
  fail(Errc::parse_error,
       "line " + std::to_string(line) + ", column " + std::to_string(col) + ": expected " +
           expected);
}

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (std::isspace((unsigned char)line[i])) {
      ++i;
      continue;
    }
    size_t j = i;
    while (j < line.size() && !std::isspace((unsigned char)line[j]) && line[j] != '#') ++j;
    out.push_back({line.substr(i, j - i), (int)i + 1});
    i = j;
  }
  return out;
}

int to_int(const Token& t, int line, const std::string& what) {
  int v = 0;
  auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
  if (ec != std::errc() || p != t.text.data() + t.text.size())
    parse_fail(line, t.col, what + ", got '" + t.text + "'");
  return v;
}

// split "a->b" (or the arrow glyph) into its two sides
bool split_pair(const std::string& s, std::string& lhs, std::string& rhs) {
  size_t p = s.find("->");
  size_t w = 2;
  if (p == std::string::npos) {
    p = s.find("\xe2\x86\x92");
    w = 3;
  }
  if (p == std::string::npos) return false;
  lhs = s.substr(0, p);
  rhs = s.substr(p + w);
  return !lhs.empty() && !rhs.empty();
}

bool is_arrow(const std::string& s) { return s == "->" || s == "\xe2\x86\x92"; }

// ---- intermediate block state --------------------------------------------------

struct SsetBlock {
  std::string name;
  int depth = -1;
  std::vector<int> sizes;
  bool have_sizes = false;
  // (n, i) -> list of (cell, image, line)
  std::map<std::pair<int, int>, std::vector<std::array<int, 3>>> face_lines, degen_lines;
};

struct GroupoidBlock {
  std::string name;
  int n_objects = -1;
  std::vector<std::array<int, 4>> arrows;          // id, src, tgt, line
  std::vector<std::array<int, 3>> units, invs;     // x -> a / a -> b, line
  std::vector<std::array<int, 4>> composes;        // a b -> c, line
};

struct XmBlock {
  std::string name;
  int hn = -1, gn = -1;
  std::map<int, std::vector<int>> hmul, gmul, act;
  std::vector<int> bnd;
  bool have_bnd = false;
};

struct RawAction {
  ActionBlock blk;
  std::map<int, GroupoidFunctor> phi;
  std::map<int, std::vector<int>> theta;
};

struct RawMap {
  MapBlock blk;
  std::map<int, std::vector<std::pair<int, int>>> level_lines; // n -> (cell, image)
};

FiniteGroup group_from_table(const std::string& name, int n,
                             const std::map<int, std::vector<int>>& rows, int line) {
  FiniteGroup g;
  g.name = name;
  g.n = n;
  if (n <= 0) fail(Errc::validation_error, name + ": group order must be positive");
  g.mul.assign(n, {});
  for (int i = 0; i < n; ++i) {
    auto it = rows.find(i);
    if (it == rows.end())
      fail(Errc::validation_error, name + ": missing multiplication row " + std::to_string(i));
    if ((int)it->second.size() != n)
      fail(Errc::validation_error, name + ": multiplication row " + std::to_string(i) +
                                       " needs " + std::to_string(n) + " entries");
    g.mul[i] = it->second;
  }
  for (const auto& [i, row] : rows)
    if (i < 0 || i >= n)
      fail(Errc::validation_error, name + ": multiplication row " + std::to_string(i) +
                                       " out of range");
  g.unit = -1;
  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (int a = 0; a < n; ++a) ok = ok && g.mul[e][a] == a && g.mul[a][e] == a;
    if (ok) {
      g.unit = e;
      break;
    }
  }
  if (g.unit < 0) fail(Errc::validation_error, name + ": multiplication table has no unit");
  g.inv.assign(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (g.mul[a][b] == g.unit && g.mul[b][a] == g.unit) g.inv[a] = b;
  for (int a = 0; a < n; ++a)
    if (g.inv[a] < 0)
      fail(Errc::validation_error, name + ": element " + std::to_string(a) + " has no inverse");
  (void)line;
  return build_group(std::move(g));
}

// ---- the parser -----------------------------------------------------------------

struct Parser {
  Document doc;
  int line_no = 0;

  enum class Kind { none, sset, groupoid, xm, action, map };
  Kind kind = Kind::none;
  SsetBlock sb;
  GroupoidBlock gb;
  XmBlock xb;
  RawAction ab;
  RawMap mb;
  int block_line = 0;

  void check_fresh_name(const std::string& name) {
    if (doc.find_sset(name) || doc.find_groupoid(name) || doc.find_crossed_module(name) ||
        doc.find_action(name) || doc.find_map(name))
      fail(Errc::validation_error, "duplicate block name '" + name + "'");
  }

  void finish() {
    switch (kind) {
      case Kind::none: return;
      case Kind::sset: finish_sset(); break;
      case Kind::groupoid: finish_groupoid(); break;
      case Kind::xm: finish_xm(); break;
      case Kind::action: finish_action(); break;
      case Kind::map: finish_map(); break;
    }
    kind = Kind::none;
  }

  void finish_sset() {
    if (!sb.have_sizes)
      fail(Errc::validation_error, "sset '" + sb.name + "' has no levels line");
    if ((int)sb.sizes.size() != sb.depth + 1)
      fail(Errc::validation_error, "sset '" + sb.name + "' declares N=" +
                                       std::to_string(sb.depth) + " but " +
                                       std::to_string(sb.sizes.size()) + " level sizes");
    SimplicialSet s;
    s.name = sb.name;
    s.depth = sb.depth;
    s.sizes = sb.sizes;
    s.faces.resize(sb.depth + 1);
    s.degens.resize(std::max(0, sb.depth));
    for (int n = 1; n <= sb.depth; ++n)
      s.faces[n].assign(n + 1, std::vector<Cell>(s.sizes[n], no_cell));
    for (int n = 0; n < sb.depth; ++n)
      s.degens[n].assign(n + 1, std::vector<Cell>(s.sizes[n], no_cell));
    auto fill = [&](bool is_face, const std::pair<int, int>& key,
                    const std::vector<std::array<int, 3>>& entries) {
      auto [n, i] = key;
      const char* what = is_face ? "face" : "degen";
      bool ok = is_face ? (n >= 1 && n <= sb.depth && i >= 0 && i <= n)
                        : (n >= 0 && n < sb.depth && i >= 0 && i <= n);
      if (!ok)
        fail(Errc::validation_error, "sset '" + sb.name + "': " + what + " " +
                                         std::to_string(n) + " " + std::to_string(i) +
                                         " out of range");
      auto& table = is_face ? s.faces[n][i] : s.degens[n][i];
      for (const auto& [x, v, ln] : entries) {
        if (x < 0 || x >= s.sizes[n])
          parse_fail(ln, 1, "a cell id below " + std::to_string(s.sizes[n]));
        if (table[x] != no_cell)
          fail(Errc::validation_error, "sset '" + sb.name + "': " + what + " of cell " +
                                           std::to_string(x) + " stated twice");
        table[x] = v;
      }
    };
    for (const auto& [key, entries] : sb.face_lines) fill(true, key, entries);
    for (const auto& [key, entries] : sb.degen_lines) fill(false, key, entries);
    for (int n = 1; n <= sb.depth; ++n)
      for (int i = 0; i <= n; ++i)
        for (Cell x = 0; x < (Cell)s.sizes[n]; ++x)
          if (s.faces[n][i][x] == no_cell)
            fail(Errc::validation_error, "sset '" + sb.name + "': face " + std::to_string(n) +
                                             " " + std::to_string(i) + " of cell " +
                                             std::to_string(x) + " missing");
    for (int n = 0; n < sb.depth; ++n)
      for (int i = 0; i <= n; ++i)
        for (Cell x = 0; x < (Cell)s.sizes[n]; ++x)
          if (s.degens[n][i][x] == no_cell)
            fail(Errc::validation_error, "sset '" + sb.name + "': degen " + std::to_string(n) +
                                             " " + std::to_string(i) + " of cell " +
                                             std::to_string(x) + " missing");
    doc.ssets.emplace_back(sb.name, build_simplicial_set(std::move(s)));
  }

  void finish_groupoid() {
    if (gb.n_objects < 0)
      fail(Errc::validation_error, "groupoid '" + gb.name + "' has no objects line");
    FiniteGroupoid g;
    g.name = gb.name;
    g.n_objects = gb.n_objects;
    int na = (int)gb.arrows.size();
    g.src.assign(na, -1);
    g.tgt.assign(na, -1);
    std::vector<char> seen(na, 0);
    for (const auto& [id, src, tgt, ln] : gb.arrows) {
      if (id < 0 || id >= na) parse_fail(ln, 1, "arrow ids forming a contiguous range");
      if (seen[id])
        fail(Errc::validation_error, "groupoid '" + gb.name + "': arrow " + std::to_string(id) +
                                         " stated twice");
      seen[id] = 1;
      g.src[id] = src;
      g.tgt[id] = tgt;
    }
    g.unit.assign(g.n_objects, -1);
    for (const auto& [x, a, ln] : gb.units) {
      if (x < 0 || x >= g.n_objects) parse_fail(ln, 1, "an object id");
      g.unit[x] = a;
    }
    g.inv.assign(na, -1);
    for (const auto& [a, b, ln] : gb.invs) {
      if (a < 0 || a >= na) parse_fail(ln, 1, "an arrow id");
      g.inv[a] = b;
    }
    g.comp.assign(na, std::vector<int>(na, -1));
    for (const auto& [a, b, c, ln] : gb.composes) {
      if (a < 0 || a >= na || b < 0 || b >= na) parse_fail(ln, 1, "arrow ids");
      if (g.comp[a][b] != -1)
        fail(Errc::validation_error, "groupoid '" + gb.name + "': composite " +
                                         std::to_string(a) + " " + std::to_string(b) +
                                         " stated twice");
      g.comp[a][b] = c;
    }
    doc.groupoids.emplace_back(gb.name, build_groupoid(std::move(g)));
  }

  void finish_xm() {
    if (xb.hn < 0) fail(Errc::validation_error, "crossed module '" + xb.name + "' has no H line");
    if (xb.gn < 0) fail(Errc::validation_error, "crossed module '" + xb.name + "' has no G line");
    CrossedModule m;
    m.name = xb.name;
    m.h = group_from_table(xb.name + ".h", xb.hn, xb.hmul, block_line);
    m.g = group_from_table(xb.name + ".g", xb.gn, xb.gmul, block_line);
    if (!xb.have_bnd)
      fail(Errc::validation_error, "crossed module '" + xb.name + "' has no bnd line");
    m.bnd = xb.bnd;
    m.act.assign(xb.gn, {});
    for (int a = 0; a < xb.gn; ++a) {
      auto it = xb.act.find(a);
      if (it == xb.act.end())
        fail(Errc::validation_error,
             "crossed module '" + xb.name + "' is missing act " + std::to_string(a));
      m.act[a] = it->second;
    }
    for (const auto& [a, row] : xb.act)
      if (a < 0 || a >= xb.gn)
        fail(Errc::validation_error,
             "crossed module '" + xb.name + "': act " + std::to_string(a) + " out of range");
    doc.crossed_modules.emplace_back(xb.name, build_crossed_module(std::move(m)));
  }

  void finish_action() {
    if (ab.blk.groupoid.empty())
      fail(Errc::validation_error, "action '" + ab.blk.name + "' has no groupoid reference");
    if (ab.blk.group.empty() == ab.blk.crossed_module.empty())
      fail(Errc::validation_error, "action '" + ab.blk.name +
                                       "' needs exactly one of group/crossed_module");
    int np = ab.phi.empty() ? 0 : ab.phi.rbegin()->first + 1;
    ab.blk.phi.assign(np, {});
    for (auto& [i, f] : ab.phi) {
      if (i < 0) fail(Errc::validation_error, "phi index negative");
      ab.blk.phi[i] = std::move(f);
    }
    int nt = ab.theta.empty() ? 0 : ab.theta.rbegin()->first + 1;
    ab.blk.theta.assign(nt, {});
    for (auto& [i, row] : ab.theta) {
      if (i < 0) fail(Errc::validation_error, "theta index negative");
      ab.blk.theta[i] = std::move(row);
    }
    doc.actions.push_back(std::move(ab.blk));
  }

  void finish_map() {
    int nl = mb.level_lines.empty() ? 0 : mb.level_lines.rbegin()->first + 1;
    mb.blk.level.assign(nl, {});
    for (const auto& [n, entries] : mb.level_lines) {
      if (n < 0) fail(Errc::validation_error, "map level negative");
      int top = -1;
      for (const auto& [x, v] : entries) top = std::max(top, x);
      std::vector<Cell> tab(top + 1, no_cell);
      for (const auto& [x, v] : entries) {
        if (x < 0) fail(Errc::validation_error, "map cell id negative");
        if (tab[x] != no_cell)
          fail(Errc::validation_error, "map '" + mb.blk.name + "': level " + std::to_string(n) +
                                           " cell " + std::to_string(x) + " stated twice");
        tab[x] = v;
      }
      for (Cell x = 0; x <= (Cell)top; ++x)
        if (tab[x] == no_cell)
          fail(Errc::validation_error, "map '" + mb.blk.name + "': level " + std::to_string(n) +
                                           " cell " + std::to_string(x) + " missing");
      mb.blk.level[n] = std::move(tab);
    }
    doc.maps.push_back(std::move(mb.blk));
  }

  // ---- line handlers -------------------------------------------------------

  void header(const std::string& line) {
    finish();
    size_t close = line.find(']');
    if (close == std::string::npos) parse_fail(line_no, (int)line.size() + 1, "']'");
    auto inside = tokenize(line.substr(1, close - 1));
    for (auto& t : inside) t.col += 1;
    if (inside.size() != 2)
      parse_fail(line_no, 2, "a block type and a name inside [...]");
    const std::string& type = inside[0].text;
    const std::string& name = inside[1].text;
    check_fresh_name(name);
    auto attrs = tokenize(line.substr(close + 1));
    for (auto& t : attrs) t.col += (int)close + 1;
    auto attr = [&](const std::string& key) -> std::optional<Token> {
      for (const auto& t : attrs) {
        size_t eq = t.text.find('=');
        if (eq != std::string::npos && t.text.substr(0, eq) == key)
          return Token{t.text.substr(eq + 1), t.col + (int)eq + 1};
      }
      return std::nullopt;
    };
    block_line = line_no;
    if (type == "sset") {
      kind = Kind::sset;
      sb = {};
      sb.name = name;
      auto n = attr("N");
      if (!n) parse_fail(line_no, (int)close + 2, "N=<depth>");
      sb.depth = to_int(*n, line_no, "a depth");
      if (sb.depth < 0) parse_fail(line_no, n->col, "a non-negative depth");
    } else if (type == "groupoid") {
      kind = Kind::groupoid;
      gb = {};
      gb.name = name;
    } else if (type == "crossed_module") {
      kind = Kind::xm;
      xb = {};
      xb.name = name;
    } else if (type == "action") {
      kind = Kind::action;
      ab = {};
      ab.blk.name = name;
    } else if (type == "map") {
      kind = Kind::map;
      mb = {};
      mb.blk.name = name;
      auto f = attr("from"), t = attr("to");
      if (!f || !t) parse_fail(line_no, (int)close + 2, "from=<name> to=<name>");
      mb.blk.from = f->text;
      mb.blk.to = t->text;
    } else {
      parse_fail(line_no, inside[0].col,
                 "one of sset, groupoid, crossed_module, action, map");
    }
  }

  std::pair<int, int> dense_pair(const Token& t) {
    std::string l, r;
    if (!split_pair(t.text, l, r)) parse_fail(line_no, t.col, "'id->id', got '" + t.text + "'");
    return {to_int({l, t.col}, line_no, "a cell id"),
            to_int({r, t.col + (int)l.size()}, line_no, "a cell id")};
  }

  void body(const std::vector<Token>& ts) {
    auto key = [&](size_t want_idx) -> std::string {
      std::string k = ts[0].text;
      if (!k.empty() && k.back() == ':') k.pop_back();
      (void)want_idx;
      return k;
    };
    // keyword lines carry their indices before the colon: "face 2 0: ..."
    // find the token carrying the colon
    int colon_at = -1;
    for (size_t i = 0; i < ts.size(); ++i)
      if (!ts[i].text.empty() && ts[i].text.back() == ':') {
        colon_at = (int)i;
        break;
      }
    auto idx = [&](int i) -> Token {
      Token t = ts[i];
      if (!t.text.empty() && t.text.back() == ':') t.text.pop_back();
      return t;
    };
    auto need = [&](bool cond, int col, const std::string& what) {
      if (!cond) parse_fail(line_no, col, what);
    };
    const std::string k = key(0);

    switch (kind) {
      case Kind::none:
        parse_fail(line_no, ts[0].col, "a block header before content");
      case Kind::sset: {
        if (k == "levels") {
          need(ts.size() >= 2 && ts[1].text == "=", ts[0].col, "levels = <sizes>");
          sb.sizes.clear();
          for (size_t i = 2; i < ts.size(); ++i)
            sb.sizes.push_back(to_int(ts[i], line_no, "a level size"));
          sb.have_sizes = true;
        } else if (k == "cells") {
          // redundant listing "cells <n>: 0 1 2 ..."; sizes may come from here
          need(colon_at == 1 && ts.size() >= 2, ts[0].col, "cells <n>: <ids>");
          int n = to_int(idx(1), line_no, "a level");
          std::vector<int> ids;
          for (size_t i = 2; i < ts.size(); ++i)
            ids.push_back(to_int(ts[i], line_no, "a cell id"));
          for (int i = 0; i < (int)ids.size(); ++i)
            need(ids[i] == i, ts[2 + i].col, "cell ids 0..k-1 in order");
          if (!sb.have_sizes) {
            if ((int)sb.sizes.size() <= n) sb.sizes.resize(n + 1, 0);
            sb.sizes[n] = (int)ids.size();
          } else {
            need(n < (int)sb.sizes.size() && sb.sizes[n] == (int)ids.size(), ts[1].col,
                 "a cell count matching the levels line");
          }
        } else if (k == "face" || k == "degen") {
          need(colon_at == 2 && ts.size() >= 3, ts[0].col, k + " <n> <i>: <pairs>");
          int n = to_int(idx(1), line_no, "a level");
          int i = to_int(idx(2), line_no, "a face index");
          auto& dst = (k == "face") ? sb.face_lines[{n, i}] : sb.degen_lines[{n, i}];
          for (size_t p = 3; p < ts.size(); ++p) {
            auto [x, v] = dense_pair(ts[p]);
            dst.push_back({x, v, line_no});
          }
        } else {
          parse_fail(line_no, ts[0].col, "levels, cells, face or degen");
        }
        // a cells-based size declaration becomes usable once the block ends
        if (!sb.have_sizes && !sb.sizes.empty() && (int)sb.sizes.size() == sb.depth + 1)
          sb.have_sizes = true;
        break;
      }
      case Kind::groupoid: {
        if (k == "objects") {
          need(ts.size() == 2, ts[0].col, "objects: <count>");
          gb.n_objects = to_int(ts[1], line_no, "an object count");
        } else if (k == "arrows") {
          need(ts.size() == 4, ts[0].col, "arrows: <id> <src> <tgt>");
          gb.arrows.push_back({to_int(ts[1], line_no, "an arrow id"),
                               to_int(ts[2], line_no, "a source object"),
                               to_int(ts[3], line_no, "a target object"), line_no});
        } else if (k == "unit") {
          need(ts.size() == 4 && is_arrow(ts[2].text), ts[0].col, "unit: <object> -> <arrow>");
          gb.units.push_back({to_int(ts[1], line_no, "an object id"),
                              to_int(ts[3], line_no, "an arrow id"), line_no});
        } else if (k == "inv") {
          need(ts.size() == 4 && is_arrow(ts[2].text), ts[0].col, "inv: <arrow> -> <arrow>");
          gb.invs.push_back({to_int(ts[1], line_no, "an arrow id"),
                             to_int(ts[3], line_no, "an arrow id"), line_no});
        } else if (k == "compose") {
          need(ts.size() == 5 && is_arrow(ts[3].text), ts[0].col,
               "compose: <arrow> <arrow> -> <arrow>");
          gb.composes.push_back({to_int(ts[1], line_no, "an arrow id"),
                                 to_int(ts[2], line_no, "an arrow id"),
                                 to_int(ts[4], line_no, "an arrow id"), line_no});
        } else {
          parse_fail(line_no, ts[0].col, "objects, arrows, unit, inv or compose");
        }
        break;
      }
      case Kind::xm: {
        if (k == "H" || k == "G") {
          need(ts.size() == 2, ts[0].col, k + ": <order>");
          (k == "H" ? xb.hn : xb.gn) = to_int(ts[1], line_no, "a group order");
        } else if (k == "hmul" || k == "gmul" || k == "act") {
          need(colon_at == 1 && ts.size() >= 2, ts[0].col, k + " <i>: <entries>");
          int i = to_int(idx(1), line_no, "a row index");
          std::vector<int> row;
          for (size_t p = 2; p < ts.size(); ++p)
            row.push_back(to_int(ts[p], line_no, "a group element"));
          auto& dst = (k == "hmul") ? xb.hmul : (k == "gmul") ? xb.gmul : xb.act;
          if (dst.count(i))
            fail(Errc::validation_error, "crossed module '" + xb.name + "': " + k + " " +
                                             std::to_string(i) + " stated twice");
          dst[i] = std::move(row);
        } else if (k == "bnd") {
          xb.bnd.clear();
          for (size_t p = 1; p < ts.size(); ++p)
            xb.bnd.push_back(to_int(ts[p], line_no, "a group element"));
          xb.have_bnd = true;
        } else {
          parse_fail(line_no, ts[0].col, "H, G, hmul, gmul, bnd or act");
        }
        break;
      }
      case Kind::action: {
        if (k == "groupoid" || k == "group" || k == "crossed_module") {
          need(ts.size() == 3 && ts[1].text == "=", ts[0].col, k + " = <name>");
          auto& dst = (k == "groupoid")  ? ab.blk.groupoid
                      : (k == "group")   ? ab.blk.group
                                         : ab.blk.crossed_module;
          dst = ts[2].text;
        } else if (k == "phi") {
          need(colon_at == 1 && ts.size() >= 2, ts[0].col, "phi <g>: <objs> | <arrs>");
          int g = to_int(idx(1), line_no, "a group element");
          GroupoidFunctor f;
          bool after_bar = false;
          for (size_t p = 2; p < ts.size(); ++p) {
            if (ts[p].text == "|") {
              need(!after_bar, ts[p].col, "a single '|' separator");
              after_bar = true;
              continue;
            }
            (after_bar ? f.arr : f.obj).push_back(to_int(ts[p], line_no, "an id"));
          }
          need(after_bar, ts.back().col, "'|' between object and arrow images");
          if (ab.phi.count(g))
            fail(Errc::validation_error,
                 "action '" + ab.blk.name + "': phi " + std::to_string(g) + " stated twice");
          ab.phi[g] = std::move(f);
        } else if (k == "theta") {
          need(colon_at == 1 && ts.size() >= 2, ts[0].col, "theta <h>: <arrows>");
          int h = to_int(idx(1), line_no, "a group element");
          std::vector<int> row;
          for (size_t p = 2; p < ts.size(); ++p)
            row.push_back(to_int(ts[p], line_no, "an arrow id"));
          if (ab.theta.count(h))
            fail(Errc::validation_error,
                 "action '" + ab.blk.name + "': theta " + std::to_string(h) + " stated twice");
          ab.theta[h] = std::move(row);
        } else {
          parse_fail(line_no, ts[0].col, "groupoid, group, crossed_module, phi or theta");
        }
        break;
      }
      case Kind::map: {
        if (k == "level") {
          need(colon_at == 1 && ts.size() >= 2, ts[0].col, "level <n>: <pairs>");
          int n = to_int(idx(1), line_no, "a level");
          auto& dst = mb.level_lines[n];
          for (size_t p = 2; p < ts.size(); ++p) dst.push_back(dense_pair(ts[p]));
        } else {
          parse_fail(line_no, ts[0].col, "level");
        }
        break;
      }
    }
  }
};

void emit_pairs(std::ostringstream& o, const std::vector<Cell>& table) {
  for (Cell x = 0; x < (Cell)table.size(); ++x) o << ' ' << x << "->" << table[x];
}

void emit_sset(std::ostringstream& o, const std::string& name, const SimplicialSet& s) {
  o << "[sset " << name << "] N=" << s.depth << '\n';
  o << "levels =";
  for (int sz : s.sizes) o << ' ' << sz;
  o << '\n';
  for (int n = 1; n <= s.depth; ++n)
    for (int i = 0; i <= n; ++i) {
      o << "face " << n << ' ' << i << ':';
      emit_pairs(o, s.faces[n][i]);
      o << '\n';
    }
  for (int n = 0; n < s.depth; ++n)
    for (int i = 0; i <= n; ++i) {
      o << "degen " << n << ' ' << i << ':';
      emit_pairs(o, s.degens[n][i]);
      o << '\n';
    }
  o << '\n';
}

void emit_groupoid(std::ostringstream& o, const std::string& name, const FiniteGroupoid& g) {
  o << "[groupoid " << name << "]\n";
  o << "objects: " << g.n_objects << '\n';
  for (int a = 0; a < g.n_arrows(); ++a)
    o << "arrows: " << a << ' ' << g.src[a] << ' ' << g.tgt[a] << '\n';
  for (int x = 0; x < g.n_objects; ++x) o << "unit: " << x << " -> " << g.unit[x] << '\n';
  for (int a = 0; a < g.n_arrows(); ++a) o << "inv: " << a << " -> " << g.inv[a] << '\n';
  for (int a = 0; a < g.n_arrows(); ++a)
    for (int b = 0; b < g.n_arrows(); ++b)
      if (g.comp[a][b] != -1)
        o << "compose: " << a << ' ' << b << " -> " << g.comp[a][b] << '\n';
  o << '\n';
}

void emit_group(std::ostringstream& o, const char* order_key, const char* row_key,
                const FiniteGroup& g) {
  o << order_key << ": " << g.n << '\n';
  for (int i = 0; i < g.n; ++i) {
    o << row_key << ' ' << i << ':';
    for (int v : g.mul[i]) o << ' ' << v;
    o << '\n';
  }
}

void emit_xm(std::ostringstream& o, const std::string& name, const CrossedModule& m) {
  o << "[crossed_module " << name << "]\n";
  emit_group(o, "H", "hmul", m.h);
  emit_group(o, "G", "gmul", m.g);
  o << "bnd:";
  for (int v : m.bnd) o << ' ' << v;
  o << '\n';
  for (int a = 0; a < m.g.n; ++a) {
    o << "act " << a << ':';
    for (int v : m.act[a]) o << ' ' << v;
    o << '\n';
  }
  o << '\n';
}

void emit_action(std::ostringstream& o, const ActionBlock& b) {
  o << "[action " << b.name << "]\n";
  o << "groupoid = " << b.groupoid << '\n';
  if (!b.group.empty()) o << "group = " << b.group << '\n';
  if (!b.crossed_module.empty()) o << "crossed_module = " << b.crossed_module << '\n';
  for (int g = 0; g < (int)b.phi.size(); ++g) {
    o << "phi " << g << ':';
    for (int v : b.phi[g].obj) o << ' ' << v;
    o << " |";
    for (int v : b.phi[g].arr) o << ' ' << v;
    o << '\n';
  }
  for (int h = 0; h < (int)b.theta.size(); ++h) {
    o << "theta " << h << ':';
    for (int v : b.theta[h]) o << ' ' << v;
    o << '\n';
  }
  o << '\n';
}

void emit_map(std::ostringstream& o, const MapBlock& b) {
  o << "[map " << b.name << "] from=" << b.from << " to=" << b.to << '\n';
  for (int n = 0; n < (int)b.level.size(); ++n) {
    o << "level " << n << ':';
    emit_pairs(o, b.level[n]);
    o << '\n';
  }
  o << '\n';
}

} // namespace

const SimplicialSet* Document::find_sset(const std::string& name) const {
  for (const auto& [n, s] : ssets)
    if (n == name) return &s;
  return nullptr;
}
const FiniteGroupoid* Document::find_groupoid(const std::string& name) const {
  for (const auto& [n, g] : groupoids)
    if (n == name) return &g;
  return nullptr;
}
const CrossedModule* Document::find_crossed_module(const std::string& name) const {
  for (const auto& [n, m] : crossed_modules)
    if (n == name) return &m;
  return nullptr;
}
const ActionBlock* Document::find_action(const std::string& name) const {
  for (const auto& a : actions)
    if (a.name == name) return &a;
  return nullptr;
}
const MapBlock* Document::find_map(const std::string& name) const {
  for (const auto& m : maps)
    if (m.name == name) return &m;
  return nullptr;
}

Document parse_document(const std::string& text) {
  Parser p;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    ++p.line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto ts = tokenize(line);
    if (ts.empty()) continue;
    if (line[ts[0].col - 1] == '[')
      p.header(line);
    else
      p.body(ts);
  }
  ++p.line_no;
  p.finish();
  return std::move(p.doc);
}

Document load_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::validation_error, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str());
}

std::string serialize_document(const Document& doc) {
  std::ostringstream o;
  {
    std::vector<size_t> order(doc.ssets.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return doc.ssets[a].first < doc.ssets[b].first; });
    for (size_t i : order) emit_sset(o, doc.ssets[i].first, doc.ssets[i].second);
  }
  {
    std::vector<size_t> order(doc.groupoids.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      return doc.groupoids[a].first < doc.groupoids[b].first;
    });
    for (size_t i : order) emit_groupoid(o, doc.groupoids[i].first, doc.groupoids[i].second);
  }
  {
    std::vector<size_t> order(doc.crossed_modules.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      return doc.crossed_modules[a].first < doc.crossed_modules[b].first;
    });
    for (size_t i : order)
      emit_xm(o, doc.crossed_modules[i].first, doc.crossed_modules[i].second);
  }
  {
    std::vector<size_t> order(doc.actions.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return doc.actions[a].name < doc.actions[b].name; });
    for (size_t i : order) emit_action(o, doc.actions[i]);
  }
  {
    std::vector<size_t> order(doc.maps.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return doc.maps[a].name < doc.maps[b].name; });
    for (size_t i : order) emit_map(o, doc.maps[i]);
  }
  return o.str();
}

void add_sset(Document& doc, const std::string& name, const SimplicialSet& s) {
  doc.ssets.emplace_back(name, s);
}
void add_groupoid(Document& doc, const std::string& name, const FiniteGroupoid& g) {
  doc.groupoids.emplace_back(name, g);
}
void add_map(Document& doc, const std::string& name, const std::string& from,
             const std::string& to, const SimplicialMap& m) {
  MapBlock b;
  b.name = name;
  b.from = from;
  b.to = to;
  b.level = m.level;
  doc.maps.push_back(std::move(b));
}

StrictAction action_from_block(const Document& doc, const ActionBlock& blk) {
  const FiniteGroupoid* x = doc.find_groupoid(blk.groupoid);
  if (!x) fail(Errc::validation_error, "unknown groupoid '" + blk.groupoid + "'");
  if (blk.group.empty())
    fail(Errc::validation_error, "action '" + blk.name + "' has no group reference");
  const FiniteGroupoid* og = doc.find_groupoid(blk.group);
  if (!og) fail(Errc::validation_error, "unknown groupoid '" + blk.group + "'");
  StrictAction a;
  a.name = blk.name;
  a.x = *x;
  a.g = group_of_one_object(*og);
  a.phi = blk.phi;
  return build_strict_action(std::move(a));
}

Strict2GroupAction action2_from_block(const Document& doc, const ActionBlock& blk) {
  const FiniteGroupoid* x = doc.find_groupoid(blk.groupoid);
  if (!x) fail(Errc::validation_error, "unknown groupoid '" + blk.groupoid + "'");
  if (blk.crossed_module.empty())
    fail(Errc::validation_error, "action '" + blk.name + "' has no crossed module reference");
  const CrossedModule* m = doc.find_crossed_module(blk.crossed_module);
  if (!m) fail(Errc::validation_error, "unknown crossed module '" + blk.crossed_module + "'");
  Strict2GroupAction a;
  a.name = blk.name;
  a.x = *x;
  a.xm = *m;
  a.phi = blk.phi;
  a.theta = blk.theta;
  return build_strict_2group_action(std::move(a));
}

} // namespace kanfib
