// kanfib: line-oriented CLI over the library. Commands read a .kf document,
// check a property (exit 0 holds / 1 fails), build a derived object (document
// on stdout, report as leading # comments), or extract action data.
// Exit codes: 0 = verdict holds / build succeeded, 1 = verdict fails (report
// carries witnesses), 2 = usage, parse or document-validation error.

#include "CLI11.hpp"

#include "kanfib/io.hpp"
#include "kanfib/kan.hpp"
#include "kanfib/reduction.hpp"
#include "kanfib/two_group.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace kanfib;

namespace {

struct UsageError {
  std::string msg;
};

struct Opts {
  std::string file;
  std::string name;   // subject block (sset/groupoid/crossed module/action)
  std::string map;    // map block for the check commands
  std::string along;  // map block for pullback/pushforward
  std::string domain; // hom domain: simplex:m | boundary:m | horn:m:j
  std::string out;    // output file for build commands
  std::string format = "both";
  int n = 1;
  int depth = 4;
  bool depth_given = false;
  int m = -1, j = 0;
  bool unique = false;
  int k = 1;
  unsigned seed = 0; // reserved: current commands are deterministic
};

bool verbose_reports() {
  const char* v = std::getenv("KANFIB_VERBOSE");
  return v != nullptr && *v != '\0' && std::string(v) != "0";
}

void print_capped(std::ostream& os, const std::vector<std::string>& lines, const char* tag) {
  size_t cap = verbose_reports() ? lines.size() : std::min<size_t>(lines.size(), 8);
  for (size_t i = 0; i < cap; ++i) os << tag << ": " << lines[i] << '\n';
  if (cap < lines.size())
    os << "(" << lines.size() - cap << " more " << tag << " lines)\n";
}

int emit_check(const Opts& o, const std::string& command, const CheckReport& r) {
  if (o.format != "structured") {
    std::cout << r.condition << " on " << r.subject << ": " << verdict_name(r.verdict)
              << " (checked to level " << r.checked_to << ")\n";
    if (o.format == "text") {
      print_capped(std::cout, r.witnesses, "witness");
      print_capped(std::cout, r.notes, "note");
    }
  }
  if (o.format != "text") {
    std::cout << "[report]\n";
    std::cout << "command = " << command << '\n';
    std::cout << "subject = " << r.subject << '\n';
    std::cout << "condition = " << r.condition << '\n';
    std::cout << "verdict = " << verdict_name(r.verdict) << '\n';
    std::cout << "checked_to = " << r.checked_to << '\n';
    std::cout << "witnesses = " << r.witnesses.size() << '\n';
    std::cout << "notes = " << r.notes.size() << '\n';
    print_capped(std::cout, r.witnesses, "witness");
    print_capped(std::cout, r.notes, "note");
  }
  return r.verdict == Verdict::fails ? 1 : 0;
}

int emit_error(const Opts& o, const std::string& command, const Error& e) {
  std::string whole = e.what();
  std::string name = errc_name(e.code());
  std::string msg = whole.size() > name.size() + 2 ? whole.substr(name.size() + 2) : whole;
  if (o.format != "structured") std::cout << whole << '\n';
  if (o.format != "text") {
    std::cout << "[report]\n";
    std::cout << "command = " << command << '\n';
    std::cout << "verdict = fails\n";
    std::cout << "error = " << name << '\n';
    std::cout << "message = " << msg << '\n';
  }
  return 1;
}

// report lines for build commands; embedded as # comments above the document
std::vector<std::string> build_report(const Opts& o, const std::string& command,
                                      const std::string& prose,
                                      const std::vector<std::pair<std::string, std::string>>& kv) {
  std::vector<std::string> out;
  if (o.format != "structured") out.push_back(prose);
  if (o.format != "text") {
    out.push_back("[report]");
    out.push_back("command = " + command);
    for (const auto& [k, v] : kv) out.push_back(k + " = " + v);
  }
  return out;
}

int emit_build(const Opts& o, const std::vector<std::string>& report, const Document& doc) {
  std::ostringstream text;
  for (const auto& l : report) text << "# " << l << '\n';
  text << serialize_document(doc);
  if (o.out.empty()) {
    std::cout << text.str();
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw UsageError{"cannot write '" + o.out + "'"};
    f << text.str();
    for (const auto& l : report) std::cout << l << '\n';
  }
  return 0;
}

// ---- block resolution -------------------------------------------------------

const SimplicialSet& pick_sset(const Document& d, const std::string& name) {
  if (!name.empty()) {
    const SimplicialSet* s = d.find_sset(name);
    if (!s) throw UsageError{"no sset block named '" + name + "'"};
    return *s;
  }
  if (d.ssets.size() == 1) return d.ssets[0].second;
  throw UsageError{d.ssets.empty() ? "document has no sset block"
                                   : "several sset blocks; pick one with --name"};
}

const FiniteGroupoid& pick_groupoid(const Document& d, const std::string& name) {
  if (!name.empty()) {
    const FiniteGroupoid* g = d.find_groupoid(name);
    if (!g) throw UsageError{"no groupoid block named '" + name + "'"};
    return *g;
  }
  if (d.groupoids.size() == 1) return d.groupoids[0].second;
  throw UsageError{d.groupoids.empty() ? "document has no groupoid block"
                                       : "several groupoid blocks; pick one with --name"};
}

const CrossedModule& pick_xm(const Document& d, const std::string& name) {
  if (!name.empty()) {
    const CrossedModule* m = d.find_crossed_module(name);
    if (!m) throw UsageError{"no crossed_module block named '" + name + "'"};
    return *m;
  }
  if (d.crossed_modules.size() == 1) return d.crossed_modules[0].second;
  throw UsageError{d.crossed_modules.empty()
                       ? "document has no crossed_module block"
                       : "several crossed_module blocks; pick one with --name"};
}

const ActionBlock& pick_action(const Document& d, const std::string& name) {
  if (!name.empty()) {
    const ActionBlock* a = d.find_action(name);
    if (!a) throw UsageError{"no action block named '" + name + "'"};
    return *a;
  }
  if (d.actions.size() == 1) return d.actions[0];
  throw UsageError{d.actions.empty() ? "document has no action block"
                                     : "several action blocks; pick one with --name"};
}

const MapBlock& pick_map(const Document& d, const std::string& name) {
  if (!name.empty()) {
    const MapBlock* m = d.find_map(name);
    if (!m) throw UsageError{"no map block named '" + name + "'"};
    return *m;
  }
  if (d.maps.size() == 1) return d.maps[0];
  throw UsageError{d.maps.empty() ? "document has no map block"
                                  : "several map blocks; pick one with --map/--along"};
}

SimplicialMap map_of(const Document& d, const MapBlock& mb) {
  const SimplicialSet* f = d.find_sset(mb.from);
  if (!f) throw UsageError{"map '" + mb.name + "': no sset block named '" + mb.from + "'"};
  const SimplicialSet* t = d.find_sset(mb.to);
  if (!t) throw UsageError{"map '" + mb.name + "': no sset block named '" + mb.to + "'"};
  return build_map(share(*f), share(*t), mb.level);
}

// rebuild the fibration bundle of the named action block (1- or 2-group form)
FibrationBundle bundle_of(const Document& d, const Opts& o) {
  const ActionBlock& blk = pick_action(d, o.name);
  if (!blk.crossed_module.empty())
    return strict_2group_action_groupoid(action2_from_block(d, blk));
  return strict_action_groupoid(action_from_block(d, blk), o.depth);
}

void add_bundle(Document& out, const std::string& prefix, const FibrationBundle& k) {
  add_sset(out, prefix + ".total", *k.total);
  add_sset(out, prefix + ".base", *k.base);
  add_sset(out, prefix + ".fiber", *k.fiber);
  add_map(out, prefix + ".pi", prefix + ".total", prefix + ".base", k.pi);
  add_map(out, prefix + ".incl", prefix + ".fiber", prefix + ".total", k.incl);
}

std::string sizes_text(const std::vector<int>& sizes) {
  std::ostringstream os;
  for (size_t i = 0; i < sizes.size(); ++i) os << (i ? " " : "") << sizes[i];
  return os.str();
}

std::string cert_text(const CheckReport& r) {
  std::ostringstream os;
  os << r.condition << " " << verdict_name(r.verdict) << " to level " << r.checked_to;
  return os.str();
}

StandardComplex domain_of(const std::string& spec, int depth) {
  std::vector<int> nums;
  std::string kind;
  std::istringstream in(spec);
  std::string part;
  while (std::getline(in, part, ':')) {
    if (kind.empty()) {
      kind = part;
    } else {
      try {
        nums.push_back(std::stoi(part));
      } catch (...) {
        throw UsageError{"bad domain '" + spec + "'"};
      }
    }
  }
  if (kind == "simplex" && nums.size() == 1) return standard_simplex(nums[0], depth);
  if (kind == "boundary" && nums.size() == 1) return boundary_complex(nums[0], depth);
  if (kind == "horn" && nums.size() == 2) return horn_complex(nums[0], nums[1], depth);
  throw UsageError{"bad domain '" + spec + "' (use simplex:m, boundary:m or horn:m:j)"};
}

// ---- command bodies ---------------------------------------------------------

int run_check(const Opts& o, const std::string& which, const Document& doc) {
  std::string command = "check " + which;
  if (which == "kan") {
    const SimplicialSet& x = pick_sset(doc, o.name);
    if (o.m >= 0) return emit_check(o, command, check_kan(x, o.m, o.j, o.unique));
    CheckReport agg;
    agg.subject = x.name;
    agg.condition = o.unique ? "kan (unique fillers)" : "kan";
    agg.checked_to = x.depth;
    for (int m = 1; m <= x.depth; ++m)
      for (int j = 0; j <= m; ++j) {
        CheckReport r = check_kan(x, m, j, o.unique);
        if (r.verdict == Verdict::fails) agg.verdict = Verdict::fails;
        agg.witnesses.insert(agg.witnesses.end(), r.witnesses.begin(), r.witnesses.end());
        agg.notes.insert(agg.notes.end(), r.notes.begin(), r.notes.end());
      }
    return emit_check(o, command, agg);
  }
  if (which == "ngroupoid") {
    const SimplicialSet& x = pick_sset(doc, o.name);
    return emit_check(o, command, classify_n_groupoid(x, o.n));
  }
  if (which == "isotropy") {
    const SimplicialSet& x = pick_sset(doc, o.name);
    return emit_check(o, command, check_2_isotropy_free(x));
  }
  SimplicialMap f = map_of(doc, pick_map(doc, o.map));
  if (which == "fibration") return emit_check(o, command, check_fibration(f, o.n));
  if (which == "hypercover") return emit_check(o, command, check_hypercover(f, o.n));
  return emit_check(o, command, check_equivalence(f, o.n));
}

int run_build(const Opts& o, const std::string& which, const Document& doc) {
  std::string command = "build " + which;
  Document out;
  if (which == "nerve") {
    const FiniteGroupoid& g = pick_groupoid(doc, o.name);
    std::string name = "nerve_" + g.name;
    Nerve n = nerve(g, o.depth, name);
    add_sset(out, name, *n.ss);
    auto rep = build_report(o, command,
                            "built " + name + " to depth " + std::to_string(o.depth) +
                                " (levels " + sizes_text(n.ss->sizes) + ")",
                            {{"name", name}, {"levels", sizes_text(n.ss->sizes)}});
    return emit_build(o, rep, out);
  }
  if (which == "b2group") {
    const CrossedModule& xm = pick_xm(doc, o.name);
    std::string name = "b2group_" + xm.name;
    Classifying2Group c = classifying_2group(crossed_module_to_group_like(xm), o.depth, name);
    add_sset(out, name, *c.ss);
    auto rep = build_report(o, command,
                            "built " + name + " (levels " + sizes_text(c.ss->sizes) + ")",
                            {{"name", name}, {"levels", sizes_text(c.ss->sizes)}});
    return emit_build(o, rep, out);
  }
  if (which == "action" || which == "action2") {
    const ActionBlock& blk = pick_action(doc, o.name);
    FibrationBundle k;
    if (which == "action") {
      if (blk.group.empty())
        throw UsageError{"action block '" + blk.name + "' is a 2-group action; use build action2"};
      k = strict_action_groupoid(action_from_block(doc, blk), o.depth);
    } else {
      if (blk.crossed_module.empty())
        throw UsageError{"action block '" + blk.name + "' is a 1-group action; use build action"};
      k = strict_2group_action_groupoid(action2_from_block(doc, blk));
    }
    add_bundle(out, blk.name, k);
    auto rep = build_report(o, command,
                            "built action groupoid of " + blk.name + ": total levels " +
                                sizes_text(k.total->sizes) + "; " + cert_text(k.certificate),
                            {{"name", blk.name},
                             {"total_levels", sizes_text(k.total->sizes)},
                             {"base_levels", sizes_text(k.base->sizes)},
                             {"fiber_levels", sizes_text(k.fiber->sizes)},
                             {"degree", std::to_string(k.degree)},
                             {"certificate", cert_text(k.certificate)}});
    return emit_build(o, rep, out);
  }
  if (which == "pullback" || which == "pushforward") {
    FibrationBundle k = bundle_of(doc, o);
    const ActionBlock& blk = pick_action(doc, o.name);
    const MapBlock& mb = pick_map(doc, o.along);
    std::string prefix = blk.name + "." + which;
    if (which == "pullback") {
      if (mb.to != "base")
        throw UsageError{"pullback map '" + mb.name + "' must have to=base (the bundle base)"};
      const SimplicialSet* f = doc.find_sset(mb.from);
      if (!f) throw UsageError{"map '" + mb.name + "': no sset block named '" + mb.from + "'"};
      SimplicialMap along = build_map(share(*f), k.base, mb.level);
      FibrationBundle r = pullback_bundle(k, along);
      add_bundle(out, prefix, r);
      auto rep = build_report(o, command,
                              "pulled back " + blk.name + " along " + mb.name +
                                  ": total levels " + sizes_text(r.total->sizes) + "; " +
                                  cert_text(r.certificate),
                              {{"name", prefix},
                               {"total_levels", sizes_text(r.total->sizes)},
                               {"certificate", cert_text(r.certificate)}});
      return emit_build(o, rep, out);
    }
    if (mb.from != "base")
      throw UsageError{"pushforward map '" + mb.name + "' must have from=base (the bundle base)"};
    const SimplicialSet* t = doc.find_sset(mb.to);
    if (!t) throw UsageError{"map '" + mb.name + "': no sset block named '" + mb.to + "'"};
    SimplicialMap f = build_map(k.base, share(*t), mb.level);
    PushforwardResult r = pushforward_bundle(k, f);
    add_bundle(out, prefix, r.bundle);
    add_sset(out, blk.name + ".total", *k.total);
    add_map(out, prefix + ".proj", blk.name + ".total", prefix + ".total", r.proj);
    auto rep = build_report(o, command,
                            "pushed " + blk.name + " forward along " + mb.name +
                                ": total levels " + sizes_text(r.bundle.total->sizes) + "; " +
                                cert_text(r.bundle.certificate),
                            {{"name", prefix},
                             {"total_levels", sizes_text(r.bundle.total->sizes)},
                             {"certificate", cert_text(r.bundle.certificate)}});
    return emit_build(o, rep, out);
  }
  if (which == "strictify") {
    FibrationBundle k = bundle_of(doc, o);
    const ActionBlock& blk = pick_action(doc, o.name);
    StrictifyResult st = strictify(k);
    std::string prefix = blk.name + ".strict";
    add_groupoid(out, prefix + ".x", st.action.x);
    add_groupoid(out, prefix + ".g", one_object_groupoid(st.action.g));
    ActionBlock ab;
    ab.name = prefix;
    ab.groupoid = prefix + ".x";
    ab.group = prefix + ".g";
    ab.phi = st.action.phi;
    out.actions.push_back(ab);
    auto rep = build_report(
        o, command,
        "strictified " + blk.name + ": groupoid with " + std::to_string(st.action.x.n_objects) +
            " objects, " + std::to_string(st.action.x.n_arrows()) + " arrows under " +
            std::to_string(st.action.g.n) + " group elements",
        {{"name", prefix},
         {"objects", std::to_string(st.action.x.n_objects)},
         {"arrows", std::to_string(st.action.x.n_arrows())},
         {"group_order", std::to_string(st.action.g.n)}});
    return emit_build(o, rep, out);
  }
  if (which == "quotient") {
    const ActionBlock& blk = pick_action(doc, o.name);
    if (blk.group.empty())
      throw UsageError{"build quotient needs a 1-group action block"};
    StrictAction a = action_from_block(doc, blk);
    QuotientResult q = free_quotient(a, o.depth);
    std::string prefix = blk.name + ".quotient";
    add_groupoid(out, prefix, q.quotient);
    add_sset(out, blk.name + ".agn", *q.proj.from);
    add_sset(out, prefix + ".nerve", *q.proj.to);
    add_map(out, prefix + ".proj", blk.name + ".agn", prefix + ".nerve", q.proj);
    auto rep = build_report(o, command,
                            "quotient of " + blk.name + ": " +
                                std::to_string(q.quotient.n_objects) + " objects, " +
                                std::to_string(q.quotient.n_arrows()) + " arrows",
                            {{"name", prefix},
                             {"objects", std::to_string(q.quotient.n_objects)},
                             {"arrows", std::to_string(q.quotient.n_arrows())}});
    return emit_build(o, rep, out);
  }
  if (which == "reduce") {
    const SimplicialSet& x = pick_sset(doc, o.name);
    ReduceResult r = reduce_to_1(x);
    std::string prefix = x.name + ".reduced";
    add_groupoid(out, prefix, r.groupoid);
    add_sset(out, x.name, x);
    add_sset(out, prefix + ".nerve", *r.proj.to);
    add_map(out, prefix + ".proj", x.name, prefix + ".nerve", r.proj);
    int classes = 0;
    for (int c : r.edge_class) classes = std::max(classes, c + 1);
    auto rep = build_report(o, command,
                            "reduced " + x.name + " to a 1-groupoid with " +
                                std::to_string(r.groupoid.n_objects) + " objects, " +
                                std::to_string(r.groupoid.n_arrows()) + " arrows (" +
                                std::to_string(classes) + " edge classes)",
                            {{"name", prefix},
                             {"objects", std::to_string(r.groupoid.n_objects)},
                             {"arrows", std::to_string(r.groupoid.n_arrows())},
                             {"edge_classes", std::to_string(classes)}});
    return emit_build(o, rep, out);
  }
  // cylinder
  const SimplicialSet& x = pick_sset(doc, o.name);
  int depth = o.depth_given ? o.depth : std::max(0, x.depth - 1);
  if (depth > x.depth)
    throw UsageError{"cylinder depth " + std::to_string(depth) + " exceeds the complex depth"};
  Cylinder cyl = cylinder(share(x), o.k, depth);
  std::string cname = x.name + ".cyl";
  add_sset(out, cname, *cyl.ss);
  add_sset(out, x.name + ".trunc", *cyl.base_trunc);
  for (int v = 0; v <= o.k; ++v)
    add_map(out, cname + ".end" + std::to_string(v), cname, x.name + ".trunc",
            cylinder_end(cyl, v));
  add_map(out, cname + ".section", x.name + ".trunc", cname, cylinder_section(cyl));
  auto rep = build_report(o, command,
                          "built " + cname + " = prisms of width " + std::to_string(o.k) +
                              " to depth " + std::to_string(depth) + " (levels " +
                              sizes_text(cyl.ss->sizes) + ")",
                          {{"name", cname},
                           {"k", std::to_string(o.k)},
                           {"depth", std::to_string(depth)},
                           {"levels", sizes_text(cyl.ss->sizes)}});
  return emit_build(o, rep, out);
}

int run_extract(const Opts& o, const std::string& which, const Document& doc) {
  std::string command = "extract " + which;
  FibrationBundle k = bundle_of(doc, o);
  const ActionBlock& blk = pick_action(doc, o.name);
  if (which == "fiber") {
    Document out;
    SimplicialSet f = fiber_over_basepoint(k);
    add_sset(out, blk.name + ".fiber", f);
    auto rep = build_report(o, command,
                            "fiber of " + blk.name + " over the basepoint (levels " +
                                sizes_text(f.sizes) + ")",
                            {{"name", blk.name + ".fiber"}, {"levels", sizes_text(f.sizes)}});
    return emit_build(o, rep, out);
  }
  if (which == "invariants") {
    std::vector<Cell> inv = invariant_objects(k);
    std::ostringstream objs;
    for (size_t i = 0; i < inv.size(); ++i) objs << (i ? " " : "") << inv[i];
    if (o.format != "structured")
      std::cout << inv.size() << " invariant objects of " << blk.name
                << (inv.empty() ? "" : ": " + objs.str()) << '\n';
    if (o.format != "text") {
      std::cout << "[report]\ncommand = " << command << "\nname = " << blk.name
                << "\ncount = " << inv.size() << "\nobjects = " << objs.str() << '\n';
    }
    return 0;
  }
  // lambda
  ActionSpanData d = lambda_extract(k);
  if (o.format != "structured")
    std::cout << "extracted action data of " << blk.name << ": " << d.spans.size()
              << " spans, " << d.transports.size() << " transports; fiber groupoid has "
              << d.fiber.n_objects << " objects, " << d.fiber.n_arrows() << " arrows\n";
  if (o.format != "text") {
    std::cout << "[report]\ncommand = " << command << "\nname = " << blk.name
              << "\nspans = " << d.spans.size() << "\ntransports = " << d.transports.size()
              << "\nfiber_objects = " << d.fiber.n_objects
              << "\nfiber_arrows = " << d.fiber.n_arrows() << '\n';
    std::vector<std::string> lines;
    for (const auto& s : d.spans) {
      std::ostringstream os;
      os << "edge " << s.base_edge << ": cells =";
      for (Cell c : s.obj_cell) os << ' ' << c;
      os << " | left =";
      for (int v : s.left.obj) os << ' ' << v;
      os << " | right =";
      for (int v : s.right.obj) os << ' ' << v;
      lines.push_back(os.str());
    }
    print_capped(std::cout, lines, "span");
    lines.clear();
    for (const auto& t : d.transports) {
      std::ostringstream os;
      os << "2-cell " << t.base2 << ":";
      for (const auto& [key, arr] : t.phi)
        os << " (" << key[0] << "," << key[1] << "," << key[2] << ")->" << arr;
      lines.push_back(os.str());
    }
    print_capped(std::cout, lines, "transport");
  }
  return 0;
}

int run_hom(const Opts& o, const std::string& which, const Document& doc) {
  std::string command = "hom " + which;
  const SimplicialSet& x = pick_sset(doc, o.name);
  if (o.domain.empty()) throw UsageError{"hom needs --domain"};
  StandardComplex dom = domain_of(o.domain, x.depth);
  SSetPtr target = share(x);
  if (which == "count") {
    long long n = count_maps(dom.ss, target);
    if (o.format != "structured") std::cout << n << '\n';
    if (o.format != "text")
      std::cout << "[report]\ncommand = " << command << "\ndomain = " << o.domain
                << "\ntarget = " << x.name << "\ncount = " << n << '\n';
    return 0;
  }
  std::vector<SimplicialMap> maps = enumerate_maps(dom.ss, target);
  if (o.format != "structured")
    std::cout << maps.size() << " maps " << o.domain << " -> " << x.name << '\n';
  if (o.format != "text")
    std::cout << "[report]\ncommand = " << command << "\ndomain = " << o.domain
              << "\ntarget = " << x.name << "\ncount = " << maps.size() << '\n';
  std::vector<std::string> lines;
  for (size_t i = 0; i < maps.size(); ++i) {
    std::ostringstream os;
    os << i << ":";
    for (size_t n = 0; n < maps[i].level.size(); ++n) {
      if (n) os << " |";
      for (Cell v : maps[i].level[n]) os << ' ' << v;
    }
    lines.push_back(os.str());
  }
  print_capped(std::cout, lines, "map");
  return 0;
}

int guarded(const Opts& o, const std::string& command,
            const std::function<int(const Document&)>& body) {
  Document doc;
  try {
    doc = load_document(o.file);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  try {
    return body(doc);
  } catch (const UsageError& u) {
    std::cerr << "error: " << u.msg << '\n';
    return 2;
  } catch (const Error& e) {
    if (e.code() == Errc::parse_error || e.code() == Errc::validation_error) {
      std::cerr << "error: " << e.what() << '\n';
      return 2;
    }
    return emit_error(o, command, e);
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite simplicial machinery: Kan checks, group actions as "
               "fibrations, classifying spaces, reductions"};
  app.require_subcommand(1);
  Opts o;
  app.add_option("--seed", o.seed, "seed for randomized tooling (current commands are deterministic)");

  int rc = 0;
  auto common = [&](CLI::App* sub, bool with_depth = true) {
    sub->add_option("file", o.file, "input .kf document")->required();
    sub->add_option("--name", o.name, "subject block (defaults to the only one of its kind)");
    sub->add_option("--format", o.format, "report format")
        ->check(CLI::IsMember({"text", "structured", "both"}))
        ->default_str("both");
    if (with_depth)
      sub->add_option("--depth", o.depth, "truncation depth for built complexes")
          ->default_val(4);
  };

  CLI::App* check = app.add_subcommand("check", "verify a property; exit 0 holds, 1 fails");
  check->require_subcommand(1);
  for (const char* which : {"kan", "ngroupoid", "fibration", "hypercover", "equivalence",
                            "isotropy"}) {
    CLI::App* sub = check->add_subcommand(which);
    common(sub, false);
    std::string w = which;
    if (w == "kan") {
      sub->add_option("--m", o.m, "check a single horn level");
      sub->add_option("--j", o.j, "horn index for --m");
      sub->add_flag("--unique", o.unique, "require unique fillers");
    }
    if (w == "ngroupoid")
      sub->add_option("--n", o.n, "groupoid level")->required();
    if (w == "fibration" || w == "hypercover" || w == "equivalence") {
      sub->add_option("--n", o.n, "groupoid level")->default_val(1);
      sub->add_option("--map", o.map, "map block (defaults to the only one)");
    }
    sub->callback([&, w] { rc = guarded(o, "check " + w, [&](const Document& d) {
                    return run_check(o, w, d);
                  }); });
  }

  CLI::App* build = app.add_subcommand("build", "derive an object; document on stdout");
  build->require_subcommand(1);
  for (const char* which : {"nerve", "b2group", "action", "action2", "pullback", "pushforward",
                            "strictify", "quotient", "reduce", "cylinder"}) {
    CLI::App* sub = build->add_subcommand(which);
    common(sub);
    std::string w = which;
    sub->add_option("-o,--out", o.out, "write the document here instead of stdout");
    if (w == "pullback" || w == "pushforward")
      sub->add_option("--along", o.along, "map block to pull back / push forward along");
    if (w == "cylinder") sub->add_option("--k", o.k, "prism width")->default_val(1);
    sub->callback([&, w, sub] {
      o.depth_given = sub->count("--depth") > 0;
      rc = guarded(o, "build " + w, [&](const Document& d) { return run_build(o, w, d); });
    });
  }

  CLI::App* extract = app.add_subcommand("extract", "recover action data from a bundle");
  extract->require_subcommand(1);
  for (const char* which : {"lambda", "fiber", "invariants"}) {
    CLI::App* sub = extract->add_subcommand(which);
    common(sub);
    std::string w = which;
    if (w == "fiber") sub->add_option("-o,--out", o.out, "write the document here");
    sub->callback([&, w] { rc = guarded(o, "extract " + w, [&](const Document& d) {
                    return run_extract(o, w, d);
                  }); });
  }

  CLI::App* hom = app.add_subcommand("hom", "enumerate simplicial maps into a complex");
  hom->require_subcommand(1);
  for (const char* which : {"count", "list"}) {
    CLI::App* sub = hom->add_subcommand(which);
    common(sub, false);
    std::string w = which;
    sub->add_option("--domain", o.domain, "simplex:m, boundary:m or horn:m:j")->required();
    sub->callback([&, w] { rc = guarded(o, "hom " + w, [&](const Document& d) {
                    return run_hom(o, w, d);
                  }); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  return rc;
}
