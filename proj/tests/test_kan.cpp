#include "doctest.h"

#include "kanfib/groupoid.hpp"

#include "fixtures.hpp"

using namespace kanfib;

TEST_CASE("nerve of a groupoid is a 1-groupoid, and 2-truncation is partial") {
  Nerve n = nerve(fixtures::pair_groupoid(2), 4);
  CheckReport full = classify_n_groupoid(*n.ss, 1);
  CHECK(full.verdict == Verdict::holds);
  Nerve shallow = nerve(fixtures::pair_groupoid(2), 2);
  CheckReport part = classify_n_groupoid(*shallow.ss, 1);
  CHECK(part.verdict == Verdict::partial);
  CHECK(!part.notes.empty());
}

TEST_CASE("boundary complex fails inner Kan with the spine witness") {
  auto b = boundary_complex(2, 2);
  CheckReport r = check_kan(*b.ss, 2, 1, false);
  CHECK(r.verdict == Verdict::fails);
  REQUIRE(!r.witnesses.empty());
  // the witness horn is the pair of nondegenerate edges 01, 12
  CHECK(r.witnesses.front().find("01") != std::string::npos);
  CHECK(r.witnesses.front().find("12") != std::string::npos);
}

TEST_CASE("unique filling in a nerve") {
  Nerve n = nerve(fixtures::cyclic_groupoid(4), 3);
  CHECK(check_kan(*n.ss, 2, 1, true).ok());
  CHECK(check_kan(*n.ss, 3, 2, true).ok());
  HornTuple t;
  t.m = 2;
  t.j = 1;
  t.face = {n.cell_of(1, {1}), n.cell_of(1, {3})}; // d0 = 1, d2 = 3
  FillResult f = fill_horn(*n.ss, t);
  CHECK(f.unique);
  CHECK(n.ss->face(2, 1, f.filler) == n.cell_of(1, {0})); // 3+1 = 0 mod 4
}

TEST_CASE("fill_horn throws NoFiller on the boundary complex") {
  auto b = boundary_complex(2, 2);
  HornTuple t;
  t.m = 2;
  t.j = 1;
  t.face = {b.cell_of(1, {1, 2}), b.cell_of(1, {0, 1})};
  CHECK_THROWS_WITH_AS(fill_horn(*b.ss, t), doctest::Contains("NoFiller"), Error);
}

TEST_CASE("projection of a product of nerves is a fibration; ends are not") {
  Nerve base = nerve(fixtures::pair_groupoid(2), 3);
  Nerve fib = nerve(fixtures::cyclic_groupoid(2), 3);
  ProductComplex p = product(base.ss, fib.ss);
  CheckReport r = check_fibration(p.pr1(), 1);
  CHECK(r.ok());
  // a non-surjective map is not a fibration: include one object into two
  Nerve disc = nerve(fixtures::discrete_groupoid(2), 3);
  Nerve pt = nerve(fixtures::discrete_groupoid(1), 3);
  GroupoidFunctor inc;
  inc.obj = {0};
  inc.arr = {disc.g.unit[0]};
  auto f = functor_to_map(build_functor(pt.g, disc.g, inc), pt, disc);
  CheckReport bad = check_fibration(f, 1);
  CHECK(bad.verdict == Verdict::fails);
  CHECK(!bad.witnesses.empty());
}

TEST_CASE("identity is a hypercover; fold map of two circles is not") {
  Nerve n = nerve(fixtures::cyclic_groupoid(2), 3);
  CHECK(check_hypercover(identity_map(n.ss), 1).ok());
  // fold: C2 + C2 -> C2 is a fibration and an equivalence but not a hypercover
  // (tau_0 is 2-to-1); the inclusion of one circle is not an equivalence.
  Nerve two = nerve(fixtures::two_circles(), 3);
  GroupoidFunctor fold;
  fold.obj = {0, 0};
  fold.arr = {0, 1, 0, 1};
  auto f = functor_to_map(build_functor(two.g, n.g, fold), two, n);
  CheckReport hc = check_hypercover(f, 1);
  CHECK(hc.verdict == Verdict::fails);
}

TEST_CASE("equivalences: thick embedding holds, component inclusion fails") {
  Nerve c2 = nerve(fixtures::cyclic_groupoid(2), 4);
  Nerve thick = nerve(fixtures::thick_c2(), 4);
  GroupoidFunctor emb;
  emb.obj = {0};
  emb.arr = {0, 1}; // s -> (0,0,s)
  auto f = functor_to_map(build_functor(c2.g, thick.g, emb), c2, thick);
  CheckReport good = check_equivalence(f, 1);
  CHECK(good.verdict == Verdict::holds);

  Nerve two = nerve(fixtures::two_circles(), 4);
  GroupoidFunctor inc;
  inc.obj = {0};
  inc.arr = {0, 1};
  auto g = functor_to_map(build_functor(c2.g, two.g, inc), c2, two);
  CheckReport bad = check_equivalence(g, 1);
  CHECK(bad.verdict == Verdict::fails);
  REQUIRE(!bad.witnesses.empty());
  // the witness names the unreached component: nothing above its 0-cell
  CHECK(bad.witnesses.front().find("tau_0") != std::string::npos);
}
