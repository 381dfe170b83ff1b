#include "doctest.h"

#include "kanfib/groupoid.hpp"
#include "kanfib/homsearch.hpp"

#include "fixtures.hpp"

using namespace kanfib;

TEST_CASE("maps from Delta[n] correspond to n-cells") {
  Nerve n = nerve(fixtures::pair_groupoid(2), 3);
  for (int m = 0; m <= 3; ++m) {
    auto d = standard_simplex(m, 3);
    CHECK(count_maps(d.ss, n.ss) == n.ss->size(m));
  }
}

TEST_CASE("maps from the (2,1)-horn into the two-object pair groupoid") {
  Nerve n = nerve(fixtures::pair_groupoid(2), 3);
  auto h = horn_complex(2, 1, 3);
  // oracle: a horn is a composable pair of arrows; the pair groupoid on two
  // objects has arrows = pairs of objects, so composable pairs = 2^3
  long long pairs = 0;
  const FiniteGroupoid& g = n.g;
  for (int a = 0; a < g.n_arrows(); ++a)
    for (int b = 0; b < g.n_arrows(); ++b)
      if (g.composable(a, b)) ++pairs;
  CHECK(pairs == 8);
  CHECK(count_maps(h.ss, n.ss) == pairs);
}

TEST_CASE("horn restriction tables agree with the search") {
  Nerve n = nerve(fixtures::cyclic_groupoid(2), 4);
  HornSet hs = horn_restriction(*n.ss, 2, 1);
  auto h = horn_complex(2, 1, 4);
  CHECK((long long)hs.tuples.size() == count_maps(h.ss, n.ss));
  // every 2-cell restricts to its own horn and appears among its fillers
  for (Cell c = 0; c < n.ss->size(2); ++c) {
    int t = hs.restrict_of[c];
    const auto& f = hs.fillers[t];
    CHECK(std::find(f.begin(), f.end(), c) != f.end());
  }
}

TEST_CASE("boundary restriction of the 2-sphere-like complex") {
  auto d2 = standard_simplex(2, 2);
  BoundarySet bs = boundary_restriction(*d2.ss, 2);
  // each 2-cell has a unique boundary tuple here
  for (auto& f : bs.fillers) CHECK(f.size() <= 1);
  CHECK(bs.restrict_of.size() == (size_t)d2.ss->size(2));
}

TEST_CASE("pinned and filtered searches") {
  Nerve n = nerve(fixtures::cyclic_groupoid(2), 2);
  auto d1 = standard_simplex(1, 2);
  // edges pinned to the nontrivial loop: exactly one map
  MapSearchOptions opt;
  opt.pinned[{1, d1.cell_of(1, {0, 1})}] = n.cell_of(1, {1});
  CHECK(count_maps(d1.ss, n.ss, opt) == 1);
  // allow-filter: forbid the nontrivial loop everywhere
  MapSearchOptions opt2;
  opt2.allow = [&](int lvl, Cell, Cell img) {
    return lvl != 1 || img != n.cell_of(1, {1});
  };
  CHECK(count_maps(d1.ss, n.ss, opt2) == 1); // only the degenerate edge survives
}

TEST_CASE("cylinder of nerve(C2): level sizes and structure maps") {
  Nerve n = nerve(fixtures::cyclic_groupoid(2), 3);
  Cylinder cyl = cylinder(n.ss, 1, 2);
  // squares into a one-object groupoid nerve: free choice of (u,v) sharing the
  // diagonal: level 0 = edges (2), level 1 = squares: pairs (u, v) of 2-cells
  // with equal d_1: 4 pairs sharing each diagonal sum to 8
  CHECK(cyl.ss->size(0) == 2);
  CHECK(cyl.ss->size(1) == 8);
  auto bottom = cylinder_end(cyl, 0);
  auto top = cylinder_end(cyl, 1);
  auto sec = cylinder_section(cyl);
  // section followed by either end is the identity
  auto c1 = compose(sec, bottom);
  auto c2 = compose(sec, top);
  for (int m = 0; m <= 2; ++m)
    for (Cell c = 0; c < cyl.base_trunc->size(m); ++c) {
      CHECK(c1.at(m, c) == c);
      CHECK(c2.at(m, c) == c);
    }
}

TEST_CASE("natural transformations of the identity on nerve(C2) are the center") {
  Nerve n = nerve(fixtures::cyclic_groupoid(2), 3);
  auto id = identity_map(n.ss);
  auto ts = find_natural_transformations(id, id, 2);
  CHECK(ts.size() == 2); // Z(C2) = C2
}

TEST_CASE("natural transformations between distinct constant maps are empty") {
  FiniteGroupoid two = fixtures::discrete_groupoid(2);
  Nerve nd = nerve(two, 3);
  Nerve n2 = nerve(fixtures::pair_groupoid(2), 3);
  GroupoidFunctor c0, c1;
  c0.obj = {0, 0};
  c0.arr = {two.unit[0], two.unit[0]};
  c1.obj = {1, 1};
  c1.arr = {two.unit[1], two.unit[1]};
  // constants into the discrete groupoid on 2 objects: no path between them
  auto f = functor_to_map(build_functor(two, two, c0), nd, nd);
  auto g = functor_to_map(build_functor(two, two, c1), nd, nd);
  CHECK(find_natural_transformations(f, g, 2).empty());
  CHECK(find_natural_transformations(f, f, 2).size() == 1);
}
