#include "doctest.h"

#include "fixtures.hpp"
#include "kanfib/action.hpp"
#include "kanfib/kan.hpp"
#include "kanfib/reduction.hpp"

#include <set>

using namespace kanfib;
using namespace fixtures;

namespace {

SSetPtr bg_of(const CrossedModule& xm) {
  return classifying_2group(crossed_module_to_group_like(xm), 4).ss;
}

CrossedModule xm_identity() { // C2 -> C2 with identity boundary
  CrossedModule m;
  m.name = "xmid";
  m.h = cyclic_group(2);
  m.g = cyclic_group(2);
  m.bnd = {0, 1};
  m.act = {{0, 1}, {0, 1}};
  return build_crossed_module(std::move(m));
}

} // namespace

TEST_CASE("2-isotropy sets") {
  Nerve n2 = nerve(cyclic_groupoid(2), 4);
  auto sets = two_isotropy_sets(*n2.ss);
  REQUIRE(sets.size() == 1);
  REQUIRE(sets[0].size() == 1);
  CHECK(sets[0][0] == n2.ss->degen(1, 0, n2.ss->degen(0, 0, 0)));

  SSetPtr b0 = bg_of(xm0());
  CHECK(two_isotropy_sets(*b0)[0].size() == 2);
  CheckReport c0 = check_2_isotropy_free(*b0);
  CHECK_FALSE(c0.ok());
  REQUIRE_FALSE(c0.witnesses.empty());
  CHECK(c0.witnesses.front().find("vertex 0") != std::string::npos);

  CHECK(check_2_isotropy_free(*bg_of(xm2())).ok());
  CHECK(check_2_isotropy_free(*nerve(pair_groupoid(2), 4).ss).ok());
  CHECK(check_2_isotropy_free(*nerve(two_circles(), 4).ss).ok());
}

TEST_CASE("2-cells pinned by their boundaries") {
  CHECK(check_isotropy_consequences(*nerve(two_circles(), 4).ss).ok());
  CHECK(check_isotropy_consequences(*bg_of(xm2())).ok());

  // over xm0 both consequences fail: the extra central 2-cell has the boundary
  // of a degeneracy without being one, and it shares its faces with that
  // degeneracy
  CheckReport r = check_isotropy_consequences(*bg_of(xm0()));
  CHECK_FALSE(r.ok());
  CHECK(r.witnesses.size() >= 2);
}

TEST_CASE("reducing a 1-groupoid nerve changes nothing") {
  Nerve n2 = nerve(cyclic_groupoid(2), 4);
  ReduceResult r = reduce_to_1(*n2.ss);
  CHECK(groupoid_isomorphic(r.groupoid, cyclic_groupoid(2)));
  CHECK(std::set<int>(r.edge_class.begin(), r.edge_class.end()).size() ==
        r.edge_class.size());
  CHECK(find_isomorphism(r.proj.from, r.proj.to).has_value());

  ReduceResult rp = reduce_to_1(*nerve(pair_groupoid(2), 4).ss);
  CHECK(groupoid_isomorphic(rp.groupoid, pair_groupoid(2)));
}

TEST_CASE("reduction of a classifying space with injective boundary") {
  SSetPtr b = bg_of(xm2());
  ReduceResult r = reduce_to_1(*b);
  CHECK(r.groupoid.n_objects == 1);
  CHECK(r.groupoid.n_arrows() == 2);
  CHECK(groupoid_isomorphic(r.groupoid, cyclic_groupoid(2)));
  CHECK(r.edge_class == std::vector<int>{0, 1, 0, 1});
  CHECK(classify_n_groupoid(*r.proj.to, 1).ok());
  CHECK(check_hypercover(r.proj, 2).ok());
}

TEST_CASE("reduction rejections") {
  CHECK_THROWS_WITH_AS(reduce_to_1(*bg_of(xm0())), doctest::Contains("Not2IsotropyFree"),
                       Error);
  StandardComplex interval = standard_simplex(1, 4);
  CHECK_THROWS_WITH_AS(reduce_to_1(*interval.ss), doctest::Contains("NotA2Groupoid"),
                       Error);
}

TEST_CASE("pushforward along the reduction hypercover and back") {
  SSetPtr b = bg_of(xm_identity());
  ReduceResult r = reduce_to_1(*b);
  CHECK(r.groupoid.n_objects == 1);
  CHECK(r.groupoid.n_arrows() == 1);

  // trivial bundle with fiber the C2 nerve over the projection source
  SSetPtr base = r.proj.from;
  Nerve nfib = nerve(cyclic_groupoid(2), 4);
  ProductComplex prod = product(base, nfib.ss);
  std::vector<std::vector<Cell>> ilv(5);
  Cell bp = 0;
  for (int n = 0; n <= 4; ++n) {
    ilv[n].resize(nfib.ss->sizes[n]);
    for (Cell c = 0; c < (Cell)nfib.ss->sizes[n]; ++c) ilv[n][c] = prod.pair(n, bp, c);
    if (n < 4) bp = base->degen(n, 0, bp);
  }
  FibrationBundle eb;
  eb.total = prod.ss;
  eb.base = base;
  eb.fiber = nfib.ss;
  eb.pi = prod.pr1();
  eb.incl = build_map(nfib.ss, prod.ss, std::move(ilv));
  eb.degree = 2;
  eb.certificate = check_fibration(eb.pi, 2);
  REQUIRE(eb.certificate.ok());

  PushforwardResult pf = pushforward_bundle(eb, r.proj);
  CHECK(pf.bundle.certificate.ok());
  CHECK(pf.bundle.total->sizes == nfib.ss->sizes);
  CHECK(find_isomorphism(pf.bundle.total, nfib.ss).has_value());

  FibrationBundle back = pullback_bundle(pf.bundle, r.proj);
  CHECK(bundle_isomorphic(back, eb));
}
