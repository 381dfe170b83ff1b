#include "doctest.h"

#include "kanfib/sset.hpp"

using namespace kanfib;

TEST_CASE("standard simplex Delta[2] level sizes") {
  auto d2 = standard_simplex(2, 3);
  // monotone sequences over {0,1,2}: C(n+3,n+1) wait -- counted directly:
  // level 0: 3, level 1: 6, level 2: 10, level 3: 15
  CHECK(d2.ss->size(0) == 3);
  CHECK(d2.ss->size(1) == 6);
  CHECK(d2.ss->size(2) == 10);
  CHECK(d2.ss->size(3) == 15);
  CHECK(d2.ss->nondegenerate(1).size() == 3);
  CHECK(d2.ss->nondegenerate(2).size() == 1);
  CHECK(d2.ss->nondegenerate(3).empty());
}

TEST_CASE("boundary and horn cell counts at m=2") {
  auto b = boundary_complex(2, 3);
  // drops only the top cell and its degeneracies
  CHECK(b.ss->size(0) == 3);
  CHECK(b.ss->size(1) == 6);
  CHECK(b.ss->size(2) == 9);
  auto h = horn_complex(2, 1, 3);
  // loses the top cell and the edge 02
  CHECK(h.ss->size(1) == 5);
  CHECK(h.ss->nondegenerate(1).size() == 2);
  auto h11 = horn_complex(1, 1, 2);
  // the single vertex 1
  CHECK(h11.ss->size(0) == 1);
  CHECK(h11.seq[0][0] == VertexSeq{1});
}

TEST_CASE("face and degeneracy identities rejected when corrupted") {
  auto d2 = standard_simplex(2, 2);
  SimplicialSet broken = *d2.ss;
  broken.faces[2][0][0] ^= 1; // perturb one face entry
  CHECK_THROWS_AS(build_simplicial_set(broken), Error);
}

TEST_CASE("Eilenberg-Zilber normal form") {
  auto d1 = standard_simplex(1, 3);
  const SimplicialSet& s = *d1.ss;
  // cell 0011 at level 3 = s_2 s_0 applied to the edge 01
  Cell edge = d1.cell_of(1, {0, 1});
  Cell c = d1.cell_of(3, {0, 0, 1, 1});
  auto f = s.ez(3, c);
  CHECK(f.base_level == 1);
  CHECK(f.base == edge);
  CHECK(f.word.size() == 2);
  CHECK(s.apply_word(f.base_level, f.base, f.word) == c);
  CHECK(!s.is_degenerate(1, edge));
  CHECK(s.is_degenerate(3, c));
}

TEST_CASE("apply_operator matches explicit sequences on a standard simplex") {
  auto d3 = standard_simplex(3, 4);
  Cell top = d3.cell_of(3, {0, 1, 2, 3});
  // arbitrary monotone operator [4] -> [3]
  VertexSeq mu = {0, 2, 2, 3, 3};
  Cell got = apply_operator(*d3.ss, 3, top, mu);
  CHECK(got == d3.cell_of(4, mu));
  // vertex extraction
  CHECK(apply_operator(*d3.ss, 3, top, VertexSeq{2}) == d3.cell_of(0, {2}));
}

TEST_CASE("product Delta[1] x Delta[1]: nondegenerate census") {
  auto a = standard_simplex(1, 2);
  auto p = product(a.ss, a.ss);
  CHECK(p.ss->size(0) == 4);
  CHECK(p.ss->nondegenerate(1).size() == 5);
  const auto nd2 = p.ss->nondegenerate(2);
  CHECK(nd2.size() == 2);
  // the two triangles: A = (001,011) upper-left, B = (011,001) lower-right
  Cell c001 = a.cell_of(2, {0, 0, 1}), c011 = a.cell_of(2, {0, 1, 1});
  Cell tri_a = p.pair(2, c001, c011);
  Cell tri_b = p.pair(2, c011, c001);
  CHECK((nd2[0] == tri_a || nd2[1] == tri_a));
  CHECK((nd2[0] == tri_b || nd2[1] == tri_b));
  // shared diagonal
  CHECK(p.ss->face(2, 1, tri_a) == p.ss->face(2, 1, tri_b));
  // A's outer faces: d0 = top edge ({0}..{1} in second factor at x=..), d2 = left
  // B's outer faces: d0 = right vertical, d2 = bottom horizontal
  Cell e01 = a.cell_of(1, {0, 1}), v0 = a.cell_of(1, {0, 0}), v1 = a.cell_of(1, {1, 1});
  CHECK(p.ss->face(2, 0, tri_b) == p.pair(1, v1, e01));  // right vertical
  CHECK(p.ss->face(2, 2, tri_b) == p.pair(1, e01, v0));  // bottom
  CHECK(p.ss->face(2, 0, tri_a) == p.pair(1, e01, v1));  // top
  CHECK(p.ss->face(2, 2, tri_a) == p.pair(1, v0, e01));  // left vertical
}

TEST_CASE("product Delta[1] x Delta[2] has three nondegenerate 3-cells") {
  auto a = standard_simplex(1, 3);
  auto b = standard_simplex(2, 3);
  auto p = product(a.ss, b.ss);
  CHECK(p.ss->nondegenerate(3).size() == 3); // the three shuffles
}

TEST_CASE("skeleton of Delta[2]") {
  auto d2 = standard_simplex(2, 3);
  auto sk1 = skeleton(d2.ss, 1);
  CHECK(sk1.ss->size(0) == 3);
  CHECK(sk1.ss->size(1) == 6);
  CHECK(sk1.ss->size(2) == 9); // degenerate 2-cells only
  CHECK(sk1.ss->nondegenerate(2).empty());
  // inclusion is a valid map (validated by build_map inside skeleton)
  CHECK(sk1.incl.at(0, 0) == 0);
}

TEST_CASE("standard_map embeds a horn in its simplex") {
  auto h = horn_complex(2, 1, 2);
  auto d = standard_simplex(2, 2);
  auto incl = standard_map(h, d, {0, 1, 2});
  CHECK(incl.at(1, h.cell_of(1, {0, 1})) == d.cell_of(1, {0, 1}));
  CHECK_THROWS_AS(standard_map(d, h, {0, 1, 2}), Error); // 02 has no image
}

TEST_CASE("fiber product of two inclusions") {
  auto d = standard_simplex(1, 2);
  auto id = identity_map(d.ss);
  auto fp = fiber_product(id, id);
  for (int n = 0; n <= 2; ++n) CHECK(fp.ss->size(n) == d.ss->size(n));
  CHECK(same_map(fp.pr1, fp.pr2));
}

TEST_CASE("find_isomorphism detects equal and distinct complexes") {
  auto d2 = standard_simplex(2, 3);
  auto h = horn_complex(2, 1, 3);
  CHECK(find_isomorphism(d2.ss, d2.ss).has_value());
  CHECK(!find_isomorphism(d2.ss, h.ss).has_value());
}
