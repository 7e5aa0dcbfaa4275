#include "doctest.h"

#include "torustri/rotmap.hpp"

using namespace torustri;

namespace {

// one vertex, two loops glued as the standard torus square:
// rotation (a, b, a', b') with twins a<->a', b<->b'
RotMap torus_square() {
  return RotMap::build({{2, 1}, {3, 2}, {0, 3}, {1, 0}});
}

}  // namespace

TEST_CASE("torus square map") {
  RotMap m = torus_square();
  CHECK(m.num_vertices() == 1);
  CHECK(m.num_edges() == 2);
  CHECK(m.num_faces() == 1);
  CHECK(m.genus() == 1);
  CHECK(m.faces()[0].size() == 4);
}

TEST_CASE("star of stems has genus 0") {
  // 3 stems at one vertex
  RotMap m = RotMap::build({{kNoTwin, 1}, {kNoTwin, 2}, {kNoTwin, 0}});
  CHECK(m.num_vertices() == 1);
  CHECK(m.num_edges() == 0);
  CHECK(m.num_stems() == 3);
  CHECK(m.num_faces() == 1);
  CHECK(m.genus() == 0);
  CHECK(m.faces()[0].size() == 3);  // each stem once per orbit
}

TEST_CASE("declared genus is checked") {
  CHECK_THROWS_AS(RotMap::build({{2, 1}, {3, 2}, {0, 3}, {1, 0}}, 0), GenusMismatch);
}

TEST_CASE("invalid tables rejected") {
  CHECK_THROWS_AS(RotMap::build({{1, 0}, {0, 0}}), BrokenPermutation);
  CHECK_THROWS_AS(RotMap::build({{0, 1}, {0, 0}}), NonInvolutionTwin);
}

TEST_CASE("theta graph on the torus") {
  // vertices v={0,1,2}, w={3,4,5}; twins i<->i+3; rotations (0,1,2),(3,4,5)
  RotMap m = RotMap::build({{3, 1}, {4, 2}, {5, 0}, {0, 4}, {1, 5}, {2, 3}});
  CHECK(m.num_vertices() == 2);
  CHECK(m.num_edges() == 3);
  CHECK(m.num_faces() == 1);
  CHECK(m.genus() == 1);
}

TEST_CASE("homology labels: generators independent, faces null") {
  RotMap m = torus_square();
  auto lab = m.homology_labels();
  REQUIRE(lab.size() == 2);
  long long det = lab[0][0] * lab[1][1] - lab[0][1] * lab[1][0];
  CHECK((det == 1 || det == -1));
  // face boundary sums to zero
  for (const auto& face : m.faces()) {
    long long s0 = 0, s1 = 0;
    for (int h : face) {
      int e = m.edge_id(h);
      if (e < 0) continue;
      int sgn = (h == m.edge_half(e)) ? 1 : -1;
      s0 += sgn * lab[e][0];
      s1 += sgn * lab[e][1];
    }
    CHECK(s0 == 0);
    CHECK(s1 == 0);
  }
}

TEST_CASE("essential simplicity") {
  CHECK(torus_square().is_essentially_simple());
  // contractible loop c in front of a torus square
  RotMap has_loop = RotMap::build(
      {{1, 1}, {0, 2}, {4, 3}, {5, 4}, {2, 5}, {3, 0}});
  CHECK(has_loop.genus() == 1);
  CHECK_FALSE(has_loop.is_essentially_simple());
  // theta graph doubled on one edge: a bigon pair of homotopic edges
  RotMap bigon = RotMap::build({{4, 2}, {5, 0}, {6, 3}, {7, 1}, {0, 5}, {1, 6}, {2, 7}, {3, 4}});
  CHECK(bigon.genus() == 1);
  CHECK_FALSE(bigon.is_essentially_simple());
  // one-vertex map with two homologically independent loops is fine
  CHECK(torus_square().is_essentially_simple());
}

TEST_CASE("json round trip is bit exact") {
  RotMap m = torus_square();
  std::string j = m.to_json(2);
  std::optional<int> root;
  RotMap m2 = RotMap::from_json(j, &root);
  CHECK(root == 2);
  CHECK(m2.to_json(2) == j);
}
