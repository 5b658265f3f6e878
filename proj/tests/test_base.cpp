#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace nwfs;

TEST_CASE("object construction and validation") {
  CHECK(finset_obj(0).size == 0);
  CHECK(object_size(finset_obj(3)) == 3);
  CHECK_THROWS_AS(finset_obj(-1), Error);

  BaseObject g = fingraph_obj(2, {0, 1}, {1, 1});
  CHECK(g.vertices == 2);
  CHECK(g.arrows == 2);
  CHECK(object_size(g) == 4);
  CHECK_THROWS_AS(fingraph_obj(1, {0}, {1}), Error);   // tgt out of range
  CHECK_THROWS_AS(fingraph_obj(1, {0}, {0, 0}), Error);  // length mismatch

  CHECK(object_size(finmod_obj(5, 2)) == 2);
  CHECK_THROWS_AS(finmod_obj(4, 1), Error);  // q must be prime
  CHECK_THROWS_AS(finmod_obj(2, -1), Error);
}

TEST_CASE("morphism validation") {
  CHECK_THROWS_AS(finset_mor(finset_obj(2), finset_obj(2), {0}), Error);
  CHECK_THROWS_AS(finset_mor(finset_obj(1), finset_obj(1), {1}), Error);

  BaseObject e = th::edge_graph();
  // collapsing the edge to a dot is not a homomorphism without a loop
  CHECK_THROWS_AS(fingraph_mor(e, th::dot_graph(), {0, 0}, {0}), Error);
  BaseObject l = th::loop_graph();
  CHECK_NOTHROW(fingraph_mor(e, l, {0, 0}, {0}));

  CHECK_THROWS_AS(
      finmod_mor(finmod_obj(3, 1), finmod_obj(3, 1), {{3}}), Error);
  CHECK_THROWS_AS(
      finmod_mor(finmod_obj(2, 1), finmod_obj(3, 1), {{1}}), BackendMismatch);
}

TEST_CASE("composition laws on seeded random maps") {
  auto& eng = th::rng(101);
  for (int trial = 0; trial < 50; ++trial) {
    int a = 1 + th::pick(eng, 4), b = 1 + th::pick(eng, 4),
        c = 1 + th::pick(eng, 4), d = 1 + th::pick(eng, 4);
    BaseMorphism f = th::random_set_map(eng, a, b);
    BaseMorphism g = th::random_set_map(eng, b, c);
    BaseMorphism h = th::random_set_map(eng, c, d);
    CHECK(compose(h, compose(g, f)) == compose(compose(h, g), f));
    CHECK(compose(f, identity(f.dom)) == f);
    CHECK(compose(identity(f.cod), f) == f);
  }
  CHECK_THROWS_AS(
      compose(th::random_set_map(eng, 2, 2), th::random_set_map(eng, 2, 3)),
      NotComposable);
}

TEST_CASE("finmod composition is matrix product mod q") {
  Arrow f = th::mod_arrow(5, 2, 2, {{1, 2}, {3, 4}});
  Arrow g = th::mod_arrow(5, 2, 2, {{0, 1}, {2, 0}});
  BaseMorphism gf = compose(g.mor, f.mor);
  // [[0,1],[2,0]] * [[1,2],[3,4]] = [[3,4],[2,4]]
  CHECK(gf.matrix == std::vector<std::vector<int>>{{3, 4}, {2, 4}});
}

TEST_CASE("iso detection and inverses") {
  auto& eng = th::rng(202);
  for (int n = 0; n <= 4; ++n) {
    BaseMorphism p = th::random_permutation(eng, n);
    BaseMorphism inv;
    REQUIRE(is_iso(p, &inv));
    CHECK(compose(inv, p) == identity(p.dom));
    CHECK(compose(p, inv) == identity(p.cod));
  }
  CHECK_FALSE(is_iso(th::set_arrow(2, 2, {0, 0}).mor));
  CHECK_FALSE(is_iso(th::set_arrow(2, 3, {0, 1}).mor));
  CHECK_THROWS_AS(inverse_of(th::set_arrow(2, 2, {0, 0}).mor), NotIso);

  // graph: swapping the two loops of a doubled loop is invertible
  BaseObject two_loops = fingraph_obj(2, {0, 1}, {0, 1});
  BaseMorphism swap = fingraph_mor(two_loops, two_loops, {1, 0}, {1, 0});
  BaseMorphism sinv;
  REQUIRE(is_iso(swap, &sinv));
  CHECK(compose(sinv, swap) == identity(two_loops));

  BaseMorphism m = th::mod_arrow(5, 2, 2, {{1, 2}, {3, 4}}).mor;  // det -2
  BaseMorphism minv;
  REQUIRE(is_iso(m, &minv));
  CHECK(compose(minv, m) == identity(m.dom));
  CHECK_FALSE(is_iso(th::mod_arrow(5, 2, 2, {{1, 2}, {2, 4}}).mor));
}

TEST_CASE("modular arithmetic helpers") {
  for (int q : {2, 3, 5, 7}) {
    for (int a = 1; a < q; ++a)
      CHECK(modq::norm(a * modq::inv(a, q), q) == 1);
    CHECK(modq::norm(-1, q) == q - 1);
  }
  CHECK_THROWS_AS(modq::inv(0, 5), Error);

  std::vector<std::vector<int>> id3 = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  CHECK(modq::rank(id3, 5) == 3);
  CHECK(modq::rank({{1, 2}, {2, 4}}, 5) == 1);
  CHECK(modq::rank({{0, 0}, {0, 0}}, 3) == 0);

  // solve returns some solution of A x = b whenever one exists
  auto& eng = th::rng(303);
  for (int trial = 0; trial < 40; ++trial) {
    int q = (trial % 2) ? 3 : 5;
    int rows = 1 + th::pick(eng, 3), cols = 1 + th::pick(eng, 3);
    std::vector<std::vector<int>> a(rows, std::vector<int>(cols));
    std::vector<int> x0(cols);
    for (auto& row : a)
      for (auto& v : row) v = th::pick(eng, q);
    for (auto& v : x0) v = th::pick(eng, q);
    std::vector<int> b(rows, 0);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j)
        b[i] = modq::norm(b[i] + a[i][j] * x0[j], q);
    std::vector<int> x;
    REQUIRE(modq::solve(a, b, x, q));
    for (int i = 0; i < rows; ++i) {
      int acc = 0;
      for (int j = 0; j < cols; ++j) acc = modq::norm(acc + a[i][j] * x[j], q);
      CHECK(acc == b[i]);
    }
  }
  std::vector<int> x;
  CHECK_FALSE(modq::solve({{1}, {1}}, {0, 1}, x, 2));
}
