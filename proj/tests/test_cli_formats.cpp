#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "helpers.hpp"

using namespace nwfs;

TEST_CASE("json round trips every backend") {
  auto& gen = th::rng(2024);
  for (int trial = 0; trial < 50; ++trial) {
    int nx = th::pick(gen, 4), ny = 1 + th::pick(gen, 3);
    Arrow f(th::random_set_map(gen, nx, ny));
    CHECK(arrow_from_json(to_json(f)) == f);
  }
  for (int trial = 0; trial < 50; ++trial) {
    int q = th::pick(gen, 2) ? 2 : 5;
    int m = th::pick(gen, 3), n = th::pick(gen, 3);
    std::vector<std::vector<int>> mat(n, std::vector<int>(m));
    for (auto& row : mat)
      for (int& v : row) v = th::pick(gen, q);
    Arrow f = th::mod_arrow(q, m, n, mat);
    CHECK(arrow_from_json(to_json(f)) == f);
  }
  for (const Arrow& f :
       {th::graph_arrow(th::dot_graph(), th::edge_graph(), {0}, {}),
        th::graph_arrow(th::edge_graph(), th::loop_graph(), {0, 0}, {0}),
        th::graph_arrow(th::path2_graph(), th::path2_graph(), {0, 1, 2},
                        {0, 1})}) {
    CHECK(arrow_from_json(to_json(f)) == f);
  }
}

TEST_CASE("json round trips squares and generating sets") {
  Arrow f = th::set_arrow(1, 2, {0});
  Arrow g = th::set_arrow(2, 3, {0, 1});
  Square sq(f, g, th::set_arrow(1, 2, {1}).mor,
            th::set_arrow(2, 3, {1, 2}).mor);
  Square back = square_from_json(to_json(sq));
  CHECK(th::same_square(back, sq));

  for (const GeneratingSet& gs :
       {th::gens_splitepi(), th::gens_cosection(), th::gens_both(),
        th::gens_graph(), th::gens_mod(2)}) {
    GeneratingSet rt = genset_from_json(to_json(gs));
    REQUIRE(rt.entries.size() == gs.entries.size());
    for (std::size_t i = 0; i < rt.entries.size(); ++i) {
      CHECK(rt.entries[i].name == gs.entries[i].name);
      CHECK(rt.entries[i].arrow == gs.entries[i].arrow);
    }
  }
}

TEST_CASE("json dumps are byte stable") {
  Arrow f = th::set_arrow(2, 3, {0, 1});
  std::string once = to_json(f).dump();
  std::string twice = to_json(arrow_from_json(to_json(f))).dump();
  CHECK(once == twice);
  // keys are emitted sorted regardless of construction order
  CHECK(once.find("\"cod\"") < once.find("\"dom\""));
  CHECK(once.find("\"dom\"") < once.find("\"mor\""));
  json j{{"mor", to_json(f.mor)}, {"dom", to_json(f.dom())},
         {"cod", to_json(f.cod())}};
  CHECK(j.dump() == once);
}

TEST_CASE("parse errors carry context") {
  CHECK_THROWS_AS(object_from_json(json{{"backend", "ring"}}), ParseError);
  CHECK_THROWS_AS(object_from_json(json{{"backend", "finset"}}), ParseError);
  json bad_graph{{"backend", "fingraph"}, {"vertices", 2}, {"arrows", 3},
                 {"src", {0}}, {"tgt", {1}}};
  CHECK_THROWS_AS(object_from_json(bad_graph), ParseError);

  Arrow f = th::set_arrow(1, 2, {0});
  json j = to_json(f);
  j["cod"]["size"] = 3;
  CHECK_THROWS_AS(arrow_from_json(j), ParseError);

  json empty_gens{{"generators", json::array()}};
  CHECK_THROWS_AS(genset_from_json(empty_gens), ParseError);
  json named_wrong;
  named_wrong["generators"] = json::array({json{{"label", "x"}}});
  CHECK_THROWS_AS(genset_from_json(named_wrong), ParseError);
}

TEST_CASE("cache keys separate distinct arrows and squares") {
  std::vector<std::string> keys;
  for (const Arrow& f : th::all_set_arrows(3)) keys.push_back(arrow_key(f));
  for (const Arrow& f : th::all_mod_arrows(2, 1)) keys.push_back(arrow_key(f));
  keys.push_back(
      arrow_key(th::graph_arrow(th::dot_graph(), th::edge_graph(), {0}, {})));
  std::sort(keys.begin(), keys.end());
  CHECK(std::adjacent_find(keys.begin(), keys.end()) == keys.end());

  Arrow g = th::set_arrow(2, 3, {0, 1});
  std::vector<std::string> sk;
  for (const Square& sq : enumerate_squares(g, g, 1000))
    sk.push_back(square_key(sq));
  CHECK(sk.size() > 1);
  std::sort(sk.begin(), sk.end());
  CHECK(std::adjacent_find(sk.begin(), sk.end()) == sk.end());
}
