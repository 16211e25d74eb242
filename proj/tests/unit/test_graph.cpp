#include <doctest.h>

#include <random>

#include "geodetic/families.hpp"
#include "geodetic/graph.hpp"
#include "support/oracles.hpp"

using namespace geodetic;
using testsupport::all_geodesics_bruteforce;
using testsupport::random_connected_graph;
using testsupport::union_of_geodesics_is_tree;

namespace {

std::vector<std::string> path_names(const Graph& g, const GeodesicPath& p) {
  return g.names_of(p.vertices);
}

}  // namespace

TEST_CASE("build_graph: declared isolated vertex") {
  Graph g = build_graph({}, {"v"});
  CHECK(g.order() == 1);
  CHECK(g.size() == 0);
}

TEST_CASE("build_graph: 5-cycle edge list") {
  Graph g = build_graph({{"0", "1"}, {"1", "2"}, {"2", "3"}, {"3", "4"}, {"4", "0"}});
  CHECK(g.order() == 5);
  CHECK(g.size() == 5);
  CHECK(g.adjacent(g.require("0"), g.require("4")));
  // duplicates collapse
  Graph h = build_graph({{"a", "b"}, {"b", "a"}, {"a", "b"}});
  CHECK(h.size() == 1);
}

TEST_CASE("build_graph: self-loop rejected") {
  CHECK_THROWS_AS(build_graph({{"u", "u"}}), InvalidArgument);
}

TEST_CASE("bfs_from: cycles and complete graphs") {
  Graph c5 = cycle_graph(5);
  auto b = bfs_from(c5, 0);
  CHECK(b.dist[2] == 2);
  CHECK(b.count[2] == 1);
  CHECK(b.dist[0] == 0);
  CHECK(b.count[0] == 1);
  CHECK(b.preds[0].empty());

  Graph c4 = cycle_graph(4);
  auto b4 = bfs_from(c4, 0);
  CHECK(b4.dist[2] == 2);
  CHECK(b4.count[2] == BfsLayers::kMany);

  Graph k4 = complete_graph(4);
  auto bk = bfs_from(k4, 0);
  for (VertexId v = 1; v < 4; ++v) {
    CHECK(bk.dist[v] == 1);
    CHECK(bk.count[v] == 1);
  }

  CHECK_THROWS_AS(bfs_from(c5, 99), InvalidArgument);
}

TEST_CASE("is_geodetic: odd cycle yes, even cycle no, with witness") {
  CHECK(is_geodetic(cycle_graph(5)).geodetic);

  Graph c4 = cycle_graph(4);
  auto rep = is_geodetic(c4);
  REQUIRE_FALSE(rep.geodetic);
  REQUIRE(rep.witness.has_value());
  CHECK(c4.name(rep.witness->from) == "0");
  CHECK(c4.name(rep.witness->to) == "2");
  CHECK(path_names(c4, rep.witness->path_a) == std::vector<std::string>{"0", "1", "2"});
  CHECK(path_names(c4, rep.witness->path_b) == std::vector<std::string>{"0", "3", "2"});
}

TEST_CASE("is_geodetic: disconnected input is an error") {
  Graph g = build_graph({{"a", "b"}, {"c", "d"}});
  CHECK_THROWS_AS(is_geodetic(g), DisconnectedError);
  try {
    is_geodetic(g);
  } catch (const DisconnectedError& e) {
    CHECK(e.component_a == "a");
    CHECK(e.component_b == "c");
  }
}

TEST_CASE("is_geodetic: thread count does not change the witness") {
  Graph c6 = cycle_graph(6);
  auto r1 = is_geodetic(c6, 1);
  auto r4 = is_geodetic(c6, 4);
  REQUIRE_FALSE(r1.geodetic);
  REQUIRE_FALSE(r4.geodetic);
  CHECK(r1.witness->from == r4.witness->from);
  CHECK(r1.witness->to == r4.witness->to);
  CHECK(r1.witness->path_a == r4.witness->path_a);
}

TEST_CASE("unique_geodesic: basic cases") {
  Graph c5 = cycle_graph(5);
  CHECK(path_names(c5, unique_geodesic(c5, 0, 2)) ==
        std::vector<std::string>{"0", "1", "2"});
  CHECK(unique_geodesic(c5, 3, 3).vertices == std::vector<VertexId>{3});

  Graph c4 = cycle_graph(4);
  CHECK_THROWS_AS(unique_geodesic(c4, 0, 2), AmbiguousGeodesicError);
  try {
    unique_geodesic(c4, 0, 2);
  } catch (const AmbiguousGeodesicError& e) {
    CHECK(e.geodesic_a == std::vector<std::string>{"0", "1", "2"});
    CHECK(e.geodesic_b == std::vector<std::string>{"0", "3", "2"});
  }

  Graph two = build_graph({{"a", "b"}, {"c", "d"}});
  CHECK_THROWS_AS(unique_geodesic(two, two.require("a"), two.require("c")),
                  UnreachableError);
}

TEST_CASE("enumerate_geodesics: counts and lexicographic order") {
  Graph c4 = cycle_graph(4);
  auto paths = enumerate_geodesics(c4, 0, 2, 10);
  REQUIRE(paths.size() == 2);
  CHECK(paths[0].vertices < paths[1].vertices);

  CHECK(enumerate_geodesics(cycle_graph(5), 0, 2, 10).size() == 1);

  Graph q4 = hypercube_graph(4);
  auto all = enumerate_geodesics(q4, q4.require("0000"), q4.require("1111"), 100);
  CHECK(all.size() == 24);  // 4! orderings of bit flips
  auto oracle = all_geodesics_bruteforce(q4, q4.require("0000"), q4.require("1111"));
  CHECK(oracle.size() == 24);

  // cap truncates
  CHECK(enumerate_geodesics(q4, q4.require("0000"), q4.require("1111"), 5).size() == 5);
  CHECK_THROWS_AS(enumerate_geodesics(c4, 0, 2, 0), InvalidArgument);

  // unreachable pairs give an empty list, not an error
  Graph two = build_graph({{"a", "b"}, {"c", "d"}});
  CHECK(enumerate_geodesics(two, two.require("a"), two.require("c"), 5).empty());
}

TEST_CASE("make_geodesic rejects non-geodesics") {
  Graph c5 = cycle_graph(5);
  CHECK(make_geodesic(c5, {0, 1, 2}).length() == 2);
  CHECK_THROWS_AS(make_geodesic(c5, {0, 1, 2, 3}), InvalidArgument);  // not shortest
  CHECK_THROWS_AS(make_geodesic(c5, {0, 2}), InvalidArgument);        // not adjacent
  CHECK_THROWS_AS(make_geodesic(c5, {}), InvalidArgument);
}

TEST_CASE("is_convex: triangles, arcs, and leaky sets") {
  Graph k4 = complete_graph(4);
  CHECK(is_convex(k4, {0, 1, 2}));

  Graph c5 = cycle_graph(5);
  CHECK_FALSE(is_convex(c5, {0, 2}));  // geodesic [0,1,2] leaves the set
  CHECK(is_convex(c5, {0, 1, 2}));
  CHECK_THROWS_AS(is_convex(c5, {42}), InvalidArgument);
}

TEST_CASE("property: saturating counts match exact enumeration") {
  std::mt19937_64 rng(7);
  std::vector<Graph> graphs;
  graphs.push_back(cycle_graph(5));
  graphs.push_back(cycle_graph(6));
  graphs.push_back(complete_graph(5));
  graphs.push_back(hypercube_graph(3));
  graphs.push_back(petersen_graph());
  for (int i = 0; i < 20; ++i)
    graphs.push_back(random_connected_graph(rng, 4 + static_cast<int>(rng() % 9), 4));

  for (const Graph& g : graphs) {
    for (VertexId u = 0; u < g.order(); ++u) {
      auto layers = bfs_from(g, u);
      for (VertexId v = 0; v < g.order(); ++v) {
        auto exact = enumerate_geodesics(g, u, v, 3);
        if (layers.count[static_cast<std::size_t>(v)] == 1)
          CHECK(exact.size() == 1);
        else if (layers.count[static_cast<std::size_t>(v)] == BfsLayers::kMany)
          CHECK(exact.size() >= 2);
        else
          CHECK((u != v && exact.empty()));
      }
    }
  }
}

TEST_CASE("property: BFS distances satisfy the triangle inequality") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 10; ++i) {
    Graph g = random_connected_graph(rng, 4 + static_cast<int>(rng() % 9), 5);
    const int n = g.order();
    std::vector<std::vector<int>> d;
    for (VertexId v = 0; v < n; ++v) d.push_back(bfs_from(g, v).dist);
    for (VertexId a = 0; a < n; ++a)
      for (VertexId b = 0; b < n; ++b)
        for (VertexId c = 0; c < n; ++c)
          CHECK(d[a][b] <= d[a][c] + d[c][b]);
  }
}

TEST_CASE("property: geodetic iff every union of geodesics is a tree") {
  std::mt19937_64 rng(13);
  std::vector<Graph> graphs{cycle_graph(5), cycle_graph(6), complete_graph(4),
                            hypercube_graph(3), petersen_graph()};
  for (int i = 0; i < 20; ++i)
    graphs.push_back(random_connected_graph(rng, 4 + static_cast<int>(rng() % 8), 3));
  for (const Graph& g : graphs) {
    bool all_trees = true;
    for (VertexId o = 0; o < g.order(); ++o)
      all_trees = all_trees && union_of_geodesics_is_tree(g, o);
    CHECK(is_geodetic(g).geodetic == all_trees);
  }
}
