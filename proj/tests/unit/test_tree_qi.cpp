#include <doctest.h>

#include "geodetic/families.hpp"
#include "geodetic/groups.hpp"
#include "geodetic/tree_qi.hpp"
#include "support/oracles.hpp"

using namespace geodetic;

TEST_CASE("geodesic_spanning_tree: parents are geodesic predecessors") {
  Graph c5 = cycle_graph(5);
  auto t = geodesic_spanning_tree(c5, 0);
  CHECK(t.parent[1] == 0);
  CHECK(t.parent[4] == 0);
  CHECK(t.parent[2] == 1);
  CHECK(t.parent[3] == 4);
  CHECK(t.parent[0] == -1);

  Graph k4 = complete_graph(4);
  auto star = geodesic_spanning_tree(k4, 0);
  for (VertexId v = 1; v < 4; ++v) CHECK(star.parent[v] == 0);

  CHECK_THROWS_AS(geodesic_spanning_tree(cycle_graph(4), 0), NotGeodeticError);
}

TEST_CASE("SpanningTree: lca, distance and path") {
  Graph c5 = cycle_graph(5);
  auto t = geodesic_spanning_tree(c5, 0);
  CHECK(t.lca(2, 3) == 0);
  CHECK(t.distance(2, 3) == 4);
  CHECK(t.path(2, 3) == std::vector<VertexId>{2, 1, 0, 4, 3});
  CHECK(t.distance(0, 2) == 2);
  CHECK(t.has_edge(1, 0));
  CHECK_FALSE(t.has_edge(2, 3));
}

TEST_CASE("lift_path: tree edges kept, non-tree edges spliced") {
  Graph c5 = cycle_graph(5);
  auto t = geodesic_spanning_tree(c5, 0);
  auto inv = enumerate_iecs_geodetic(c5);

  auto lifted = lift_path(c5, t, make_geodesic(c5, {2, 3}), inv);
  CHECK(lifted.tree_path == std::vector<VertexId>{2, 1, 0, 4, 3});
  CHECK(lifted.splice_points == std::vector<VertexId>{0});
  CHECK(lifted.length() == 4);  // == 2n * k with n = 2, k = 1

  auto same = lift_path(c5, t, make_geodesic(c5, {0, 1, 2}), inv);
  CHECK(same.tree_path == std::vector<VertexId>{0, 1, 2});
  CHECK(same.splice_points.empty());

  Graph k4 = complete_graph(4);
  auto tk = geodesic_spanning_tree(k4, 0);
  auto invk = enumerate_iecs_geodetic(k4);
  auto lk = lift_path(k4, tk, make_geodesic(k4, {1, 2}), invk);
  CHECK(lk.tree_path == std::vector<VertexId>{1, 0, 2});
  CHECK(lk.length() == 2);  // == 2n * k with n = 1

  CHECK_THROWS_AS(lift_path(c5, t, GeodesicPath{{0, 1, 2, 3}}, inv),
                  InvalidArgument);
}

TEST_CASE("distortion_report: C5 attains the 2n bound exactly") {
  Graph c5 = cycle_graph(5);
  auto rep = distortion_report(c5, 0);
  CHECK(rep.n == 2);
  CHECK(rep.lambda == 4);
  CHECK(rep.max_ratio == Ratio::of(4, 1));
  CHECK(rep.worst_pair == std::make_pair(2, 3));
  CHECK(rep.bound_satisfied);
}

TEST_CASE("distortion_report: trees degenerate to lambda = 1") {
  Graph t = full_tree(3, 2);
  auto rep = distortion_report(t, 0);
  CHECK(rep.n == 0);
  CHECK(rep.lambda == 1);
  CHECK(rep.max_ratio == Ratio::of(1, 1));
  CHECK(rep.bound_satisfied);
}

TEST_CASE("distortion_report: Petersen stays within 2n for every root") {
  Graph p = petersen_graph();
  auto inv = enumerate_iecs_geodetic(p);
  for (VertexId o = 0; o < p.order(); ++o) {
    auto rep = distortion_report(p, o, inv);
    CHECK(rep.n == 2);
    CHECK(rep.bound_satisfied);
    CHECK(rep.max_ratio <= Ratio::of(4, 1));
  }
}

TEST_CASE("sandwich holds on a 253-vertex Cayley ball") {
  GroupSpec spec({FiniteFactor::cyclic(3, "a"), FiniteFactor::cyclic(3, "b")});
  auto ball = cayley_ball(spec, 6);
  REQUIRE(ball.graph.order() == 253);
  auto inv = enumerate_iecs_geodetic(ball.graph);
  auto rep = distortion_report(ball.graph, ball.identity, inv, 4);
  CHECK(rep.n == 1);  // triangles only
  CHECK(rep.lambda == 2);
  CHECK(rep.bound_satisfied);  // exact max over all pairs of d_T / d_G <= 2
}

TEST_CASE("property: sandwich d_G <= d_T <= 2n d_G and valid lift certificates") {
  std::vector<Graph> graphs{cycle_graph(5), cycle_graph(9), complete_graph(5),
                            petersen_graph(), psi_graph(2), full_tree(2, 3)};
  for (const Graph& g : graphs) {
    auto inv = enumerate_iecs_geodetic(g);
    const int lambda = std::max(1, 2 * iec_bound_n(inv));
    for (VertexId o = 0; o < g.order(); ++o) {
      auto t = detail::tree_from_layers(bfs_from(g, o));
      // tree validity: every root path is a graph geodesic
      auto dist = detail::bfs_dist(g, o);
      int edges = 0;
      for (VertexId v = 0; v < g.order(); ++v) {
        if (v == o) continue;
        ++edges;
        CHECK(t.depth[v] == dist[v]);
        CHECK(g.adjacent(v, t.parent[v]));
        auto up = t.path_to_root(v);
        std::reverse(up.begin(), up.end());
        make_geodesic(g, up);  // throws if not a geodesic
      }
      CHECK(edges == g.order() - 1);
      for (VertexId v = 0; v < g.order(); ++v) {
        auto dg = detail::bfs_dist(g, v);
        for (VertexId w = v + 1; w < g.order(); ++w) {
          const int dt = t.distance(v, w);
          CHECK(dg[w] <= dt);
          CHECK(dt <= lambda * dg[w]);
        }
      }
    }
    // lift every unique geodesic from a fixed tree; splice closures are IECs
    auto t0 = detail::tree_from_layers(bfs_from(g, 0));
    for (VertexId v = 0; v < g.order(); ++v) {
      for (VertexId w = 0; w < g.order(); ++w) {
        if (v == w) continue;
        auto gamma = unique_geodesic(g, v, w);
        auto lifted = lift_path(g, t0, gamma, inv);
        CHECK(lifted.length() <= lambda * gamma.length());
        CHECK(lifted.tree_path.front() == v);
        CHECK(lifted.tree_path.back() == w);
        std::size_t splice = 0;
        for (std::size_t i = 0; i + 1 < gamma.vertices.size(); ++i) {
          const VertexId x = gamma.vertices[i];
          const VertexId y = gamma.vertices[i + 1];
          if (t0.has_edge(x, y)) continue;
          REQUIRE(splice < lifted.splice_points.size());
          const VertexId u = lifted.splice_points[splice++];
          // closure [u,x] * (x,y) * [y,u] is an IEC
          auto a = unique_geodesic(g, u, x);
          auto b = unique_geodesic(g, u, y);
          std::vector<VertexId> closed(a.vertices);
          for (auto it = b.vertices.rbegin(); it != b.vertices.rend(); ++it)
            closed.push_back(*it);
          CHECK(is_iec(g, make_circuit(g, closed)));
        }
        CHECK(splice == lifted.splice_points.size());
      }
    }
  }
}
