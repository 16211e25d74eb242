#include <doctest.h>

#include <random>

#include "geodetic/families.hpp"
#include "geodetic/iec.hpp"
#include "support/oracles.hpp"

using namespace geodetic;
using testsupport::random_connected_graph;

TEST_CASE("is_iec: cycles and chords") {
  Graph c5 = cycle_graph(5);
  CHECK(is_iec(c5, make_circuit(c5, {0, 1, 2, 3, 4, 0})));

  Graph k4 = complete_graph(4);
  CHECK_FALSE(is_iec(k4, make_circuit(k4, {0, 1, 2, 3, 0})));  // d(0,2)=1 != 2
  CHECK(is_iec(k4, make_circuit(k4, {0, 1, 2, 0})));

  CHECK_THROWS_AS(make_circuit(c5, {0, 1, 2}), InvalidArgument);     // not closed
  CHECK_THROWS_AS(make_circuit(c5, {0, 99, 0}), InvalidArgument);    // not in graph
}

TEST_CASE("canonical_circuit: rotation and reflection normalisation") {
  Graph c5 = cycle_graph(5);
  const std::vector<VertexId> want{0, 1, 2, 3, 4, 0};
  CHECK(canonical_circuit(make_circuit(c5, {2, 3, 4, 0, 1, 2})) == want);
  CHECK(canonical_circuit(make_circuit(c5, {0, 4, 3, 2, 1, 0})) == want);

  Graph k4 = complete_graph(4);
  CHECK(canonical_circuit(make_circuit(k4, {0, 1, 2, 0})) ==
        std::vector<VertexId>{0, 1, 2, 0});
  // idempotent
  auto canon = canonical_circuit(make_circuit(c5, {3, 2, 1, 0, 4, 3}));
  CHECK(canonical_circuit(make_circuit(c5, canon)) == canon);
  // non-embedded circuits are rejected
  Graph bow = build_graph({{"0", "1"}, {"1", "2"}, {"2", "0"},
                           {"0", "3"}, {"3", "4"}, {"4", "0"}});
  CHECK_THROWS_AS(canonical_circuit(make_circuit(bow, {0, 1, 2, 0, 3, 4, 0})),
                  InvalidArgument);
}

TEST_CASE("iec_from_fork: closes forks into IECs") {
  Graph c5 = cycle_graph(5);
  Iec five = iec_from_fork(c5, make_geodesic(c5, {0, 1, 2}), make_geodesic(c5, {0, 4, 3}));
  CHECK(five.length() == 5);
  CHECK(five.canon == std::vector<VertexId>{0, 1, 2, 3, 4, 0});

  Graph k4 = complete_graph(4);
  Iec tri = iec_from_fork(k4, make_geodesic(k4, {0, 1}), make_geodesic(k4, {0, 2}));
  CHECK(tri.length() == 3);
  CHECK(tri.canon == std::vector<VertexId>{0, 1, 2, 0});

  CHECK_THROWS_AS(
      iec_from_fork(c5, make_geodesic(c5, {0, 1, 2}), make_geodesic(c5, {0, 1})),
      InvalidArgument);  // arms do not diverge
  CHECK_THROWS_AS(
      iec_from_fork(c5, make_geodesic(c5, {0, 1}), make_geodesic(c5, {2, 3})),
      InvalidArgument);  // different bases
  CHECK_THROWS_AS(
      iec_from_fork(c5, make_geodesic(c5, {0, 1}), make_geodesic(c5, {0, 4})),
      InvalidArgument);  // endpoints not adjacent
}

TEST_CASE("enumerate_iecs_geodetic: known inventories") {
  auto inv5 = enumerate_iecs_geodetic(cycle_graph(5));
  CHECK(inv5.iecs.size() == 1);
  CHECK(inv5.max_length == 5);

  auto invk = enumerate_iecs_geodetic(complete_graph(4));
  CHECK(invk.iecs.size() == 4);
  CHECK(invk.histogram.at(3) == 4);
  CHECK(invk.max_length == 3);

  auto invp = enumerate_iecs_geodetic(petersen_graph());
  CHECK(invp.iecs.size() == 12);
  CHECK(invp.histogram.at(5) == 12);

  CHECK_THROWS_AS(enumerate_iecs_geodetic(cycle_graph(4)), NotGeodeticError);
}

TEST_CASE("enumerate_iecs_bruteforce: works without geodeticity") {
  auto inv4 = enumerate_iecs_bruteforce(cycle_graph(4), 9);
  CHECK(inv4.iecs.size() == 1);
  CHECK(inv4.max_length == 4);  // the 4-cycle embeds isometrically in itself

  CHECK(enumerate_iecs_bruteforce(cycle_graph(5), 3).empty());

  auto invk = enumerate_iecs_bruteforce(complete_graph(4), 9);
  CHECK(invk.iecs.size() == 4);

  CHECK_THROWS_AS(enumerate_iecs_bruteforce(cycle_graph(4), 2), InvalidArgument);
}

TEST_CASE("property: fork method agrees with brute force on geodetic graphs") {
  std::mt19937_64 rng(17);
  std::vector<Graph> graphs{cycle_graph(5), cycle_graph(7), complete_graph(4),
                            complete_graph(5), petersen_graph(), full_tree(2, 3),
                            psi_graph(2)};
  for (int i = 0; i < 30; ++i)
    graphs.push_back(random_connected_graph(rng, 4 + static_cast<int>(rng() % 8), 3));

  int geodetic_seen = 0;
  for (const Graph& g : graphs) {
    if (!is_geodetic(g).geodetic) continue;
    ++geodetic_seen;
    auto fork = enumerate_iecs_geodetic(g);
    auto brute = enumerate_iecs_bruteforce(g, std::max(3, g.order()));
    CHECK(fork.iecs == brute.iecs);
    for (const Iec& theta : fork.iecs) {
      CHECK(theta.length() % 2 == 1);  // odd-length law
      std::vector<VertexId> verts(theta.canon.begin(), theta.canon.end() - 1);
      CHECK(is_convex(g, verts));  // convexity law
    }
  }
  CHECK(geodetic_seen >= 7);  // the named families at least
}

TEST_CASE("property: fork outputs pass is_iec and arms match") {
  Graph p = petersen_graph();
  auto inv = enumerate_iecs_geodetic(p);
  for (const Iec& theta : inv.iecs)
    CHECK(is_iec(p, make_circuit(p, theta.canon)));
}
