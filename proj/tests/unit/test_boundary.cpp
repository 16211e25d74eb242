#include <doctest.h>

#include "geodetic/boundary.hpp"
#include "geodetic/families.hpp"
#include "geodetic/groups.hpp"
#include "support/oracles.hpp"

using namespace geodetic;
using testsupport::ids_of;

namespace {

Graph path_graph(int n) { return full_tree(1, n); }  // vertices "0".."n"

GroupSpec c3c3() {
  return GroupSpec({FiniteFactor::cyclic(3, "a"), FiniteFactor::cyclic(3, "b")});
}

}  // namespace

TEST_CASE("validate_ray_prefix: geodesic prefixes only") {
  Graph c5 = cycle_graph(5);
  auto ray = validate_ray_prefix(c5, {0, 1, 2});
  CHECK(ray.base == 0);
  CHECK(ray.horizon() == 2);

  CHECK_THROWS_WITH_AS(validate_ray_prefix(c5, {0, 1, 2, 3}),
                       doctest::Contains("v_3"), InvalidArgument);
  CHECK(validate_ray_prefix(c5, {3}).horizon() == 0);
}

TEST_CASE("busemann_trace: line graph, exact values") {
  Graph p = path_graph(10);
  auto gamma = validate_ray_prefix(p, ids_of(p, {"0", "1", "2", "3", "4", "5",
                                                 "6", "7", "8", "9", "10"}));
  auto tr = busemann_trace(p, gamma, p.require("5"), 3);
  CHECK(tr.values == std::vector<int>{5, 3, 1, -1, -3, -5, -5, -5, -5, -5, -5});
  CHECK(tr.stable_from == 5);
  CHECK(tr.limit == -5);
}

TEST_CASE("busemann_trace: b_gamma(gamma(k)) = -k") {
  Graph p = path_graph(9);
  auto gamma = validate_ray_prefix(
      p, ids_of(p, {"0", "1", "2", "3", "4", "5", "6", "7", "8", "9"}));
  for (int k = 0; k <= 4; ++k) {
    auto tr = busemann_trace(p, gamma, gamma.seq[static_cast<std::size_t>(k)], 3);
    REQUIRE(tr.limit.has_value());
    CHECK(*tr.limit == -k);
  }
  CHECK_THROWS_AS(busemann_trace(p, gamma, 0, 0), InvalidArgument);
}

TEST_CASE("busemann_trace: Cayley ball of C3*C3, alternating ray") {
  auto ball = cayley_ball(c3c3(), 6);
  const Graph& g = ball.graph;
  auto gamma = validate_ray_prefix(
      g, ids_of(g, {"1", "a", "a.b", "a.b.a", "a.b.a.b", "a.b.a.b.a",
                    "a.b.a.b.a.b"}));
  auto tr = busemann_trace(g, gamma, g.require("b"), 3);
  for (std::size_t t = 0; t + 1 < tr.values.size(); ++t)
    CHECK(tr.values[t + 1] <= tr.values[t]);
  REQUIRE(tr.stable_from.has_value());
  CHECK(gamma.horizon() - *tr.stable_from >= 3);
}

TEST_CASE("rebase_ray: identity and line concatenation") {
  Graph p = path_graph(10);
  auto gamma = validate_ray_prefix(p, ids_of(p, {"3", "4", "5", "6", "7", "8",
                                                 "9", "10"}));
  auto beta = rebase_ray(p, gamma, p.require("0"), 3);
  CHECK(p.names_of(beta.seq) ==
        std::vector<std::string>{"0", "1", "2", "3", "4", "5", "6", "7", "8",
                                 "9", "10"});

  // gamma already based at o: the rebase is the identity
  auto same = rebase_ray(p, gamma, p.require("3"), 3);
  CHECK(same == gamma);

  // horizon shorter than the window cannot certify stabilisation
  auto tiny = validate_ray_prefix(p, ids_of(p, {"3", "4"}));
  CHECK_THROWS_AS(rebase_ray(p, tiny, p.require("0"), 3), HorizonTooShortError);
}

TEST_CASE("rebase_ray: C3*C3 ball, new base shares the tail") {
  auto ball = cayley_ball(c3c3(), 6);
  const Graph& g = ball.graph;
  auto gamma = validate_ray_prefix(
      g, ids_of(g, {"1", "a", "a.b", "a.b.a", "a.b.a.b", "a.b.a.b.a",
                    "a.b.a.b.a.b"}));
  const VertexId o = g.require("b^2");
  auto beta = rebase_ray(g, gamma, o, 3);
  CHECK(beta.base == o);
  CHECK(beta.seq.back() == gamma.seq.back());

  // rebasing is idempotent
  auto again = rebase_ray(g, beta, o, 3);
  CHECK(again == beta);
}

TEST_CASE("coincidence_radius") {
  Graph c5 = cycle_graph(5);
  auto a = validate_ray_prefix(c5, {0, 1, 2});
  auto b = validate_ray_prefix(c5, {0, 4, 3});
  auto r = coincidence_radius(a, b);
  CHECK(r.radius == 0);
  CHECK_FALSE(r.full_horizon);

  auto full = coincidence_radius(a, a);
  CHECK(full.radius == 2);
  CHECK(full.full_horizon);

  auto ball = cayley_ball(c3c3(), 4);
  const Graph& g = ball.graph;
  auto r1 = validate_ray_prefix(g, ids_of(g, {"1", "a", "a.b", "a.b.a"}));
  auto r2 = validate_ray_prefix(g, ids_of(g, {"1", "a", "a.b", "a.b.a^2"}));
  CHECK(coincidence_radius(r1, r2).radius == 2);

  auto other = validate_ray_prefix(c5, {1, 2});
  CHECK_THROWS_AS(coincidence_radius(a, other), InvalidArgument);
}

TEST_CASE("ray_extend: counting and degrees") {
  Graph c5 = cycle_graph(5);
  Graph ext = ray_extend(c5, {0}, 3);
  CHECK(ext.order() == 8);
  CHECK(ext.size() == 8);
  CHECK(ext.find("0.r1").has_value());
  CHECK(ext.find("0.r3").has_value());

  Graph k4 = complete_graph(4);
  Graph ext2 = ray_extend(k4, {0, 1}, 1);
  CHECK(ext2.degree(ext2.require("0")) == 4);
  CHECK(ext2.degree(ext2.require("1")) == 4);

  // ids of existing vertices are preserved
  for (VertexId v = 0; v < c5.order(); ++v) CHECK(ext.name(v) == c5.name(v));

  CHECK_THROWS_AS(ray_extend(c5, {0}, 0), InvalidArgument);
}

TEST_CASE("property: ray extension preserves geodeticity both ways") {
  std::vector<Graph> geodetic_graphs{cycle_graph(5), cycle_graph(7),
                                     complete_graph(4), psi_graph(2),
                                     full_tree(2, 2)};
  for (const Graph& g : geodetic_graphs) {
    Graph ext = ray_extend(g, {0, g.order() - 1}, 2);
    CHECK(is_geodetic(ext).geodetic);
  }
  // and non-geodetic graphs stay non-geodetic
  Graph bad = ray_extend(cycle_graph(4), {0, 2}, 2);
  CHECK_FALSE(is_geodetic(bad).geodetic);
}

TEST_CASE("property: IEC plus attached ray is convex in the extension") {
  Graph g = psi_graph(2);
  auto inv = enumerate_iecs_geodetic(g);
  const VertexId attach = g.require("c1_2");
  Graph ext = ray_extend(g, {attach}, 3);
  for (const Iec& theta : inv.iecs) {
    if (!theta.contains(attach)) continue;
    std::vector<VertexId> members;
    for (std::size_t i = 0; i + 1 < theta.canon.size(); ++i)
      members.push_back(ext.require(g.name(theta.canon[i])));
    for (const auto& nm : ray_extension_names(g.name(attach), 3))
      members.push_back(ext.require(nm));
    CHECK(is_convex(ext, members));
  }
}

TEST_CASE("find_onion_prefix: C5 yields depth 0 only") {
  Graph c5 = cycle_graph(5);
  auto inv = enumerate_iecs_geodetic(c5);
  auto p = find_onion_prefix(c5, inv, 5);
  REQUIRE(p.has_value());
  CHECK(p->depth() == 0);
  CHECK(p->s == std::vector<VertexId>{0});
  CHECK(p->r == std::vector<VertexId>{1});
  CHECK(p->thetas.size() == 1);
}

TEST_CASE("find_onion_prefix: psi base-path edges lie on no IEC") {
  Graph psi = psi_graph(3);
  auto inv = enumerate_iecs_geodetic(psi);
  std::vector<std::pair<VertexId, VertexId>> base_edges;
  for (int k = 0; k < 3; ++k)
    base_edges.emplace_back(psi.require("p" + std::to_string(k)),
                            psi.require("p" + std::to_string(k + 1)));
  auto p = find_onion_prefix(psi, inv, 4, base_edges);
  CHECK_FALSE(p.has_value());
}

TEST_CASE("find_onion_prefix: bowtie stops at depth 0") {
  Graph bow = build_graph({{"0", "1"}, {"1", "2"}, {"2", "0"},
                           {"0", "3"}, {"3", "4"}, {"4", "0"}});
  auto inv = enumerate_iecs_geodetic(bow);
  auto p = find_onion_prefix(bow, inv, 3);
  REQUIRE(p.has_value());
  CHECK(p->depth() == 0);
}

TEST_CASE("onion_apexes: equidistant vertices on odd IECs") {
  Graph c5 = cycle_graph(5);
  auto inv = enumerate_iecs_geodetic(c5);
  auto p = find_onion_prefix(c5, inv, 0,
                             std::vector<std::pair<VertexId, VertexId>>{{1, 2}});
  REQUIRE(p.has_value());
  CHECK(onion_apexes(c5, *p) == std::vector<VertexId>{4});

  Graph k3 = complete_graph(3);
  auto invk = enumerate_iecs_geodetic(k3);
  auto pk = find_onion_prefix(k3, invk, 0,
                              std::vector<std::pair<VertexId, VertexId>>{{0, 1}});
  REQUIRE(pk.has_value());
  CHECK(onion_apexes(k3, *pk) == std::vector<VertexId>{2});

  // even-length IEC: the midpoint falls on an edge
  Graph c4 = cycle_graph(4);
  auto inv4 = enumerate_iecs_bruteforce(c4, 4);
  auto p4 = find_onion_prefix(c4, inv4, 0);
  REQUIRE(p4.has_value());
  CHECK_THROWS_AS(onion_apexes(c4, *p4), InvalidArgument);
}

TEST_CASE("find_onion_prefix: nested triangle + heptagon reach depth 1") {
  // triangle {s0, r0, c} and a 7-cycle s1-s0-r0-r1-u-v-w sharing the edge
  // (s0, r0); the spine s1, s0, r0, r1 is a geodesic of length 3
  Graph g = build_graph({{"s0", "r0"}, {"r0", "c"}, {"c", "s0"},
                         {"s1", "s0"}, {"r0", "r1"}, {"r1", "u"},
                         {"u", "v"}, {"v", "w"}, {"w", "s1"}});
  auto inv = enumerate_iecs_bruteforce(g, 7);
  REQUIRE(inv.iecs.size() == 2);
  auto p = find_onion_prefix(g, inv, 4);
  REQUIRE(p.has_value());
  CHECK(p->depth() == 1);
  CHECK(g.names_of(p->s) == std::vector<std::string>{"s0", "s1"});
  CHECK(g.names_of(p->r) == std::vector<std::string>{"r0", "r1"});
  CHECK(p->thetas[0].length() == 3);
  CHECK(p->thetas[1].length() == 7);
  CHECK(g.names_of(onion_apexes(g, *p)) == std::vector<std::string>{"c", "v"});
}

TEST_CASE("onion prefixes satisfy their invariants independently") {
  // every returned prefix: spine is a geodesic of length 2k+1, thetas are
  // distinct, and theta_i covers the whole sub-spine s_i..r_i
  std::vector<Graph> graphs{cycle_graph(5), petersen_graph(), psi_graph(2),
                            complete_graph(4)};
  for (const Graph& g : graphs) {
    auto inv = enumerate_iecs_geodetic(g);
    auto p = find_onion_prefix(g, inv, 4);
    if (!p) continue;
    const auto spine = p->spine();
    const int k = p->depth();
    CHECK(static_cast<int>(spine.size()) == 2 * k + 2);
    make_geodesic(g, spine);  // throws unless a geodesic
    for (int i = 0; i <= k; ++i) {
      const auto edges = p->thetas[static_cast<std::size_t>(i)].edge_set();
      std::vector<VertexId> sub;
      for (int j = i; j >= 0; --j) sub.push_back(p->s[static_cast<std::size_t>(j)]);
      for (int j = 0; j <= i; ++j) sub.push_back(p->r[static_cast<std::size_t>(j)]);
      for (std::size_t e = 0; e + 1 < sub.size(); ++e)
        CHECK(edges.count(std::minmax(sub[e], sub[e + 1])) == 1);
    }
    for (std::size_t i = 0; i < p->thetas.size(); ++i)
      for (std::size_t j = i + 1; j < p->thetas.size(); ++j)
        CHECK_FALSE(p->thetas[i] == p->thetas[j]);
  }
}
