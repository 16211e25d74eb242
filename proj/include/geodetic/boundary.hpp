// boundary.hpp — finite-horizon geodesic-boundary machinery: ray prefixes,
// Busemann traces, ray rebasing, coincidence radii, ray extensions, and the
// onion search. Infinite objects are always represented by finite prefixes;
// a horizon that is too short is reported as inconclusive, never as a
// counterexample.
#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "geodetic/iec.hpp"

namespace geodetic {

/// Finite prefix of a geodesic ray: d(v_0, v_t) = t for every t <= horizon.
struct RayPrefix {
  VertexId base = 0;
  std::vector<VertexId> seq;  // seq[0] == base

  int horizon() const { return static_cast<int>(seq.size()) - 1; }
  bool operator==(const RayPrefix&) const = default;
};

inline RayPrefix validate_ray_prefix(const Graph& g,
                                     const std::vector<VertexId>& seq) {
  if (seq.empty()) throw InvalidArgument("ray prefix must be nonempty");
  for (VertexId v : seq)
    if (!g.has(v))
      throw InvalidArgument("ray vertex id " + std::to_string(v) +
                            " is not in the graph");
  for (std::size_t i = 0; i + 1 < seq.size(); ++i)
    if (!g.adjacent(seq[i], seq[i + 1]))
      throw InvalidArgument("ray vertices '" + g.name(seq[i]) + "' and '" +
                            g.name(seq[i + 1]) + "' are not adjacent");
  const auto dist = detail::bfs_dist(g, seq.front());
  for (std::size_t t = 0; t < seq.size(); ++t)
    if (dist[static_cast<std::size_t>(seq[t])] != static_cast<int>(t))
      throw InvalidArgument(
          "not a geodesic prefix: d(base, v_" + std::to_string(t) + ") = " +
          std::to_string(dist[static_cast<std::size_t>(seq[t])]) + " != " +
          std::to_string(t));
  return RayPrefix{seq.front(), seq};
}

/// Values f(t) = d(x, gamma(t)) - t, which are monotone nonincreasing and
/// bounded below by -d(x, gamma(0)). stable_from is set when the tail is
/// constant for at least `window` steps before the horizon.
struct BusemannTrace {
  int window = 3;
  std::vector<int> values;
  std::optional<int> stable_from;
  std::optional<int> limit;  // = f(horizon) when stable
};

inline BusemannTrace busemann_trace(const Graph& g, const RayPrefix& gamma,
                                    VertexId x, int window = 3) {
  if (!g.has(x)) throw InvalidArgument("busemann_trace: vertex not in graph");
  if (window < 1) throw InvalidArgument("busemann_trace: window must be >= 1");
  const auto dist = detail::bfs_dist(g, x);

  BusemannTrace out;
  out.window = window;
  out.values.reserve(gamma.seq.size());
  for (std::size_t t = 0; t < gamma.seq.size(); ++t) {
    const int d = dist[static_cast<std::size_t>(gamma.seq[t])];
    if (d < 0)
      throw InvalidArgument("busemann_trace: x cannot reach the ray");
    out.values.push_back(d - static_cast<int>(t));
  }
  const int lower = -dist[static_cast<std::size_t>(gamma.seq.front())];
  for (std::size_t t = 0; t < out.values.size(); ++t) {
    if (t + 1 < out.values.size() && out.values[t + 1] > out.values[t])
      throw InternalInconsistency(
          "Busemann trace increased; triangle inequality violated");
    if (out.values[t] < lower)
      throw InternalInconsistency(
          "Busemann trace dipped below -d(x, gamma(0))");
  }

  const int T = gamma.horizon();
  int t0 = T;
  while (t0 > 0 && out.values[static_cast<std::size_t>(t0 - 1)] ==
                       out.values[static_cast<std::size_t>(T)])
    --t0;
  if (T - t0 >= window) {
    out.stable_from = t0;
    out.limit = out.values[static_cast<std::size_t>(T)];
  }
  return out;
}

/// Rebases a geodesic ray prefix at o (finite form of "every boundary point
/// has a representative at every basepoint"): once the Busemann trace of o
/// stabilises at t0, [o, gamma(t0)] * gamma|[t0..] is a geodesic prefix.
/// Requires the graph to be geodetic for [o, gamma(t0)] to be well defined.
inline RayPrefix rebase_ray(const Graph& g, const RayPrefix& gamma, VertexId o,
                            int window = 3) {
  if (!g.has(o)) throw InvalidArgument("rebase_ray: base vertex not in graph");
  const BusemannTrace trace = busemann_trace(g, gamma, o, window);
  if (!trace.stable_from)
    throw HorizonTooShortError(
        "rebase_ray: Busemann trace did not stabilise for " +
        std::to_string(window) + " steps within horizon " +
        std::to_string(gamma.horizon()) + "; extend the prefix");
  const int t0 = *trace.stable_from;
  const GeodesicPath head =
      unique_geodesic(g, o, gamma.seq[static_cast<std::size_t>(t0)]);
  std::vector<VertexId> seq(head.vertices);
  seq.insert(seq.end(), gamma.seq.begin() + t0 + 1, gamma.seq.end());
  try {
    return validate_ray_prefix(g, seq);
  } catch (const InvalidArgument& e) {
    throw InternalInconsistency(
        std::string("rebased ray is not a geodesic prefix (is the graph "
                    "geodetic?): ") +
        e.what());
  }
}

/// Largest r with a(i) = b(i) for all i <= r; full_horizon marks agreement
/// over the whole common horizon.
struct CoincidenceRadius {
  int radius = 0;
  bool full_horizon = false;
};

inline CoincidenceRadius coincidence_radius(const RayPrefix& a,
                                            const RayPrefix& b) {
  if (a.base != b.base)
    throw InvalidArgument("coincidence_radius: rays have different bases");
  const int m = std::min(a.horizon(), b.horizon());
  int r = 0;
  while (r < m && a.seq[static_cast<std::size_t>(r + 1)] ==
                      b.seq[static_cast<std::size_t>(r + 1)])
    ++r;
  return CoincidenceRadius{r, r == m};
}

/// Glues a fresh path of `length` edges to each attach vertex (the finite
/// truncation of a ray extension). Existing vertices keep their ids; fresh
/// vertices are named "<attach>.r<i>".
inline Graph ray_extend(const Graph& g, std::vector<VertexId> attach, int length) {
  if (length < 1) throw InvalidArgument("ray_extend: length must be >= 1");
  for (VertexId v : attach)
    if (!g.has(v))
      throw InvalidArgument("ray_extend: vertex id " + std::to_string(v) +
                            " is not in the graph");
  std::sort(attach.begin(), attach.end());
  attach.erase(std::unique(attach.begin(), attach.end()), attach.end());

  Graph::Builder b;
  for (VertexId v = 0; v < g.order(); ++v) b.add_vertex(g.name(v));
  for (const auto& [u, v] : g.edges()) b.add_edge_ids(u, v);
  for (VertexId a : attach) {
    std::string prev = g.name(a);
    for (int i = 1; i <= length; ++i) {
      const std::string fresh = g.name(a) + ".r" + std::to_string(i);
      if (g.find(fresh))
        throw InvalidArgument("ray_extend: fresh vertex name '" + fresh +
                              "' collides with an existing vertex");
      b.add_edge(prev, fresh);
      prev = fresh;
    }
  }
  return b.build();
}

/// Names of the fresh path glued at `attach` by ray_extend.
inline std::vector<std::string> ray_extension_names(const std::string& attach,
                                                    int length) {
  std::vector<std::string> out;
  for (int i = 1; i <= length; ++i)
    out.push_back(attach + ".r" + std::to_string(i));
  return out;
}

/// Finite-depth onion data: the spine (s_k..s_0, r_0..r_k) is a geodesic of
/// length 2k+1 and each Theta_i is a distinct IEC containing the subpath
/// [s_i, r_i].
struct OnionPrefix {
  std::vector<VertexId> s;  // s[0..k]
  std::vector<VertexId> r;  // r[0..k]
  std::vector<Iec> thetas;  // pairwise distinct

  int depth() const { return static_cast<int>(r.size()) - 1; }
  /// Spine s_k, ..., s_0, r_0, ..., r_k.
  std::vector<VertexId> spine() const {
    std::vector<VertexId> out(s.rbegin(), s.rend());
    out.insert(out.end(), r.begin(), r.end());
    return out;
  }
};

/// Exhaustive depth-first search for a deepest onion prefix, optionally
/// restricted to the given ordered central edges (s_0, r_0). Candidates are
/// explored lexicographically (central edge, then successive vertex
/// choices, then inventory order), so ties resolve to the first found.
/// Returns nothing when no IEC covers any candidate central edge; since the
/// search is exhaustive, that outcome is a proof for the input graph.
inline std::optional<OnionPrefix> find_onion_prefix(
    const Graph& g, const IecInventory& inv, int max_depth,
    std::optional<std::vector<std::pair<VertexId, VertexId>>> central_edges =
        std::nullopt) {
  if (max_depth < 0) throw InvalidArgument("find_onion_prefix: max_depth < 0");

  std::vector<std::pair<VertexId, VertexId>> centrals;
  if (central_edges) {
    for (const auto& [u, v] : *central_edges) {
      if (!g.has(u) || !g.has(v) || !g.adjacent(u, v))
        throw InvalidArgument("find_onion_prefix: central edge is not an edge");
      centrals.emplace_back(u, v);
      centrals.emplace_back(v, u);
    }
  } else {
    for (const auto& [u, v] : g.edges()) {
      centrals.emplace_back(u, v);
      centrals.emplace_back(v, u);
    }
  }
  std::sort(centrals.begin(), centrals.end());
  centrals.erase(std::unique(centrals.begin(), centrals.end()), centrals.end());

  std::vector<std::set<std::pair<VertexId, VertexId>>> theta_edges;
  theta_edges.reserve(inv.iecs.size());
  for (const Iec& t : inv.iecs) theta_edges.push_back(t.edge_set());
  auto covers = [&](std::size_t t, const std::vector<VertexId>& spine) {
    for (std::size_t i = 0; i + 1 < spine.size(); ++i)
      if (!theta_edges[t].count(std::minmax(spine[i], spine[i + 1])))
        return false;
    return true;
  };

  DistanceCache dist(g);
  std::optional<OnionPrefix> best;
  std::vector<VertexId> s, r;
  std::vector<char> inspine(static_cast<std::size_t>(g.order()), 0);
  std::vector<std::size_t> used;
  auto is_used = [&](std::size_t t) {
    return std::find(used.begin(), used.end(), t) != used.end();
  };

  std::function<void()> dfs = [&]() {
    const int i = static_cast<int>(r.size()) - 1;
    if (!best || i > best->depth()) {
      OnionPrefix p;
      p.s = s;
      p.r = r;
      for (std::size_t t : used) p.thetas.push_back(inv.iecs[t]);
      best = std::move(p);
    }
    if (i >= max_depth) return;
    for (VertexId sn : g.neighbors(s[static_cast<std::size_t>(i)])) {
      if (inspine[static_cast<std::size_t>(sn)]) continue;
      for (VertexId rn : g.neighbors(r[static_cast<std::size_t>(i)])) {
        if (inspine[static_cast<std::size_t>(rn)] || rn == sn) continue;
        if (dist(sn, rn) != 2 * i + 3) continue;
        std::vector<VertexId> spine{sn};
        for (std::size_t k = s.size(); k-- > 0;) spine.push_back(s[k]);
        spine.insert(spine.end(), r.begin(), r.end());
        spine.push_back(rn);
        for (std::size_t t = 0; t < theta_edges.size(); ++t) {
          if (is_used(t) || !covers(t, spine)) continue;
          s.push_back(sn);
          r.push_back(rn);
          inspine[static_cast<std::size_t>(sn)] = 1;
          inspine[static_cast<std::size_t>(rn)] = 1;
          used.push_back(t);
          dfs();
          used.pop_back();
          inspine[static_cast<std::size_t>(sn)] = 0;
          inspine[static_cast<std::size_t>(rn)] = 0;
          s.pop_back();
          r.pop_back();
        }
      }
    }
  };

  for (const auto& [s0, r0] : centrals) {
    for (std::size_t t = 0; t < theta_edges.size(); ++t) {
      if (!theta_edges[t].count(std::minmax(s0, r0))) continue;
      s.assign(1, s0);
      r.assign(1, r0);
      inspine.assign(static_cast<std::size_t>(g.order()), 0);
      inspine[static_cast<std::size_t>(s0)] = 1;
      inspine[static_cast<std::size_t>(r0)] = 1;
      used.assign(1, t);
      dfs();
    }
  }
  return best;
}

/// For each Theta_i (odd length required) the unique vertex equidistant
/// from r_0 and s_0; these are the ray-extension attachment points.
inline std::vector<VertexId> onion_apexes(const Graph& g, const OnionPrefix& p) {
  if (p.r.empty() || p.s.empty() || p.thetas.empty())
    throw InvalidArgument("onion_apexes: empty onion prefix");
  const auto dr = detail::bfs_dist(g, p.r.front());
  const auto ds = detail::bfs_dist(g, p.s.front());
  std::vector<VertexId> out;
  for (const Iec& theta : p.thetas) {
    if (theta.length() % 2 == 0)
      throw InvalidArgument(
          "onion_apexes: even-length IEC has no equidistant vertex (the "
          "midpoint falls on an edge)");
    std::vector<VertexId> hits;
    for (std::size_t i = 0; i + 1 < theta.canon.size(); ++i) {
      const VertexId v = theta.canon[i];
      if (dr[static_cast<std::size_t>(v)] == ds[static_cast<std::size_t>(v)])
        hits.push_back(v);
    }
    if (hits.size() != 1)
      throw InternalInconsistency(
          "onion_apexes: expected exactly one equidistant vertex, found " +
          std::to_string(hits.size()));
    out.push_back(hits.front());
  }
  return out;
}

}  // namespace geodetic
