// iec.hpp — isometrically embedded circuits: detection, canonical forms,
// construction from geodesic forks, and inventory enumeration (fork method
// for geodetic graphs, pruned DFS as the general-purpose oracle).
#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "geodetic/graph.hpp"

namespace geodetic {

/// Closed walk v_0..v_n with v_0 = v_n and n >= 2.
struct Circuit {
  std::vector<VertexId> vertices;

  int length() const { return static_cast<int>(vertices.size()) - 1; }
  bool operator==(const Circuit&) const = default;
};

/// Validates closure, minimum length, membership and adjacency.
inline Circuit make_circuit(const Graph& g, std::vector<VertexId> vertices) {
  if (vertices.size() < 3 || vertices.front() != vertices.back())
    throw InvalidArgument("circuit must be a closed walk of length >= 2");
  for (VertexId v : vertices)
    if (!g.has(v))
      throw InvalidArgument("circuit vertex id " + std::to_string(v) +
                            " is not in the graph");
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i)
    if (!g.adjacent(vertices[i], vertices[i + 1]))
      throw InvalidArgument("circuit vertices '" + g.name(vertices[i]) +
                            "' and '" + g.name(vertices[i + 1]) +
                            "' are not adjacent");
  return Circuit{std::move(vertices)};
}

/// Embedded: length >= 3 and v_0..v_{n-1} pairwise distinct.
inline bool is_embedded(const Circuit& c) {
  if (c.length() < 3) return false;
  std::vector<VertexId> core(c.vertices.begin(), c.vertices.end() - 1);
  std::sort(core.begin(), core.end());
  return std::adjacent_find(core.begin(), core.end()) == core.end();
}

/// Canonical closed form: minimum over all rotations and both directions,
/// compared lexicographically by internal vertex id. Idempotent.
inline std::vector<VertexId> canonical_circuit(const Circuit& c) {
  if (!is_embedded(c))
    throw InvalidArgument("canonical_circuit: circuit is not embedded");
  const int L = c.length();
  const std::vector<VertexId> core(c.vertices.begin(), c.vertices.end() - 1);
  std::vector<VertexId> best;
  std::vector<VertexId> cand(static_cast<std::size_t>(L));
  for (int start = 0; start < L; ++start) {
    for (int dir : {1, -1}) {
      for (int i = 0; i < L; ++i)
        cand[static_cast<std::size_t>(i)] =
            core[static_cast<std::size_t>(((start + dir * i) % L + L) % L)];
      if (best.empty() || cand < best) best = cand;
    }
  }
  best.push_back(best.front());
  return best;
}

/// An isometrically embedded circuit, stored in canonical closed form.
struct Iec {
  std::vector<VertexId> canon;  // canonical, canon.front() == canon.back()

  int length() const { return static_cast<int>(canon.size()) - 1; }
  bool contains(VertexId v) const {
    for (std::size_t i = 0; i + 1 < canon.size(); ++i)
      if (canon[i] == v) return true;
    return false;
  }
  /// Circuit edges as (min, max) pairs.
  std::set<std::pair<VertexId, VertexId>> edge_set() const {
    std::set<std::pair<VertexId, VertexId>> out;
    for (std::size_t i = 0; i + 1 < canon.size(); ++i)
      out.insert(std::minmax(canon[i], canon[i + 1]));
    return out;
  }
  bool operator==(const Iec&) const = default;
};

namespace detail {

/// Isometric-embedding test against a caller-provided distance oracle:
/// d(c_i, c_j) must equal the cyclic distance min{j-i, L-(j-i)}.
template <typename Dist>
inline bool is_iec_closed(const std::vector<VertexId>& closed, Dist&& dist) {
  const int L = static_cast<int>(closed.size()) - 1;
  if (L < 3) return false;
  for (int i = 0; i < L; ++i) {
    for (int j = i + 1; j < L; ++j) {
      const int along = std::min(j - i, L - (j - i));
      if (dist(closed[static_cast<std::size_t>(i)],
               closed[static_cast<std::size_t>(j)]) != along)
        return false;
    }
  }
  return true;
}

}  // namespace detail

/// True iff c is embedded and its pairwise graph distances realise the
/// cyclic distance formula.
inline bool is_iec(const Graph& g, const Circuit& c) {
  for (VertexId v : c.vertices)
    if (!g.has(v))
      throw InvalidArgument("is_iec: vertex id " + std::to_string(v) +
                            " is not in the graph");
  if (!is_embedded(c)) return false;
  DistanceCache d(g);
  return detail::is_iec_closed(c.vertices, [&](VertexId u, VertexId v) { return d(u, v); });
}

/// Closes a geodesic fork into an IEC: alpha and beta share a base, diverge
/// at their first step, and end at adjacent vertices; the closed walk
/// alpha * edge * reverse(beta) is then an IEC (in a geodetic graph). The
/// arm lengths and the isometry condition are re-verified; failure means the
/// ambient graph is not geodetic.
inline Iec iec_from_fork(const Graph& g, const GeodesicPath& alpha,
                         const GeodesicPath& beta) {
  // Re-validate both arms; inputs may come from anywhere.
  make_geodesic(g, alpha.vertices);
  make_geodesic(g, beta.vertices);
  if (alpha.source() != beta.source())
    throw InvalidArgument("fork arms must share their base vertex");
  if (alpha.length() < 1 || beta.length() < 1)
    throw InvalidArgument("fork arms must have length >= 1");
  if (alpha.vertices[1] == beta.vertices[1])
    throw InvalidArgument("fork arms must diverge at their first step");
  if (!g.adjacent(alpha.target(), beta.target()))
    throw InvalidArgument("fork arm endpoints must be adjacent");
  if (alpha.length() != beta.length())
    throw InternalInconsistency(
        "fork arms have different lengths; the graph is not geodetic");

  std::vector<VertexId> closed(alpha.vertices);
  for (auto it = beta.vertices.rbegin(); it != beta.vertices.rend(); ++it)
    closed.push_back(*it);
  DistanceCache d(g);
  if (!detail::is_iec_closed(closed, [&](VertexId u, VertexId v) { return d(u, v); }))
    throw InternalInconsistency(
        "fork closure is not isometrically embedded; the graph is not geodetic");
  return Iec{canonical_circuit(Circuit{std::move(closed)})};
}

/// Deduplicated IEC collection with a length histogram.
struct IecInventory {
  std::vector<Iec> iecs;  // sorted by (length, canonical sequence)
  std::map<int, int> histogram;
  std::optional<int> max_length;

  bool empty() const { return iecs.empty(); }
};

namespace detail {

inline IecInventory finalize_inventory(std::vector<Iec> iecs) {
  std::sort(iecs.begin(), iecs.end(), [](const Iec& a, const Iec& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    return a.canon < b.canon;
  });
  IecInventory inv;
  inv.iecs = std::move(iecs);
  for (const Iec& i : inv.iecs) ++inv.histogram[i.length()];
  if (!inv.iecs.empty()) inv.max_length = inv.iecs.back().length();
  return inv;
}

}  // namespace detail

/// Enumerates every IEC of a geodetic graph by the fork method: for each
/// edge {u, v} and each vertex x equidistant from u and v, truncate the two
/// unique geodesics [x,u], [x,v] to their last common vertex and close the
/// fork. Complete because each IEC of length 2n+1 carries, for each of its
/// edges, an apex at distance n whose geodesics to the edge are the circuit
/// arcs (IECs are convex).
inline IecInventory enumerate_iecs_geodetic(const Graph& g, int threads = 1) {
  auto report = is_geodetic(g, threads);
  if (!report.geodetic) throw not_geodetic_error(g, *report.witness);

  const int n = g.order();
  std::vector<BfsLayers> layers(static_cast<std::size_t>(n));
  detail::parallel_chunks(n, threads, [&](int lo, int hi) {
    for (VertexId r = lo; r < hi; ++r)
      layers[static_cast<std::size_t>(r)] = bfs_from(g, r);
  });
  auto dist = [&](VertexId u, VertexId v) {
    return layers[static_cast<std::size_t>(u)].dist[static_cast<std::size_t>(v)];
  };

  std::set<std::vector<VertexId>> seen;
  std::vector<Iec> iecs;
  for (const auto& [u, v] : g.edges()) {
    for (VertexId x = 0; x < n; ++x) {
      if (dist(x, u) != dist(x, v) || dist(x, u) == 0) continue;
      const auto pu = detail::reconstruct_unique(layers[static_cast<std::size_t>(x)], u);
      const auto pv = detail::reconstruct_unique(layers[static_cast<std::size_t>(x)], v);
      std::size_t k = 0;  // last common index; both paths start at x
      while (k + 1 < pu.size() && k + 1 < pv.size() && pu[k + 1] == pv[k + 1]) ++k;
      std::vector<VertexId> closed(pu.begin() + static_cast<std::ptrdiff_t>(k), pu.end());
      for (std::size_t i = pv.size(); i-- > k;) closed.push_back(pv[i]);
      auto canon = canonical_circuit(Circuit{closed});
      if (!seen.insert(canon).second) continue;
      if (!detail::is_iec_closed(closed, dist))
        throw InternalInconsistency(
            "fork closure failed the isometry check on a graph certified "
            "geodetic");
      iecs.push_back(Iec{std::move(canon)});
    }
  }
  return detail::finalize_inventory(std::move(iecs));
}

/// Enumerates IECs up to max_len in any graph by pruned DFS over embedded
/// circuits. Pruning: extending v_0..v_k by w forces a final length of at
/// least n_min = (k+1) + d(w, v_0), and the isometry condition demands
/// d(v_i, w) = min(k+1-i, n - (k+1-i)), which over n >= n_min is at least
/// min(k+1-i, n_min - (k+1-i)); a prefix distance below that bound can never
/// complete to an IEC.
inline IecInventory enumerate_iecs_bruteforce(const Graph& g, int max_len) {
  if (max_len < 3)
    throw InvalidArgument("enumerate_iecs_bruteforce: max_len must be >= 3");
  const int n = g.order();
  DistanceCache d(g);

  std::set<std::vector<VertexId>> seen;
  std::vector<Iec> iecs;
  std::vector<VertexId> path;
  std::vector<char> onpath(static_cast<std::size_t>(n), 0);

  std::function<void(VertexId)> dfs = [&](VertexId v0) {
    const VertexId v = path.back();
    const int k = static_cast<int>(path.size()) - 1;  // edges so far
    for (VertexId w : g.neighbors(v)) {
      if (w == v0 && k + 1 >= 3 && path[1] < path.back()) {
        std::vector<VertexId> closed(path);
        closed.push_back(v0);
        if (detail::is_iec_closed(closed, [&](VertexId a, VertexId b) { return d(a, b); })) {
          auto canon = canonical_circuit(Circuit{closed});
          if (seen.insert(canon).second) iecs.push_back(Iec{std::move(canon)});
        }
      }
      if (w <= v0 || onpath[static_cast<std::size_t>(w)]) continue;
      const int kk = k + 1;
      const int n_min = kk + d(w, v0);
      if (n_min > max_len) continue;
      bool ok = true;
      for (int i = 0; i <= k && ok; ++i) {
        const int lower = std::min(kk - i, n_min - (kk - i));
        if (d(path[static_cast<std::size_t>(i)], w) < lower) ok = false;
      }
      if (!ok) continue;
      path.push_back(w);
      onpath[static_cast<std::size_t>(w)] = 1;
      dfs(v0);
      onpath[static_cast<std::size_t>(w)] = 0;
      path.pop_back();
    }
  };

  for (VertexId v0 = 0; v0 < n; ++v0) {
    path.assign(1, v0);
    onpath.assign(static_cast<std::size_t>(n), 0);
    onpath[static_cast<std::size_t>(v0)] = 1;
    dfs(v0);
  }
  return detail::finalize_inventory(std::move(iecs));
}

/// n such that every IEC has length <= 2n+1; 0 when the inventory is empty.
inline int iec_bound_n(const IecInventory& inv) {
  return inv.max_length ? (*inv.max_length - 1) / 2 : 0;
}

}  // namespace geodetic
