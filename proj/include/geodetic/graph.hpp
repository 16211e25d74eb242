// graph.hpp — finite simple undirected graphs with string-named vertices,
// BFS layers carrying saturating geodesic counts, geodesic reconstruction
// and enumeration, geodeticity testing, and convexity checks.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "geodetic/error.hpp"

namespace geodetic {

/// Dense internal vertex id; the order of declaration fixes every
/// deterministic tie-break in the library.
using VertexId = int;

namespace detail {

/// Runs fn(lo, hi) over [0, total) split into contiguous chunks, one worker
/// per chunk. fn must only write to per-index slots.
template <typename Fn>
inline void parallel_chunks(int total, int threads, Fn&& fn) {
  threads = std::max(1, std::min(threads, total));
  if (threads <= 1) {
    if (total > 0) fn(0, total);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  const int chunk = (total + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const int lo = t * chunk;
    const int hi = std::min(total, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&fn, lo, hi] { fn(lo, hi); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace detail

/// Finite simple undirected graph. Vertex identifiers are opaque strings
/// externally and dense ids internally; adjacency lists are kept sorted.
class Graph {
 public:
  class Builder;

  int order() const { return static_cast<int>(names_.size()); }  // |V|
  int size() const { return edge_count_; }                       // |E|

  bool has(VertexId v) const { return v >= 0 && v < order(); }

  const std::string& name(VertexId v) const { return names_.at(static_cast<std::size_t>(v)); }
  const std::vector<std::string>& names() const { return names_; }

  std::optional<VertexId> find(std::string_view name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  VertexId require(std::string_view name) const {
    auto v = find(name);
    if (!v) throw InvalidArgument("unknown vertex '" + std::string(name) + "'");
    return *v;
  }

  const std::vector<VertexId>& neighbors(VertexId v) const {
    return adj_.at(static_cast<std::size_t>(v));
  }
  int degree(VertexId v) const { return static_cast<int>(neighbors(v).size()); }

  bool adjacent(VertexId u, VertexId v) const {
    const auto& a = neighbors(u);
    return std::binary_search(a.begin(), a.end(), v);
  }

  /// All edges as (u, v) with u < v, sorted.
  std::vector<std::pair<VertexId, VertexId>> edges() const {
    std::vector<std::pair<VertexId, VertexId>> out;
    out.reserve(static_cast<std::size_t>(edge_count_));
    for (VertexId u = 0; u < order(); ++u)
      for (VertexId v : neighbors(u))
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  std::vector<std::string> names_of(const std::vector<VertexId>& vs) const {
    std::vector<std::string> out;
    out.reserve(vs.size());
    for (VertexId v : vs) out.push_back(name(v));
    return out;
  }

  bool operator==(const Graph& other) const {
    return names_ == other.names_ && adj_ == other.adj_;
  }

 private:
  friend class Builder;
  std::vector<std::string> names_;
  std::map<std::string, VertexId, std::less<>> index_;
  std::vector<std::vector<VertexId>> adj_;
  int edge_count_ = 0;
};

class Graph::Builder {
 public:
  /// Declares a vertex; repeat declarations return the existing id.
  VertexId add_vertex(const std::string& name) {
    auto it = g_.index_.find(name);
    if (it != g_.index_.end()) return it->second;
    VertexId id = g_.order();
    g_.names_.push_back(name);
    g_.index_.emplace(name, id);
    g_.adj_.emplace_back();
    return id;
  }

  /// Adds an undirected edge, declaring endpoints as needed. Self-loops are
  /// rejected; duplicate edges collapse.
  void add_edge(const std::string& u, const std::string& v) {
    if (u == v)
      throw InvalidArgument("self-loop rejected: (" + u + ", " + v + ")");
    const VertexId ui = add_vertex(u);
    const VertexId vi = add_vertex(v);
    add_edge_ids(ui, vi);
  }

  void add_edge_ids(VertexId u, VertexId v) {
    if (u == v)
      throw InvalidArgument("self-loop rejected: (" + g_.name(u) + ", " +
                            g_.name(u) + ")");
    g_.adj_[static_cast<std::size_t>(u)].push_back(v);
    g_.adj_[static_cast<std::size_t>(v)].push_back(u);
  }

  Graph build() {
    g_.edge_count_ = 0;
    for (auto& nbrs : g_.adj_) {
      std::sort(nbrs.begin(), nbrs.end());
      nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
      g_.edge_count_ += static_cast<int>(nbrs.size());
    }
    g_.edge_count_ /= 2;
    return std::move(g_);
  }

 private:
  Graph g_;
};

/// Builds a graph from an edge list plus explicitly declared (possibly
/// isolated) vertices. Vertex order: declared vertices first, then first
/// appearance in the edge list.
inline Graph build_graph(
    const std::vector<std::pair<std::string, std::string>>& edge_list,
    const std::vector<std::string>& declared_vertices = {}) {
  Graph::Builder b;
  for (const auto& v : declared_vertices) b.add_vertex(v);
  for (const auto& [u, v] : edge_list) b.add_edge(u, v);
  return b.build();
}

/// Per-root BFS layers: exact distances, predecessor sets, and geodesic
/// counts saturated at "2 or more" (uniqueness is all that is ever needed;
/// exact counts come from enumerate_geodesics).
struct BfsLayers {
  static constexpr std::uint8_t kMany = 2;

  VertexId root = 0;
  std::vector<int> dist;                     // -1 when unreachable
  std::vector<std::uint8_t> count;           // 0, 1, or kMany
  std::vector<std::vector<VertexId>> preds;  // neighbors one layer closer

  bool reachable(VertexId v) const { return dist[static_cast<std::size_t>(v)] >= 0; }
  int eccentricity() const {
    int e = 0;
    for (int d : dist) e = std::max(e, d);
    return e;
  }
};

inline BfsLayers bfs_from(const Graph& g, VertexId root) {
  if (!g.has(root))
    throw InvalidArgument("bfs_from: vertex id " + std::to_string(root) +
                          " is not in the graph");
  const int n = g.order();
  BfsLayers b;
  b.root = root;
  b.dist.assign(static_cast<std::size_t>(n), -1);
  b.count.assign(static_cast<std::size_t>(n), 0);
  b.preds.assign(static_cast<std::size_t>(n), {});
  b.dist[static_cast<std::size_t>(root)] = 0;
  b.count[static_cast<std::size_t>(root)] = 1;
  std::vector<VertexId> queue{root};
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const VertexId v = queue[qi];
    for (VertexId w : g.neighbors(v)) {
      auto wi = static_cast<std::size_t>(w);
      if (b.dist[wi] < 0) {
        b.dist[wi] = b.dist[static_cast<std::size_t>(v)] + 1;
        queue.push_back(w);
      }
      if (b.dist[wi] == b.dist[static_cast<std::size_t>(v)] + 1) {
        b.preds[wi].push_back(v);
        // layer recurrence count(w) = sum over preds, saturated
        b.count[wi] = static_cast<std::uint8_t>(std::min<int>(
            BfsLayers::kMany, b.count[wi] + b.count[static_cast<std::size_t>(v)]));
      }
    }
  }
  for (auto& p : b.preds) std::sort(p.begin(), p.end());
  return b;
}

namespace detail {

/// Distance-only BFS row.
inline std::vector<int> bfs_dist(const Graph& g, VertexId root) {
  const int n = g.order();
  std::vector<int> dist(static_cast<std::size_t>(n), -1);
  dist[static_cast<std::size_t>(root)] = 0;
  std::vector<VertexId> queue{root};
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const VertexId v = queue[qi];
    for (VertexId w : g.neighbors(v)) {
      if (dist[static_cast<std::size_t>(w)] < 0) {
        dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

}  // namespace detail

/// Lazily filled all-pairs distance table.
class DistanceCache {
 public:
  explicit DistanceCache(const Graph& g)
      : g_(&g), rows_(static_cast<std::size_t>(g.order())) {}

  const std::vector<int>& from(VertexId root) {
    auto& row = rows_.at(static_cast<std::size_t>(root));
    if (row.empty()) row = detail::bfs_dist(*g_, root);
    return row;
  }

  int operator()(VertexId u, VertexId v) {
    return from(u)[static_cast<std::size_t>(v)];
  }

  /// Eagerly fills every row, optionally in parallel.
  void fill_all(int threads = 1) {
    detail::parallel_chunks(g_->order(), threads, [this](int lo, int hi) {
      for (VertexId r = lo; r < hi; ++r)
        rows_[static_cast<std::size_t>(r)] = detail::bfs_dist(*g_, r);
    });
  }

 private:
  const Graph* g_;
  std::vector<std::vector<int>> rows_;
};

/// Path v_0..v_n whose length equals d(v_0, v_n). Aggregates are produced by
/// the library; external sequences go through make_geodesic.
struct GeodesicPath {
  std::vector<VertexId> vertices;

  int length() const { return static_cast<int>(vertices.size()) - 1; }
  VertexId source() const { return vertices.front(); }
  VertexId target() const { return vertices.back(); }
  bool operator==(const GeodesicPath&) const = default;
};

/// Validates a vertex sequence as a geodesic. Consecutive adjacency plus
/// length == d(endpoints) already forces the vertices to be distinct and
/// every prefix to be geodesic.
inline GeodesicPath make_geodesic(const Graph& g, std::vector<VertexId> vertices) {
  if (vertices.empty()) throw InvalidArgument("geodesic path must be nonempty");
  for (VertexId v : vertices)
    if (!g.has(v))
      throw InvalidArgument("path vertex id " + std::to_string(v) +
                            " is not in the graph");
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i)
    if (!g.adjacent(vertices[i], vertices[i + 1]))
      throw InvalidArgument("path vertices '" + g.name(vertices[i]) + "' and '" +
                            g.name(vertices[i + 1]) + "' are not adjacent");
  const auto dist = detail::bfs_dist(g, vertices.front());
  const int L = static_cast<int>(vertices.size()) - 1;
  if (dist[static_cast<std::size_t>(vertices.back())] != L)
    throw InvalidArgument(
        "path is not a geodesic: length " + std::to_string(L) + " but d('" +
        g.name(vertices.front()) + "', '" + g.name(vertices.back()) + "') = " +
        std::to_string(dist[static_cast<std::size_t>(vertices.back())]));
  return GeodesicPath{std::move(vertices)};
}

namespace detail {

/// Walks the unique predecessor chain of `layers` from v back to the root.
/// Requires count(v) == 1.
inline std::vector<VertexId> reconstruct_unique(const BfsLayers& layers, VertexId v) {
  std::vector<VertexId> rev{v};
  VertexId x = v;
  while (x != layers.root) {
    x = layers.preds[static_cast<std::size_t>(x)].front();
    rev.push_back(x);
  }
  std::reverse(rev.begin(), rev.end());
  return rev;
}

}  // namespace detail

/// All geodesics u -> v in lexicographic order (by internal vertex ids),
/// truncated at cap. Unreachable pairs yield an empty list.
inline std::vector<GeodesicPath> enumerate_geodesics(const Graph& g, VertexId u,
                                                     VertexId v, int cap) {
  if (cap < 1) throw InvalidArgument("enumerate_geodesics: cap must be >= 1");
  if (!g.has(u) || !g.has(v))
    throw InvalidArgument("enumerate_geodesics: vertex not in graph");
  const auto du = detail::bfs_dist(g, u);
  if (du[static_cast<std::size_t>(v)] < 0) return {};
  const auto dv = detail::bfs_dist(g, v);
  const int D = du[static_cast<std::size_t>(v)];

  std::vector<GeodesicPath> out;
  std::vector<VertexId> path{u};
  auto dfs = [&](auto&& self, VertexId x) -> bool {
    if (static_cast<int>(path.size()) - 1 == D) {
      if (x == v) out.push_back(GeodesicPath{path});
      return static_cast<int>(out.size()) >= cap;
    }
    for (VertexId w : g.neighbors(x)) {
      if (du[static_cast<std::size_t>(w)] != du[static_cast<std::size_t>(x)] + 1)
        continue;
      if (du[static_cast<std::size_t>(w)] + dv[static_cast<std::size_t>(w)] != D)
        continue;
      path.push_back(w);
      const bool full = self(self, w);
      path.pop_back();
      if (full) return true;
    }
    return false;
  };
  dfs(dfs, u);
  return out;
}

/// The unique geodesic u -> v. Throws AmbiguousGeodesicError (carrying two
/// witnesses) when more than one exists, UnreachableError when none does.
inline GeodesicPath unique_geodesic(const Graph& g, VertexId u, VertexId v) {
  if (!g.has(u) || !g.has(v))
    throw InvalidArgument("unique_geodesic: vertex not in graph");
  const BfsLayers layers = bfs_from(g, u);
  if (!layers.reachable(v)) throw UnreachableError(g.name(u), g.name(v));
  if (layers.count[static_cast<std::size_t>(v)] >= BfsLayers::kMany) {
    auto two = enumerate_geodesics(g, u, v, 2);
    throw AmbiguousGeodesicError(g.name(u), g.name(v),
                                 g.names_of(two[0].vertices),
                                 g.names_of(two[1].vertices));
  }
  return GeodesicPath{detail::reconstruct_unique(layers, v)};
}

/// One vertex from each of two components, or nothing when connected.
inline std::optional<std::pair<VertexId, VertexId>> disconnected_pair(const Graph& g) {
  if (g.order() == 0) return std::nullopt;
  const auto dist = detail::bfs_dist(g, 0);
  for (VertexId v = 0; v < g.order(); ++v)
    if (dist[static_cast<std::size_t>(v)] < 0) return std::make_pair(0, v);
  return std::nullopt;
}

struct GeodeticWitness {
  VertexId from = 0;
  VertexId to = 0;
  GeodesicPath path_a;
  GeodesicPath path_b;
};

struct GeodeticReport {
  bool geodetic = false;
  std::optional<GeodeticWitness> witness;  // present iff not geodetic
};

/// Tests whether every pair of vertices is joined by exactly one geodesic.
/// On failure the witness is the lexicographically first failing (root,
/// target) pair in declaration order, with both geodesics reconstructed.
/// Disconnected input is an error.
inline GeodeticReport is_geodetic(const Graph& g, int threads = 1) {
  if (g.order() == 0) throw InvalidArgument("is_geodetic: empty graph");
  if (auto dc = disconnected_pair(g))
    throw DisconnectedError(g.name(dc->first), g.name(dc->second));

  const int n = g.order();
  std::vector<VertexId> fail(static_cast<std::size_t>(n), -1);
  detail::parallel_chunks(n, threads, [&](int lo, int hi) {
    for (VertexId r = lo; r < hi; ++r) {
      const BfsLayers layers = bfs_from(g, r);
      for (VertexId v = 0; v < n; ++v) {
        if (layers.count[static_cast<std::size_t>(v)] >= BfsLayers::kMany) {
          fail[static_cast<std::size_t>(r)] = v;
          break;
        }
      }
    }
  });
  for (VertexId r = 0; r < n; ++r) {
    if (fail[static_cast<std::size_t>(r)] >= 0) {
      const VertexId v = fail[static_cast<std::size_t>(r)];
      auto two = enumerate_geodesics(g, r, v, 2);
      return GeodeticReport{false,
                            GeodeticWitness{r, v, two[0], two[1]}};
    }
  }
  return GeodeticReport{true, std::nullopt};
}

inline NotGeodeticError not_geodetic_error(const Graph& g, const GeodeticWitness& w) {
  return NotGeodeticError(g.name(w.from), g.name(w.to),
                          g.names_of(w.path_a.vertices),
                          g.names_of(w.path_b.vertices));
}

/// True iff every geodesic between members stays inside the member set.
/// Implemented via the interval criterion: a vertex lies on some geodesic
/// a -> b exactly when d(a,w) + d(w,b) = d(a,b), so checking interval
/// membership covers all geodesics exactly.
inline bool is_convex(const Graph& g, const std::vector<VertexId>& members) {
  for (VertexId v : members)
    if (!g.has(v))
      throw InvalidArgument("is_convex: vertex id " + std::to_string(v) +
                            " is not in the graph");
  std::vector<VertexId> s(members);
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  std::vector<char> in(static_cast<std::size_t>(g.order()), 0);
  for (VertexId v : s) in[static_cast<std::size_t>(v)] = 1;

  std::vector<std::vector<int>> rows;
  rows.reserve(s.size());
  for (VertexId v : s) rows.push_back(detail::bfs_dist(g, v));

  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      const int D = rows[i][static_cast<std::size_t>(s[j])];
      if (D < 0) continue;  // no geodesics to contain
      for (VertexId w = 0; w < g.order(); ++w) {
        auto wi = static_cast<std::size_t>(w);
        if (in[wi]) continue;
        if (rows[i][wi] >= 0 && rows[j][wi] >= 0 && rows[i][wi] + rows[j][wi] == D)
          return false;
      }
    }
  }
  return true;
}

}  // namespace geodetic
