// tree_qi.hpp — geodesic spanning trees of geodetic graphs, the
// (2n, 0)-quasi-isometry certificate, and tree lifts of graph geodesics.
#pragma once

#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "geodetic/iec.hpp"

namespace geodetic {

/// Spanning tree whose root-to-vertex paths are graph geodesics. For a
/// geodetic graph this is the union of all unique geodesics from the root.
struct SpanningTree {
  VertexId root = 0;
  std::vector<VertexId> parent;  // -1 at root
  std::vector<int> depth;        // = d(root, v)

  int order() const { return static_cast<int>(parent.size()); }

  bool has_edge(VertexId u, VertexId v) const {
    return parent[static_cast<std::size_t>(u)] == v ||
           parent[static_cast<std::size_t>(v)] == u;
  }

  /// Path v, parent(v), ..., root.
  std::vector<VertexId> path_to_root(VertexId v) const {
    std::vector<VertexId> out{v};
    while (parent[static_cast<std::size_t>(out.back())] >= 0)
      out.push_back(parent[static_cast<std::size_t>(out.back())]);
    return out;
  }

  VertexId lca(VertexId u, VertexId v) const {
    while (depth[static_cast<std::size_t>(u)] > depth[static_cast<std::size_t>(v)])
      u = parent[static_cast<std::size_t>(u)];
    while (depth[static_cast<std::size_t>(v)] > depth[static_cast<std::size_t>(u)])
      v = parent[static_cast<std::size_t>(v)];
    while (u != v) {
      u = parent[static_cast<std::size_t>(u)];
      v = parent[static_cast<std::size_t>(v)];
    }
    return u;
  }

  int distance(VertexId u, VertexId v) const {
    const VertexId a = lca(u, v);
    return depth[static_cast<std::size_t>(u)] + depth[static_cast<std::size_t>(v)] -
           2 * depth[static_cast<std::size_t>(a)];
  }

  /// Tree path u .. lca .. v.
  std::vector<VertexId> path(VertexId u, VertexId v) const {
    const VertexId a = lca(u, v);
    std::vector<VertexId> up;
    for (VertexId x = u; x != a; x = parent[static_cast<std::size_t>(x)])
      up.push_back(x);
    up.push_back(a);
    std::vector<VertexId> down;
    for (VertexId x = v; x != a; x = parent[static_cast<std::size_t>(x)])
      down.push_back(x);
    for (std::size_t i = down.size(); i-- > 0;) up.push_back(down[i]);
    return up;
  }
};

namespace detail {

/// Tree from BFS layers of a root with unique geodesics everywhere.
inline SpanningTree tree_from_layers(const BfsLayers& layers) {
  SpanningTree t;
  t.root = layers.root;
  const auto n = layers.dist.size();
  t.parent.assign(n, -1);
  t.depth = layers.dist;
  for (std::size_t v = 0; v < n; ++v)
    if (static_cast<VertexId>(v) != layers.root)
      t.parent[v] = layers.preds[v].front();
  return t;
}

}  // namespace detail

/// The geodesic spanning tree T_o of a geodetic graph: parent(v) is the
/// penultimate vertex of the unique geodesic [o, v].
inline SpanningTree geodesic_spanning_tree(const Graph& g, VertexId o) {
  if (!g.has(o)) throw InvalidArgument("geodesic_spanning_tree: root not in graph");
  auto report = is_geodetic(g);
  if (!report.geodetic) throw not_geodetic_error(g, *report.witness);
  return detail::tree_from_layers(bfs_from(g, o));
}

/// Exact nonnegative rational, reduced; distances are small integers so
/// int64 never overflows at desk scale.
struct Ratio {
  long long num = 0;
  long long den = 1;

  static Ratio of(long long n, long long d) {
    const long long g = std::gcd(n, d);
    return Ratio{g ? n / g : n, g ? d / g : d};
  }
  bool operator<(const Ratio& o) const { return num * o.den < o.num * den; }
  bool operator<=(const Ratio& o) const { return num * o.den <= o.num * den; }
  bool operator==(const Ratio&) const = default;
  std::string str() const {
    return std::to_string(num) + "/" + std::to_string(den);
  }
};

/// Certificate data for the identity map Gamma -> T_o being a
/// (lambda, 0)-quasi-isometry with lambda = max(1, 2n).
struct DistortionReport {
  VertexId root = 0;
  int n = 0;       // from max IEC length 2n+1; 0 when the graph is a tree
  int lambda = 1;  // max(1, 2n)
  Ratio max_ratio{1, 1};  // max over pairs of d_T / d_Gamma
  std::pair<VertexId, VertexId> worst_pair{0, 0};
  bool bound_satisfied = true;
};

/// Exact maximum of d_T / d_Gamma over all vertex pairs, with the pointwise
/// certificate d_Gamma <= d_T. The IEC inventory supplies n.
inline DistortionReport distortion_report(const Graph& g, VertexId o,
                                          const IecInventory& inv,
                                          int threads = 1) {
  if (!g.has(o)) throw InvalidArgument("distortion_report: root not in graph");
  auto report = is_geodetic(g, threads);
  if (!report.geodetic) throw not_geodetic_error(g, *report.witness);

  const int n = g.order();
  // d_Gamma rows
  std::vector<std::vector<int>> dg(static_cast<std::size_t>(n));
  detail::parallel_chunks(n, threads, [&](int lo, int hi) {
    for (VertexId r = lo; r < hi; ++r)
      dg[static_cast<std::size_t>(r)] = detail::bfs_dist(g, r);
  });
  // d_T rows over the tree's adjacency
  const SpanningTree t = detail::tree_from_layers(bfs_from(g, o));
  std::vector<std::vector<VertexId>> tadj(static_cast<std::size_t>(n));
  for (VertexId v = 0; v < n; ++v) {
    const VertexId p = t.parent[static_cast<std::size_t>(v)];
    if (p >= 0) {
      tadj[static_cast<std::size_t>(v)].push_back(p);
      tadj[static_cast<std::size_t>(p)].push_back(v);
    }
  }
  auto tree_bfs = [&](VertexId r) {
    std::vector<int> dist(static_cast<std::size_t>(n), -1);
    dist[static_cast<std::size_t>(r)] = 0;
    std::vector<VertexId> queue{r};
    for (std::size_t qi = 0; qi < queue.size(); ++qi)
      for (VertexId w : tadj[static_cast<std::size_t>(queue[qi])])
        if (dist[static_cast<std::size_t>(w)] < 0) {
          dist[static_cast<std::size_t>(w)] =
              dist[static_cast<std::size_t>(queue[qi])] + 1;
          queue.push_back(w);
        }
    return dist;
  };
  std::vector<std::vector<int>> dt(static_cast<std::size_t>(n));
  detail::parallel_chunks(n, threads, [&](int lo, int hi) {
    for (VertexId r = lo; r < hi; ++r) dt[static_cast<std::size_t>(r)] = tree_bfs(r);
  });

  DistortionReport out;
  out.root = o;
  out.n = iec_bound_n(inv);
  out.lambda = std::max(1, 2 * out.n);
  out.max_ratio = Ratio{1, 1};
  out.worst_pair = {o, o};
  for (VertexId v = 0; v < n; ++v) {
    for (VertexId w = v + 1; w < n; ++w) {
      const int a = dg[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)];
      const int b = dt[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)];
      if (b < a)
        throw InternalInconsistency(
            "tree distance below graph distance; spanning tree is corrupt");
      const Ratio r = Ratio::of(b, a);
      if (out.max_ratio < r) {
        out.max_ratio = r;
        out.worst_pair = {v, w};
      }
    }
  }
  out.bound_satisfied =
      out.max_ratio <= Ratio{static_cast<long long>(out.lambda), 1};
  return out;
}

/// Convenience overload that enumerates the inventory itself.
inline DistortionReport distortion_report(const Graph& g, VertexId o,
                                          int threads = 1) {
  return distortion_report(g, o, enumerate_iecs_geodetic(g, threads), threads);
}

/// A graph geodesic rewritten inside T_o: tree edges are kept; every
/// non-tree edge (x, y) is spliced through u, the last common vertex of
/// [o, x] and [o, y], whose fork closure is an IEC of length at most 2n+1.
struct LiftedPath {
  std::vector<VertexId> tree_path;  // walk in T_o joining the endpoints
  GeodesicPath source;
  std::vector<VertexId> splice_points;  // the vertex u of each splice

  int length() const { return static_cast<int>(tree_path.size()) - 1; }
};

inline LiftedPath lift_path(const Graph& g, const SpanningTree& t,
                            const GeodesicPath& gamma, const IecInventory& inv) {
  if (t.order() != g.order())
    throw InvalidArgument("lift_path: tree does not match the graph");
  make_geodesic(g, gamma.vertices);  // rejects non-geodesics

  LiftedPath out;
  out.source = gamma;
  out.tree_path.push_back(gamma.vertices.front());
  for (std::size_t i = 0; i + 1 < gamma.vertices.size(); ++i) {
    const VertexId x = gamma.vertices[i];
    const VertexId y = gamma.vertices[i + 1];
    if (t.has_edge(x, y)) {
      out.tree_path.push_back(y);
      continue;
    }
    const auto splice = t.path(x, y);
    out.splice_points.push_back(t.lca(x, y));
    out.tree_path.insert(out.tree_path.end(), splice.begin() + 1, splice.end());
  }
  const int lambda = std::max(1, 2 * iec_bound_n(inv));
  if (out.length() > lambda * gamma.length())
    throw InternalInconsistency(
        "lifted path exceeds the 2n bound; IEC inventory is incomplete or the "
        "graph is not geodetic");
  return out;
}

}  // namespace geodetic
