// families.hpp — deterministic generators for the test-corpus graph
// families: complete, cycle, petersen, tree, psi, hypercube.
#pragma once

#include <string>
#include <vector>

#include "geodetic/graph.hpp"

namespace geodetic {

/// K_n on vertices "0".."n-1".
inline Graph complete_graph(int n) {
  if (n < 1) throw InvalidArgument("complete_graph: n must be >= 1");
  Graph::Builder b;
  for (int i = 0; i < n; ++i) b.add_vertex(std::to_string(i));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      b.add_edge(std::to_string(i), std::to_string(j));
  return b.build();
}

/// C_n on vertices "0".."n-1".
inline Graph cycle_graph(int n) {
  if (n < 3) throw InvalidArgument("cycle_graph: n must be >= 3");
  Graph::Builder b;
  for (int i = 0; i < n; ++i) b.add_vertex(std::to_string(i));
  for (int i = 0; i < n; ++i)
    b.add_edge(std::to_string(i), std::to_string((i + 1) % n));
  return b.build();
}

/// Petersen graph: outer 5-cycle "0".."4", inner pentagram "5".."9", spokes.
inline Graph petersen_graph() {
  Graph::Builder b;
  for (int i = 0; i < 10; ++i) b.add_vertex(std::to_string(i));
  for (int i = 0; i < 5; ++i) {
    b.add_edge(std::to_string(i), std::to_string((i + 1) % 5));
    b.add_edge(std::to_string(5 + i), std::to_string(5 + (i + 2) % 5));
    b.add_edge(std::to_string(i), std::to_string(5 + i));
  }
  return b.build();
}

/// Complete branching^depth tree, BFS-numbered "0".."N-1".
inline Graph full_tree(int branching, int depth) {
  if (branching < 1 || depth < 0)
    throw InvalidArgument("full_tree: need branching >= 1 and depth >= 0");
  Graph::Builder b;
  b.add_vertex("0");
  std::vector<int> level{0};
  int next = 1;
  for (int d = 0; d < depth; ++d) {
    std::vector<int> cur;
    for (int p : level)
      for (int c = 0; c < branching; ++c) {
        b.add_edge(std::to_string(p), std::to_string(next));
        cur.push_back(next++);
      }
    level = std::move(cur);
  }
  return b.build();
}

/// Base path "p0".."pm" with a cycle of length 2k+3 glued at each vertex
/// pk, sharing exactly that vertex. Fresh cycle vertices: "c<k>_1" ..
/// "c<k>_<2k+2>".
inline Graph psi_graph(int m) {
  if (m < 0) throw InvalidArgument("psi_graph: m must be >= 0");
  Graph::Builder b;
  for (int k = 0; k <= m; ++k) b.add_vertex("p" + std::to_string(k));
  for (int k = 0; k < m; ++k)
    b.add_edge("p" + std::to_string(k), "p" + std::to_string(k + 1));
  for (int k = 0; k <= m; ++k) {
    const int fresh = 2 * k + 2;  // cycle length 2k+3 shares one vertex
    std::string prev = "p" + std::to_string(k);
    for (int i = 1; i <= fresh; ++i) {
      const std::string v = "c" + std::to_string(k) + "_" + std::to_string(i);
      b.add_edge(prev, v);
      prev = v;
    }
    b.add_edge(prev, "p" + std::to_string(k));
  }
  return b.build();
}

/// d-cube on binary strings of length d.
inline Graph hypercube_graph(int d) {
  if (d < 1) throw InvalidArgument("hypercube_graph: d must be >= 1");
  if (d > 20) throw InvalidArgument("hypercube_graph: d too large");
  auto label = [d](unsigned x) {
    std::string s(static_cast<std::size_t>(d), '0');
    for (int i = 0; i < d; ++i)
      if (x & (1u << (d - 1 - i))) s[static_cast<std::size_t>(i)] = '1';
    return s;
  };
  Graph::Builder b;
  const unsigned n = 1u << d;
  for (unsigned x = 0; x < n; ++x) b.add_vertex(label(x));
  for (unsigned x = 0; x < n; ++x)
    for (int i = 0; i < d; ++i)
      if (!(x & (1u << i))) b.add_edge(label(x), label(x | (1u << i)));
  return b.build();
}

/// Dispatch by family name; parameter counts are validated.
inline Graph gen_family(const std::string& family, const std::vector<long>& params) {
  auto arity = [&](std::size_t k) {
    if (params.size() != k)
      throw InvalidArgument("family '" + family + "' takes " +
                            std::to_string(k) + " parameter(s), got " +
                            std::to_string(params.size()));
  };
  if (family == "complete") {
    arity(1);
    return complete_graph(static_cast<int>(params[0]));
  }
  if (family == "cycle") {
    arity(1);
    return cycle_graph(static_cast<int>(params[0]));
  }
  if (family == "petersen") {
    arity(0);
    return petersen_graph();
  }
  if (family == "tree") {
    arity(2);
    return full_tree(static_cast<int>(params[0]), static_cast<int>(params[1]));
  }
  if (family == "psi") {
    arity(1);
    return psi_graph(static_cast<int>(params[0]));
  }
  if (family == "hypercube") {
    arity(1);
    return hypercube_graph(static_cast<int>(params[0]));
  }
  throw InvalidArgument("unknown family '" + family +
                        "' (expected complete, cycle, petersen, tree, psi, "
                        "hypercube)");
}

}  // namespace geodetic
