// json_io.hpp — strict JSON (de)serialization for graphs, labeled Cayley
// balls, group specs, and the report payloads surfaced by the CLI.
#pragma once

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "geodetic/boundary.hpp"
#include "geodetic/groups.hpp"
#include "geodetic/iec.hpp"
#include "geodetic/rws.hpp"
#include "geodetic/tree_qi.hpp"

namespace geodetic {

using nlohmann::json;

namespace detail {

inline void expect_keys(const json& j, std::initializer_list<const char*> keys,
                        const char* what) {
  if (!j.is_object()) throw ParseError(std::string(what) + ": expected a JSON object");
  for (const auto& [k, v] : j.items()) {
    bool ok = false;
    for (const char* allowed : keys) ok = ok || k == allowed;
    if (!ok)
      throw ParseError(std::string(what) + ": unknown key '" + k + "'");
  }
}

inline const json& require_key(const json& j, const char* key, const char* what) {
  if (!j.contains(key))
    throw ParseError(std::string(what) + ": missing key '" + key + "'");
  return j.at(key);
}

}  // namespace detail

// --- graphs ----------------------------------------------------------------

inline json graph_to_json(const Graph& g) {
  json j;
  j["vertices"] = g.names();
  json edges = json::array();
  for (const auto& [u, v] : g.edges())
    edges.push_back(json::array({g.name(u), g.name(v)}));
  j["edges"] = std::move(edges);
  return j;
}

/// Strict: only "vertices" and "edges" allowed; edges must reference
/// declared vertices.
inline Graph graph_from_json(const json& j) {
  detail::expect_keys(j, {"vertices", "edges"}, "graph");
  const json& vs = detail::require_key(j, "vertices", "graph");
  const json& es = detail::require_key(j, "edges", "graph");
  if (!vs.is_array() || !es.is_array())
    throw ParseError("graph: 'vertices' and 'edges' must be arrays");
  Graph::Builder b;
  int declared_count = 0;
  for (const auto& v : vs) {
    if (!v.is_string()) throw ParseError("graph: vertex names must be strings");
    b.add_vertex(v.get<std::string>());
    ++declared_count;
  }
  Graph declared = b.build();
  if (declared.order() != declared_count)
    throw ParseError("graph: duplicate vertex declaration");
  Graph::Builder b2;
  for (const auto& v : vs) b2.add_vertex(v.get<std::string>());
  for (const auto& e : es) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
      throw ParseError("graph: each edge must be a 2-element array of strings");
    const auto u = e[0].get<std::string>();
    const auto v = e[1].get<std::string>();
    if (!declared.find(u))
      throw ParseError("graph: edge references undeclared vertex '" + u + "'");
    if (!declared.find(v))
      throw ParseError("graph: edge references undeclared vertex '" + v + "'");
    try {
      b2.add_edge(u, v);
    } catch (const InvalidArgument& err) {
      throw ParseError(std::string("graph: ") + err.what());
    }
  }
  return b2.build();
}

// --- alphabets and labeled balls --------------------------------------------

inline json alphabet_to_json(const Alphabet& a) {
  json j;
  j["tokens"] = a.tokens;
  json inv = json::array();
  for (int t = 0; t < a.size(); ++t)
    if (a.inverse(t) > t)
      inv.push_back(json::array({a.token(t), a.token(a.inverse(t))}));
  j["inv"] = std::move(inv);
  return j;
}

inline Alphabet alphabet_from_json(const json& j) {
  detail::expect_keys(j, {"tokens", "inv"}, "alphabet");
  Alphabet a;
  for (const auto& t : detail::require_key(j, "tokens", "alphabet"))
    a.tokens.push_back(t.get<std::string>());
  a.inv.resize(a.tokens.size());
  for (std::size_t t = 0; t < a.tokens.size(); ++t) a.inv[t] = static_cast<int>(t);
  for (const auto& p : detail::require_key(j, "inv", "alphabet")) {
    if (!p.is_array() || p.size() != 2)
      throw ParseError("alphabet: inv entries must be token pairs");
    const int x = a.index(p[0].get<std::string>());
    const int y = a.index(p[1].get<std::string>());
    a.inv[static_cast<std::size_t>(x)] = y;
    a.inv[static_cast<std::size_t>(y)] = x;
  }
  a.validate();
  return a;
}

inline json ball_to_json(const LabeledBall& ball) {
  json j = graph_to_json(ball.graph);
  j["radius"] = ball.radius;
  j["identity"] = ball.graph.name(ball.identity);
  j["alphabet"] = alphabet_to_json(ball.alphabet);
  json labels = json::array();
  for (VertexId v = 0; v < ball.graph.order(); ++v)
    for (int t = 0; t < ball.alphabet.size(); ++t) {
      const VertexId w = ball.step[static_cast<std::size_t>(v)][static_cast<std::size_t>(t)];
      if (w >= 0)
        labels.push_back(
            json::array({ball.graph.name(v), ball.graph.name(w), ball.alphabet.token(t)}));
    }
  j["labels"] = std::move(labels);
  return j;
}

/// Rebuilds a ball from its serialized form (the group elements themselves
/// are not stored; distances are recomputed from the identity).
inline LabeledBall ball_from_json(const json& j) {
  detail::expect_keys(j, {"vertices", "edges", "radius", "identity", "alphabet", "labels"},
                      "ball");
  LabeledBall ball;
  json graph_part;
  graph_part["vertices"] = detail::require_key(j, "vertices", "ball");
  graph_part["edges"] = detail::require_key(j, "edges", "ball");
  ball.graph = graph_from_json(graph_part);
  ball.radius = detail::require_key(j, "radius", "ball").get<int>();
  ball.identity = ball.graph.require(detail::require_key(j, "identity", "ball").get<std::string>());
  ball.alphabet = alphabet_from_json(detail::require_key(j, "alphabet", "ball"));
  ball.step.assign(static_cast<std::size_t>(ball.graph.order()),
                   std::vector<VertexId>(static_cast<std::size_t>(ball.alphabet.size()), -1));
  for (const auto& entry : detail::require_key(j, "labels", "ball")) {
    if (!entry.is_array() || entry.size() != 3)
      throw ParseError("ball: label entries must be [u, v, token]");
    const VertexId u = ball.graph.require(entry[0].get<std::string>());
    const VertexId v = ball.graph.require(entry[1].get<std::string>());
    const int t = ball.alphabet.index(entry[2].get<std::string>());
    if (!ball.graph.adjacent(u, v))
      throw ParseError("ball: label on a non-edge (" + entry[0].get<std::string>() +
                       ", " + entry[1].get<std::string>() + ")");
    ball.step[static_cast<std::size_t>(u)][static_cast<std::size_t>(t)] = v;
  }
  // involution consistency: label(v,u) = inv(label(u,v))
  for (VertexId u = 0; u < ball.graph.order(); ++u)
    for (int t = 0; t < ball.alphabet.size(); ++t) {
      const VertexId v = ball.step[static_cast<std::size_t>(u)][static_cast<std::size_t>(t)];
      if (v < 0) continue;
      if (ball.step[static_cast<std::size_t>(v)][static_cast<std::size_t>(ball.alphabet.inverse(t))] != u)
        throw ParseError("ball: labels are not involution-consistent at edge (" +
                         ball.graph.name(u) + ", " + ball.graph.name(v) + ")");
    }
  // every edge must carry a label in both directions
  for (const auto& [u, v] : ball.graph.edges()) {
    bool forward = false;
    for (int t = 0; t < ball.alphabet.size(); ++t)
      forward = forward ||
                ball.step[static_cast<std::size_t>(u)][static_cast<std::size_t>(t)] == v;
    if (!forward)
      throw ParseError("ball: edge (" + ball.graph.name(u) + ", " +
                       ball.graph.name(v) + ") has no label");
  }
  ball.dist_from_identity = detail::bfs_dist(ball.graph, ball.identity);
  return ball;
}

// --- group specs -------------------------------------------------------------

inline json spec_to_json(const GroupSpec& spec) {
  json factors = json::array();
  for (const FiniteFactor& f : spec.factors()) {
    json jf;
    if (f.kind() == FiniteFactor::Kind::cyclic) {
      jf["cyclic"] = f.order();
      jf["gen"] = f.cyclic_gen();
    } else {
      json table;
      std::vector<std::string> elems;
      for (int e = 0; e < f.order(); ++e) elems.push_back(f.element_name(e));
      table["elements"] = elems;
      table["identity"] = f.element_name(0);
      json mul = json::array();
      for (int a = 0; a < f.order(); ++a) {
        json row = json::array();
        for (int b = 0; b < f.order(); ++b) row.push_back(f.element_name(f.mul(a, b)));
        mul.push_back(std::move(row));
      }
      table["mul"] = std::move(mul);
      jf["table"] = std::move(table);
      jf["gens"] = f.declared_gens();
    }
    factors.push_back(std::move(jf));
  }
  return json{{"factors", std::move(factors)}};
}

inline GroupSpec spec_from_json(const json& j) {
  detail::expect_keys(j, {"factors"}, "group spec");
  const json& fs = detail::require_key(j, "factors", "group spec");
  if (!fs.is_array() || fs.empty())
    throw ParseError("group spec: 'factors' must be a nonempty array");
  std::vector<FiniteFactor> factors;
  try {
    for (const auto& jf : fs) {
      if (jf.contains("cyclic")) {
        detail::expect_keys(jf, {"cyclic", "gen"}, "cyclic factor");
        factors.push_back(FiniteFactor::cyclic(
            detail::require_key(jf, "cyclic", "cyclic factor").get<int>(),
            detail::require_key(jf, "gen", "cyclic factor").get<std::string>()));
      } else if (jf.contains("table")) {
        detail::expect_keys(jf, {"table", "gens"}, "table factor");
        const json& t = jf.at("table");
        detail::expect_keys(t, {"elements", "identity", "mul"}, "factor table");
        std::vector<std::string> elements =
            detail::require_key(t, "elements", "factor table").get<std::vector<std::string>>();
        std::vector<std::vector<std::string>> mul =
            detail::require_key(t, "mul", "factor table")
                .get<std::vector<std::vector<std::string>>>();
        factors.push_back(FiniteFactor::from_table(
            elements, detail::require_key(t, "identity", "factor table").get<std::string>(),
            mul, detail::require_key(jf, "gens", "table factor").get<std::vector<std::string>>()));
      } else {
        throw ParseError("group spec: factor must have 'cyclic' or 'table'");
      }
    }
    return GroupSpec(std::move(factors));
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("group spec: ") + e.what());
  }
}

// --- inventories and reports -------------------------------------------------

inline json inventory_to_json(const Graph& g, const IecInventory& inv) {
  json iecs = json::array();
  for (const Iec& i : inv.iecs) iecs.push_back(g.names_of(i.canon));
  json hist = json::object();
  for (const auto& [len, count] : inv.histogram) hist[std::to_string(len)] = count;
  json j;
  j["iecs"] = std::move(iecs);
  j["histogram"] = std::move(hist);
  j["max_length"] = inv.max_length ? json(*inv.max_length) : json(nullptr);
  return j;
}

inline json geodetic_report_to_json(const Graph& g, const GeodeticReport& rep) {
  json j;
  j["geodetic"] = rep.geodetic;
  if (rep.witness) {
    j["witness"] = {
        {"from", g.name(rep.witness->from)},
        {"to", g.name(rep.witness->to)},
        {"geodesic_a", g.names_of(rep.witness->path_a.vertices)},
        {"geodesic_b", g.names_of(rep.witness->path_b.vertices)},
    };
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

inline json distortion_to_json(const Graph& g, const DistortionReport& rep) {
  return json{{"root", g.name(rep.root)},
              {"n", rep.n},
              {"lambda", rep.lambda},
              {"max_ratio", rep.max_ratio.str()},
              {"worst_pair", json::array({g.name(rep.worst_pair.first),
                                          g.name(rep.worst_pair.second)})},
              {"bound_satisfied", rep.bound_satisfied}};
}

inline json lifted_to_json(const Graph& g, const LiftedPath& lp) {
  return json{{"tree_path", g.names_of(lp.tree_path)},
              {"source_geodesic", g.names_of(lp.source.vertices)},
              {"splice_points", g.names_of(lp.splice_points)},
              {"length", lp.length()}};
}

inline json ray_to_json(const Graph& g, const RayPrefix& ray) {
  return json{{"base", g.name(ray.base)},
              {"seq", g.names_of(ray.seq)},
              {"horizon", ray.horizon()}};
}

inline json busemann_to_json(const Graph& g, const RayPrefix& ray, VertexId x,
                             const BusemannTrace& tr) {
  return json{{"ray", g.names_of(ray.seq)},
              {"x", g.name(x)},
              {"window", tr.window},
              {"values", tr.values},
              {"stable_from", tr.stable_from ? json(*tr.stable_from) : json(nullptr)},
              {"limit", tr.limit ? json(*tr.limit) : json(nullptr)}};
}

inline json onion_to_json(const Graph& g, const std::optional<OnionPrefix>& p) {
  if (!p) return json(nullptr);
  json thetas = json::array();
  for (const Iec& t : p->thetas) thetas.push_back(g.names_of(t.canon));
  return json{{"depth", p->depth()},
              {"s", g.names_of(p->s)},
              {"r", g.names_of(p->r)},
              {"spine", g.names_of(p->spine())},
              {"thetas", std::move(thetas)}};
}

inline json rws_to_json(const RewritingSystem& r) {
  const Alphabet& a = r.alphabet();
  json rules = json::array();
  for (const Rule& rule : r.rules())
    rules.push_back(json::array(
        {word_to_string(a, rule.lhs), word_to_string(a, rule.rhs)}));
  return json{{"alphabet", alphabet_to_json(a)},
              {"rules", std::move(rules)},
              {"free_rules", r.free_rule_count()}};
}

inline json critical_pair_to_json(const Alphabet& a, const CriticalPair& cp) {
  return json{{"overlap", word_to_string(a, cp.overlap)},
              {"reduct_a", word_to_string(a, cp.reduct_a)},
              {"reduct_b", word_to_string(a, cp.reduct_b)},
              {"nf_a", word_to_string(a, cp.nf_a)},
              {"nf_b", word_to_string(a, cp.nf_b)},
              {"resolved", cp.resolved}};
}

inline json confluence_to_json(const Alphabet& a, const ConfluenceReport& rep) {
  json unresolved = json::array();
  for (const CriticalPair& cp : rep.unresolved)
    unresolved.push_back(critical_pair_to_json(a, cp));
  return json{{"confluent", rep.confluent},
              {"critical_pairs", rep.pair_count},
              {"unresolved", std::move(unresolved)}};
}

inline json crossval_to_json(const CrossValidationReport& rep) {
  return json{{"samples", rep.samples},
              {"disagreements", rep.disagreements},
              {"length_mismatches", rep.length_mismatches},
              {"skipped", rep.skipped},
              {"failures", rep.failures}};
}

// --- files -------------------------------------------------------------------

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError("file '" + path + "' is not valid JSON: " + e.what());
  }
  return j;
}

/// Accepts either a plain graph file or a labeled-ball file (using its
/// underlying graph).
inline Graph load_graph_file(const std::string& path) {
  const json j = load_json_file(path);
  if (j.is_object() && j.contains("labels")) return ball_from_json(j).graph;
  return graph_from_json(j);
}

inline std::string load_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace geodetic
