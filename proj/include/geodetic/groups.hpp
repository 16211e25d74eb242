// groups.hpp — free products of finite groups: exact element arithmetic via
// free-product normal forms, generator alphabets with involution, and
// Cayley-ball generation with labeled edges.
#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "geodetic/graph.hpp"

namespace geodetic {

namespace detail {

inline bool alphanumeric(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c))) return false;
  return true;
}

/// Deterministic token name for the inverse of a cyclic generator:
/// uppercase when that changes the name ("a" -> "A"), else a suffix.
inline std::string inverse_token_name(const std::string& gen) {
  std::string up = gen;
  for (char& c : up)
    if (std::islower(static_cast<unsigned char>(c)))
      c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (up != gen) return up;
  return gen + "inv";
}

}  // namespace detail

/// Ordered generator tokens with an involution (fixed points model
/// self-inverse generators).
struct Alphabet {
  std::vector<std::string> tokens;
  std::vector<int> inv;  // involution as an index map

  int size() const { return static_cast<int>(tokens.size()); }
  int inverse(int t) const { return inv[static_cast<std::size_t>(t)]; }
  const std::string& token(int t) const { return tokens[static_cast<std::size_t>(t)]; }

  std::optional<int> find(const std::string& name) const {
    for (int t = 0; t < size(); ++t)
      if (tokens[static_cast<std::size_t>(t)] == name) return t;
    return std::nullopt;
  }
  int index(const std::string& name) const {
    auto t = find(name);
    if (!t) throw InvalidArgument("unknown generator token '" + name + "'");
    return *t;
  }

  void validate() const {
    if (static_cast<int>(inv.size()) != size())
      throw InvalidArgument("alphabet: involution size mismatch");
    for (int t = 0; t < size(); ++t) {
      const std::string& tok = tokens[static_cast<std::size_t>(t)];
      if (!detail::alphanumeric(tok) || tok == "1")
        throw InvalidArgument("generator token '" + tok +
                              "' must be alphanumeric and not the reserved "
                              "empty-word token '1'");
      if (inv[static_cast<std::size_t>(t)] < 0 || inv[static_cast<std::size_t>(t)] >= size() ||
          inv[static_cast<std::size_t>(inv[static_cast<std::size_t>(t)])] != t)
        throw InvalidArgument("alphabet involution is not an involution");
      for (int u = t + 1; u < size(); ++u)
        if (tokens[static_cast<std::size_t>(t)] == tokens[static_cast<std::size_t>(u)])
          throw InvalidArgument("duplicate generator token '" + tok + "'");
    }
  }

  bool operator==(const Alphabet&) const = default;
};

/// Splits a whitespace-separated word into token indices; "1" on its own
/// denotes the empty word.
inline std::vector<int> parse_word(const Alphabet& a, const std::string& text) {
  std::vector<int> out;
  std::string cur;
  std::vector<std::string> parts;
  for (char c : text + " ") {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (parts.size() == 1 && parts[0] == "1") return out;
  for (const auto& p : parts) out.push_back(a.index(p));
  return out;
}

inline std::string word_to_string(const Alphabet& a, const std::vector<int>& w) {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += a.token(w[i]);
  }
  return out;
}

/// One finite free factor: either a cyclic group with a designated
/// generator or an explicit multiplication table. Element 0 is always the
/// identity internally.
class FiniteFactor {
 public:
  enum class Kind { cyclic, table };

  static FiniteFactor cyclic(int order, const std::string& gen) {
    if (order < 2) throw InvalidArgument("cyclic factor needs order >= 2");
    if (!detail::alphanumeric(gen) || gen == "1")
      throw InvalidArgument("cyclic generator name '" + gen +
                            "' must be alphanumeric and not '1'");
    FiniteFactor f;
    f.kind_ = Kind::cyclic;
    f.cyclic_gen_ = gen;
    f.names_.resize(static_cast<std::size_t>(order));
    f.names_[0] = "1";
    for (int k = 1; k < order; ++k)
      f.names_[static_cast<std::size_t>(k)] =
          k == 1 ? gen : gen + "^" + std::to_string(k);
    f.mul_.assign(static_cast<std::size_t>(order),
                  std::vector<int>(static_cast<std::size_t>(order)));
    f.inv_.resize(static_cast<std::size_t>(order));
    for (int a = 0; a < order; ++a) {
      f.inv_[static_cast<std::size_t>(a)] = (order - a) % order;
      for (int b = 0; b < order; ++b)
        f.mul_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
            (a + b) % order;
    }
    f.gen_tokens_.emplace_back(gen, 1);
    if (order > 2)
      f.gen_tokens_.emplace_back(detail::inverse_token_name(gen), order - 1);
    f.validate();
    return f;
  }

  static FiniteFactor from_table(const std::vector<std::string>& elements,
                                 const std::string& identity,
                                 const std::vector<std::vector<std::string>>& mul,
                                 const std::vector<std::string>& gens) {
    const int n = static_cast<int>(elements.size());
    if (n < 1) throw InvalidArgument("table factor: no elements");
    std::unordered_map<std::string, int> idx;
    for (int i = 0; i < n; ++i) {
      const auto& e = elements[static_cast<std::size_t>(i)];
      if (!detail::alphanumeric(e))
        throw InvalidArgument("table element name '" + e +
                              "' must be alphanumeric");
      if (!idx.emplace(e, i).second)
        throw InvalidArgument("duplicate table element '" + e + "'");
    }
    auto at = [&](const std::string& e) {
      auto it = idx.find(e);
      if (it == idx.end())
        throw InvalidArgument("table references unknown element '" + e + "'");
      return it->second;
    };
    const int id = at(identity);
    for (int i = 0; i < n; ++i)
      if (i != id && elements[static_cast<std::size_t>(i)] == "1")
        throw InvalidArgument(
            "non-identity table element may not be named '1'");

    FiniteFactor f;
    f.kind_ = Kind::table;
    // internal id 0 = identity; remaining elements keep declared order
    std::vector<int> to_internal(static_cast<std::size_t>(n));
    f.names_.push_back(elements[static_cast<std::size_t>(id)]);
    to_internal[static_cast<std::size_t>(id)] = 0;
    for (int i = 0; i < n; ++i)
      if (i != id) {
        to_internal[static_cast<std::size_t>(i)] =
            static_cast<int>(f.names_.size());
        f.names_.push_back(elements[static_cast<std::size_t>(i)]);
      }
    if (static_cast<int>(mul.size()) != n)
      throw InvalidArgument("table factor: multiplication table must be n x n");
    f.mul_.assign(static_cast<std::size_t>(n),
                  std::vector<int>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(mul[static_cast<std::size_t>(i)].size()) != n)
        throw InvalidArgument("table factor: multiplication table must be n x n");
      for (int j = 0; j < n; ++j)
        f.mul_[static_cast<std::size_t>(to_internal[static_cast<std::size_t>(i)])]
              [static_cast<std::size_t>(to_internal[static_cast<std::size_t>(j)])] =
            to_internal[static_cast<std::size_t>(
                at(mul[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]))];
    }
    // group axioms, exhaustively (factors are desk-scale)
    for (int a = 0; a < n; ++a) {
      if (f.mul_[0][static_cast<std::size_t>(a)] != a ||
          f.mul_[static_cast<std::size_t>(a)][0] != a)
        throw InvalidArgument("table factor: identity law fails");
    }
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (f.mul_[static_cast<std::size_t>(f.mul_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)])]
                    [static_cast<std::size_t>(c)] !=
              f.mul_[static_cast<std::size_t>(a)]
                    [static_cast<std::size_t>(f.mul_[static_cast<std::size_t>(b)][static_cast<std::size_t>(c)])])
            throw InvalidArgument("table factor: multiplication is not associative");
    f.inv_.assign(static_cast<std::size_t>(n), -1);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b)
        if (f.mul_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] == 0 &&
            f.mul_[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] == 0) {
          f.inv_[static_cast<std::size_t>(a)] = b;
          break;
        }
      if (f.inv_[static_cast<std::size_t>(a)] < 0)
        throw InvalidArgument("table factor: element '" +
                              f.names_[static_cast<std::size_t>(a)] +
                              "' has no inverse");
    }
    if (gens.empty()) throw InvalidArgument("table factor: no generators");
    for (const auto& gname : gens) {
      const int e = to_internal[static_cast<std::size_t>(at(gname))];
      if (e == 0)
        throw InvalidArgument("table factor: identity cannot be a generator");
      f.gen_tokens_.emplace_back(f.names_[static_cast<std::size_t>(e)], e);
    }
    f.table_gens_ = gens;
    // close the generating set under inversion
    const std::size_t declared = f.gen_tokens_.size();
    for (std::size_t i = 0; i < declared; ++i) {
      const int e = f.gen_tokens_[i].second;
      const int ei = f.inv_[static_cast<std::size_t>(e)];
      bool present = false;
      for (const auto& [t, x] : f.gen_tokens_) present = present || x == ei;
      if (!present)
        f.gen_tokens_.emplace_back(f.names_[static_cast<std::size_t>(ei)], ei);
    }
    f.validate();
    return f;
  }

  Kind kind() const { return kind_; }
  int order() const { return static_cast<int>(names_.size()); }
  int mul(int a, int b) const {
    return mul_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
  }
  int inverse(int a) const { return inv_[static_cast<std::size_t>(a)]; }
  const std::string& element_name(int e) const {
    return names_[static_cast<std::size_t>(e)];
  }
  /// Inverse-closed generating tokens as (token, element id), in order.
  const std::vector<std::pair<std::string, int>>& generator_tokens() const {
    return gen_tokens_;
  }
  const std::string& cyclic_gen() const { return cyclic_gen_; }
  const std::vector<std::string>& declared_gens() const { return table_gens_; }

  bool operator==(const FiniteFactor&) const = default;

 private:
  void validate() const {
    // generators must generate the factor
    std::vector<char> seen(static_cast<std::size_t>(order()), 0);
    seen[0] = 1;
    std::vector<int> queue{0};
    for (std::size_t qi = 0; qi < queue.size(); ++qi)
      for (const auto& [tok, e] : gen_tokens_) {
        const int x = mul(queue[qi], e);
        if (!seen[static_cast<std::size_t>(x)]) {
          seen[static_cast<std::size_t>(x)] = 1;
          queue.push_back(x);
        }
      }
    for (char c : seen)
      if (!c)
        throw InvalidArgument("factor generators do not generate the factor");
  }

  Kind kind_ = Kind::cyclic;
  std::string cyclic_gen_;
  std::vector<std::string> table_gens_;
  std::vector<std::string> names_;
  std::vector<std::vector<int>> mul_;
  std::vector<int> inv_;
  std::vector<std::pair<std::string, int>> gen_tokens_;
};

/// Element of a free product in normal form: alternating nontrivial
/// syllables (factor index, factor element).
struct GroupElement {
  std::vector<std::pair<int, int>> syllables;

  bool is_identity() const { return syllables.empty(); }
  bool operator==(const GroupElement&) const = default;
};

/// A free product of finitely many finite factors with the standard
/// inverse-closed generating set (one token set per factor).
class GroupSpec {
 public:
  explicit GroupSpec(std::vector<FiniteFactor> factors)
      : factors_(std::move(factors)) {
    if (factors_.empty()) throw InvalidArgument("group spec: no factors");
    for (int fi = 0; fi < factor_count(); ++fi) {
      for (const auto& [tok, e] : factors_[static_cast<std::size_t>(fi)].generator_tokens()) {
        alphabet_.tokens.push_back(tok);
        targets_.emplace_back(fi, e);
      }
    }
    alphabet_.inv.assign(alphabet_.tokens.size(), -1);
    for (int t = 0; t < alphabet_.size(); ++t) {
      const auto [fi, e] = targets_[static_cast<std::size_t>(t)];
      const int ei = factors_[static_cast<std::size_t>(fi)].inverse(e);
      for (int u = 0; u < alphabet_.size(); ++u)
        if (targets_[static_cast<std::size_t>(u)] == std::make_pair(fi, ei))
          alphabet_.inv[static_cast<std::size_t>(t)] = u;
      if (alphabet_.inv[static_cast<std::size_t>(t)] < 0)
        throw InvalidArgument("generating set is not inverse-closed");
    }
    alphabet_.validate();
  }

  int factor_count() const { return static_cast<int>(factors_.size()); }
  const FiniteFactor& factor(int i) const {
    return factors_[static_cast<std::size_t>(i)];
  }
  const std::vector<FiniteFactor>& factors() const { return factors_; }
  const Alphabet& alphabet() const { return alphabet_; }
  /// (factor, element) a token multiplies by.
  std::pair<int, int> token_target(int t) const {
    return targets_[static_cast<std::size_t>(t)];
  }

  bool operator==(const GroupSpec& o) const { return factors_ == o.factors_; }

 private:
  std::vector<FiniteFactor> factors_;
  Alphabet alphabet_;
  std::vector<std::pair<int, int>> targets_;
};

/// Right-multiplies a normal form by one generator token, merging or
/// cancelling the last syllable as needed.
inline GroupElement nf_append(const GroupSpec& spec, GroupElement e, int token) {
  const auto [fi, x] = spec.token_target(token);
  if (!e.syllables.empty() && e.syllables.back().first == fi) {
    const int y = spec.factor(fi).mul(e.syllables.back().second, x);
    if (y == 0)
      e.syllables.pop_back();
    else
      e.syllables.back().second = y;
  } else {
    e.syllables.emplace_back(fi, x);
  }
  return e;
}

/// Multiplies the letters left to right; the result is in free-product
/// normal form (no factor identities, adjacent syllables from distinct
/// factors).
inline GroupElement free_product_normal_form(const GroupSpec& spec,
                                             const std::vector<int>& tokens) {
  GroupElement e;
  for (int t : tokens) {
    if (t < 0 || t >= spec.alphabet().size())
      throw InvalidArgument("free_product_normal_form: token out of range");
    e = nf_append(spec, std::move(e), t);
  }
  return e;
}

inline GroupElement group_inverse(const GroupSpec& spec, const GroupElement& e) {
  GroupElement out;
  for (std::size_t i = e.syllables.size(); i-- > 0;) {
    const auto [fi, x] = e.syllables[i];
    out.syllables.emplace_back(fi, spec.factor(fi).inverse(x));
  }
  return out;
}

/// Canonical display name: "1" for the identity, otherwise syllable names
/// joined with '.'; factor element names are alphanumeric plus '^', so the
/// encoding is injective.
inline std::string element_name(const GroupSpec& spec, const GroupElement& e) {
  if (e.is_identity()) return "1";
  std::string out;
  for (std::size_t i = 0; i < e.syllables.size(); ++i) {
    if (i) out += '.';
    out += spec.factor(e.syllables[i].first).element_name(e.syllables[i].second);
  }
  return out;
}

/// Shortest-word length of one syllable over the factor's tokens.
namespace detail {
inline int syllable_length(const FiniteFactor& f, int e) {
  // BFS in the factor over its generating tokens
  std::vector<int> dist(static_cast<std::size_t>(f.order()), -1);
  dist[0] = 0;
  std::vector<int> queue{0};
  for (std::size_t qi = 0; qi < queue.size(); ++qi)
    for (const auto& [tok, g] : f.generator_tokens()) {
      const int x = f.mul(queue[qi], g);
      if (dist[static_cast<std::size_t>(x)] < 0) {
        dist[static_cast<std::size_t>(x)] = dist[static_cast<std::size_t>(queue[qi])] + 1;
        queue.push_back(x);
      }
    }
  return dist[static_cast<std::size_t>(e)];
}
}  // namespace detail

/// Word length of an element over the full generating set (sum of syllable
/// lengths; syllables from distinct factors never interact).
inline int word_length(const GroupSpec& spec, const GroupElement& e) {
  int total = 0;
  for (const auto& [fi, x] : e.syllables)
    total += detail::syllable_length(spec.factor(fi), x);
  return total;
}

/// Ball of radius R in the Cayley graph: all elements within word length R,
/// every edge with both endpoints inside, and generator labels on directed
/// edges (label(v,u) = inverse of label(u,v)).
struct LabeledBall {
  int radius = 0;
  Graph graph;
  VertexId identity = 0;
  Alphabet alphabet;
  std::vector<std::vector<VertexId>> step;  // step[v][t] = v * t, or -1
  std::vector<int> dist_from_identity;      // = word length, up to R
  std::vector<GroupElement> elements;

  /// Token labelling the directed edge (u, v); error when not an edge.
  int label(VertexId u, VertexId v) const {
    for (int t = 0; t < alphabet.size(); ++t)
      if (step[static_cast<std::size_t>(u)][static_cast<std::size_t>(t)] == v)
        return t;
    throw InvalidArgument("label: (" + graph.name(u) + ", " + graph.name(v) +
                          ") is not a labeled edge");
  }
};

/// BFS from the identity, identifying elements by normal form. Finite
/// because factors are finite and branching is bounded.
inline LabeledBall cayley_ball(const GroupSpec& spec, int radius) {
  if (radius < 1) throw InvalidArgument("cayley_ball: radius must be >= 1");
  const Alphabet& a = spec.alphabet();

  LabeledBall ball;
  ball.radius = radius;
  ball.alphabet = a;

  std::unordered_map<std::string, VertexId> index;
  std::vector<std::string> names;
  auto intern = [&](const GroupElement& e) {
    std::string name = element_name(spec, e);
    auto it = index.find(name);
    if (it != index.end()) return it->second;
    const VertexId id = static_cast<VertexId>(names.size());
    names.push_back(name);
    index.emplace(std::move(name), id);
    ball.elements.push_back(e);
    return id;
  };

  intern(GroupElement{});
  ball.dist_from_identity.push_back(0);
  for (std::size_t qi = 0; qi < ball.elements.size(); ++qi) {
    const GroupElement cur = ball.elements[qi];  // copy: vector grows below
    const int d = ball.dist_from_identity[qi];
    ball.step.emplace_back(static_cast<std::size_t>(a.size()), -1);
    for (int t = 0; t < a.size(); ++t) {
      const GroupElement nxt = nf_append(spec, cur, t);
      const std::string name = element_name(spec, nxt);
      auto it = index.find(name);
      if (it != index.end()) {
        ball.step[qi][static_cast<std::size_t>(t)] = it->second;
      } else if (d + 1 <= radius) {
        ball.step[qi][static_cast<std::size_t>(t)] = intern(nxt);
        ball.dist_from_identity.push_back(d + 1);
      }
    }
  }

  Graph::Builder b;
  for (const auto& n : names) b.add_vertex(n);
  for (std::size_t v = 0; v < ball.step.size(); ++v)
    for (int t = 0; t < a.size(); ++t) {
      const VertexId w = ball.step[v][static_cast<std::size_t>(t)];
      if (w >= 0) b.add_edge_ids(static_cast<VertexId>(v), w);
    }
  ball.graph = b.build();
  ball.identity = 0;
  return ball;
}

/// Follows labeled edges from the identity; nullopt when any prefix leaves
/// the ball.
inline std::optional<VertexId> evaluate_word(const LabeledBall& ball,
                                             const std::vector<int>& tokens) {
  VertexId v = ball.identity;
  for (int t : tokens) {
    if (t < 0 || t >= ball.alphabet.size())
      throw InvalidArgument("evaluate_word: token out of range");
    v = ball.step[static_cast<std::size_t>(v)][static_cast<std::size_t>(t)];
    if (v < 0) return std::nullopt;
  }
  return v;
}

}  // namespace geodetic
