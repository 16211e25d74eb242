// rws.hpp — inverse-closed length-reducing string rewriting systems:
// extraction from labeled IECs, critical-pair confluence checking,
// deterministic normalization, the word-problem decision, and
// cross-validation against the free-product oracle.
#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "geodetic/groups.hpp"
#include "geodetic/iec.hpp"

namespace geodetic {

using Word = std::vector<int>;  // token indices over an Alphabet

struct Rule {
  Word lhs;
  Word rhs;
  auto operator<=>(const Rule&) const = default;
};

namespace detail {

inline Word inverse_reverse(const Alphabet& a, const Word& w) {
  Word out;
  out.reserve(w.size());
  for (std::size_t i = w.size(); i-- > 0;) out.push_back(a.inverse(w[i]));
  return out;
}

}  // namespace detail

/// Finite inverse-closed length-reducing rewriting system. Construction
/// always injects the free-reduction rules (a inv(a) -> empty) for the whole
/// alphabet, so the inverse-closure invariant holds for every instance; all
/// rules are validated strictly length-reducing, deduplicated, and ordered
/// (free reductions first, then the rest, each block sorted).
class RewritingSystem {
 public:
  static RewritingSystem create(Alphabet alphabet, std::vector<Rule> extra = {}) {
    alphabet.validate();
    std::set<Rule> free_rules;
    for (int t = 0; t < alphabet.size(); ++t)
      free_rules.insert(Rule{{t, alphabet.inverse(t)}, {}});
    std::set<Rule> rest;
    for (Rule& r : extra) {
      for (int t : r.lhs) check_token(alphabet, t);
      for (int t : r.rhs) check_token(alphabet, t);
      if (r.lhs.size() <= r.rhs.size())
        throw InvalidArgument("rule is not length-reducing: |lhs| = " +
                              std::to_string(r.lhs.size()) + ", |rhs| = " +
                              std::to_string(r.rhs.size()));
      if (!free_rules.count(r)) rest.insert(std::move(r));
    }
    RewritingSystem s;
    s.alphabet_ = std::move(alphabet);
    s.rules_.assign(free_rules.begin(), free_rules.end());
    s.free_count_ = static_cast<int>(s.rules_.size());
    s.rules_.insert(s.rules_.end(), rest.begin(), rest.end());
    return s;
  }

  const Alphabet& alphabet() const { return alphabet_; }
  const std::vector<Rule>& rules() const { return rules_; }
  int free_rule_count() const { return free_count_; }

  bool operator==(const RewritingSystem& o) const {
    return alphabet_ == o.alphabet_ && rules_ == o.rules_;
  }

 private:
  static void check_token(const Alphabet& a, int t) {
    if (t < 0 || t >= a.size())
      throw InvalidArgument("rule token out of alphabet range");
  }

  Alphabet alphabet_;
  std::vector<Rule> rules_;
  int free_count_ = 0;
};

/// Rules read off a cyclic IEC label word of odd length 2n+1: every
/// rotation, in both reading directions (the reverse direction with
/// inverted tokens), splits into u = first n+1 letters and v = the inverse
/// reverse of the remaining n, giving u -> v. Deduplicated.
inline std::vector<Rule> rules_from_iec_word(const Alphabet& alphabet,
                                             const Word& cyc) {
  const int L = static_cast<int>(cyc.size());
  if (L < 3 || L % 2 == 0)
    throw InvalidArgument(
        "IEC label word must have odd length >= 3 (geodetic IECs are odd), "
        "got length " +
        std::to_string(L));
  for (int t : cyc)
    if (t < 0 || t >= alphabet.size())
      throw InvalidArgument("IEC label word token out of range");

  const int n = (L - 1) / 2;
  std::set<Rule> out;
  for (const Word& base : {cyc, detail::inverse_reverse(alphabet, cyc)}) {
    for (int rot = 0; rot < L; ++rot) {
      Word w(static_cast<std::size_t>(L));
      for (int i = 0; i < L; ++i)
        w[static_cast<std::size_t>(i)] = base[static_cast<std::size_t>((rot + i) % L)];
      Word lhs(w.begin(), w.begin() + n + 1);
      Word tail(w.begin() + n + 1, w.end());
      out.insert(Rule{std::move(lhs), detail::inverse_reverse(alphabet, tail)});
    }
  }
  return {out.begin(), out.end()};
}

/// Result of extracting the rewriting system of a geodetic Cayley ball.
struct ExtractionResult {
  RewritingSystem system;
  int identity_iecs = 0;  // IECs through the identity that contributed
  /// Set when some identity-incident IEC touches distance >= radius-1, i.e.
  /// the truncation cannot exclude longer IECs; certification then rests on
  /// the confluence check and cross-validation.
  bool completeness_warning = false;
};

/// Free-reduction rules for the whole alphabet plus rules_from_iec_word for
/// the label word of every inventory IEC through the identity vertex.
inline ExtractionResult extract_rws(const LabeledBall& ball,
                                    const IecInventory& inv) {
  auto report = is_geodetic(ball.graph);
  if (!report.geodetic) throw not_geodetic_error(ball.graph, *report.witness);

  std::vector<Rule> extra;
  int used = 0;
  int far = -1;
  for (const Iec& theta : inv.iecs) {
    if (!theta.contains(ball.identity)) continue;
    ++used;
    Word label_word;
    for (std::size_t i = 0; i + 1 < theta.canon.size(); ++i)
      label_word.push_back(ball.label(theta.canon[i], theta.canon[i + 1]));
    auto rules = rules_from_iec_word(ball.alphabet, label_word);
    extra.insert(extra.end(), rules.begin(), rules.end());
    for (std::size_t i = 0; i + 1 < theta.canon.size(); ++i)
      far = std::max(far, ball.dist_from_identity[static_cast<std::size_t>(
                              theta.canon[i])]);
  }
  ExtractionResult out{RewritingSystem::create(ball.alphabet, std::move(extra)),
                       used, far >= ball.radius - 1};
  return out;
}

/// Leftmost-position, first-rule normalization; terminates because every
/// rule is strictly length-reducing. Under confluence the result is
/// strategy-independent.
struct NormalizeTrace {
  Word result;
  int steps = 0;
};

inline NormalizeTrace normalize_traced(const RewritingSystem& r, Word w) {
  for (int t : w)
    if (t < 0 || t >= r.alphabet().size())
      throw InvalidArgument("normalize: token out of alphabet range");
  const int budget = static_cast<int>(w.size());
  int steps = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t pos = 0; pos < w.size() && !changed; ++pos) {
      for (const Rule& rule : r.rules()) {
        const std::size_t len = rule.lhs.size();
        if (pos + len > w.size()) continue;
        if (!std::equal(rule.lhs.begin(), rule.lhs.end(), w.begin() + static_cast<std::ptrdiff_t>(pos)))
          continue;
        Word next(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(pos));
        next.insert(next.end(), rule.rhs.begin(), rule.rhs.end());
        next.insert(next.end(), w.begin() + static_cast<std::ptrdiff_t>(pos + len), w.end());
        w = std::move(next);
        ++steps;
        if (steps > budget)
          throw InternalInconsistency(
              "normalize exceeded its step budget; a rule is not "
              "length-reducing");
        changed = true;
        break;
      }
    }
  }
  return NormalizeTrace{std::move(w), steps};
}

inline Word normalize(const RewritingSystem& r, Word w) {
  return normalize_traced(r, std::move(w)).result;
}

/// A word with two overlapping one-step reductions, their reducts, and the
/// reducts' normal forms.
struct CriticalPair {
  Word overlap;
  Word reduct_a;
  Word reduct_b;
  Word nf_a;
  Word nf_b;
  bool resolved = false;
};

/// All critical pairs from proper overlaps (a suffix of one lhs equals a
/// prefix of another, shorter than both) and containments (one lhs inside
/// another).
inline std::vector<CriticalPair> find_critical_pairs(const RewritingSystem& r) {
  std::vector<CriticalPair> out;
  const auto& rules = r.rules();
  auto close = [&](Word overlap, Word ra, Word rb) {
    CriticalPair cp;
    cp.overlap = std::move(overlap);
    cp.nf_a = normalize(r, ra);
    cp.nf_b = normalize(r, rb);
    cp.reduct_a = std::move(ra);
    cp.reduct_b = std::move(rb);
    cp.resolved = cp.nf_a == cp.nf_b;
    out.push_back(std::move(cp));
  };

  for (std::size_t i = 0; i < rules.size(); ++i) {
    const Word& A = rules[i].lhs;
    for (std::size_t j = 0; j < rules.size(); ++j) {
      const Word& B = rules[j].lhs;
      // proper overlap: suffix of A = prefix of B, shorter than both
      const std::size_t kmax = std::min(A.size(), B.size()) - 1;
      for (std::size_t k = 1; k <= kmax; ++k) {
        if (!std::equal(A.end() - static_cast<std::ptrdiff_t>(k), A.end(), B.begin()))
          continue;
        Word overlap(A);
        overlap.insert(overlap.end(), B.begin() + static_cast<std::ptrdiff_t>(k), B.end());
        Word ra(rules[i].rhs);  // apply i at position 0
        ra.insert(ra.end(), B.begin() + static_cast<std::ptrdiff_t>(k), B.end());
        Word rb(A.begin(), A.end() - static_cast<std::ptrdiff_t>(k));  // apply j at |A|-k
        rb.insert(rb.end(), rules[j].rhs.begin(), rules[j].rhs.end());
        close(std::move(overlap), std::move(ra), std::move(rb));
      }
      // containment: B inside A (identical rules only trivially contain
      // themselves, which yields equal reducts, so skip i == j)
      if (i == j || B.size() > A.size()) continue;
      for (std::size_t p = 0; p + B.size() <= A.size(); ++p) {
        if (!std::equal(B.begin(), B.end(), A.begin() + static_cast<std::ptrdiff_t>(p)))
          continue;
        Word ra(rules[i].rhs);
        Word rb(A.begin(), A.begin() + static_cast<std::ptrdiff_t>(p));
        rb.insert(rb.end(), rules[j].rhs.begin(), rules[j].rhs.end());
        rb.insert(rb.end(), A.begin() + static_cast<std::ptrdiff_t>(p + B.size()), A.end());
        close(Word(A), std::move(ra), std::move(rb));
      }
    }
  }
  return out;
}

/// Local confluence report; with strict length reduction the system
/// terminates, so resolved critical pairs certify confluence.
struct ConfluenceReport {
  bool confluent = false;
  int pair_count = 0;
  std::vector<CriticalPair> unresolved;
};

inline ConfluenceReport check_confluence(const RewritingSystem& r) {
  for (const Rule& rule : r.rules())
    if (rule.lhs.size() <= rule.rhs.size())
      throw InvalidArgument(
          "check_confluence: system contains a non-length-reducing rule");
  ConfluenceReport rep;
  auto pairs = find_critical_pairs(r);
  rep.pair_count = static_cast<int>(pairs.size());
  for (auto& cp : pairs)
    if (!cp.resolved) rep.unresolved.push_back(std::move(cp));
  rep.confluent = rep.unresolved.empty();
  return rep;
}

/// Decides w1 = w2 by comparing normal forms. Sound only under confluence,
/// so a confluence certificate for this very system is required.
inline bool words_equal(const RewritingSystem& r, const ConfluenceReport& cert,
                        const Word& w1, const Word& w2) {
  if (!cert.confluent)
    throw InvalidArgument(
        "words_equal: system is not certified confluent; normal forms would "
        "not be canonical");
  return normalize(r, w1) == normalize(r, w2);
}

/// Cross-validation of an extracted system against the exact free-product
/// oracle and the ball's BFS distances.
struct CrossValidationReport {
  int samples = 0;
  int disagreements = 0;      // words_equal vs normal-form oracle
  int length_mismatches = 0;  // |normalize(w)| vs BFS distance
  int skipped = 0;            // samples whose element left the ball
  std::vector<std::string> failures;
};

/// For `samples` seeded pseudorandom word pairs: words_equal must agree with
/// the free-product oracle, and |normalize(w)| must equal the BFS distance
/// of the evaluated element whenever the word stays inside the ball
/// (normal forms label geodesics). Out-of-ball samples are counted, never
/// silently dropped.
inline CrossValidationReport cross_validate(const RewritingSystem& r,
                                            const ConfluenceReport& cert,
                                            const GroupSpec& spec,
                                            const LabeledBall& ball,
                                            int samples, int max_len,
                                            std::uint64_t seed) {
  if (samples < 1) throw InvalidArgument("cross_validate: samples must be >= 1");
  if (max_len < 1) throw InvalidArgument("cross_validate: max_len must be >= 1");
  if (!(ball.alphabet == r.alphabet()) || !(spec.alphabet() == r.alphabet()))
    throw InvalidArgument("cross_validate: alphabet mismatch");
  std::mt19937_64 rng(seed);
  const int nt = r.alphabet().size();
  auto rand_word = [&](int maxlen) {
    Word w(rng() % static_cast<std::uint64_t>(maxlen + 1));
    for (auto& t : w) t = static_cast<int>(rng() % static_cast<std::uint64_t>(nt));
    return w;
  };

  CrossValidationReport rep;
  rep.samples = samples;
  for (int s = 0; s < samples; ++s) {
    const Word w1 = rand_word(max_len);
    Word w2;
    if (rng() % 2 == 0) {
      w2 = rand_word(max_len);
    } else {
      // equal by construction: insert a cancelling pair
      w2 = w1;
      const std::size_t pos = rng() % (w1.size() + 1);
      const int t = static_cast<int>(rng() % static_cast<std::uint64_t>(nt));
      w2.insert(w2.begin() + static_cast<std::ptrdiff_t>(pos), r.alphabet().inverse(t));
      w2.insert(w2.begin() + static_cast<std::ptrdiff_t>(pos), t);
    }

    const bool eq_rws = words_equal(r, cert, w1, w2);
    const bool eq_oracle = free_product_normal_form(spec, w1) ==
                           free_product_normal_form(spec, w2);
    if (eq_rws != eq_oracle) {
      ++rep.disagreements;
      rep.failures.push_back("words_equal(" + word_to_string(r.alphabet(), w1) +
                             ", " + word_to_string(r.alphabet(), w2) + ") = " +
                             (eq_rws ? "true" : "false") + " but oracle says " +
                             (eq_oracle ? "true" : "false"));
    }

    const auto v = evaluate_word(ball, w1);
    if (!v) {
      ++rep.skipped;
    } else {
      const int nf_len = static_cast<int>(normalize(r, w1).size());
      const int d = ball.dist_from_identity[static_cast<std::size_t>(*v)];
      if (nf_len != d) {
        ++rep.length_mismatches;
        rep.failures.push_back(
            "|normalize(" + word_to_string(r.alphabet(), w1) + ")| = " +
            std::to_string(nf_len) + " but d(1, w) = " + std::to_string(d));
      }
    }
  }
  return rep;
}

// --- text format ----------------------------------------------------------
//
//   alphabet a A b B
//   inv a A
//   inv b B
//   a A -> 1
//   a a -> A
//
// One rule per line, whitespace-separated tokens, literal `1` for the empty
// word; tokens not named in any `inv` line are self-inverse. Lines starting
// with '#' are comments.

inline std::string rws_to_text(const RewritingSystem& r) {
  const Alphabet& a = r.alphabet();
  std::string out = "alphabet";
  for (const auto& t : a.tokens) out += " " + t;
  out += "\n";
  for (int t = 0; t < a.size(); ++t)
    if (a.inverse(t) > t)
      out += "inv " + a.token(t) + " " + a.token(a.inverse(t)) + "\n";
  for (const Rule& rule : r.rules())
    out += word_to_string(a, rule.lhs) + " -> " + word_to_string(a, rule.rhs) + "\n";
  return out;
}

inline RewritingSystem rws_from_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  Alphabet alpha;
  bool have_alphabet = false;
  std::vector<std::pair<std::string, std::string>> inv_pairs;
  std::vector<std::pair<std::string, std::string>> rule_lines;

  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::vector<std::string> parts;
    std::string tok;
    while (ls >> tok) parts.push_back(tok);
    if (parts.empty() || parts[0][0] == '#') continue;
    if (parts[0] == "alphabet") {
      if (have_alphabet) throw ParseError("rws: duplicate alphabet line");
      alpha.tokens.assign(parts.begin() + 1, parts.end());
      have_alphabet = true;
      continue;
    }
    if (parts[0] == "inv") {
      if (parts.size() != 3)
        throw ParseError("rws: inv line must name exactly two tokens");
      inv_pairs.emplace_back(parts[1], parts[2]);
      continue;
    }
    auto arrow = std::find(parts.begin(), parts.end(), "->");
    if (arrow == parts.end())
      throw ParseError("rws: expected a rule line 'u -> v', got: " + line);
    std::string lhs, rhs;
    for (auto it = parts.begin(); it != arrow; ++it) lhs += *it + " ";
    for (auto it = arrow + 1; it != parts.end(); ++it) rhs += *it + " ";
    if (lhs.empty() || rhs.empty())
      throw ParseError("rws: rule sides may not be missing: " + line);
    rule_lines.emplace_back(lhs, rhs);
  }
  if (!have_alphabet)
    throw ParseError("rws: missing alphabet header line");

  alpha.inv.resize(alpha.tokens.size());
  for (std::size_t t = 0; t < alpha.tokens.size(); ++t)
    alpha.inv[t] = static_cast<int>(t);  // self-inverse unless declared
  for (const auto& [x, y] : inv_pairs) {
    const int xi = alpha.index(x);
    const int yi = alpha.index(y);
    alpha.inv[static_cast<std::size_t>(xi)] = yi;
    alpha.inv[static_cast<std::size_t>(yi)] = xi;
  }
  alpha.validate();

  std::vector<Rule> rules;
  for (const auto& [lhs, rhs] : rule_lines)
    rules.push_back(Rule{parse_word(alpha, lhs), parse_word(alpha, rhs)});
  return RewritingSystem::create(std::move(alpha), std::move(rules));
}

}  // namespace geodetic
