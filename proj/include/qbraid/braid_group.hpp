#pragma once

// Words in free groups, finite presentations, the braid word problem, and a
// bounded rewriting search used to certify relations in finitely presented
// groups.

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <deque>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "qbraid/checks.hpp"
#include "qbraid/errors.hpp"
#include "qbraid/int_matrix.hpp"

namespace qbraid {

// A word in generators 1..n; letter g means the generator, -g its inverse.
class Word {
 public:
  Word() = default;
  Word(std::initializer_list<int> letters) : letters_(letters) { validate(); }
  explicit Word(std::vector<int> letters) : letters_(std::move(letters)) { validate(); }

  // Space-separated signed integers, e.g. "1 2 -1".
  static Word parse(const std::string& text) {
    std::istringstream in(text);
    std::vector<int> letters;
    std::string tok;
    while (in >> tok) {
      std::size_t used = 0;
      int v = 0;
      try {
        v = std::stoi(tok, &used);
      } catch (const std::exception&) {
        throw SchemaError("bad word letter '" + tok + "'");
      }
      if (used != tok.size() || v == 0) throw SchemaError("bad word letter '" + tok + "'");
      letters.push_back(v);
    }
    return Word(std::move(letters));
  }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(letters_[i]);
    }
    return out;
  }

  const std::vector<int>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  int operator[](std::size_t i) const { return letters_[i]; }

  int max_generator() const {
    int m = 0;
    for (int x : letters_) m = std::max(m, std::abs(x));
    return m;
  }

  Word inverse() const {
    std::vector<int> out(letters_.rbegin(), letters_.rend());
    for (int& x : out) x = -x;
    return Word(std::move(out));
  }

  friend Word operator*(const Word& a, const Word& b) {
    std::vector<int> out = a.letters_;
    out.insert(out.end(), b.letters_.begin(), b.letters_.end());
    return Word(std::move(out));
  }

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  void validate() const {
    for (int x : letters_)
      if (x == 0) throw SchemaError("generator index 0 is not allowed");
  }

  std::vector<int> letters_;
};

namespace detail {

inline void free_reduce_in_place(std::vector<int>& w) {
  std::size_t top = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (top > 0 && w[top - 1] == -w[i]) {
      --top;
    } else {
      w[top++] = w[i];
    }
  }
  w.resize(top);
}

}  // namespace detail

inline Word free_reduce(const Word& w) {
  std::vector<int> v = w.letters();
  detail::free_reduce_in_place(v);
  return Word(std::move(v));
}

// Substitutes images[g-1] for each generator g (and its inverse for -g).
inline Word substitute(const Word& w, const std::vector<Word>& images) {
  std::vector<int> out;
  for (int x : w.letters()) {
    const auto g = static_cast<std::size_t>(std::abs(x));
    if (g > images.size()) throw IndexError("no image for generator " + std::to_string(g));
    const Word& img = x > 0 ? images[g - 1] : images[g - 1].inverse();
    out.insert(out.end(), img.letters().begin(), img.letters().end());
  }
  return Word(std::move(out));
}

struct Presentation {
  int generator_count = 0;
  std::vector<Word> relators;
  std::vector<std::string> relator_names;

  Presentation() = default;
  Presentation(int gens, std::vector<Word> rels, std::vector<std::string> names = {})
      : generator_count(gens), relators(std::move(rels)), relator_names(std::move(names)) {
    for (auto& r : relators) {
      r = free_reduce(r);
      if (r.empty()) throw SchemaError("relator reduces to the empty word");
      if (r.max_generator() > generator_count) throw IndexError("relator uses an undeclared generator");
    }
    relator_names.resize(relators.size());
    for (std::size_t i = 0; i < relators.size(); ++i)
      if (relator_names[i].empty()) relator_names[i] = "r" + std::to_string(i + 1);
  }
};

// a b a = b a b as the relator a b a b^-1 a^-1 b^-1.
inline Word braid_relator(int a, int b) { return Word{a, b, a, -b, -a, -b}; }

inline Word commutator(int a, int b) { return Word{a, b, -a, -b}; }

// Artin presentation of Br_n on sigma_1..sigma_{n-1}.
inline Presentation artin_presentation(int strands) {
  std::vector<Word> rels;
  std::vector<std::string> names;
  for (int i = 1; i < strands - 1; ++i) {
    rels.push_back(braid_relator(i, i + 1));
    names.push_back("braid_" + std::to_string(i) + std::to_string(i + 1));
  }
  for (int i = 1; i < strands; ++i)
    for (int j = i + 2; j < strands; ++j) {
      rels.push_back(commutator(i, j));
      names.push_back("commute_" + std::to_string(i) + std::to_string(j));
    }
  return Presentation(std::max(strands - 1, 0), std::move(rels), std::move(names));
}

// The quiver braid group of the 3-cycle quiver with potential cba: braid
// relations between every pair of vertices plus g1 g2 g3 g1 = g2 g3 g1 g2.
inline Presentation quiver_braid_group(bool with_cycle_relation = true) {
  std::vector<Word> rels{braid_relator(1, 2), braid_relator(2, 3), braid_relator(1, 3)};
  std::vector<std::string> names{"braid_12", "braid_23", "braid_13"};
  if (with_cycle_relation) {
    rels.push_back(Word{1, 2, 3, 1} * Word{2, 3, 1, 2}.inverse());
    names.push_back("cycle");
  }
  return Presentation(3, std::move(rels), std::move(names));
}

// ---------------------------------------------------------------------------
// Braid word problem.

namespace detail {

inline void check_braid_indices(int strands, const Word& w) {
  if (strands < 1) throw IndexError("strand count must be positive");
  for (int x : w.letters())
    if (std::abs(x) >= strands) throw IndexError("generator " + std::to_string(std::abs(x)) + " out of range for Br_" + std::to_string(strands));
}

}  // namespace detail

inline constexpr std::size_t kDefaultHandleStepCap = 200000;

// Dehornoy handle reduction. A sigma_i-handle is sigma_i^e v sigma_i^-e with
// every letter of v of index > i; it is replaced by v with each sigma_{i+1}^d
// rewritten as sigma_{i+1}^-e sigma_i^d sigma_{i+1}^e. The handle that closes
// first is reduced each step. Returns the handle-free word, or nothing when
// the step cap is hit. The input is trivial iff the result is empty.
inline std::optional<Word> handle_reduce(int strands, const Word& w, std::size_t step_cap = kDefaultHandleStepCap) {
  detail::check_braid_indices(strands, w);
  std::vector<int> cur = w.letters();
  detail::free_reduce_in_place(cur);
  for (std::size_t step = 0;; ++step) {
    std::size_t open = 0, close = 0;
    bool found = false;
    for (std::size_t k = 1; k < cur.size() && !found; ++k) {
      const int i = std::abs(cur[k]);
      for (std::size_t j = k; j-- > 0;) {
        const int gj = std::abs(cur[j]);
        if (gj > i) continue;
        if (gj == i && cur[j] == -cur[k]) {
          open = j;
          close = k;
          found = true;
        }
        break;
      }
    }
    if (!found) return Word(std::move(cur));
    if (step >= step_cap) return std::nullopt;
    const int i = std::abs(cur[open]);
    const int e = cur[open] > 0 ? 1 : -1;
    std::vector<int> next(cur.begin(), cur.begin() + static_cast<std::ptrdiff_t>(open));
    for (std::size_t m = open + 1; m < close; ++m) {
      const int x = cur[m];
      if (std::abs(x) == i + 1) {
        const int d = x > 0 ? 1 : -1;
        next.push_back(-e * (i + 1));
        next.push_back(d * i);
        next.push_back(e * (i + 1));
      } else {
        next.push_back(x);
      }
    }
    next.insert(next.end(), cur.begin() + static_cast<std::ptrdiff_t>(close) + 1, cur.end());
    detail::free_reduce_in_place(next);
    cur = std::move(next);
  }
}

// Left-greedy (Garside) normal form Delta^p A_1 ... A_k with each A_i a
// proper nontrivial permutation braid and every pair left-weighted.
// Permutations are stored as images of 0..n-1; the braid sigma_i maps to the
// transposition of positions i-1 and i.
class GarsideNormalForm {
 public:
  using Perm = std::vector<int>;

  GarsideNormalForm(int strands, const Word& w) : n_(strands) {
    detail::check_braid_indices(strands, w);
    for (int x : w.letters()) {
      const int i = std::abs(x) - 1;
      if (x > 0) {
        Perm s = identity();
        std::swap(s[static_cast<std::size_t>(i)], s[static_cast<std::size_t>(i) + 1]);
        factors_.push_back(std::move(s));
      } else {
        // x * sigma^-1 = Delta^-1 tau(x) (Delta sigma^-1).
        --delta_power_;
        for (auto& f : factors_) f = tau(f);
        Perm s = delta();
        std::swap(s[static_cast<std::size_t>(i)], s[static_cast<std::size_t>(i) + 1]);
        factors_.push_back(std::move(s));
      }
      normalize();
    }
  }

  int delta_power() const { return delta_power_; }
  const std::vector<Perm>& factors() const { return factors_; }
  bool is_identity() const { return delta_power_ == 0 && factors_.empty(); }

  friend bool operator==(const GarsideNormalForm&, const GarsideNormalForm&) = default;

 private:
  Perm identity() const {
    Perm p(static_cast<std::size_t>(n_));
    std::iota(p.begin(), p.end(), 0);
    return p;
  }

  Perm delta() const {
    Perm p(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) p[static_cast<std::size_t>(i)] = n_ - 1 - i;
    return p;
  }

  // Conjugation by Delta: w0 p w0.
  Perm tau(const Perm& p) const {
    Perm out(p.size());
    for (std::size_t x = 0; x < p.size(); ++x) out[p.size() - 1 - x] = n_ - 1 - p[x];
    return out;
  }

  static bool right_descent(const Perm& p, std::size_t j) { return p[j] > p[j + 1]; }

  static bool left_descent(const Perm& p, std::size_t j) {
    std::size_t pos_j = 0, pos_j1 = 0;
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (p[k] == static_cast<int>(j)) pos_j = k;
      if (p[k] == static_cast<int>(j) + 1) pos_j1 = k;
    }
    return pos_j > pos_j1;
  }

  static void swap_values(Perm& p, int a, int b) {
    for (auto& x : p) {
      if (x == a)
        x = b;
      else if (x == b)
        x = a;
    }
  }

  // Makes (a, b) left-weighted: every starting generator of b moves into a
  // unless a already finishes with it.
  bool left_weight(Perm& a, Perm& b) const {
    bool changed = false;
    for (bool again = true; again;) {
      again = false;
      for (std::size_t j = 0; j + 1 < a.size(); ++j)
        if (left_descent(b, j) && !right_descent(a, j)) {
          std::swap(a[j], a[j + 1]);
          swap_values(b, static_cast<int>(j), static_cast<int>(j) + 1);
          again = changed = true;
        }
    }
    return changed;
  }

  void normalize() {
    for (bool again = true; again;) {
      again = false;
      for (std::size_t k = 0; k + 1 < factors_.size(); ++k) again |= left_weight(factors_[k], factors_[k + 1]);
    }
    const Perm d = delta(), id = identity();
    std::size_t lead = 0;
    while (lead < factors_.size() && factors_[lead] == d) ++lead;
    delta_power_ += static_cast<int>(lead);
    factors_.erase(factors_.begin(), factors_.begin() + static_cast<std::ptrdiff_t>(lead));
    while (!factors_.empty() && factors_.back() == id) factors_.pop_back();
  }

  int n_;
  int delta_power_ = 0;
  std::vector<Perm> factors_;
};

// True iff w is the identity of Br_n. Handle reduction first; on hitting the
// step cap the Garside normal form decides.
inline bool braid_is_trivial(int strands, const Word& w, std::size_t step_cap = kDefaultHandleStepCap) {
  if (auto reduced = handle_reduce(strands, w, step_cap)) return reduced->empty();
  return GarsideNormalForm(strands, w).is_identity();
}

// ---------------------------------------------------------------------------
// Bounded rewriting search in a finitely presented group.

struct SearchBudget {
  std::size_t max_word_length = 24;
  std::size_t max_states = 1000000;

};

// QBRAID_BUDGET="states" or "length,states" overrides the fallback budget.
inline SearchBudget budget_from_env(SearchBudget fallback = SearchBudget{}) {
  const char* raw = std::getenv("QBRAID_BUDGET");
  if (!raw || !*raw) return fallback;
  const std::string s(raw);
  try {
    const auto comma = s.find(',');
    if (comma == std::string::npos) {
      fallback.max_states = std::stoul(s);
    } else {
      fallback.max_word_length = std::stoul(s.substr(0, comma));
      fallback.max_states = std::stoul(s.substr(comma + 1));
    }
  } catch (const std::exception&) {
    throw SchemaError("QBRAID_BUDGET must be 'states' or 'length,states'");
  }
  return fallback;
}

// One rewrite: the subword `pattern` at `position` is replaced by
// `replacement`, where pattern * replacement^-1 is a cyclic rotation of the
// relator (or of its inverse); the result is then freely reduced.
struct RewriteStep {
  std::size_t relator = 0;
  bool inverted = false;
  std::size_t rotation = 0;
  std::size_t split = 0;
  std::size_t position = 0;
  Word before;
  Word after;
};

struct RewriteRule {
  std::size_t relator = 0;
  bool inverted = false;
  std::size_t rotation = 0;
  std::size_t split = 0;
  std::vector<int> pattern;
  std::vector<int> replacement;
};

inline RewriteRule make_rule(const Presentation& p, std::size_t relator, bool inverted, std::size_t rotation, std::size_t split) {
  if (relator >= p.relators.size()) throw IndexError("relator index out of range");
  const Word base = inverted ? p.relators[relator].inverse() : p.relators[relator];
  const auto& b = base.letters();
  if (rotation >= b.size() || split == 0 || split > b.size()) throw IndexError("rewrite rule out of range");
  std::vector<int> rot(b.begin() + static_cast<std::ptrdiff_t>(rotation), b.end());
  rot.insert(rot.end(), b.begin(), b.begin() + static_cast<std::ptrdiff_t>(rotation));
  RewriteRule rule{relator, inverted, rotation, split, {}, {}};
  rule.pattern.assign(rot.begin(), rot.begin() + static_cast<std::ptrdiff_t>(split));
  rule.replacement = Word(std::vector<int>(rot.begin() + static_cast<std::ptrdiff_t>(split), rot.end())).inverse().letters();
  return rule;
}

// Every rule u -> v from every relator, both orientations, all rotations and
// all nonempty left parts; duplicates dropped, first occurrence kept.
inline std::vector<RewriteRule> rewrite_rules(const Presentation& p) {
  std::vector<RewriteRule> out;
  std::vector<std::pair<std::vector<int>, std::vector<int>>> seen;
  for (std::size_t r = 0; r < p.relators.size(); ++r)
    for (bool inv : {false, true})
      for (std::size_t rot = 0; rot < p.relators[r].size(); ++rot)
        for (std::size_t split = 1; split <= p.relators[r].size(); ++split) {
          auto rule = make_rule(p, r, inv, rot, split);
          std::pair key{rule.pattern, rule.replacement};
          if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
          seen.push_back(std::move(key));
          out.push_back(std::move(rule));
        }
  return out;
}

inline std::optional<std::vector<int>> apply_rule(const RewriteRule& rule, const std::vector<int>& w, std::size_t pos) {
  if (pos + rule.pattern.size() > w.size()) return std::nullopt;
  if (!std::equal(rule.pattern.begin(), rule.pattern.end(), w.begin() + static_cast<std::ptrdiff_t>(pos))) return std::nullopt;
  std::vector<int> out(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(pos));
  out.insert(out.end(), rule.replacement.begin(), rule.replacement.end());
  out.insert(out.end(), w.begin() + static_cast<std::ptrdiff_t>(pos + rule.pattern.size()), w.end());
  detail::free_reduce_in_place(out);
  return out;
}

enum class SearchStatus { found, exhausted, budget_exceeded };

struct Derivation {
  SearchStatus status = SearchStatus::exhausted;
  std::vector<RewriteStep> trace;
  std::size_t states_explored = 0;

  bool found() const { return status == SearchStatus::found; }
};

namespace detail {

struct WordHash {
  std::size_t operator()(const std::vector<int>& w) const {
    std::size_t h = w.size();
    for (int x : w) h = h * 1000003u ^ static_cast<std::size_t>(x + 64);
    return h;
  }
};

}  // namespace detail

// Breadth-first search from `target` towards the empty word. Rules and
// positions are expanded in a fixed order, so the returned trace is
// deterministic and of minimal length. A miss is inconclusive, never a proof
// of nontriviality.
inline Derivation relation_search(const Presentation& p, const Word& target, SearchBudget budget = {}) {
  const auto rules = rewrite_rules(p);
  struct Node {
    std::vector<int> word;
    std::size_t parent;
    std::size_t rule;
    std::size_t position;
  };
  std::vector<Node> nodes;
  std::unordered_map<std::vector<int>, std::size_t, detail::WordHash> index;
  std::vector<int> start = target.letters();
  detail::free_reduce_in_place(start);
  nodes.push_back({start, 0, 0, 0});
  index.emplace(start, 0);

  auto build_trace = [&](std::size_t id) {
    std::vector<RewriteStep> trace;
    while (id != 0) {
      const Node& n = nodes[id];
      const auto& rule = rules[n.rule];
      trace.push_back({rule.relator, rule.inverted, rule.rotation, rule.split, n.position, Word(nodes[n.parent].word), Word(n.word)});
      id = n.parent;
    }
    std::reverse(trace.begin(), trace.end());
    return trace;
  };

  Derivation out;
  if (start.empty()) {
    out.status = SearchStatus::found;
    out.states_explored = 1;
    return out;
  }
  for (std::size_t head = 0; head < nodes.size(); ++head) {
    for (std::size_t r = 0; r < rules.size(); ++r) {
      const std::size_t len = nodes[head].word.size();
      for (std::size_t pos = 0; pos + rules[r].pattern.size() <= len; ++pos) {
        auto next = apply_rule(rules[r], nodes[head].word, pos);
        if (!next || next->size() > budget.max_word_length || index.count(*next)) continue;
        const std::size_t id = nodes.size();
        index.emplace(*next, id);
        nodes.push_back({std::move(*next), head, r, pos});
        if (nodes.back().word.empty()) {
          out.status = SearchStatus::found;
          out.trace = build_trace(id);
          out.states_explored = nodes.size();
          return out;
        }
        if (nodes.size() >= budget.max_states) {
          out.status = SearchStatus::budget_exceeded;
          out.states_explored = nodes.size();
          return out;
        }
      }
    }
  }
  out.status = SearchStatus::exhausted;
  out.states_explored = nodes.size();
  return out;
}

// Re-applies every recorded step from scratch; true iff the trace carries
// `target` to the empty word.
inline bool replay_derivation(const Presentation& p, const Word& target, const std::vector<RewriteStep>& trace) {
  std::vector<int> cur = target.letters();
  detail::free_reduce_in_place(cur);
  for (const auto& step : trace) {
    if (Word(cur) != step.before) return false;
    RewriteRule rule;
    try {
      rule = make_rule(p, step.relator, step.inverted, step.rotation, step.split);
    } catch (const IndexError&) {
      return false;
    }
    auto next = apply_rule(rule, cur, step.position);
    if (!next || Word(*next) != step.after) return false;
    cur = std::move(*next);
  }
  return cur.empty();
}

// ---------------------------------------------------------------------------
// Homomorphisms between presentations.

enum class Triviality { trivial, nontrivial, inconclusive };

inline const char* to_string(Triviality t) {
  switch (t) {
    case Triviality::trivial:
      return "trivial";
    case Triviality::nontrivial:
      return "nontrivial";
    case Triviality::inconclusive:
      break;
  }
  return "inconclusive";
}

enum class Verdict { holds, fails, inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::holds:
      return "pass";
    case Verdict::fails:
      return "fail";
    case Verdict::inconclusive:
      break;
  }
  return "inconclusive";
}

struct OracleAnswer {
  Triviality triviality = Triviality::inconclusive;
  std::optional<Derivation> derivation;  // set by rewriting oracles
};

using IdentityOracle = std::function<OracleAnswer(const Word&)>;

inline IdentityOracle braid_oracle(int strands) {
  return [strands](const Word& w) {
    return OracleAnswer{braid_is_trivial(strands, w) ? Triviality::trivial : Triviality::nontrivial, std::nullopt};
  };
}

inline IdentityOracle rewriting_oracle(Presentation p, SearchBudget budget) {
  return [p = std::move(p), budget](const Word& w) {
    auto d = relation_search(p, w, budget);
    const auto t = d.found() ? Triviality::trivial : Triviality::inconclusive;
    return OracleAnswer{t, std::move(d)};
  };
}

struct RelatorCheck {
  std::string name;
  Word relator;
  Word image;  // freely reduced
  OracleAnswer answer;
};

struct HomomorphismCheck {
  Verdict verdict = Verdict::inconclusive;
  std::vector<RelatorCheck> relators;
};

// The assignment generator g -> images[g-1] defines a homomorphism iff every
// relator of the source maps to the identity of the target.
inline HomomorphismCheck verify_homomorphism(const Presentation& source, const std::vector<Word>& images, const IdentityOracle& oracle) {
  if (images.size() != static_cast<std::size_t>(source.generator_count))
    throw IndexError("need one image per source generator");
  HomomorphismCheck out;
  bool any_inconclusive = false, any_fail = false;
  for (std::size_t i = 0; i < source.relators.size(); ++i) {
    RelatorCheck rc{source.relator_names[i], source.relators[i], free_reduce(substitute(source.relators[i], images)), {}};
    rc.answer = oracle(rc.image);
    if (rc.answer.triviality == Triviality::nontrivial) any_fail = true;
    if (rc.answer.triviality == Triviality::inconclusive) any_inconclusive = true;
    out.relators.push_back(std::move(rc));
  }
  out.verdict = any_fail ? Verdict::fails : (any_inconclusive ? Verdict::inconclusive : Verdict::holds);
  return out;
}

// Matrix of a word under generator matrices (inverse letters use inverses).
inline IntMatrix matrix_image(const Word& w, const std::vector<IntMatrix>& gens) {
  if (gens.empty()) throw IndexError("no generator matrices");
  IntMatrix out = IntMatrix::identity(gens.front().size());
  for (int x : w.letters()) {
    const auto g = static_cast<std::size_t>(std::abs(x));
    if (g > gens.size()) throw IndexError("no matrix for generator " + std::to_string(g));
    out = out * (x > 0 ? gens[g - 1] : gens[g - 1].inverse());
  }
  return out;
}

// ---------------------------------------------------------------------------
// G = <g1,g2,g3 | quiver braid relations> versus Br_4.

struct CompositeCheck {
  std::vector<Word> psi_after_phi;  // images of g1, g2, g3
  std::vector<Word> phi_after_psi;  // images of sigma1, sigma2, sigma3
  bool passed = false;
};

struct IsoCertificate {
  HomomorphismCheck phi;  // G -> Br_4
  HomomorphismCheck psi;  // Br_4 -> G
  CompositeCheck composites;
  RelationReport k_theory;  // Br_4 relations on T1, T2, T2 T3 T2^-1
  Word g3_in_new_generators;  // g3 written in g1, g2, h = g2 g3 g2^-1
  Verdict verdict = Verdict::inconclusive;
  std::string failing_part;  // first part that did not pass
};

struct IsoOptions {
  Presentation g = quiver_braid_group();
  std::vector<Word> phi_images{Word{1}, Word{2}, Word{-2, 3, 2}};
  std::vector<Word> psi_images{Word{1}, Word{2}, Word{2, 3, -2}};
  SearchBudget budget = budget_from_env();
};

// phi: g1 -> s1, g2 -> s2, g3 -> s2^-1 s3 s2 and psi: s1 -> g1, s2 -> g2,
// s3 -> g2 g3 g2^-1 are mutually inverse homomorphisms; the K-theory part
// checks the Br_4 relations on the matrices T1, T2, T2 T3 T2^-1.
inline IsoCertificate verify_iso_G_Br4(const std::vector<IntMatrix>& twists, const IsoOptions& opts = {}) {
  if (twists.size() != 3) throw ConfigError("isomorphism certificate needs three twist matrices");
  IsoCertificate cert;
  const Presentation br4 = artin_presentation(4);
  cert.phi = verify_homomorphism(opts.g, opts.phi_images, braid_oracle(4));
  cert.psi = verify_homomorphism(br4, opts.psi_images, rewriting_oracle(opts.g, opts.budget));

  for (int g = 1; g <= 3; ++g)
    cert.composites.psi_after_phi.push_back(free_reduce(substitute(substitute(Word{g}, opts.phi_images), opts.psi_images)));
  for (int s = 1; s <= 3; ++s)
    cert.composites.phi_after_psi.push_back(free_reduce(substitute(substitute(Word{s}, opts.psi_images), opts.phi_images)));
  cert.composites.passed = true;
  for (int i = 0; i < 3; ++i) {
    const Word gen{i + 1};
    if (cert.composites.psi_after_phi[static_cast<std::size_t>(i)] != gen || cert.composites.phi_after_psi[static_cast<std::size_t>(i)] != gen)
      cert.composites.passed = false;
  }

  const IntMatrix h = twists[1] * twists[2] * twists[1].inverse();
  const std::vector<IntMatrix> br4_mats{twists[0], twists[1], h};
  for (std::size_t i = 0; i < br4.relators.size(); ++i)
    cert.k_theory.checks.push_back({br4.relator_names[i], matrix_image(br4.relators[i], br4_mats) == IntMatrix::identity(twists[0].size())});

  // g3 = g2^-1 h g2 with h the third new generator.
  cert.g3_in_new_generators = Word{-2, 3, 2};

  const std::pair<const char*, Verdict> parts[] = {
      {"phi", cert.phi.verdict},
      {"psi", cert.psi.verdict},
      {"composites", cert.composites.passed ? Verdict::holds : Verdict::fails},
      {"k_theory", cert.k_theory.all_passed() ? Verdict::holds : Verdict::fails},
  };
  cert.verdict = Verdict::holds;
  for (const auto& [name, v] : parts) {
    if (v == Verdict::holds) continue;
    if (cert.failing_part.empty()) cert.failing_part = name;
    if (v == Verdict::fails) cert.verdict = Verdict::fails;
    else if (cert.verdict == Verdict::holds) cert.verdict = Verdict::inconclusive;
  }
  return cert;
}

}  // namespace qbraid
