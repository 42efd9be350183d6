#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "satrev/bitset.hpp"
#include "satrev/core.hpp"
#include "satrev/kb.hpp"
#include "satrev/pl.hpp"

namespace satrev::horn {

using Signature = pl::Signature;
using Valuation = pl::Valuation;

// body => head, body possibly empty (a fact).
struct Clause {
  std::vector<int> body;  // sorted, deduped atom indices
  int head = 0;

  bool operator==(const Clause&) const = default;
  bool operator<(const Clause&) const;
};

// A sentence is a conjunction of Horn clauses, kept sorted and deduped.
struct Sentence {
  std::vector<Clause> clauses;

  static Sentence of(std::vector<Clause> clauses);
  bool operator==(const Sentence&) const = default;
};

using KB = KnowledgeBase<Sentence>;

bool eval(const Valuation& v, const Sentence& s);
std::string to_string(const Signature& sig, const Sentence& s);

// One clause per line, `a & b -> c`; facts as `-> c`.
Sentence parse_sentence(const Signature& sig, const std::string& block);

class System {
 public:
  using Sentence = horn::Sentence;
  using Model = Valuation;

  explicit System(Signature sig);

  const Signature& signature() const { return sig_; }
  std::size_t model_count() const { return std::size_t{1} << sig_.arity(); }
  Model model_at(std::size_t i) const {
    return Valuation{static_cast<std::uint32_t>(i), static_cast<int>(sig_.arity())};
  }
  const Bitset& universe() const { return universe_; }
  // The all-true valuation satisfies every Horn clause.
  const Bitset& trivial_models() const { return trivial_; }

  bool satisfies(const Model& m, const Sentence& s) const;
  const Bitset& sentence_models(const Sentence& s) const;
  Sentence tautology() const;  // a0 -> a0
  std::string sentence_text(const Sentence& s) const { return to_string(sig_, s); }

 private:
  Signature sig_;
  Bitset universe_;
  Bitset trivial_;
  mutable std::unordered_map<std::string, Bitset> memo_;
};

// Pointwise conjunction of valuations.
Valuation model_intersect(const Valuation& a, const Valuation& b);

// Least superset closed under pairwise intersection (iterated to fixpoint).
Bitset intersection_closure(const System& sys, const Bitset& s);

// Conjunction of every clause over the signature satisfied by all members of
// a closed set. The all-true valuation is a model of any Horn sentence, so
// Mod(result) = s ∪ {all-true}. Errors if s is not intersection-closed.
Sentence horn_from_models(const System& sys, const Bitset& s);

KB theory_from_models(const System& sys, const Bitset& s);

// Horn relaxation: dilate by Hamming radius 1, close under intersection,
// then re-synthesize.
Sentence relax(const System& sys, const Sentence& s);

}  // namespace satrev::horn

namespace satrev {

// Horn synthesis hits the prescribed set only up to the all-true model;
// callers quantifying over canonical theories inherit that caveat.
template <>
struct TheoryFromModels<horn::System> {
  static constexpr bool available = true;
  static horn::KB build(const horn::System& sys, const Bitset& models) {
    return horn::theory_from_models(sys, models);
  }
};

}  // namespace satrev
