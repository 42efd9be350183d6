#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "satrev/bitset.hpp"
#include "satrev/core.hpp"
#include "satrev/error.hpp"
#include "satrev/kb.hpp"

namespace satrev::pl {

struct Signature {
  std::vector<std::string> atoms;  // nonempty, unique names

  int index_of(const std::string& name) const;
  std::size_t arity() const { return atoms.size(); }
};

// Valuation over the signature's atoms; bit i is the value of atom i, and the
// packed bits are also the model's enumeration index.
struct Valuation {
  std::uint32_t bits = 0;
  int n = 0;

  bool value(int atom) const { return (bits >> atom) & 1u; }
  bool operator==(const Valuation&) const = default;
};

// AST over {atom, ¬, ∨}; ∧ and ⇒ are sugar resolved at construction.
class Sentence {
 public:
  enum class Kind { Atom, Not, Or };

  static Sentence atom(int index);
  static Sentence neg(Sentence s);
  static Sentence disj(Sentence lhs, Sentence rhs);
  static Sentence conj(Sentence lhs, Sentence rhs);     // ¬(¬a ∨ ¬b)
  static Sentence implies(Sentence lhs, Sentence rhs);  // ¬a ∨ b

  Kind kind() const { return node_->kind; }
  int atom_index() const { return node_->atom; }
  const Sentence& lhs() const { return *node_->lhs; }
  const Sentence& rhs() const { return *node_->rhs; }

  bool operator==(const Sentence& o) const { return equal(*node_, *o.node_); }
  bool operator!=(const Sentence& o) const { return !(*this == o); }

  int depth() const;
  int max_atom() const;

 private:
  struct Node {
    Kind kind;
    int atom = -1;
    std::shared_ptr<const Sentence> lhs, rhs;
  };
  explicit Sentence(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static bool equal(const Node& a, const Node& b);

  std::shared_ptr<const Node> node_;
};

using KB = KnowledgeBase<Sentence>;

bool eval(const Valuation& v, const Sentence& s);

// Canonical text: re-sugars ¬(¬a∨¬b) to a & b and ¬a∨b to a -> b.
std::string to_string(const Signature& sig, const Sentence& s);
Sentence parse_sentence(const Signature& sig, const std::string& text);

class System {
 public:
  using Sentence = pl::Sentence;
  using Model = Valuation;

  explicit System(Signature sig);

  const Signature& signature() const { return sig_; }
  std::size_t model_count() const { return std::size_t{1} << sig_.arity(); }
  Model model_at(std::size_t i) const {
    return Valuation{static_cast<std::uint32_t>(i), static_cast<int>(sig_.arity())};
  }
  const Bitset& universe() const { return universe_; }
  const Bitset& trivial_models() const { return trivial_; }  // always empty

  bool satisfies(const Model& m, const Sentence& s) const;
  const Bitset& sentence_models(const Sentence& s) const;
  Sentence tautology() const;  // a0 ∨ ¬a0
  std::string sentence_text(const Sentence& s) const { return to_string(sig_, s); }

 private:
  Signature sig_;
  Bitset universe_;
  Bitset trivial_;
  mutable std::unordered_map<std::string, Bitset> memo_;
};

// Number of positions valued differently.
int hamming(const Valuation& a, const Valuation& b);

// Hamming-ball dilation of radius 1, synthesized back to a sentence as a
// full DNF over the dilated model set. An unsatisfiable input dilates to
// itself (canonical contradiction).
Sentence dilate(const System& sys, const Sentence& s);

// Full-DNF sentence whose models are exactly the given set; the empty set
// yields a canonical contradiction. Result is a one-sentence knowledge base.
KB theory_from_models(const System& sys, const Bitset& models);

// Exhaustive betweenness check for a pluggable distance on valuations.
bool check_betweenness(const System& sys,
                       const std::function<int(const Valuation&, const Valuation&)>& dist);

// All structurally distinct sentences up to the depth, in a fixed order.
// Grows fast; meant for the tiny exhaustive corpora.
std::vector<Sentence> sentence_pool(const Signature& sig, int depth);

}  // namespace satrev::pl

namespace satrev {

template <>
struct TheoryFromModels<pl::System> {
  static constexpr bool available = true;
  static pl::KB build(const pl::System& sys, const Bitset& models) {
    return pl::theory_from_models(sys, models);
  }
};

}  // namespace satrev
