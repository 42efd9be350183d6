#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "satrev/bitset.hpp"
#include "satrev/core.hpp"
#include "satrev/kb.hpp"

namespace satrev::dl {

enum class Fragment { EL, ELU, ALC };

std::string to_string(Fragment f);

struct Signature {
  std::vector<std::string> concepts;     // N_C, nonempty
  std::vector<std::string> roles;        // N_R; index 0 is the reserved r_top
  std::vector<std::string> individuals;  // I

  static constexpr int kRoleTop = 0;

  int concept_index(const std::string& name) const;
  int role_index(const std::string& name) const;
  int individual_index(const std::string& name) const;
};

class Concept {
 public:
  enum class Kind { Name, Top, Bot, And, Or, Not, Exists, Forall };

  static Concept name(int index);
  static Concept top();
  static Concept bot();
  static Concept conj(Concept a, Concept b);
  static Concept disj(Concept a, Concept b);
  static Concept neg(Concept c);
  static Concept exists(int role, Concept c);
  static Concept forall(int role, Concept c);

  Kind kind() const { return node_->kind; }
  int name_index() const { return node_->name; }
  int role() const { return node_->role; }
  const Concept& lhs() const { return *node_->lhs; }
  const Concept& rhs() const { return *node_->rhs; }

  bool operator==(const Concept& o) const { return equal(*node_, *o.node_); }
  bool operator!=(const Concept& o) const { return !(*this == o); }

  // Least fragment containing the constructors used.
  Fragment fragment() const;
  int role_depth() const;

 private:
  struct Node {
    Kind kind;
    int name = -1;
    int role = -1;
    std::shared_ptr<const Concept> lhs, rhs;
  };
  explicit Concept(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static bool equal(const Node& a, const Node& b);
  std::shared_ptr<const Node> node_;
};

struct Axiom {
  enum class Kind { Subsumes, Instance, Role };
  Kind kind = Kind::Subsumes;
  Concept lhs = Concept::top();
  Concept rhs = Concept::top();
  int indiv_a = -1, indiv_b = -1;
  int role = -1;

  static Axiom subsumes(Concept c, Concept d);
  static Axiom instance(int indiv, Concept c);
  static Axiom role_assertion(int a, int b, int role);

  bool operator==(const Axiom&) const;
  Fragment fragment() const;
};

using KB = KnowledgeBase<Axiom>;

// Finite interpretation; extensions are bitmasks over domain elements
// (element d is bit d), roles are n*n masks with (x,y) at bit x*n+y.
struct Interpretation {
  int n = 0;
  std::vector<std::uint32_t> concepts;
  std::vector<std::uint64_t> roles;  // r_top is pinned to the full relation
  std::vector<std::uint8_t> individuals;
};

std::uint32_t eval_concept(const Signature& sig, const Interpretation& i, const Concept& c);
bool satisfies(const Signature& sig, const Interpretation& i, const Axiom& ax);
// Every role relates each domain element to at least one successor.
bool is_serial(const Signature& sig, const Interpretation& i);

std::string to_string(const Signature& sig, const Concept& c);
std::string to_string(const Signature& sig, const Axiom& ax);
Concept parse_concept(const Signature& sig, const std::string& text);
Axiom parse_axiom(const Signature& sig, const std::string& text);

struct Options {
  bool allow_empty_domain = false;
  bool nonempty_concepts = false;
  std::size_t max_models = 20'000'000;
};

class System {
 public:
  using Sentence = Axiom;
  using Model = Interpretation;

  System(Signature sig, Fragment fragment, int bound, Options options = {});

  const Signature& signature() const { return sig_; }
  Fragment fragment() const { return fragment_; }
  int bound() const { return bound_; }
  const Options& options() const { return options_; }

  std::size_t model_count() const { return count_; }
  Model model_at(std::size_t i) const;
  const Bitset& universe() const { return universe_; }
  const Bitset& trivial_models() const { return trivial_; }

  bool satisfies(const Model& m, const Sentence& ax) const;
  const Bitset& sentence_models(const Sentence& ax) const;
  Sentence tautology() const;  // Top [= Top
  std::string sentence_text(const Sentence& ax) const { return to_string(sig_, ax); }

  // Bounded side-condition helpers for the operator catalog. A nonempty
  // context restricts the check to models of those axioms; `serial_only`
  // restricts it to serial interpretations.
  bool subsumed(const Concept& c, const Concept& d, const KB* context = nullptr,
                bool serial_only = false) const;
  bool concept_equiv(const Concept& c, const Concept& d, bool serial_only = false) const;
  const Bitset& serial_universe() const;

  template <class F>
  void for_each_model(F&& f) const {
    Interpretation scratch;
    for (std::size_t i = 0; i < count_; ++i) {
      decode(i, scratch);
      f(i, scratch);
    }
  }

 private:
  void decode(std::size_t index, Interpretation& out) const;

  Signature sig_;
  Fragment fragment_;
  int bound_;
  Options options_;
  std::vector<int> sizes_;                 // enumerated domain sizes
  std::vector<std::size_t> size_counts_;   // interpretations per size
  std::size_t count_ = 0;
  Bitset universe_;
  Bitset trivial_;
  mutable std::optional<Bitset> serial_;
  mutable std::unordered_map<std::string, Bitset> memo_;
  mutable std::unordered_map<std::string, bool> sub_memo_;
};

// ---------------------------------------------------------------------------
// Description trees (EL)

struct DescriptionTree {
  struct Node {
    std::vector<int> labels;                    // sorted concept-name indices
    std::vector<std::pair<int, int>> children;  // (role, child node id)
  };
  std::vector<Node> nodes;  // node 0 is the root

  int depth() const;
};

DescriptionTree to_tree(const Signature& sig, const Concept& c);  // EL without Bot
Concept from_tree(const Signature& sig, const DescriptionTree& t);

// ---------------------------------------------------------------------------
// Concept relaxations and retractions

Concept rho_top(const Concept& c);
Concept kappa_bot(const Concept& c);

// Tree pruning operators; role-depth-0 concepts map to Top.
Concept rho_depth(const Signature& sig, const Concept& c);
Concept rho_leaves(const Signature& sig, const Concept& c);

// ELU normal form: disjunction of EL concepts with existential restrictions
// grouped per role and subsumption-redundant conjuncts removed.
Concept normalize_grouping(const System& sys, const Concept& c);

Concept rho_e(const System& sys, const Concept& c);

struct ExceptionSet {
  std::vector<Concept> exceptions;  // ordered; selection is first-k eligible
  KB context;                       // eligibility is judged modulo these axioms
};

// Joins the first k eligible exceptions (those disjoint from c); sets
// `flagged` when fewer than k are eligible.
Concept rho_exceptions(const System& sys, const Concept& c, const ExceptionSet& es, int k,
                       bool* flagged = nullptr);
// Conjoins complements of all eligible exceptions (those subsumed by c).
Concept kappa_exceptions(const System& sys, const Concept& c, const ExceptionSet& es);

// Literal-level Dalal operators on prefix-shaped concepts Q1 r1 ... Qm rm . D
// with D quantifier-free. kappa erodes each CNF clause by dropping one
// literal at a time; rho dilates each DNF cube the same way.
Concept kappa_dalal(const Concept& c);
Concept rho_dalal(const Concept& c);

// Exception operators applied under the quantifier prefix.
Concept kappa_cap(const System& sys, const Concept& c, const ExceptionSet& es);
Concept rho_cup(const System& sys, const Concept& c, const ExceptionSet& es);

// Single-position quantifier flips on the prefix; concepts without a
// flippable position are returned unchanged with `flagged` set.
Concept kappa_q(const Concept& c, bool* flagged = nullptr);
Concept rho_q(const Concept& c, bool* flagged = nullptr);

// Formula relaxations lifted from concept operators.
using ConceptFn = std::function<Concept(const Concept&)>;
Axiom formula_relax_right(const System& sys, const ConceptFn& rho, const Axiom& ax);
Axiom formula_relax_left(const System& sys, const ConceptFn& kappa, const Axiom& ax);

}  // namespace satrev::dl
