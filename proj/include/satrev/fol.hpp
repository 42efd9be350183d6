#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "satrev/bitset.hpp"
#include "satrev/core.hpp"
#include "satrev/kb.hpp"

namespace satrev::fol {

struct Signature {
  struct Func {
    std::string name;
    std::vector<int> args;  // sort indices
    int result = 0;
  };
  struct Pred {
    std::string name;
    std::vector<int> args;
  };

  std::vector<std::string> sorts;
  std::vector<Func> funcs;
  std::vector<Pred> preds;

  int sort_index(const std::string& name) const;
  int func_index(const std::string& name) const;
  int pred_index(const std::string& name) const;
};

// Terms reference quantified variables by their position in the enclosing
// block's prefix.
struct Term {
  enum class Kind { Var, App };
  Kind kind = Kind::Var;
  int var = -1;
  int func = -1;
  std::vector<Term> args;

  static Term variable(int index) { return Term{Kind::Var, index, -1, {}}; }
  static Term apply(int func, std::vector<Term> args) {
    return Term{Kind::App, -1, func, std::move(args)};
  }
  bool operator==(const Term&) const = default;
};

// Quantifier-free matrix in negation normal form (negation on atoms only).
class Matrix {
 public:
  enum class Kind { Atom, Not, Or, And };

  static Matrix atom(int pred, std::vector<Term> terms);
  static Matrix neg(Matrix m);
  static Matrix disj(Matrix a, Matrix b);
  static Matrix conj(Matrix a, Matrix b);

  Kind kind() const { return node_->kind; }
  int pred() const { return node_->pred; }
  const std::vector<Term>& terms() const { return node_->terms; }
  const Matrix& lhs() const { return *node_->lhs; }
  const Matrix& rhs() const { return *node_->rhs; }

  bool operator==(const Matrix& o) const { return equal(*node_, *o.node_); }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

 private:
  struct Node {
    Kind kind;
    int pred = -1;
    std::vector<Term> terms;
    std::shared_ptr<const Matrix> lhs, rhs;
  };
  explicit Matrix(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static bool equal(const Node& a, const Node& b);
  std::shared_ptr<const Node> node_;
};

enum class Quant { Forall, Exists };

struct Prefix {
  Quant quant;
  int sort;
  bool operator==(const Prefix&) const = default;
};

struct Block {
  std::vector<Prefix> prefix;
  Matrix matrix;
  bool operator==(const Block&) const = default;
};

// A sentence is a disjunction of prenex blocks.
struct Sentence {
  std::vector<Block> blocks;
  bool operator==(const Sentence&) const = default;
};

using KB = KnowledgeBase<Sentence>;

// Finite many-sorted structure within the bound.
struct Structure {
  std::vector<int> carriers;                     // size per sort
  std::vector<std::vector<std::uint8_t>> funcs;  // value per flattened arg tuple
  std::vector<std::vector<std::uint8_t>> preds;  // membership per flattened arg tuple
};

bool eval(const Signature& sig, const Structure& m, const Sentence& s);

std::string to_string(const Signature& sig, const Sentence& s);

// Parses an arbitrary first-order formula; implications are removed, the
// matrix is brought to negation normal form, quantifiers are pulled into a
// prenex prefix per top-level disjunct, and variables are canonicalized to
// x0, x1, ... by prefix position.
Sentence parse_sentence(const Signature& sig, const std::string& text);

class System {
 public:
  using Sentence = fol::Sentence;
  using Model = Structure;

  System(Signature sig, int bound, std::size_t max_models = 20'000'000);

  const Signature& signature() const { return sig_; }
  int bound() const { return bound_; }

  std::size_t model_count() const { return count_; }
  Model model_at(std::size_t i) const;
  const Bitset& universe() const { return universe_; }
  const Bitset& trivial_models() const { return trivial_; }  // always empty

  bool satisfies(const Model& m, const Sentence& s) const;
  const Bitset& sentence_models(const Sentence& s) const;
  Sentence tautology() const;
  std::string sentence_text(const Sentence& s) const { return to_string(sig_, s); }

 private:
  Signature sig_;
  int bound_;
  std::vector<std::vector<int>> size_tuples_;  // carrier sizes, lexicographic
  std::vector<std::size_t> tuple_counts_;      // structures per size tuple
  std::size_t count_ = 0;
  Bitset universe_;
  Bitset trivial_;
  mutable std::unordered_map<std::string, Bitset> memo_;
};

// Canonical tautology: the universal closure of p(x...) | !p(x...) over the
// first predicate of the signature.
Sentence canonical_tautology(const Signature& sig);

// Quantifier-flip relaxation: a tautology stays put; a block without
// universal quantifiers collapses to the tautology; otherwise each universal
// position is flipped to an existential, one position per disjunct.
Sentence relax(const Signature& sig, const Sentence& s);

}  // namespace satrev::fol
