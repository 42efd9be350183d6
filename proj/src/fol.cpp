#include "satrev/fol.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "satrev/error.hpp"

namespace satrev::fol {

int Signature::sort_index(const std::string& name) const {
  for (std::size_t i = 0; i < sorts.size(); ++i)
    if (sorts[i] == name) return static_cast<int>(i);
  return -1;
}
int Signature::func_index(const std::string& name) const {
  for (std::size_t i = 0; i < funcs.size(); ++i)
    if (funcs[i].name == name) return static_cast<int>(i);
  return -1;
}
int Signature::pred_index(const std::string& name) const {
  for (std::size_t i = 0; i < preds.size(); ++i)
    if (preds[i].name == name) return static_cast<int>(i);
  return -1;
}

Matrix Matrix::atom(int pred, std::vector<Term> terms) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Atom;
  n->pred = pred;
  n->terms = std::move(terms);
  return Matrix(std::move(n));
}
Matrix Matrix::neg(Matrix m) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Not;
  n->lhs = std::make_shared<Matrix>(std::move(m));
  return Matrix(std::move(n));
}
Matrix Matrix::disj(Matrix a, Matrix b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Or;
  n->lhs = std::make_shared<Matrix>(std::move(a));
  n->rhs = std::make_shared<Matrix>(std::move(b));
  return Matrix(std::move(n));
}
Matrix Matrix::conj(Matrix a, Matrix b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::And;
  n->lhs = std::make_shared<Matrix>(std::move(a));
  n->rhs = std::make_shared<Matrix>(std::move(b));
  return Matrix(std::move(n));
}

bool Matrix::equal(const Node& a, const Node& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Kind::Atom: return a.pred == b.pred && a.terms == b.terms;
    case Kind::Not: return *a.lhs == *b.lhs;
    case Kind::Or:
    case Kind::And: return *a.lhs == *b.lhs && *a.rhs == *b.rhs;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

int eval_term(const Signature& sig, const Structure& m, const std::vector<int>& env,
              const Term& t) {
  if (t.kind == Term::Kind::Var) return env[static_cast<std::size_t>(t.var)];
  const auto& f = sig.funcs[static_cast<std::size_t>(t.func)];
  std::size_t flat = 0;
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    int v = eval_term(sig, m, env, t.args[i]);
    flat = flat * static_cast<std::size_t>(m.carriers[static_cast<std::size_t>(f.args[i])]) +
           static_cast<std::size_t>(v);
  }
  return m.funcs[static_cast<std::size_t>(t.func)][flat];
}

bool eval_matrix(const Signature& sig, const Structure& m, const std::vector<int>& env,
                 const Matrix& mx) {
  switch (mx.kind()) {
    case Matrix::Kind::Atom: {
      const auto& p = sig.preds[static_cast<std::size_t>(mx.pred())];
      std::size_t flat = 0;
      for (std::size_t i = 0; i < mx.terms().size(); ++i) {
        int v = eval_term(sig, m, env, mx.terms()[i]);
        flat = flat * static_cast<std::size_t>(m.carriers[static_cast<std::size_t>(p.args[i])]) +
               static_cast<std::size_t>(v);
      }
      return m.preds[static_cast<std::size_t>(mx.pred())][flat] != 0;
    }
    case Matrix::Kind::Not: return !eval_matrix(sig, m, env, mx.lhs());
    case Matrix::Kind::Or:
      return eval_matrix(sig, m, env, mx.lhs()) || eval_matrix(sig, m, env, mx.rhs());
    case Matrix::Kind::And:
      return eval_matrix(sig, m, env, mx.lhs()) && eval_matrix(sig, m, env, mx.rhs());
  }
  return false;
}

bool eval_block_from(const Signature& sig, const Structure& m, const Block& b,
                     std::vector<int>& env, std::size_t depth) {
  if (depth == b.prefix.size()) return eval_matrix(sig, m, env, b.matrix);
  int carrier = m.carriers[static_cast<std::size_t>(b.prefix[depth].sort)];
  if (b.prefix[depth].quant == Quant::Forall) {
    for (int v = 0; v < carrier; ++v) {
      env[depth] = v;
      if (!eval_block_from(sig, m, b, env, depth + 1)) return false;
    }
    return true;
  }
  for (int v = 0; v < carrier; ++v) {
    env[depth] = v;
    if (eval_block_from(sig, m, b, env, depth + 1)) return true;
  }
  return false;
}

}  // namespace

bool eval(const Signature& sig, const Structure& m, const Sentence& s) {
  for (const auto& b : s.blocks) {
    std::vector<int> env(b.prefix.size(), 0);
    if (eval_block_from(sig, m, b, env, 0)) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

constexpr int kLevelOr = 1;
constexpr int kLevelAnd = 2;

void print_term(const Signature& sig, const Term& t, std::string& out) {
  if (t.kind == Term::Kind::Var) {
    out += 'x';
    out += std::to_string(t.var);
    return;
  }
  out += sig.funcs[static_cast<std::size_t>(t.func)].name;
  if (!t.args.empty()) {
    out += '(';
    for (std::size_t i = 0; i < t.args.size(); ++i) {
      if (i) out += ", ";
      print_term(sig, t.args[i], out);
    }
    out += ')';
  }
}

void print_atom(const Signature& sig, const Matrix& mx, std::string& out) {
  const auto& p = sig.preds[static_cast<std::size_t>(mx.pred())];
  if (p.name == "=" && mx.terms().size() == 2) {
    print_term(sig, mx.terms()[0], out);
    out += " = ";
    print_term(sig, mx.terms()[1], out);
    return;
  }
  out += p.name;
  if (!mx.terms().empty()) {
    out += '(';
    for (std::size_t i = 0; i < mx.terms().size(); ++i) {
      if (i) out += ", ";
      print_term(sig, mx.terms()[i], out);
    }
    out += ')';
  }
}

void print_matrix(const Signature& sig, const Matrix& mx, int parent_level, std::string& out) {
  switch (mx.kind()) {
    case Matrix::Kind::Atom:
      print_atom(sig, mx, out);
      return;
    case Matrix::Kind::Not:
      out += '!';
      if (mx.lhs().kind() == Matrix::Kind::Atom) {
        out += '(';
        print_atom(sig, mx.lhs(), out);
        out += ')';
      } else {
        print_matrix(sig, mx.lhs(), 3, out);
      }
      return;
    case Matrix::Kind::Or: {
      bool paren = parent_level > kLevelOr;
      if (paren) out += '(';
      print_matrix(sig, mx.lhs(), kLevelOr, out);
      out += " | ";
      print_matrix(sig, mx.rhs(), kLevelOr + 1, out);
      if (paren) out += ')';
      return;
    }
    case Matrix::Kind::And: {
      bool paren = parent_level > kLevelAnd;
      if (paren) out += '(';
      print_matrix(sig, mx.lhs(), kLevelAnd, out);
      out += " & ";
      print_matrix(sig, mx.rhs(), kLevelAnd + 1, out);
      if (paren) out += ')';
      return;
    }
  }
}

void print_block(const Signature& sig, const Block& b, bool paren, std::string& out) {
  if (paren && !b.prefix.empty()) out += '(';
  for (std::size_t i = 0; i < b.prefix.size(); ++i) {
    out += b.prefix[i].quant == Quant::Forall ? "forall x" : "exists x";
    out += std::to_string(i);
    out += ':';
    out += sig.sorts[static_cast<std::size_t>(b.prefix[i].sort)];
    out += ". ";
  }
  print_matrix(sig, b.matrix, b.prefix.empty() && paren ? kLevelOr + 1 : 0, out);
  if (paren && !b.prefix.empty()) out += ')';
}

}  // namespace

std::string to_string(const Signature& sig, const Sentence& s) {
  std::string out;
  for (std::size_t i = 0; i < s.blocks.size(); ++i) {
    if (i) out += " | ";
    print_block(sig, s.blocks[i], s.blocks.size() > 1, out);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parsing and prenexing

namespace {

// Parse-time formula with named variables.
struct PF {
  enum class K { Atom, Not, Or, And, Implies, Forall, Exists };
  K k;
  int pred = -1;
  struct PTerm {
    bool is_var = true;
    std::string var;
    int func = -1;
    std::vector<PTerm> args;
  };
  std::vector<PTerm> terms;
  std::unique_ptr<PF> lhs, rhs;
  std::string var;  // quantified variable
  int sort = -1;
};

using PTerm = PF::PTerm;

struct Lexer {
  const std::string& text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool eat(const std::string& tok) {
    skip_ws();
    if (text.compare(pos, tok.size(), tok) == 0) {
      // keywords must not run into identifier characters
      if (std::isalpha(static_cast<unsigned char>(tok[0]))) {
        std::size_t after = pos + tok.size();
        if (after < text.size() &&
            (std::isalnum(static_cast<unsigned char>(text[after])) || text[after] == '_'))
          return false;
      }
      pos += tok.size();
      return true;
    }
    return false;
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  std::string ident() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    if (start == pos) throw Error::parse("expected identifier (column " + std::to_string(pos + 1) + ")");
    return text.substr(start, pos - start);
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw Error::parse(msg + " (column " + std::to_string(pos + 1) + ")");
  }
};

struct FolParser {
  const Signature& sig;
  Lexer lex;

  std::unique_ptr<PF> parse_implies() {
    auto lhs = parse_or();
    if (lex.eat("->")) {
      auto node = std::make_unique<PF>();
      node->k = PF::K::Implies;
      node->lhs = std::move(lhs);
      node->rhs = parse_implies();
      return node;
    }
    return lhs;
  }
  std::unique_ptr<PF> parse_or() {
    auto lhs = parse_and();
    for (;;) {
      lex.skip_ws();
      if (lex.peek() == '|') {
        ++lex.pos;
        auto node = std::make_unique<PF>();
        node->k = PF::K::Or;
        node->lhs = std::move(lhs);
        node->rhs = parse_and();
        lhs = std::move(node);
      } else {
        return lhs;
      }
    }
  }
  std::unique_ptr<PF> parse_and() {
    auto lhs = parse_unary();
    for (;;) {
      lex.skip_ws();
      if (lex.peek() == '&') {
        ++lex.pos;
        auto node = std::make_unique<PF>();
        node->k = PF::K::And;
        node->lhs = std::move(lhs);
        node->rhs = parse_unary();
        lhs = std::move(node);
      } else {
        return lhs;
      }
    }
  }
  std::unique_ptr<PF> parse_unary() {
    if (lex.eat("forall")) return parse_quant(PF::K::Forall);
    if (lex.eat("exists")) return parse_quant(PF::K::Exists);
    if (lex.peek() == '!') {
      ++lex.pos;
      auto node = std::make_unique<PF>();
      node->k = PF::K::Not;
      node->lhs = parse_unary();
      return node;
    }
    if (lex.peek() == '(') {
      ++lex.pos;
      auto inner = parse_implies();
      if (lex.peek() != ')') lex.fail("expected ')'");
      ++lex.pos;
      return inner;
    }
    return parse_atom();
  }
  std::unique_ptr<PF> parse_quant(PF::K k) {
    auto node = std::make_unique<PF>();
    node->k = k;
    node->var = lex.ident();
    if (lex.peek() != ':') lex.fail("expected ':' after quantified variable");
    ++lex.pos;
    std::string sort = lex.ident();
    node->sort = sig.sort_index(sort);
    if (node->sort < 0) throw Error::parse("unknown sort '" + sort + "'");
    if (lex.peek() != '.') lex.fail("expected '.' after quantifier");
    ++lex.pos;
    node->lhs = parse_implies();
    return node;
  }

  PTerm parse_term() {
    std::string name = lex.ident();
    PTerm t;
    if (lex.peek() == '(' && sig.func_index(name) >= 0) {
      ++lex.pos;
      t.is_var = false;
      t.func = sig.func_index(name);
      if (lex.peek() != ')') {
        t.args.push_back(parse_term());
        while (lex.peek() == ',') {
          ++lex.pos;
          t.args.push_back(parse_term());
        }
      }
      if (lex.peek() != ')') lex.fail("expected ')' in term");
      ++lex.pos;
      return t;
    }
    if (sig.func_index(name) >= 0 && sig.funcs[static_cast<std::size_t>(sig.func_index(name))].args.empty()) {
      t.is_var = false;
      t.func = sig.func_index(name);
      return t;
    }
    t.is_var = true;
    t.var = name;
    return t;
  }

  std::unique_ptr<PF> parse_atom() {
    lex.skip_ws();
    std::size_t save = lex.pos;
    std::string name = lex.ident();
    // predicate application
    if (sig.pred_index(name) >= 0 && lex.peek() == '(') {
      ++lex.pos;
      auto node = std::make_unique<PF>();
      node->k = PF::K::Atom;
      node->pred = sig.pred_index(name);
      if (lex.peek() != ')') {
        node->terms.push_back(parse_term());
        while (lex.peek() == ',') {
          ++lex.pos;
          node->terms.push_back(parse_term());
        }
      }
      if (lex.peek() != ')') lex.fail("expected ')' in atom");
      ++lex.pos;
      return node;
    }
    // 0-ary predicate
    if (sig.pred_index(name) >= 0 &&
        sig.preds[static_cast<std::size_t>(sig.pred_index(name))].args.empty() &&
        lex.peek() != '=') {
      auto node = std::make_unique<PF>();
      node->k = PF::K::Atom;
      node->pred = sig.pred_index(name);
      return node;
    }
    // infix equality over terms: t1 = t2
    lex.pos = save;
    PTerm t1 = parse_term();
    if (lex.peek() != '=') lex.fail("expected an atom");
    ++lex.pos;
    PTerm t2 = parse_term();
    int eq = sig.pred_index("=");
    if (eq < 0) throw Error::parse("signature has no '=' predicate for infix equality");
    auto node = std::make_unique<PF>();
    node->k = PF::K::Atom;
    node->pred = eq;
    node->terms = {std::move(t1), std::move(t2)};
    return node;
  }
};

std::unique_ptr<PF> clone_pf(const PF& f) {
  auto out = std::make_unique<PF>();
  out->k = f.k;
  out->pred = f.pred;
  out->terms = f.terms;
  out->var = f.var;
  out->sort = f.sort;
  if (f.lhs) out->lhs = clone_pf(*f.lhs);
  if (f.rhs) out->rhs = clone_pf(*f.rhs);
  return out;
}

std::unique_ptr<PF> remove_implies(std::unique_ptr<PF> f) {
  if (f->lhs) f->lhs = remove_implies(std::move(f->lhs));
  if (f->rhs) f->rhs = remove_implies(std::move(f->rhs));
  if (f->k == PF::K::Implies) {
    auto neg = std::make_unique<PF>();
    neg->k = PF::K::Not;
    neg->lhs = std::move(f->lhs);
    auto node = std::make_unique<PF>();
    node->k = PF::K::Or;
    node->lhs = std::move(neg);
    node->rhs = std::move(f->rhs);
    return node;
  }
  return f;
}

std::unique_ptr<PF> nnf(std::unique_ptr<PF> f, bool negate) {
  switch (f->k) {
    case PF::K::Atom: {
      if (!negate) return f;
      auto node = std::make_unique<PF>();
      node->k = PF::K::Not;
      node->lhs = std::move(f);
      return node;
    }
    case PF::K::Not:
      return nnf(std::move(f->lhs), !negate);
    case PF::K::Or:
    case PF::K::And: {
      f->lhs = nnf(std::move(f->lhs), negate);
      f->rhs = nnf(std::move(f->rhs), negate);
      if (negate) f->k = f->k == PF::K::Or ? PF::K::And : PF::K::Or;
      return f;
    }
    case PF::K::Forall:
    case PF::K::Exists: {
      f->lhs = nnf(std::move(f->lhs), negate);
      if (negate) f->k = f->k == PF::K::Forall ? PF::K::Exists : PF::K::Forall;
      return f;
    }
    case PF::K::Implies:
      throw Error::semantic("internal: implication after desugaring");
  }
  return f;
}

struct ScopedVar {
  std::string name;
  int slot;
  int sort;
};

Term lower_term(const Signature& sig, const std::vector<ScopedVar>& scope, const PTerm& t,
                int* sort_out) {
  if (t.is_var) {
    for (auto it = scope.rbegin(); it != scope.rend(); ++it)
      if (it->name == t.var) {
        if (sort_out) *sort_out = it->sort;
        return Term::variable(it->slot);
      }
    throw Error::parse("unbound variable '" + t.var + "'");
  }
  const auto& f = sig.funcs[static_cast<std::size_t>(t.func)];
  if (t.args.size() != f.args.size())
    throw Error::parse("function '" + f.name + "' arity mismatch");
  std::vector<Term> args;
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    int s = -1;
    args.push_back(lower_term(sig, scope, t.args[i], &s));
    if (s != f.args[i]) throw Error::parse("sort mismatch in argument of '" + f.name + "'");
  }
  if (sort_out) *sort_out = f.result;
  return Term::apply(t.func, std::move(args));
}

// Prenexing of an NNF formula: pulls quantifiers left-to-right, renaming
// apart by allocating one prefix slot per quantifier occurrence.
struct PrenexCtx {
  const Signature& sig;
  std::vector<Prefix> prefix;
  std::vector<ScopedVar> scope;
};

Matrix prenex(PrenexCtx& ctx, const PF& f) {
  switch (f.k) {
    case PF::K::Atom: {
      const auto& p = ctx.sig.preds[static_cast<std::size_t>(f.pred)];
      if (f.terms.size() != p.args.size())
        throw Error::parse("predicate '" + p.name + "' arity mismatch");
      std::vector<Term> terms;
      for (std::size_t i = 0; i < f.terms.size(); ++i) {
        int s = -1;
        terms.push_back(lower_term(ctx.sig, ctx.scope, f.terms[i], &s));
        if (s != p.args[i]) throw Error::parse("sort mismatch in argument of '" + p.name + "'");
      }
      return Matrix::atom(f.pred, std::move(terms));
    }
    case PF::K::Not:
      return Matrix::neg(prenex(ctx, *f.lhs));
    case PF::K::Or: {
      Matrix a = prenex(ctx, *f.lhs);
      Matrix b = prenex(ctx, *f.rhs);
      return Matrix::disj(std::move(a), std::move(b));
    }
    case PF::K::And: {
      Matrix a = prenex(ctx, *f.lhs);
      Matrix b = prenex(ctx, *f.rhs);
      return Matrix::conj(std::move(a), std::move(b));
    }
    case PF::K::Forall:
    case PF::K::Exists: {
      int slot = static_cast<int>(ctx.prefix.size());
      ctx.prefix.push_back(
          Prefix{f.k == PF::K::Forall ? Quant::Forall : Quant::Exists, f.sort});
      ctx.scope.push_back(ScopedVar{f.var, slot, f.sort});
      Matrix body = prenex(ctx, *f.lhs);
      ctx.scope.pop_back();
      return body;
    }
    case PF::K::Implies:
      throw Error::semantic("internal: implication after desugaring");
  }
  throw Error::semantic("internal: unreachable");
}

void split_disjuncts(std::unique_ptr<PF> f, std::vector<std::unique_ptr<PF>>& out) {
  if (f->k == PF::K::Or) {
    split_disjuncts(std::move(f->lhs), out);
    split_disjuncts(std::move(f->rhs), out);
  } else {
    out.push_back(std::move(f));
  }
}

}  // namespace

Sentence parse_sentence(const Signature& sig, const std::string& text) {
  FolParser parser{sig, Lexer{text}};
  auto pf = parser.parse_implies();
  parser.lex.skip_ws();
  if (parser.lex.pos != text.size()) parser.lex.fail("trailing input");
  pf = remove_implies(std::move(pf));
  pf = nnf(std::move(pf), false);

  std::vector<std::unique_ptr<PF>> disjuncts;
  split_disjuncts(std::move(pf), disjuncts);

  Sentence s;
  for (auto& d : disjuncts) {
    PrenexCtx ctx{sig, {}, {}};
    Matrix m = prenex(ctx, *d);
    s.blocks.push_back(Block{std::move(ctx.prefix), std::move(m)});
  }
  return s;
}

// ---------------------------------------------------------------------------
// System

namespace {

std::size_t ipow(std::size_t base, std::size_t exp, std::size_t cap) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && r > cap / base) return cap + 1;
    r *= base;
  }
  return r;
}

std::size_t table_entries(const std::vector<int>& carriers, const std::vector<int>& args) {
  std::size_t n = 1;
  for (int s : args) n *= static_cast<std::size_t>(carriers[static_cast<std::size_t>(s)]);
  return n;
}

std::size_t structures_for_tuple(const Signature& sig, const std::vector<int>& carriers,
                                 std::size_t cap) {
  std::size_t total = 1;
  for (const auto& f : sig.funcs) {
    std::size_t entries = table_entries(carriers, f.args);
    std::size_t options =
        ipow(static_cast<std::size_t>(carriers[static_cast<std::size_t>(f.result)]), entries, cap);
    if (options > cap || total > cap / options) return cap + 1;
    total *= options;
  }
  for (const auto& p : sig.preds) {
    std::size_t entries = table_entries(carriers, p.args);
    std::size_t options = ipow(2, entries, cap);
    if (options > cap || total > cap / options) return cap + 1;
    total *= options;
  }
  return total;
}

}  // namespace

System::System(Signature sig, int bound, std::size_t max_models)
    : sig_(std::move(sig)), bound_(bound) {
  if (bound_ < 1) throw Error::semantic("first-order bound must be at least 1");
  if (sig_.sorts.empty()) throw Error::semantic("first-order signature needs at least one sort");
  if (sig_.preds.empty())
    throw Error::semantic("first-order signature needs at least one predicate");

  // carrier-size tuples in lexicographic order, sizes 1..bound each
  std::vector<int> tuple(sig_.sorts.size(), 1);
  for (;;) {
    size_tuples_.push_back(tuple);
    std::size_t i = tuple.size();
    while (i > 0) {
      if (tuple[i - 1] < bound_) {
        ++tuple[i - 1];
        for (std::size_t j = i; j < tuple.size(); ++j) tuple[j] = 1;
        break;
      }
      --i;
    }
    if (i == 0) break;
  }

  for (const auto& t : size_tuples_) {
    std::size_t c = structures_for_tuple(sig_, t, max_models);
    tuple_counts_.push_back(c);
    count_ += c;
    if (count_ > max_models)
      throw Error::semantic("bounded structure space exceeds the enumeration ceiling");
  }
  universe_ = Bitset(count_, true);
  trivial_ = Bitset(count_, false);
}

Structure System::model_at(std::size_t index) const {
  std::size_t ti = 0;
  while (index >= tuple_counts_[ti]) {
    index -= tuple_counts_[ti];
    ++ti;
  }
  Structure m;
  m.carriers = size_tuples_[ti];
  for (const auto& f : sig_.funcs) {
    std::size_t entries = table_entries(m.carriers, f.args);
    std::size_t base = static_cast<std::size_t>(m.carriers[static_cast<std::size_t>(f.result)]);
    std::vector<std::uint8_t> table(entries);
    for (std::size_t e = 0; e < entries; ++e) {
      table[e] = static_cast<std::uint8_t>(index % base);
      index /= base;
    }
    m.funcs.push_back(std::move(table));
  }
  for (const auto& p : sig_.preds) {
    std::size_t entries = table_entries(m.carriers, p.args);
    std::vector<std::uint8_t> table(entries);
    for (std::size_t e = 0; e < entries; ++e) {
      table[e] = static_cast<std::uint8_t>(index & 1);
      index >>= 1;
    }
    m.preds.push_back(std::move(table));
  }
  return m;
}

namespace {

void validate_term(const Signature& sig, const Term& t, std::size_t max_var) {
  if (t.kind == Term::Kind::Var) {
    if (t.var < 0 || static_cast<std::size_t>(t.var) >= max_var)
      throw Error::semantic("term variable outside the quantifier prefix");
    return;
  }
  if (t.func < 0 || static_cast<std::size_t>(t.func) >= sig.funcs.size())
    throw Error::semantic("sentence mentions a function outside the signature");
  for (const auto& a : t.args) validate_term(sig, a, max_var);
}

void validate_matrix(const Signature& sig, const Matrix& m, std::size_t max_var) {
  switch (m.kind()) {
    case Matrix::Kind::Atom:
      if (m.pred() < 0 || static_cast<std::size_t>(m.pred()) >= sig.preds.size())
        throw Error::semantic("sentence mentions a predicate outside the signature");
      for (const auto& t : m.terms()) validate_term(sig, t, max_var);
      return;
    case Matrix::Kind::Not:
      validate_matrix(sig, m.lhs(), max_var);
      return;
    case Matrix::Kind::Or:
    case Matrix::Kind::And:
      validate_matrix(sig, m.lhs(), max_var);
      validate_matrix(sig, m.rhs(), max_var);
      return;
  }
}

}  // namespace

bool System::satisfies(const Model& m, const Sentence& s) const {
  for (const auto& b : s.blocks) validate_matrix(sig_, b.matrix, b.prefix.size());
  return eval(sig_, m, s);
}

const Bitset& System::sentence_models(const Sentence& s) const {
  std::string k = sentence_text(s);
  auto it = memo_.find(k);
  if (it != memo_.end()) return it->second;
  Bitset bs(count_);
  for (std::size_t i = 0; i < count_; ++i)
    if (eval(sig_, model_at(i), s)) bs.set(i);
  return memo_.emplace(std::move(k), std::move(bs)).first->second;
}

Sentence System::tautology() const { return canonical_tautology(sig_); }

Sentence canonical_tautology(const Signature& sig) {
  const auto& p = sig.preds.front();
  std::vector<Prefix> prefix;
  std::vector<Term> terms;
  for (std::size_t i = 0; i < p.args.size(); ++i) {
    prefix.push_back(Prefix{Quant::Forall, p.args[i]});
    terms.push_back(Term::variable(static_cast<int>(i)));
  }
  Matrix at = Matrix::atom(0, terms);
  Matrix taut = Matrix::disj(at, Matrix::neg(at));
  return Sentence{{Block{std::move(prefix), std::move(taut)}}};
}

namespace {

Block tautology_block(const Signature& sig) { return canonical_tautology(sig).blocks.front(); }

}  // namespace

Sentence relax(const Signature& sig, const Sentence& s) {
  Sentence tau = canonical_tautology(sig);
  if (s == tau) return tau;

  std::vector<Block> out;
  for (const auto& b : s.blocks) {
    std::vector<std::size_t> universals;
    for (std::size_t i = 0; i < b.prefix.size(); ++i)
      if (b.prefix[i].quant == Quant::Forall) universals.push_back(i);
    if (universals.empty()) return tau;  // block without universals covers Mod
    for (std::size_t i : universals) {
      Block flipped = b;
      flipped.prefix[i].quant = Quant::Exists;
      if (std::find(out.begin(), out.end(), flipped) == out.end())
        out.push_back(std::move(flipped));
    }
  }
  if (std::find(out.begin(), out.end(), tautology_block(sig)) != out.end()) return tau;
  return Sentence{std::move(out)};
}

}  // namespace satrev::fol
