#include "satrev/pl.hpp"

#include <algorithm>
#include <bit>
#include <cctype>

namespace satrev::pl {

int Signature::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < atoms.size(); ++i)
    if (atoms[i] == name) return static_cast<int>(i);
  return -1;
}

Sentence Sentence::atom(int index) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Atom;
  n->atom = index;
  return Sentence(std::move(n));
}

Sentence Sentence::neg(Sentence s) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Not;
  n->lhs = std::make_shared<Sentence>(std::move(s));
  return Sentence(std::move(n));
}

Sentence Sentence::disj(Sentence lhs, Sentence rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Or;
  n->lhs = std::make_shared<Sentence>(std::move(lhs));
  n->rhs = std::make_shared<Sentence>(std::move(rhs));
  return Sentence(std::move(n));
}

Sentence Sentence::conj(Sentence lhs, Sentence rhs) {
  return neg(disj(neg(std::move(lhs)), neg(std::move(rhs))));
}

Sentence Sentence::implies(Sentence lhs, Sentence rhs) {
  return disj(neg(std::move(lhs)), std::move(rhs));
}

bool Sentence::equal(const Node& a, const Node& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Kind::Atom: return a.atom == b.atom;
    case Kind::Not: return *a.lhs == *b.lhs;
    case Kind::Or: return *a.lhs == *b.lhs && *a.rhs == *b.rhs;
  }
  return false;
}

int Sentence::depth() const {
  switch (kind()) {
    case Kind::Atom: return 0;
    case Kind::Not: return 1 + lhs().depth();
    case Kind::Or: return 1 + std::max(lhs().depth(), rhs().depth());
  }
  return 0;
}

int Sentence::max_atom() const {
  switch (kind()) {
    case Kind::Atom: return atom_index();
    case Kind::Not: return lhs().max_atom();
    case Kind::Or: return std::max(lhs().max_atom(), rhs().max_atom());
  }
  return -1;
}

bool eval(const Valuation& v, const Sentence& s) {
  switch (s.kind()) {
    case Sentence::Kind::Atom: return v.value(s.atom_index());
    case Sentence::Kind::Not: return !eval(v, s.lhs());
    case Sentence::Kind::Or: return eval(v, s.lhs()) || eval(v, s.rhs());
  }
  return false;
}

namespace {

// Printing levels: -> is loosest, then |, &, !, atoms.
constexpr int kLevelImplies = 0;
constexpr int kLevelOr = 1;
constexpr int kLevelAnd = 2;
constexpr int kLevelNot = 3;

bool is_and_pattern(const Sentence& s) {
  return s.kind() == Sentence::Kind::Not &&
         s.lhs().kind() == Sentence::Kind::Or &&
         s.lhs().lhs().kind() == Sentence::Kind::Not &&
         s.lhs().rhs().kind() == Sentence::Kind::Not;
}

bool is_implies_pattern(const Sentence& s) {
  // a conjunction-shaped left disjunct keeps its & sugar
  return s.kind() == Sentence::Kind::Or && s.lhs().kind() == Sentence::Kind::Not &&
         !is_and_pattern(s.lhs());
}

void print(const Signature& sig, const Sentence& s, int parent_level, std::string& out) {
  if (is_and_pattern(s)) {
    bool paren = parent_level > kLevelAnd;
    if (paren) out += '(';
    print(sig, s.lhs().lhs().lhs(), kLevelAnd + 1, out);
    out += " & ";
    print(sig, s.lhs().rhs().lhs(), kLevelAnd + 1, out);
    if (paren) out += ')';
    return;
  }
  if (is_implies_pattern(s)) {
    bool paren = parent_level > kLevelImplies;
    if (paren) out += '(';
    print(sig, s.lhs().lhs(), kLevelImplies + 1, out);
    out += " -> ";
    print(sig, s.rhs(), kLevelImplies, out);  // right-assoc
    if (paren) out += ')';
    return;
  }
  switch (s.kind()) {
    case Sentence::Kind::Atom:
      out += sig.atoms[static_cast<std::size_t>(s.atom_index())];
      return;
    case Sentence::Kind::Not:
      out += '!';
      print(sig, s.lhs(), kLevelNot, out);
      return;
    case Sentence::Kind::Or: {
      bool paren = parent_level > kLevelOr;
      if (paren) out += '(';
      print(sig, s.lhs(), kLevelOr, out);
      out += " | ";
      print(sig, s.rhs(), kLevelOr + 1, out);
      if (paren) out += ')';
      return;
    }
  }
}

struct Parser {
  const Signature& sig;
  const std::string& text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool eat(const char* tok) {
    skip_ws();
    std::size_t n = std::string(tok).size();
    if (text.compare(pos, n, tok) == 0) {
      pos += n;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw Error::parse(msg + " (column " + std::to_string(pos + 1) + ")");
  }

  Sentence parse_implies() {
    Sentence lhs = parse_or();
    skip_ws();
    if (eat("->")) return Sentence::implies(std::move(lhs), parse_implies());
    return lhs;
  }
  Sentence parse_or() {
    Sentence lhs = parse_and();
    for (;;) {
      skip_ws();
      // '|' but not part of '->' lookahead issues; '|' is a single char here
      if (pos < text.size() && text[pos] == '|') {
        ++pos;
        lhs = Sentence::disj(std::move(lhs), parse_and());
      } else {
        return lhs;
      }
    }
  }
  Sentence parse_and() {
    Sentence lhs = parse_unary();
    for (;;) {
      skip_ws();
      if (pos < text.size() && text[pos] == '&') {
        ++pos;
        lhs = Sentence::conj(std::move(lhs), parse_unary());
      } else {
        return lhs;
      }
    }
  }
  Sentence parse_unary() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of sentence");
    char c = text[pos];
    if (c == '!') {
      ++pos;
      return Sentence::neg(parse_unary());
    }
    if (c == '(') {
      ++pos;
      Sentence inner = parse_implies();
      skip_ws();
      if (pos >= text.size() || text[pos] != ')') fail("expected ')'");
      ++pos;
      return inner;
    }
    if (std::islower(static_cast<unsigned char>(c))) {
      std::size_t start = pos;
      while (pos < text.size() &&
             (std::islower(static_cast<unsigned char>(text[pos])) ||
              std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
        ++pos;
      std::string name = text.substr(start, pos - start);
      int idx = sig.index_of(name);
      if (idx < 0) throw Error::parse("unknown atom '" + name + "'");
      return Sentence::atom(idx);
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

std::string to_string(const Signature& sig, const Sentence& s) {
  std::string out;
  print(sig, s, 0, out);
  return out;
}

Sentence parse_sentence(const Signature& sig, const std::string& text) {
  Parser p{sig, text};
  Sentence s = p.parse_implies();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return s;
}

System::System(Signature sig) : sig_(std::move(sig)) {
  if (sig_.atoms.empty()) throw Error::semantic("propositional signature needs at least one atom");
  if (sig_.arity() > 20) throw Error::semantic("propositional signature too large to enumerate");
  universe_ = Bitset(model_count(), true);
  trivial_ = Bitset(model_count(), false);
}

bool System::satisfies(const Model& m, const Sentence& s) const {
  if (s.max_atom() >= static_cast<int>(sig_.arity()))
    throw Error::semantic("sentence mentions an atom outside the signature");
  return eval(m, s);
}

const Bitset& System::sentence_models(const Sentence& s) const {
  std::string k = sentence_text(s);
  auto it = memo_.find(k);
  if (it != memo_.end()) return it->second;
  Bitset bs(model_count());
  for (std::size_t i = 0; i < model_count(); ++i)
    if (eval(model_at(i), s)) bs.set(i);
  return memo_.emplace(std::move(k), std::move(bs)).first->second;
}

Sentence System::tautology() const {
  return Sentence::disj(Sentence::atom(0), Sentence::neg(Sentence::atom(0)));
}

int hamming(const Valuation& a, const Valuation& b) {
  if (a.n != b.n) throw Error::semantic("hamming: valuations over different signatures");
  return std::popcount(a.bits ^ b.bits);
}

namespace {

Sentence literal(int atom, bool positive) {
  Sentence a = Sentence::atom(atom);
  return positive ? a : Sentence::neg(std::move(a));
}

// Minterm for one valuation: conjunction of literals in atom order.
Sentence minterm(const System& sys, std::size_t index) {
  int n = static_cast<int>(sys.signature().arity());
  Valuation v = sys.model_at(index);
  Sentence acc = literal(0, v.value(0));
  for (int i = 1; i < n; ++i) acc = Sentence::conj(std::move(acc), literal(i, v.value(i)));
  return acc;
}

Sentence contradiction(const System&) {
  return Sentence::neg(Sentence::disj(Sentence::atom(0), Sentence::neg(Sentence::atom(0))));
}

// Canonical DNF: minterms in increasing valuation index, left-folded.
Sentence dnf_of(const System& sys, const Bitset& models) {
  if (models.none()) return contradiction(sys);
  Sentence acc = minterm(sys, 0);  // placeholder, replaced below
  bool first = true;
  models.for_each_set([&](std::size_t i) {
    if (first) {
      acc = minterm(sys, i);
      first = false;
    } else {
      acc = Sentence::disj(std::move(acc), minterm(sys, i));
    }
  });
  return acc;
}

}  // namespace

Sentence dilate(const System& sys, const Sentence& s) {
  const Bitset& mod = sys.sentence_models(s);
  if (mod.none()) return contradiction(sys);  // dilation of the empty set is empty
  Bitset ball(sys.model_count());
  std::size_t n = sys.model_count();
  for (std::size_t i = 0; i < n; ++i) {
    if (mod.test(i)) {
      ball.set(i);
      for (int b = 0; b < static_cast<int>(sys.signature().arity()); ++b)
        ball.set(i ^ (std::size_t{1} << b));
    }
  }
  return dnf_of(sys, ball);
}

KB theory_from_models(const System& sys, const Bitset& models) {
  KB kb;
  kb.add(dnf_of(sys, models));
  return kb;
}

std::vector<Sentence> sentence_pool(const Signature& sig, int depth) {
  std::vector<Sentence> pool;
  for (std::size_t i = 0; i < sig.arity(); ++i) pool.push_back(Sentence::atom(static_cast<int>(i)));
  for (int d = 1; d <= depth; ++d) {
    std::size_t level_end = pool.size();
    std::vector<Sentence> next;
    auto add = [&](Sentence s) {
      for (const auto& p : pool)
        if (p == s) return;
      for (const auto& p : next)
        if (p == s) return;
      next.push_back(std::move(s));
    };
    for (std::size_t i = 0; i < level_end; ++i) add(Sentence::neg(pool[i]));
    for (std::size_t i = 0; i < level_end; ++i)
      for (std::size_t j = 0; j < level_end; ++j) add(Sentence::disj(pool[i], pool[j]));
    for (auto& s : next) pool.push_back(std::move(s));
  }
  return pool;
}

bool check_betweenness(const System& sys,
                       const std::function<int(const Valuation&, const Valuation&)>& dist) {
  std::size_t n = sys.model_count();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      Valuation vx = sys.model_at(x), vy = sys.model_at(y);
      int d = dist(vx, vy);
      for (int k = 0; k <= d; ++k) {
        bool found = false;
        for (std::size_t z = 0; z < n && !found; ++z) {
          Valuation vz = sys.model_at(z);
          if (dist(vx, vz) == k && dist(vz, vy) == d - k) found = true;
        }
        if (!found) return false;
      }
    }
  }
  return true;
}

}  // namespace satrev::pl
