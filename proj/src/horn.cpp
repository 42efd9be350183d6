#include "satrev/horn.hpp"

#include <algorithm>
#include <sstream>

#include "satrev/error.hpp"

namespace satrev::horn {

bool Clause::operator<(const Clause& o) const {
  if (body != o.body) return body < o.body;
  return head < o.head;
}

Sentence Sentence::of(std::vector<Clause> clauses) {
  for (auto& c : clauses) {
    std::sort(c.body.begin(), c.body.end());
    c.body.erase(std::unique(c.body.begin(), c.body.end()), c.body.end());
  }
  std::sort(clauses.begin(), clauses.end());
  clauses.erase(std::unique(clauses.begin(), clauses.end()), clauses.end());
  return Sentence{std::move(clauses)};
}

bool eval(const Valuation& v, const Sentence& s) {
  for (const auto& c : s.clauses) {
    bool body_true = true;
    for (int a : c.body)
      if (!v.value(a)) {
        body_true = false;
        break;
      }
    if (body_true && !v.value(c.head)) return false;
  }
  return true;
}

std::string to_string(const Signature& sig, const Sentence& s) {
  std::ostringstream out;
  bool first_clause = true;
  for (const auto& c : s.clauses) {
    if (!first_clause) out << '\n';
    first_clause = false;
    for (std::size_t i = 0; i < c.body.size(); ++i) {
      if (i) out << " & ";
      out << sig.atoms[static_cast<std::size_t>(c.body[i])];
    }
    if (!c.body.empty()) out << ' ';
    out << "-> " << sig.atoms[static_cast<std::size_t>(c.head)];
  }
  return out.str();
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

int atom_index(const Signature& sig, const std::string& name) {
  int idx = sig.index_of(trim(name));
  if (idx < 0) throw Error::parse("unknown atom '" + trim(name) + "'");
  return idx;
}

}  // namespace

Sentence parse_sentence(const Signature& sig, const std::string& block) {
  std::vector<Clause> clauses;
  std::istringstream in(block);
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    std::size_t arrow = line.find("->");
    if (arrow == std::string::npos) throw Error::parse("Horn clause needs '->': " + line);
    Clause c;
    std::string body = trim(line.substr(0, arrow));
    std::string head = trim(line.substr(arrow + 2));
    if (head.empty()) throw Error::parse("Horn clause needs a head atom: " + line);
    c.head = atom_index(sig, head);
    if (!body.empty()) {
      std::size_t pos = 0;
      while (pos != std::string::npos) {
        std::size_t amp = body.find('&', pos);
        std::string part = amp == std::string::npos ? body.substr(pos)
                                                    : body.substr(pos, amp - pos);
        c.body.push_back(atom_index(sig, part));
        pos = amp == std::string::npos ? std::string::npos : amp + 1;
      }
    }
    clauses.push_back(std::move(c));
  }
  if (clauses.empty()) throw Error::parse("empty Horn sentence");
  return Sentence::of(std::move(clauses));
}

System::System(Signature sig) : sig_(std::move(sig)) {
  if (sig_.atoms.empty()) throw Error::semantic("Horn signature needs at least one atom");
  if (sig_.arity() > 16) throw Error::semantic("Horn signature too large to enumerate");
  universe_ = Bitset(model_count(), true);
  trivial_ = Bitset(model_count(), false);
  trivial_.set(model_count() - 1);  // all-true valuation
}

bool System::satisfies(const Model& m, const Sentence& s) const {
  for (const auto& c : s.clauses) {
    if (c.head >= static_cast<int>(sig_.arity()) ||
        (!c.body.empty() && c.body.back() >= static_cast<int>(sig_.arity())))
      throw Error::semantic("clause mentions an atom outside the signature");
  }
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

Sentence System::tautology() const { return Sentence::of({Clause{{0}, 0}}); }

Valuation model_intersect(const Valuation& a, const Valuation& b) {
  if (a.n != b.n) throw Error::semantic("model_intersect: valuations over different signatures");
  return Valuation{a.bits & b.bits, a.n};
}

Bitset intersection_closure(const System&, const Bitset& s) {
  Bitset out = s;
  bool changed = true;
  while (changed) {
    changed = false;
    auto members = out.indices();
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        std::size_t meet = members[i] & members[j];
        if (!out.test(meet)) {
          out.set(meet);
          changed = true;
        }
      }
  }
  return out;
}

Sentence horn_from_models(const System& sys, const Bitset& s) {
  if (s != intersection_closure(sys, s))
    throw Error::semantic("horn_from_models: model set is not closed under intersection");
  int n = static_cast<int>(sys.signature().arity());
  std::vector<Clause> clauses;
  for (std::uint32_t body_bits = 0; body_bits < (1u << n); ++body_bits) {
    for (int head = 0; head < n; ++head) {
      Clause c;
      for (int a = 0; a < n; ++a)
        if ((body_bits >> a) & 1u) c.body.push_back(a);
      c.head = head;
      bool valid = true;
      s.for_each_set([&](std::size_t m) {
        Valuation v = sys.model_at(m);
        bool body_true = (v.bits & body_bits) == body_bits;
        if (body_true && !v.value(head)) valid = false;
      });
      if (valid) clauses.push_back(std::move(c));
    }
  }
  return Sentence::of(std::move(clauses));
}

KB theory_from_models(const System& sys, const Bitset& s) {
  KB kb;
  kb.add(horn_from_models(sys, intersection_closure(sys, s)));
  return kb;
}

Sentence relax(const System& sys, const Sentence& s) {
  const Bitset& mod = sys.sentence_models(s);
  Bitset ball(sys.model_count());
  mod.for_each_set([&](std::size_t i) {
    ball.set(i);
    for (int b = 0; b < static_cast<int>(sys.signature().arity()); ++b)
      ball.set(i ^ (std::size_t{1} << b));
  });
  return horn_from_models(sys, intersection_closure(sys, ball));
}

}  // namespace satrev::horn
