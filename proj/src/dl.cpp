#include "satrev/dl.hpp"

#include <algorithm>
#include <cctype>

#include "satrev/error.hpp"

namespace satrev::dl {

std::string to_string(Fragment f) {
  switch (f) {
    case Fragment::EL: return "EL";
    case Fragment::ELU: return "ELU";
    case Fragment::ALC: return "ALC";
  }
  return "ALC";
}

int Signature::concept_index(const std::string& name) const {
  for (std::size_t i = 0; i < concepts.size(); ++i)
    if (concepts[i] == name) return static_cast<int>(i);
  return -1;
}
int Signature::role_index(const std::string& name) const {
  for (std::size_t i = 0; i < roles.size(); ++i)
    if (roles[i] == name) return static_cast<int>(i);
  return -1;
}
int Signature::individual_index(const std::string& name) const {
  for (std::size_t i = 0; i < individuals.size(); ++i)
    if (individuals[i] == name) return static_cast<int>(i);
  return -1;
}

Concept Concept::name(int index) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Name;
  n->name = index;
  return Concept(std::move(n));
}
Concept Concept::top() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Top;
  return Concept(std::move(n));
}
Concept Concept::bot() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Bot;
  return Concept(std::move(n));
}
Concept Concept::conj(Concept a, Concept b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::And;
  n->lhs = std::make_shared<Concept>(std::move(a));
  n->rhs = std::make_shared<Concept>(std::move(b));
  return Concept(std::move(n));
}
Concept Concept::disj(Concept a, Concept b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Or;
  n->lhs = std::make_shared<Concept>(std::move(a));
  n->rhs = std::make_shared<Concept>(std::move(b));
  return Concept(std::move(n));
}
Concept Concept::neg(Concept c) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Not;
  n->lhs = std::make_shared<Concept>(std::move(c));
  return Concept(std::move(n));
}
Concept Concept::exists(int role, Concept c) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Exists;
  n->role = role;
  n->lhs = std::make_shared<Concept>(std::move(c));
  return Concept(std::move(n));
}
Concept Concept::forall(int role, Concept c) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Forall;
  n->role = role;
  n->lhs = std::make_shared<Concept>(std::move(c));
  return Concept(std::move(n));
}

bool Concept::equal(const Node& a, const Node& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Kind::Name: return a.name == b.name;
    case Kind::Top:
    case Kind::Bot: return true;
    case Kind::Not: return *a.lhs == *b.lhs;
    case Kind::And:
    case Kind::Or: return *a.lhs == *b.lhs && *a.rhs == *b.rhs;
    case Kind::Exists:
    case Kind::Forall: return a.role == b.role && *a.lhs == *b.lhs;
  }
  return false;
}

Fragment Concept::fragment() const {
  switch (kind()) {
    case Kind::Name:
    case Kind::Top:
    case Kind::Bot: return Fragment::EL;
    case Kind::Not:
    case Kind::Forall: return Fragment::ALC;
    case Kind::Or: {
      Fragment l = lhs().fragment(), r = rhs().fragment();
      if (l == Fragment::ALC || r == Fragment::ALC) return Fragment::ALC;
      return Fragment::ELU;
    }
    case Kind::And: {
      Fragment l = lhs().fragment(), r = rhs().fragment();
      if (l == Fragment::ALC || r == Fragment::ALC) return Fragment::ALC;
      if (l == Fragment::ELU || r == Fragment::ELU) return Fragment::ELU;
      return Fragment::EL;
    }
    case Kind::Exists: return lhs().fragment();
  }
  return Fragment::ALC;
}

int Concept::role_depth() const {
  switch (kind()) {
    case Kind::Name:
    case Kind::Top:
    case Kind::Bot: return 0;
    case Kind::Not: return lhs().role_depth();
    case Kind::And:
    case Kind::Or: return std::max(lhs().role_depth(), rhs().role_depth());
    case Kind::Exists:
    case Kind::Forall: return 1 + lhs().role_depth();
  }
  return 0;
}

Axiom Axiom::subsumes(Concept c, Concept d) {
  Axiom ax;
  ax.kind = Kind::Subsumes;
  ax.lhs = std::move(c);
  ax.rhs = std::move(d);
  return ax;
}
Axiom Axiom::instance(int indiv, Concept c) {
  Axiom ax;
  ax.kind = Kind::Instance;
  ax.indiv_a = indiv;
  ax.lhs = std::move(c);
  return ax;
}
Axiom Axiom::role_assertion(int a, int b, int role) {
  Axiom ax;
  ax.kind = Kind::Role;
  ax.indiv_a = a;
  ax.indiv_b = b;
  ax.role = role;
  return ax;
}

bool Axiom::operator==(const Axiom& o) const {
  if (kind != o.kind) return false;
  switch (kind) {
    case Kind::Subsumes: return lhs == o.lhs && rhs == o.rhs;
    case Kind::Instance: return indiv_a == o.indiv_a && lhs == o.lhs;
    case Kind::Role: return indiv_a == o.indiv_a && indiv_b == o.indiv_b && role == o.role;
  }
  return false;
}

Fragment Axiom::fragment() const {
  switch (kind) {
    case Kind::Subsumes: {
      Fragment l = lhs.fragment(), r = rhs.fragment();
      if (l == Fragment::ALC || r == Fragment::ALC) return Fragment::ALC;
      if (l == Fragment::ELU || r == Fragment::ELU) return Fragment::ELU;
      return Fragment::EL;
    }
    case Kind::Instance: return lhs.fragment();
    case Kind::Role: return Fragment::EL;
  }
  return Fragment::ALC;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

std::uint32_t full_mask(int n) { return n >= 32 ? ~0u : (1u << n) - 1u; }

std::uint32_t role_row(const Interpretation& i, int role, int x) {
  return static_cast<std::uint32_t>(
      (i.roles[static_cast<std::size_t>(role)] >> (x * i.n)) & full_mask(i.n));
}

}  // namespace

std::uint32_t eval_concept(const Signature& sig, const Interpretation& i, const Concept& c) {
  switch (c.kind()) {
    case Concept::Kind::Name: {
      if (c.name_index() >= static_cast<int>(sig.concepts.size()))
        throw Error::semantic("concept name outside the signature");
      return i.concepts[static_cast<std::size_t>(c.name_index())];
    }
    case Concept::Kind::Top: return full_mask(i.n);
    case Concept::Kind::Bot: return 0;
    case Concept::Kind::And: return eval_concept(sig, i, c.lhs()) & eval_concept(sig, i, c.rhs());
    case Concept::Kind::Or: return eval_concept(sig, i, c.lhs()) | eval_concept(sig, i, c.rhs());
    case Concept::Kind::Not: return full_mask(i.n) & ~eval_concept(sig, i, c.lhs());
    case Concept::Kind::Exists: {
      if (c.role() < 0 || c.role() >= static_cast<int>(sig.roles.size()))
        throw Error::semantic("role name outside the signature");
      std::uint32_t filler = eval_concept(sig, i, c.lhs());
      std::uint32_t out = 0;
      for (int x = 0; x < i.n; ++x)
        if (role_row(i, c.role(), x) & filler) out |= 1u << x;
      return out;
    }
    case Concept::Kind::Forall: {
      if (c.role() < 0 || c.role() >= static_cast<int>(sig.roles.size()))
        throw Error::semantic("role name outside the signature");
      std::uint32_t filler = eval_concept(sig, i, c.lhs());
      std::uint32_t out = 0;
      for (int x = 0; x < i.n; ++x)
        if ((role_row(i, c.role(), x) & ~filler & full_mask(i.n)) == 0) out |= 1u << x;
      return out;
    }
  }
  return 0;
}

bool satisfies(const Signature& sig, const Interpretation& i, const Axiom& ax) {
  switch (ax.kind) {
    case Axiom::Kind::Subsumes: {
      std::uint32_t l = eval_concept(sig, i, ax.lhs), r = eval_concept(sig, i, ax.rhs);
      return (l & ~r) == 0;
    }
    case Axiom::Kind::Instance: {
      if (i.n == 0) return false;  // no element to interpret the individual
      int d = i.individuals[static_cast<std::size_t>(ax.indiv_a)];
      return (eval_concept(sig, i, ax.lhs) >> d) & 1u;
    }
    case Axiom::Kind::Role: {
      if (i.n == 0) return false;
      int a = i.individuals[static_cast<std::size_t>(ax.indiv_a)];
      int b = i.individuals[static_cast<std::size_t>(ax.indiv_b)];
      return (i.roles[static_cast<std::size_t>(ax.role)] >> (a * i.n + b)) & 1u;
    }
  }
  return false;
}

bool is_serial(const Signature& sig, const Interpretation& i) {
  for (std::size_t r = 0; r < sig.roles.size(); ++r)
    for (int x = 0; x < i.n; ++x)
      if (role_row(i, static_cast<int>(r), x) == 0) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Printing and parsing

namespace {

constexpr int kLevelOr = 1;
constexpr int kLevelAnd = 2;

void print_concept(const Signature& sig, const Concept& c, int parent_level, std::string& out) {
  switch (c.kind()) {
    case Concept::Kind::Name:
      out += sig.concepts[static_cast<std::size_t>(c.name_index())];
      return;
    case Concept::Kind::Top: out += "Top"; return;
    case Concept::Kind::Bot: out += "Bot"; return;
    case Concept::Kind::Not: {
      out += '~';
      bool atomic = c.lhs().kind() == Concept::Kind::Name ||
                    c.lhs().kind() == Concept::Kind::Top ||
                    c.lhs().kind() == Concept::Kind::Bot;
      if (atomic) {
        print_concept(sig, c.lhs(), 3, out);
      } else {
        out += '(';
        print_concept(sig, c.lhs(), 0, out);
        out += ')';
      }
      return;
    }
    case Concept::Kind::And: {
      bool paren = parent_level > kLevelAnd;
      if (paren) out += '(';
      print_concept(sig, c.lhs(), kLevelAnd, out);
      out += " & ";
      print_concept(sig, c.rhs(), kLevelAnd + 1, out);
      if (paren) out += ')';
      return;
    }
    case Concept::Kind::Or: {
      bool paren = parent_level > kLevelOr;
      if (paren) out += '(';
      print_concept(sig, c.lhs(), kLevelOr, out);
      out += " | ";
      print_concept(sig, c.rhs(), kLevelOr + 1, out);
      if (paren) out += ')';
      return;
    }
    case Concept::Kind::Exists:
    case Concept::Kind::Forall: {
      out += c.kind() == Concept::Kind::Exists ? "some " : "all ";
      out += sig.roles[static_cast<std::size_t>(c.role())];
      out += ". ";
      bool atomic = c.lhs().kind() == Concept::Kind::Name ||
                    c.lhs().kind() == Concept::Kind::Top ||
                    c.lhs().kind() == Concept::Kind::Bot;
      if (atomic) {
        print_concept(sig, c.lhs(), 3, out);
      } else {
        out += '(';
        print_concept(sig, c.lhs(), 0, out);
        out += ')';
      }
      return;
    }
  }
}

struct ConceptParser {
  const Signature& sig;
  const std::string& text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw Error::parse(msg + " (column " + std::to_string(pos + 1) + ")");
  }
  std::string ident() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    if (start == pos) fail("expected identifier");
    return text.substr(start, pos - start);
  }
  bool eat_word(const std::string& w) {
    skip_ws();
    if (text.compare(pos, w.size(), w) == 0) {
      std::size_t after = pos + w.size();
      if (after < text.size() &&
          (std::isalnum(static_cast<unsigned char>(text[after])) || text[after] == '_'))
        return false;
      pos += w.size();
      return true;
    }
    return false;
  }

  Concept parse_or() {
    Concept lhs = parse_and();
    while (peek() == '|') {
      ++pos;
      lhs = Concept::disj(std::move(lhs), parse_and());
    }
    return lhs;
  }
  Concept parse_and() {
    Concept lhs = parse_unary();
    while (peek() == '&') {
      ++pos;
      lhs = Concept::conj(std::move(lhs), parse_unary());
    }
    return lhs;
  }
  Concept parse_unary() {
    skip_ws();
    if (eat_word("some")) return parse_quant(true);
    if (eat_word("all")) return parse_quant(false);
    if (peek() == '~') {
      ++pos;
      return Concept::neg(parse_unary());
    }
    if (peek() == '(') {
      ++pos;
      Concept inner = parse_or();
      if (peek() != ')') fail("expected ')'");
      ++pos;
      return inner;
    }
    if (eat_word("Top")) return Concept::top();
    if (eat_word("Bot")) return Concept::bot();
    std::string name = ident();
    int idx = sig.concept_index(name);
    if (idx < 0) throw Error::parse("unknown concept name '" + name + "'");
    return Concept::name(idx);
  }
  Concept parse_quant(bool existential) {
    std::string role = ident();
    int ri = sig.role_index(role);
    if (ri < 0) throw Error::parse("unknown role name '" + role + "'");
    if (peek() != '.') fail("expected '.' after role");
    ++pos;
    Concept body = parse_unary();
    return existential ? Concept::exists(ri, std::move(body))
                       : Concept::forall(ri, std::move(body));
  }
};

}  // namespace

std::string to_string(const Signature& sig, const Concept& c) {
  std::string out;
  print_concept(sig, c, 0, out);
  return out;
}

std::string to_string(const Signature& sig, const Axiom& ax) {
  switch (ax.kind) {
    case Axiom::Kind::Subsumes:
      return to_string(sig, ax.lhs) + " [= " + to_string(sig, ax.rhs);
    case Axiom::Kind::Instance:
      return sig.individuals[static_cast<std::size_t>(ax.indiv_a)] + " : " +
             to_string(sig, ax.lhs);
    case Axiom::Kind::Role:
      return "(" + sig.individuals[static_cast<std::size_t>(ax.indiv_a)] + "," +
             sig.individuals[static_cast<std::size_t>(ax.indiv_b)] + ") : " +
             sig.roles[static_cast<std::size_t>(ax.role)];
  }
  return "";
}

Concept parse_concept(const Signature& sig, const std::string& text) {
  ConceptParser p{sig, text};
  Concept c = p.parse_or();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return c;
}

Axiom parse_axiom(const Signature& sig, const std::string& text) {
  // role assertion: (a,b) : r
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  if (i < text.size() && text[i] == '(') {
    std::size_t close = text.find(')', i);
    std::size_t comma = text.find(',', i);
    std::size_t colon = text.find(':', close == std::string::npos ? i : close);
    if (close == std::string::npos || comma == std::string::npos || colon == std::string::npos)
      throw Error::parse("malformed role assertion: " + text);
    auto trim = [](std::string s) {
      std::size_t b = s.find_first_not_of(" \t");
      std::size_t e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string a = trim(text.substr(i + 1, comma - i - 1));
    std::string b = trim(text.substr(comma + 1, close - comma - 1));
    std::string r = trim(text.substr(colon + 1));
    int ia = sig.individual_index(a), ib = sig.individual_index(b), ir = sig.role_index(r);
    if (ia < 0) throw Error::parse("unknown individual '" + a + "'");
    if (ib < 0) throw Error::parse("unknown individual '" + b + "'");
    if (ir < 0) throw Error::parse("unknown role name '" + r + "'");
    return Axiom::role_assertion(ia, ib, ir);
  }

  std::size_t sub = text.find("[=");
  if (sub != std::string::npos) {
    Concept l = parse_concept(sig, text.substr(0, sub));
    std::string rhs_text = text.substr(sub + 2);
    if (rhs_text.find_first_not_of(" \t") == std::string::npos)
      throw Error::parse("missing right-hand side after '[=' (column " +
                         std::to_string(sub + 3) + ")");
    Concept r = parse_concept(sig, rhs_text);
    return Axiom::subsumes(std::move(l), std::move(r));
  }

  std::size_t colon = text.find(':');
  if (colon != std::string::npos) {
    std::string a = text.substr(0, colon);
    std::size_t b = a.find_first_not_of(" \t");
    std::size_t e = a.find_last_not_of(" \t");
    a = b == std::string::npos ? std::string() : a.substr(b, e - b + 1);
    int ia = sig.individual_index(a);
    if (ia < 0) throw Error::parse("unknown individual '" + a + "'");
    Concept c = parse_concept(sig, text.substr(colon + 1));
    return Axiom::instance(ia, std::move(c));
  }
  throw Error::parse("expected an axiom ('C [= D', 'a : C' or '(a,b) : r'): " + text);
}

// ---------------------------------------------------------------------------
// System

namespace {

std::size_t ipow_checked(std::size_t base, std::size_t exp, std::size_t cap) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && r > cap / base) return cap + 1;
    r *= base;
  }
  return r;
}

}  // namespace

System::System(Signature sig, Fragment fragment, int bound, Options options)
    : sig_(std::move(sig)), fragment_(fragment), bound_(bound), options_(options) {
  if (sig_.concepts.empty()) throw Error::semantic("DL signature needs at least one concept name");
  if (sig_.roles.empty() || sig_.roles[0] != "r_top")
    throw Error::semantic("DL signature must reserve r_top as its first role");
  if (bound_ > 5) throw Error::semantic("DL bound above 5 is not supported");
  bool empty_ok = options_.allow_empty_domain && sig_.individuals.empty();
  if (bound_ < (options_.allow_empty_domain ? 0 : 1))
    throw Error::semantic("DL bound must be at least 1");

  for (int n = empty_ok ? 0 : 1; n <= bound_; ++n) {
    if (n == 0 && !sig_.individuals.empty()) continue;
    std::size_t c = ipow_checked(2, sig_.concepts.size() * static_cast<std::size_t>(n),
                                 options_.max_models);
    std::size_t r = ipow_checked(
        2, (sig_.roles.size() - 1) * static_cast<std::size_t>(n) * static_cast<std::size_t>(n),
        options_.max_models);
    std::size_t ind = ipow_checked(static_cast<std::size_t>(n), sig_.individuals.size(),
                                   options_.max_models);
    if (c > options_.max_models || r > options_.max_models / (c ? c : 1))
      throw Error::semantic("bounded interpretation space exceeds the enumeration ceiling");
    std::size_t total = c * r;
    if (ind > 0 && total > options_.max_models / ind)
      throw Error::semantic("bounded interpretation space exceeds the enumeration ceiling");
    total *= ind;
    sizes_.push_back(n);
    size_counts_.push_back(total);
    count_ += total;
    if (count_ > options_.max_models)
      throw Error::semantic("bounded interpretation space exceeds the enumeration ceiling");
  }

  universe_ = Bitset(count_, true);
  if (options_.nonempty_concepts) {
    universe_ = Bitset(count_, false);
    for_each_model([&](std::size_t i, const Interpretation& m) {
      if (m.n == 0) return;
      for (auto mask : m.concepts)
        if (mask == 0) return;
      universe_.set(i);
    });
  }

  trivial_ = Bitset(count_, false);
  // Only the empty-domain interpretation satisfies every sentence.
  if (!sizes_.empty() && sizes_.front() == 0 && universe_.test(0)) trivial_.set(0);

}

const Bitset& System::serial_universe() const {
  if (!serial_) {
    Bitset out(count_, false);
    for_each_model([&](std::size_t i, const Interpretation& m) {
      if (universe_.test(i) && is_serial(sig_, m)) out.set(i);
    });
    serial_ = std::move(out);
  }
  return *serial_;
}

void System::decode(std::size_t index, Interpretation& out) const {
  std::size_t si = 0;
  while (index >= size_counts_[si]) {
    index -= size_counts_[si];
    ++si;
  }
  int n = sizes_[si];
  out.n = n;
  out.concepts.assign(sig_.concepts.size(), 0);
  out.roles.assign(sig_.roles.size(), 0);
  out.individuals.assign(sig_.individuals.size(), 0);

  std::uint32_t cmask = full_mask(n);
  for (std::size_t j = 0; j < sig_.concepts.size(); ++j) {
    out.concepts[j] = static_cast<std::uint32_t>(index & cmask);
    index >>= n;
  }
  std::uint64_t rmask = (n * n >= 64) ? ~0ull : ((1ull << (n * n)) - 1);
  out.roles[0] = rmask;  // r_top pinned to the full relation
  for (std::size_t j = 1; j < sig_.roles.size(); ++j) {
    out.roles[j] = static_cast<std::uint64_t>(index) & rmask;
    index >>= (n * n);
  }
  for (std::size_t j = 0; j < sig_.individuals.size(); ++j) {
    out.individuals[j] = static_cast<std::uint8_t>(index % static_cast<std::size_t>(n));
    index /= static_cast<std::size_t>(n);
  }
}

Interpretation System::model_at(std::size_t i) const {
  Interpretation out;
  decode(i, out);
  return out;
}

bool System::satisfies(const Model& m, const Sentence& ax) const {
  return dl::satisfies(sig_, m, ax);
}

const Bitset& System::sentence_models(const Sentence& ax) const {
  std::string k = sentence_text(ax);
  auto it = memo_.find(k);
  if (it != memo_.end()) return it->second;
  Bitset bs(count_);
  for_each_model([&](std::size_t i, const Interpretation& m) {
    if (universe_.test(i) && dl::satisfies(sig_, m, ax)) bs.set(i);
  });
  return memo_.emplace(std::move(k), std::move(bs)).first->second;
}

Axiom System::tautology() const { return Axiom::subsumes(Concept::top(), Concept::top()); }

bool System::subsumed(const Concept& c, const Concept& d, const KB* context,
                      bool serial_only) const {
  Axiom ax = Axiom::subsumes(c, d);
  std::string key = (serial_only ? "s\x1f" : "p\x1f") + sentence_text(ax);
  if (context)
    for (const auto& cax : *context) {
      key += '\x1f';
      key += sentence_text(cax);
    }
  auto hit = sub_memo_.find(key);
  if (hit != sub_memo_.end()) return hit->second;

  // reuse a materialized model set when one exists; otherwise scan with an
  // early exit, which finds counterexamples among the small domains first
  bool ok;
  auto mod_it = memo_.find(sentence_text(ax));
  if (mod_it != memo_.end()) {
    Bitset domain = serial_only ? serial_universe() : universe_;
    if (context)
      for (const auto& cax : *context) domain &= sentence_models(cax);
    ok = domain.subset_of(mod_it->second);
  } else {
    std::optional<Bitset> domain;
    if (context) {
      domain = serial_only ? serial_universe() : universe_;
      for (const auto& cax : *context) *domain &= sentence_models(cax);
    } else if (serial_only) {
      domain = serial_universe();
    }
    ok = true;
    Interpretation scratch;
    for (std::size_t i = 0; i < count_ && ok; ++i) {
      if (domain ? !domain->test(i) : !universe_.test(i)) continue;
      decode(i, scratch);
      std::uint32_t l = eval_concept(sig_, scratch, c), r = eval_concept(sig_, scratch, d);
      if (l & ~r) ok = false;
    }
  }
  sub_memo_.emplace(std::move(key), ok);
  return ok;
}

bool System::concept_equiv(const Concept& c, const Concept& d, bool serial_only) const {
  return subsumed(c, d, nullptr, serial_only) && subsumed(d, c, nullptr, serial_only);
}

// ---------------------------------------------------------------------------
// Description trees

int DescriptionTree::depth() const {
  std::vector<int> depth(nodes.size(), 0);
  int best = 0;
  // children always have larger ids than their parent (construction order)
  for (std::size_t v = 0; v < nodes.size(); ++v)
    for (auto [r, ch] : nodes[v].children) {
      depth[static_cast<std::size_t>(ch)] = depth[v] + 1;
      best = std::max(best, depth[v] + 1);
    }
  return best;
}

namespace {

void build_tree(const Signature& sig, const Concept& c, DescriptionTree& t, int node) {
  switch (c.kind()) {
    case Concept::Kind::Top: return;
    case Concept::Kind::Name: {
      auto& labels = t.nodes[static_cast<std::size_t>(node)].labels;
      if (std::find(labels.begin(), labels.end(), c.name_index()) == labels.end())
        labels.push_back(c.name_index());
      return;
    }
    case Concept::Kind::And:
      build_tree(sig, c.lhs(), t, node);
      build_tree(sig, c.rhs(), t, node);
      return;
    case Concept::Kind::Exists: {
      int child = static_cast<int>(t.nodes.size());
      t.nodes.emplace_back();
      t.nodes[static_cast<std::size_t>(node)].children.push_back({c.role(), child});
      build_tree(sig, c.lhs(), t, child);
      return;
    }
    case Concept::Kind::Bot:
      throw Error::semantic("Bot has no description tree");
    default:
      throw Error::semantic("description trees are defined for EL concepts only");
  }
}

Concept subtree_concept(const Signature& sig, const DescriptionTree& t, int node);

std::string subtree_key(const Signature& sig, const DescriptionTree& t, int node) {
  return to_string(sig, subtree_concept(sig, t, node));
}

Concept subtree_concept(const Signature& sig, const DescriptionTree& t, int node) {
  const auto& nd = t.nodes[static_cast<std::size_t>(node)];
  std::vector<int> labels = nd.labels;
  std::sort(labels.begin(), labels.end());

  std::vector<std::pair<int, int>> children = nd.children;
  std::stable_sort(children.begin(), children.end(), [&](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return subtree_key(sig, t, a.second) < subtree_key(sig, t, b.second);
  });

  std::optional<Concept> acc;
  for (int l : labels) {
    Concept c = Concept::name(l);
    acc = acc ? Concept::conj(std::move(*acc), std::move(c)) : std::move(c);
  }
  for (auto [r, ch] : children) {
    Concept c = Concept::exists(r, subtree_concept(sig, t, ch));
    acc = acc ? Concept::conj(std::move(*acc), std::move(c)) : std::move(c);
  }
  return acc ? *acc : Concept::top();
}

}  // namespace

DescriptionTree to_tree(const Signature& sig, const Concept& c) {
  if (c.fragment() != Fragment::EL)
    throw Error::semantic("description trees are defined for EL concepts only");
  DescriptionTree t;
  t.nodes.emplace_back();
  build_tree(sig, c, t, 0);
  for (auto& n : t.nodes) std::sort(n.labels.begin(), n.labels.end());
  return t;
}

Concept from_tree(const Signature& sig, const DescriptionTree& t) {
  if (t.nodes.empty()) return Concept::top();
  return subtree_concept(sig, t, 0);
}

}  // namespace satrev::dl
