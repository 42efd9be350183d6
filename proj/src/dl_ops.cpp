#include <algorithm>
#include <optional>

#include "satrev/dl.hpp"
#include "satrev/error.hpp"

namespace satrev::dl {

Concept rho_top(const Concept&) { return Concept::top(); }
Concept kappa_bot(const Concept&) { return Concept::bot(); }

// ---------------------------------------------------------------------------
// Tree pruning

namespace {

DescriptionTree rebuild_without(const DescriptionTree& t, const std::vector<bool>& drop) {
  DescriptionTree out;
  std::vector<int> remap(t.nodes.size(), -1);
  for (std::size_t v = 0; v < t.nodes.size(); ++v) {
    if (drop[v]) continue;
    remap[v] = static_cast<int>(out.nodes.size());
    out.nodes.emplace_back();
    out.nodes.back().labels = t.nodes[v].labels;
  }
  for (std::size_t v = 0; v < t.nodes.size(); ++v) {
    if (drop[v]) continue;
    for (auto [r, ch] : t.nodes[v].children)
      if (!drop[static_cast<std::size_t>(ch)])
        out.nodes[static_cast<std::size_t>(remap[v])].children.push_back(
            {r, remap[static_cast<std::size_t>(ch)]});
  }
  return out;
}

std::vector<int> node_depths(const DescriptionTree& t) {
  std::vector<int> depth(t.nodes.size(), 0);
  for (std::size_t v = 0; v < t.nodes.size(); ++v)
    for (auto [r, ch] : t.nodes[v].children) depth[static_cast<std::size_t>(ch)] = depth[v] + 1;
  return depth;
}

}  // namespace

Concept rho_depth(const Signature& sig, const Concept& c) {
  DescriptionTree t = to_tree(sig, c);
  int d = t.depth();
  if (d == 0) return Concept::top();
  std::vector<int> depth = node_depths(t);
  std::vector<bool> drop(t.nodes.size(), false);
  for (std::size_t v = 0; v < t.nodes.size(); ++v) drop[v] = depth[v] == d;
  return from_tree(sig, rebuild_without(t, drop));
}

Concept rho_leaves(const Signature& sig, const Concept& c) {
  DescriptionTree t = to_tree(sig, c);
  if (t.nodes.size() == 1) return Concept::top();  // the root is the only leaf
  std::vector<bool> drop(t.nodes.size(), false);
  for (std::size_t v = 0; v < t.nodes.size(); ++v) drop[v] = t.nodes[v].children.empty();
  return from_tree(sig, rebuild_without(t, drop));
}

// ---------------------------------------------------------------------------
// ELU normal form with grouping

namespace {

struct GroupedEL {
  std::vector<int> names;                              // sorted
  std::vector<std::pair<int, std::vector<Concept>>> groups;  // role -> fillers
};

bool is_top_marker(const GroupedEL& g) { return g.names.empty() && g.groups.empty(); }

// Distributes disjunction and existentials over it; the result is a list of
// Or-free ELU (hence EL) concepts. Bot disjuncts vanish.
std::vector<Concept> dnf_disjuncts(const Concept& c) {
  switch (c.kind()) {
    case Concept::Kind::Bot: return {};
    case Concept::Kind::Top:
    case Concept::Kind::Name: return {c};
    case Concept::Kind::Or: {
      std::vector<Concept> out = dnf_disjuncts(c.lhs());
      for (auto& d : dnf_disjuncts(c.rhs())) out.push_back(std::move(d));
      return out;
    }
    case Concept::Kind::And: {
      std::vector<Concept> ls = dnf_disjuncts(c.lhs());
      std::vector<Concept> rs = dnf_disjuncts(c.rhs());
      std::vector<Concept> out;
      for (const auto& l : ls)
        for (const auto& r : rs) out.push_back(Concept::conj(l, r));
      return out;
    }
    case Concept::Kind::Exists: {
      std::vector<Concept> fs = dnf_disjuncts(c.lhs());
      std::vector<Concept> out;
      out.reserve(fs.size());
      for (auto& f : fs) out.push_back(Concept::exists(c.role(), std::move(f)));
      return out;
    }
    default:
      throw Error::semantic("normal form with grouping is defined for ELU concepts only");
  }
}

GroupedEL group_el(const System& sys, const Concept& el);

Concept grouped_to_concept(const Signature&, const GroupedEL& g) {
  std::optional<Concept> acc;
  auto push = [&](Concept c) {
    acc = acc ? Concept::conj(std::move(*acc), std::move(c)) : std::move(c);
  };
  for (int n : g.names) push(Concept::name(n));
  for (const auto& [role, fillers] : g.groups)
    for (const auto& f : fillers) push(Concept::exists(role, f));
  return acc ? *acc : Concept::top();
}

// Removes subsumption-redundant members; in a conjunction the weaker
// (subsuming) conjunct is redundant, ties broken by position.
std::vector<Concept> prune_conjuncts(const System& sys, int role,
                                     std::vector<Concept> fillers) {
  auto wrap = [&](const Concept& f) { return Concept::exists(role, f); };
  std::vector<Concept> kept;
  for (std::size_t i = 0; i < fillers.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < fillers.size() && !redundant; ++j) {
      if (i == j) continue;
      if (!sys.subsumed(wrap(fillers[j]), wrap(fillers[i]))) continue;
      if (!sys.subsumed(wrap(fillers[i]), wrap(fillers[j])) || j < i) redundant = true;
    }
    if (!redundant) kept.push_back(fillers[i]);
  }
  return kept;
}

void flatten_conj(const System& sys, const Concept& c, GroupedEL& g) {
  switch (c.kind()) {
    case Concept::Kind::Top: return;
    case Concept::Kind::Name:
      g.names.push_back(c.name_index());
      return;
    case Concept::Kind::And:
      flatten_conj(sys, c.lhs(), g);
      flatten_conj(sys, c.rhs(), g);
      return;
    case Concept::Kind::Exists: {
      Concept filler = grouped_to_concept(sys.signature(), group_el(sys, c.lhs()));
      for (auto& [role, fillers] : g.groups)
        if (role == c.role()) {
          fillers.push_back(std::move(filler));
          return;
        }
      g.groups.push_back({c.role(), {std::move(filler)}});
      return;
    }
    default:
      throw Error::semantic("normal form with grouping is defined for ELU concepts only");
  }
}

GroupedEL group_el(const System& sys, const Concept& el) {
  GroupedEL g;
  flatten_conj(sys, el, g);
  std::sort(g.names.begin(), g.names.end());
  g.names.erase(std::unique(g.names.begin(), g.names.end()), g.names.end());
  std::sort(g.groups.begin(), g.groups.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [role, fillers] : g.groups) {
    std::stable_sort(fillers.begin(), fillers.end(), [&](const Concept& a, const Concept& b) {
      return to_string(sys.signature(), a) < to_string(sys.signature(), b);
    });
    fillers.erase(std::unique(fillers.begin(), fillers.end()), fillers.end());
    fillers = prune_conjuncts(sys, role, std::move(fillers));
  }
  return g;
}

std::vector<GroupedEL> normalize_to_groups(const System& sys, const Concept& c) {
  if (c.fragment() == Fragment::ALC)
    throw Error::semantic("normal form with grouping is defined for ELU concepts only");
  std::vector<Concept> disjuncts = dnf_disjuncts(c);
  std::vector<Concept> normalized;
  for (const auto& d : disjuncts) {
    Concept n = grouped_to_concept(sys.signature(), group_el(sys, d));
    if (std::find(normalized.begin(), normalized.end(), n) == normalized.end())
      normalized.push_back(std::move(n));
  }
  // in a disjunction the stronger (subsumed) disjunct is redundant
  std::vector<Concept> kept;
  for (std::size_t i = 0; i < normalized.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < normalized.size() && !redundant; ++j) {
      if (i == j) continue;
      if (!sys.subsumed(normalized[i], normalized[j])) continue;
      if (!sys.subsumed(normalized[j], normalized[i]) || j < i) redundant = true;
    }
    if (!redundant) kept.push_back(normalized[i]);
  }
  std::stable_sort(kept.begin(), kept.end(), [&](const Concept& a, const Concept& b) {
    return to_string(sys.signature(), a) < to_string(sys.signature(), b);
  });
  std::vector<GroupedEL> out;
  for (const auto& k : kept) out.push_back(group_el(sys, k));
  return out;
}

Concept groups_to_concept(const Signature& sig, const std::vector<GroupedEL>& gs) {
  if (gs.empty()) return Concept::bot();
  std::optional<Concept> acc;
  for (const auto& g : gs) {
    Concept c = grouped_to_concept(sig, g);
    acc = acc ? Concept::disj(std::move(*acc), std::move(c)) : std::move(c);
  }
  return *acc;
}

}  // namespace

Concept normalize_grouping(const System& sys, const Concept& c) {
  return groups_to_concept(sys.signature(), normalize_to_groups(sys, c));
}

// ---------------------------------------------------------------------------
// rho_e

namespace {

Concept rho_e_impl(const System& sys, const Concept& c);

Concept conj_fold(std::optional<Concept> acc, Concept next) {
  return acc ? Concept::conj(std::move(*acc), std::move(next)) : std::move(next);
}

Concept rho_e_group(const System& sys, int role, const std::vector<Concept>& fillers) {
  std::optional<Concept> dr;
  for (const auto& f : fillers) dr = conj_fold(std::move(dr), Concept::exists(role, f));
  if (sys.concept_equiv(*dr, Concept::exists(role, Concept::top()))) return Concept::top();

  if (fillers.size() > 10)
    throw Error::semantic("rho_e: too many existential conjuncts in one group");
  std::optional<Concept> out;
  for (std::uint32_t s = 0; s < (1u << fillers.size()); ++s) {
    std::optional<Concept> term;
    for (std::size_t i = 0; i < fillers.size(); ++i)
      if (!((s >> i) & 1u)) term = conj_fold(std::move(term), Concept::exists(role, fillers[i]));
    std::optional<Concept> picked;
    for (std::size_t i = 0; i < fillers.size(); ++i)
      if ((s >> i) & 1u) picked = conj_fold(std::move(picked), fillers[i]);
    Concept relaxed = rho_e_impl(sys, picked ? *picked : Concept::top());
    term = conj_fold(std::move(term), Concept::exists(role, std::move(relaxed)));
    out = out ? Concept::disj(std::move(*out), std::move(*term)) : std::move(*term);
  }
  return *out;
}

Concept rho_e_el(const System& sys, const GroupedEL& g) {
  if (is_top_marker(g)) return Concept::top();

  // C_D entries: concept names, then one D_r per role.
  std::size_t entries = g.names.size() + g.groups.size();
  std::optional<Concept> out;
  for (std::size_t pick = 0; pick < entries; ++pick) {
    Concept relaxed = Concept::top();
    if (pick >= g.names.size()) {
      const auto& [role, fillers] = g.groups[pick - g.names.size()];
      relaxed = rho_e_group(sys, role, fillers);
    }  // names relax to Top
    std::optional<Concept> term;
    if (relaxed != Concept::top() || entries == 1) term = relaxed;
    for (std::size_t other = 0; other < entries; ++other) {
      if (other == pick) continue;
      Concept h = other < g.names.size()
                      ? Concept::name(g.names[other])
                      : [&] {
                          const auto& [role, fillers] = g.groups[other - g.names.size()];
                          std::optional<Concept> dr;
                          for (const auto& f : fillers)
                            dr = conj_fold(std::move(dr), Concept::exists(role, f));
                          return *dr;
                        }();
      term = conj_fold(std::move(term), std::move(h));
    }
    if (!term) term = Concept::top();
    out = out ? Concept::disj(std::move(*out), std::move(*term)) : std::move(*term);
  }
  return *out;
}

Concept rho_e_impl(const System& sys, const Concept& c) {
  std::vector<GroupedEL> groups = normalize_to_groups(sys, c);
  if (groups.empty()) return Concept::bot();
  std::optional<Concept> out;
  for (const auto& g : groups) {
    Concept r = rho_e_el(sys, g);
    out = out ? Concept::disj(std::move(*out), std::move(r)) : std::move(r);
  }
  return *out;
}

}  // namespace

Concept rho_e(const System& sys, const Concept& c) {
  return normalize_grouping(sys, rho_e_impl(sys, c));
}

// ---------------------------------------------------------------------------
// Exception operators

Concept rho_exceptions(const System& sys, const Concept& c, const ExceptionSet& es, int k,
                       bool* flagged) {
  Concept out = c;
  int added = 0;
  for (const auto& e : es.exceptions) {
    if (added == k) break;
    if (sys.subsumed(Concept::conj(e, c), Concept::bot(), &es.context)) {
      out = Concept::disj(std::move(out), e);
      ++added;
    }
  }
  if (flagged) *flagged = added < k;
  return out;
}

Concept kappa_exceptions(const System& sys, const Concept& c, const ExceptionSet& es) {
  if (sys.fragment() != Fragment::ALC)
    throw Error::semantic("kappa_exceptions needs complement, available in ALC only");
  Concept out = c;
  for (const auto& e : es.exceptions)
    if (sys.subsumed(e, c, &es.context)) out = Concept::conj(std::move(out), Concept::neg(e));
  return out;
}

// ---------------------------------------------------------------------------
// Prefix-shaped operators

namespace {

struct PrefixShape {
  std::vector<std::pair<bool, int>> prefix;  // (existential?, role)
  Concept matrix = Concept::top();
};

bool has_quantifier(const Concept& c) {
  switch (c.kind()) {
    case Concept::Kind::Exists:
    case Concept::Kind::Forall: return true;
    case Concept::Kind::And:
    case Concept::Kind::Or: return has_quantifier(c.lhs()) || has_quantifier(c.rhs());
    case Concept::Kind::Not: return has_quantifier(c.lhs());
    default: return false;
  }
}

PrefixShape decompose_prefix(const Concept& c) {
  PrefixShape s;
  Concept cur = c;
  while (cur.kind() == Concept::Kind::Exists || cur.kind() == Concept::Kind::Forall) {
    s.prefix.push_back({cur.kind() == Concept::Kind::Exists, cur.role()});
    cur = cur.lhs();
  }
  if (has_quantifier(cur))
    throw Error::semantic("operator needs a quantifier prefix over a quantifier-free concept");
  s.matrix = cur;
  return s;
}

Concept rebuild_prefix(const std::vector<std::pair<bool, int>>& prefix, Concept matrix) {
  Concept out = std::move(matrix);
  for (auto it = prefix.rbegin(); it != prefix.rend(); ++it)
    out = it->first ? Concept::exists(it->second, std::move(out))
                    : Concept::forall(it->second, std::move(out));
  return out;
}

// Literals with light constant folding for the Dalal operators.
struct Lit {
  int name;
  bool negated;
  bool operator==(const Lit&) const = default;
  bool operator<(const Lit& o) const {
    if (name != o.name) return name < o.name;
    return negated < o.negated;
  }
};

Concept lit_concept(const Lit& l) {
  Concept c = Concept::name(l.name);
  return l.negated ? Concept::neg(std::move(c)) : c;
}

Concept nnf(const Concept& c, bool negate) {
  switch (c.kind()) {
    case Concept::Kind::Name: return negate ? Concept::neg(c) : c;
    case Concept::Kind::Top: return negate ? Concept::bot() : c;
    case Concept::Kind::Bot: return negate ? Concept::top() : c;
    case Concept::Kind::Not: return nnf(c.lhs(), !negate);
    case Concept::Kind::And: {
      Concept l = nnf(c.lhs(), negate), r = nnf(c.rhs(), negate);
      return negate ? Concept::disj(std::move(l), std::move(r))
                    : Concept::conj(std::move(l), std::move(r));
    }
    case Concept::Kind::Or: {
      Concept l = nnf(c.lhs(), negate), r = nnf(c.rhs(), negate);
      return negate ? Concept::conj(std::move(l), std::move(r))
                    : Concept::disj(std::move(l), std::move(r));
    }
    default:
      throw Error::semantic("quantifier inside a Dalal matrix");
  }
}

// clause/cube lists; std::nullopt marks an absorbed (Top clause / Bot cube)
using LitSets = std::vector<std::vector<Lit>>;

void merge_sorted(std::vector<Lit>& into, const std::vector<Lit>& from) {
  for (const auto& l : from)
    if (std::find(into.begin(), into.end(), l) == into.end()) into.push_back(l);
  std::sort(into.begin(), into.end());
}

// CNF conversion: [] is Top, a list containing [] is effectively Bot.
LitSets to_cnf(const Concept& c) {
  switch (c.kind()) {
    case Concept::Kind::Top: return {};
    case Concept::Kind::Bot: return {{}};
    case Concept::Kind::Name: return {{Lit{c.name_index(), false}}};
    case Concept::Kind::Not: return {{Lit{c.lhs().name_index(), true}}};
    case Concept::Kind::And: {
      LitSets l = to_cnf(c.lhs()), r = to_cnf(c.rhs());
      for (auto& cl : r) l.push_back(std::move(cl));
      return l;
    }
    case Concept::Kind::Or: {
      LitSets l = to_cnf(c.lhs()), r = to_cnf(c.rhs());
      if (l.empty() || r.empty()) return {};  // Top disjunct
      LitSets out;
      for (const auto& cl : l)
        for (const auto& cr : r) {
          std::vector<Lit> merged = cl;
          merge_sorted(merged, cr);
          out.push_back(std::move(merged));
        }
      return out;
    }
    default:
      throw Error::semantic("quantifier inside a Dalal matrix");
  }
}

// DNF conversion: [] is Bot, a list containing [] is effectively Top.
LitSets to_dnf(const Concept& c) {
  switch (c.kind()) {
    case Concept::Kind::Top: return {{}};
    case Concept::Kind::Bot: return {};
    case Concept::Kind::Name: return {{Lit{c.name_index(), false}}};
    case Concept::Kind::Not: return {{Lit{c.lhs().name_index(), true}}};
    case Concept::Kind::Or: {
      LitSets l = to_dnf(c.lhs()), r = to_dnf(c.rhs());
      for (auto& cu : r) l.push_back(std::move(cu));
      return l;
    }
    case Concept::Kind::And: {
      LitSets l = to_dnf(c.lhs()), r = to_dnf(c.rhs());
      LitSets out;
      for (const auto& cl : l)
        for (const auto& cr : r) {
          std::vector<Lit> merged = cl;
          merge_sorted(merged, cr);
          out.push_back(std::move(merged));
        }
      return out;
    }
    default:
      throw Error::semantic("quantifier inside a Dalal matrix");
  }
}

void canonicalize(LitSets& sets) {
  for (auto& s : sets) std::sort(s.begin(), s.end());
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
}

Concept clause_concept(const std::vector<Lit>& lits, bool disjunctive) {
  if (lits.empty()) return disjunctive ? Concept::bot() : Concept::top();
  std::optional<Concept> acc;
  for (const auto& l : lits) {
    Concept c = lit_concept(l);
    if (!acc)
      acc = std::move(c);
    else
      acc = disjunctive ? Concept::disj(std::move(*acc), std::move(c))
                        : Concept::conj(std::move(*acc), std::move(c));
  }
  return *acc;
}

}  // namespace

Concept kappa_dalal(const Concept& c) {
  PrefixShape s = decompose_prefix(c);
  LitSets cnf = to_cnf(nnf(s.matrix, false));
  canonicalize(cnf);
  if (cnf.empty()) return rebuild_prefix(s.prefix, Concept::top());

  // erode every clause: drop one literal per conjunct
  std::optional<Concept> acc;
  for (const auto& clause : cnf) {
    if (clause.empty()) return rebuild_prefix(s.prefix, Concept::bot());
    for (std::size_t j = 0; j < clause.size(); ++j) {
      std::vector<Lit> rest;
      for (std::size_t i = 0; i < clause.size(); ++i)
        if (i != j) rest.push_back(clause[i]);
      if (rest.empty()) return rebuild_prefix(s.prefix, Concept::bot());
      Concept part = clause_concept(rest, true);
      acc = acc ? Concept::conj(std::move(*acc), std::move(part)) : std::move(part);
    }
  }
  return rebuild_prefix(s.prefix, *acc);
}

Concept rho_dalal(const Concept& c) {
  PrefixShape s = decompose_prefix(c);
  LitSets dnf = to_dnf(nnf(s.matrix, false));
  canonicalize(dnf);
  if (dnf.empty()) return rebuild_prefix(s.prefix, Concept::bot());

  // dilate every cube: drop one literal per disjunct
  std::optional<Concept> acc;
  for (const auto& cube : dnf) {
    if (cube.empty()) return rebuild_prefix(s.prefix, Concept::top());
    for (std::size_t j = 0; j < cube.size(); ++j) {
      std::vector<Lit> rest;
      for (std::size_t i = 0; i < cube.size(); ++i)
        if (i != j) rest.push_back(cube[i]);
      if (rest.empty()) return rebuild_prefix(s.prefix, Concept::top());
      Concept part = clause_concept(rest, false);
      acc = acc ? Concept::disj(std::move(*acc), std::move(part)) : std::move(part);
    }
  }
  return rebuild_prefix(s.prefix, *acc);
}

Concept kappa_cap(const System& sys, const Concept& c, const ExceptionSet& es) {
  PrefixShape s = decompose_prefix(c);
  return rebuild_prefix(s.prefix, kappa_exceptions(sys, s.matrix, es));
}

Concept rho_cup(const System& sys, const Concept& c, const ExceptionSet& es) {
  PrefixShape s = decompose_prefix(c);
  return rebuild_prefix(s.prefix,
                        rho_exceptions(sys, s.matrix, es,
                                       static_cast<int>(es.exceptions.size()), nullptr));
}

Concept kappa_q(const Concept& c, bool* flagged) {
  PrefixShape s = decompose_prefix(c);
  std::optional<Concept> acc;
  for (std::size_t j = 0; j < s.prefix.size(); ++j) {
    if (!s.prefix[j].first) continue;  // only existentials flip
    auto prefix = s.prefix;
    prefix[j].first = false;
    Concept flip = rebuild_prefix(prefix, s.matrix);
    acc = acc ? Concept::conj(std::move(*acc), std::move(flip)) : std::move(flip);
  }
  if (flagged) *flagged = !acc.has_value();
  return acc ? *acc : c;
}

Concept rho_q(const Concept& c, bool* flagged) {
  PrefixShape s = decompose_prefix(c);
  std::optional<Concept> acc;
  for (std::size_t j = 0; j < s.prefix.size(); ++j) {
    if (s.prefix[j].first) continue;  // only universals flip
    auto prefix = s.prefix;
    prefix[j].first = true;
    Concept flip = rebuild_prefix(prefix, s.matrix);
    acc = acc ? Concept::disj(std::move(*acc), std::move(flip)) : std::move(flip);
  }
  if (flagged) *flagged = !acc.has_value();
  return acc ? *acc : c;
}

// ---------------------------------------------------------------------------
// Formula relaxations

Axiom formula_relax_right(const System&, const ConceptFn& rho, const Axiom& ax) {
  switch (ax.kind) {
    case Axiom::Kind::Subsumes: return Axiom::subsumes(ax.lhs, rho(ax.rhs));
    case Axiom::Kind::Instance: return Axiom::instance(ax.indiv_a, rho(ax.lhs));
    case Axiom::Kind::Role:
      return Axiom::role_assertion(ax.indiv_a, ax.indiv_b, Signature::kRoleTop);
  }
  return ax;
}

Axiom formula_relax_left(const System&, const ConceptFn& kappa, const Axiom& ax) {
  switch (ax.kind) {
    case Axiom::Kind::Subsumes: return Axiom::subsumes(kappa(ax.lhs), ax.rhs);
    case Axiom::Kind::Instance: return Axiom::instance(ax.indiv_a, Concept::top());
    case Axiom::Kind::Role:
      return Axiom::role_assertion(ax.indiv_a, ax.indiv_b, Signature::kRoleTop);
  }
  return ax;
}

}  // namespace satrev::dl
