#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "satrev/core.hpp"
#include "satrev/error.hpp"
#include "satrev/relation.hpp"

namespace satrev {

// Sentence transform with the relaxation contract. `exhaustive` is the
// catalog tag; operators without it are admissible only with an override.
template <class S>
struct Relaxation {
  std::string name;
  bool exhaustive = true;
  std::function<typename S::Sentence(const typename S::Sentence&)> apply;
};

using RelaxationVector = std::vector<int>;

inline int vec_sum(const RelaxationVector& v) {
  return std::accumulate(v.begin(), v.end(), 0);
}
inline bool vec_leq(const RelaxationVector& a, const RelaxationVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}
inline bool vec_less(const RelaxationVector& a, const RelaxationVector& b) {
  return vec_leq(a, b) && a != b;
}
inline RelaxationVector vec_join(const RelaxationVector& a, const RelaxationVector& b) {
  RelaxationVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i], b[i]);
  return out;
}

enum class Mode { Minimal, Coherent };

inline std::string to_string(Mode m) { return m == Mode::Minimal ? "minimal" : "coherent"; }

struct RevisionConfig {
  Mode mode = Mode::Coherent;
  // hard limit when iterating a relaxation on one sentence
  int exhaustivity_cap = 10;
  bool allow_non_exhaustive = false;
  // sub-theory contexts are joined to fixpoint only when the space outside
  // Mod(T') has at most this many non-trivial models
  std::size_t coherence_context_limit = 12;
};

template <class S>
struct RevisionResult {
  KBOf<S> revised;
  RelaxationVector vector;
  Mode mode = Mode::Coherent;
  std::vector<RelaxationVector> candidates;  // all sum-minimal consistent vectors
  bool new_inconsistent = false;             // T' inconsistent; result is T'
  bool old_inconsistent = false;             // T inconsistent; revision proceeded anyway
  std::vector<int> capped;                   // indices whose relaxation hit a cap or fixpoint
};

// φ relaxed k_φ times, per sentence.
template <LogicSystem S>
KBOf<S> apply_vector(const Relaxation<S>& rho, const KBOf<S>& kb, const RelaxationVector& k) {
  if (k.size() != kb.size())
    throw Error::semantic("relaxation vector does not cover the knowledge base");
  KBOf<S> out;
  for (std::size_t i = 0; i < kb.size(); ++i) {
    auto s = kb[i];
    for (int j = 0; j < k[i]; ++j) s = rho.apply(s);
    out.add(std::move(s));
  }
  return out;
}

template <LogicSystem S>
bool check_extensivity(const S& sys, const Relaxation<S>& rho, const typename S::Sentence& phi) {
  return sys.sentence_models(phi).subset_of(sys.sentence_models(rho.apply(phi)));
}

// Least k ≤ cap with Mod(ρ^k(φ)) covering the whole bounded space.
template <LogicSystem S>
std::optional<int> exhaustivity_index(const S& sys, const Relaxation<S>& rho,
                                      const typename S::Sentence& phi, int cap) {
  auto s = phi;
  for (int k = 0; k <= cap; ++k) {
    if (sys.sentence_models(s) == sys.universe()) return k;
    if (k < cap) {
      auto next = rho.apply(s);
      if (next == s) return std::nullopt;  // syntactic fixpoint below full coverage
      s = std::move(next);
    }
  }
  return std::nullopt;
}

// T' ⊑ T'': T' embeds into some knowledge base equivalent to T''. The
// witness T''' = T' ∪ T'' reduces this to Mod(T'') ⊆ Mod(T').
template <LogicSystem S>
bool revision_order_leq(const S& sys, const KBOf<S>& tp, const KBOf<S>& tpp) {
  return models_of(sys, tpp).subset_of(models_of(sys, tp));
}

namespace detail {

// Per-sentence relaxation chains: forms[i][k] = ρ^k(φ_i) with its model set,
// stopped at full coverage, syntactic fixpoint, or the cap.
template <class S>
struct RelaxationTable {
  std::vector<std::vector<typename S::Sentence>> forms;
  std::vector<std::vector<Bitset>> mods;
  std::vector<int> caps;
  std::vector<int> capped;  // indices stopped before reaching full coverage
};

template <LogicSystem S>
RelaxationTable<S> build_table(const S& sys, const Relaxation<S>& rho, const KBOf<S>& kb,
                               const RevisionConfig& config) {
  RelaxationTable<S> t;
  for (std::size_t i = 0; i < kb.size(); ++i) {
    std::vector<typename S::Sentence> forms{kb[i]};
    std::vector<Bitset> mods{sys.sentence_models(kb[i])};
    while (mods.back() != sys.universe() &&
           static_cast<int>(forms.size()) <= config.exhaustivity_cap) {
      auto next = rho.apply(forms.back());
      if (next == forms.back()) break;
      forms.push_back(next);
      mods.push_back(sys.sentence_models(next));
    }
    if (mods.back() != sys.universe()) t.capped.push_back(static_cast<int>(i));
    t.caps.push_back(static_cast<int>(forms.size()) - 1);
    t.forms.push_back(std::move(forms));
    t.mods.push_back(std::move(mods));
  }
  return t;
}

// All sum-minimal vectors K ≤ caps with Mod(ρ^K(T)) ∩ target non-trivial,
// via best-first search on the sum.
template <class S>
std::vector<RelaxationVector> minimal_vectors(const S& sys, const RelaxationTable<S>& table,
                                              const Bitset& target) {
  std::size_t n = table.caps.size();
  auto consistent = [&](const RelaxationVector& k) {
    Bitset inter = target;
    for (std::size_t i = 0; i < n; ++i) inter &= table.mods[i][static_cast<std::size_t>(k[i])];
    return minus(std::move(inter), sys.trivial_models()).any();
  };

  int total = std::accumulate(table.caps.begin(), table.caps.end(), 0);
  if (n == 0) return consistent({}) ? std::vector<RelaxationVector>{{}}
                                    : std::vector<RelaxationVector>{};
  for (int sum = 0; sum <= total; ++sum) {
    std::vector<RelaxationVector> found;
    RelaxationVector k(n, 0);
    // enumerate vectors with the given sum, componentwise below the caps
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
      if (i + 1 == n) {
        if (left > table.caps[i]) return;
        k[i] = left;
        if (consistent(k)) found.push_back(k);
        return;
      }
      for (int v = 0; v <= std::min(left, table.caps[i]); ++v) {
        k[i] = v;
        rec(i + 1, left - v);
      }
    };
    rec(0, sum);
    if (!found.empty()) {
      std::sort(found.begin(), found.end());
      return found;
    }
  }
  return {};
}

// Deterministic pick for minimal mode: relax the earliest-indexed sentences
// first (largest component at the first differing index).
inline RelaxationVector pick_minimal(const std::vector<RelaxationVector>& candidates) {
  RelaxationVector best = candidates.front();
  for (const auto& c : candidates)
    if (std::lexicographical_compare(best.begin(), best.end(), c.begin(), c.end())) best = c;
  return best;
}

// Coherent vector for a model-set context: join of its sum-minimal vectors,
// joined with the vectors of every strictly larger context.
template <class S>
RelaxationVector coherent_vector(const S& sys, const RelaxationTable<S>& table,
                                 const Bitset& context, const Bitset& expandable,
                                 std::map<std::string, RelaxationVector>& memo) {
  auto it = memo.find(context.key());
  if (it != memo.end()) return it->second;

  auto mins = minimal_vectors(sys, table, context);
  RelaxationVector join(table.caps.size(), 0);
  for (const auto& m : mins) join = vec_join(join, m);

  Bitset free = minus(expandable, context);
  free.for_each_set([&](std::size_t x) {
    Bitset bigger = context;
    bigger.set(x);
    join = vec_join(join, coherent_vector(sys, table, bigger, expandable, memo));
  });
  memo.emplace(context.key(), join);
  return join;
}

template <LogicSystem S>
std::vector<RelaxationVector> search_or_fail(const S& sys, const Relaxation<S>& rho,
                                             const RelaxationTable<S>& table,
                                             const Bitset& target) {
  auto candidates = minimal_vectors(sys, table, target);
  if (candidates.empty()) {
    std::string frontier;
    for (std::size_t i = 0; i < table.caps.size(); ++i) {
      if (i) frontier += ",";
      frontier += std::to_string(table.caps[i]);
    }
    throw Error::semantic("revision failed: relaxation '" + rho.name +
                          "' not exhaustive enough (search frontier caps [" + frontier + "])");
  }
  return candidates;
}

}  // namespace detail

template <LogicSystem S>
RevisionResult<S> revise(const S& sys, const KBOf<S>& old_kb, const KBOf<S>& new_kb,
                         const Relaxation<S>& rho, const RevisionConfig& config) {
  RevisionResult<S> result;
  result.mode = config.mode;

  if (!is_consistent(sys, new_kb)) {
    result.revised = new_kb;
    result.new_inconsistent = true;
    return result;
  }
  if (!rho.exhaustive && !config.allow_non_exhaustive)
    throw Error::semantic("relaxation '" + rho.name +
                          "' is tagged non-exhaustive; pass the override to use it");

  result.old_inconsistent = !is_consistent(sys, old_kb);

  auto table = detail::build_table(sys, rho, old_kb, config);
  result.capped = table.capped;

  Bitset target = models_of(sys, new_kb);
  result.candidates = detail::search_or_fail(sys, rho, table, target);

  if (config.mode == Mode::Minimal) {
    result.vector = detail::pick_minimal(result.candidates);
  } else {
    RelaxationVector join(old_kb.size(), 0);
    for (const auto& c : result.candidates) join = vec_join(join, c);
    Bitset expandable = minus(minus(sys.universe(), target), sys.trivial_models());
    if (expandable.count() <= config.coherence_context_limit) {
      std::map<std::string, RelaxationVector> memo;
      Bitset context = minus(target, sys.trivial_models());
      join = vec_join(join,
                      detail::coherent_vector(sys, table, context,
                                              minus(sys.universe(), sys.trivial_models()), memo));
    }
    result.vector = join;
  }

  for (std::size_t i = 0; i < old_kb.size(); ++i)
    result.revised.add(table.forms[i][static_cast<std::size_t>(result.vector[i])]);
  result.revised = result.revised.united(new_kb);
  return result;
}

// Relevance: zeroing any nonzero component of the chosen vector must break
// consistency with the new knowledge.
template <LogicSystem S>
bool check_relevance(const S& sys, const Relaxation<S>& rho, const KBOf<S>& old_kb,
                     const KBOf<S>& new_kb, const RevisionResult<S>& result) {
  if (result.new_inconsistent) return true;
  Bitset target = models_of(sys, new_kb);
  for (std::size_t i = 0; i < result.vector.size(); ++i) {
    if (result.vector[i] == 0) continue;
    RelaxationVector zeroed = result.vector;
    zeroed[i] = 0;
    Bitset inter = target;
    for (std::size_t j = 0; j < old_kb.size(); ++j) {
      auto s = old_kb[j];
      for (int r = 0; r < zeroed[j]; ++r) s = rho.apply(s);
      inter &= sys.sentence_models(s);
    }
    if (minus(std::move(inter), sys.trivial_models()).any()) return false;
  }
  return true;
}

// Trivial relaxation: every sentence maps to the canonical tautology.
template <LogicSystem S>
Relaxation<S> trivial_relaxation(const S& sys) {
  return Relaxation<S>{"trivial", true,
                       [taut = sys.tautology()](const typename S::Sentence&) { return taut; }};
}

// The f_ρ faithful assignment, computed extensionally: K components range
// over the per-sentence relaxation chains, and T' over canonical theories of
// bounded model subsets. Requires exhaustive relaxations and a logic with
// theory_from_models (the canonical theories are meaningful sentences there).
template <LogicSystem S>
ModelRelation f_rho_relation(const S& sys, const Relaxation<S>& rho, const KBOf<S>& old_kb,
                             const RevisionConfig& config) {
  if (!TheoryFromModels<S>::available)
    throw Error::semantic("f_rho_relation needs theory_from_models, unsupported for this logic");
  if (!rho.exhaustive)
    throw Error::semantic("f_rho_relation needs finite exhaustivity indices");
  std::size_t n = sys.model_count();
  if (n > 12) throw Error::semantic("f_rho_relation is limited to tiny model spaces");

  auto table = detail::build_table(sys, rho, old_kb, config);
  if (!table.capped.empty())
    throw Error::semantic("f_rho_relation needs finite exhaustivity indices");

  // materialize Mod(ρ^K(T)) for every K below the caps
  std::vector<RelaxationVector> all_k;
  {
    RelaxationVector k(old_kb.size(), 0);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == old_kb.size()) {
        all_k.push_back(k);
        return;
      }
      for (int v = 0; v <= table.caps[i]; ++v) {
        k[i] = v;
        rec(i + 1);
      }
    };
    rec(0);
  }
  auto mod_of = [&](const RelaxationVector& k) {
    Bitset inter = sys.universe();
    for (std::size_t i = 0; i < old_kb.size(); ++i)
      inter &= table.mods[i][static_cast<std::size_t>(k[i])];
    return inter;
  };
  std::vector<Bitset> k_mods;
  k_mods.reserve(all_k.size());
  for (const auto& k : all_k) k_mods.push_back(mod_of(k));

  ModelRelation rel(n);
  std::size_t subsets = std::size_t{1} << n;
  for (std::size_t mask = 0; mask < subsets; ++mask) {
    Bitset context(n);
    for (std::size_t b = 0; b < n; ++b)
      if ((mask >> b) & 1u) context.set(b);
    if (!context.subset_of(sys.universe())) continue;
    if (minus(context, sys.trivial_models()).none()) continue;  // inconsistent T'

    auto candidates = detail::minimal_vectors(sys, table, context);
    if (candidates.empty()) continue;
    RelaxationVector base;
    if (config.mode == Mode::Minimal) {
      base = detail::pick_minimal(candidates);
    } else {
      base = RelaxationVector(old_kb.size(), 0);
      for (const auto& c : candidates) base = vec_join(base, c);
      Bitset expandable = minus(minus(sys.universe(), context), sys.trivial_models());
      if (expandable.count() <= config.coherence_context_limit) {
        std::map<std::string, RelaxationVector> memo;
        base = vec_join(base, detail::coherent_vector(
                                  sys, table, minus(context, sys.trivial_models()),
                                  minus(sys.universe(), sys.trivial_models()), memo));
      }
    }

    context.for_each_set([&](std::size_t mi) {
      context.for_each_set([&](std::size_t mj) {
        // mi ⪯ mj iff every K'' ≥ base admitting mj has a smaller K' ≥ base
        // admitting mi
        bool holds = true;
        for (std::size_t a = 0; a < all_k.size() && holds; ++a) {
          if (!vec_leq(base, all_k[a])) continue;
          if (!k_mods[a].test(mj)) continue;
          bool witness = false;
          for (std::size_t b = 0; b < all_k.size() && !witness; ++b) {
            if (!vec_leq(base, all_k[b])) continue;
            if (!vec_less(all_k[b], all_k[a])) continue;
            if (k_mods[b].test(mi)) witness = true;
          }
          if (!witness) holds = false;
        }
        if (holds) rel.set(mi, mj);
      });
    });
  }
  return rel;
}

}  // namespace satrev
