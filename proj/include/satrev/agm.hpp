#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "satrev/core.hpp"
#include "satrev/error.hpp"
#include "satrev/relation.hpp"
#include "satrev/revision.hpp"

namespace satrev::agm {

template <class S>
struct RevisionOperator {
  std::string name;
  std::function<KBOf<S>(const KBOf<S>&, const KBOf<S>&)> apply;
};

template <class S>
using Assignment = std::function<ModelRelation(const KBOf<S>&)>;

template <class S>
struct Corpus {
  std::vector<KBOf<S>> kbs;
};

// Exhaustive corpus: every knowledge base of up to max_sentences drawn from
// the pool, in pool order, starting with the empty base.
template <class S>
Corpus<S> subsets_corpus(const std::vector<typename S::Sentence>& pool,
                         std::size_t max_sentences) {
  Corpus<S> out;
  out.kbs.push_back(KBOf<S>{});
  std::vector<std::size_t> picked;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (picked.size() == max_sentences) return;
    for (std::size_t i = start; i < pool.size(); ++i) {
      picked.push_back(i);
      KBOf<S> kb;
      for (std::size_t p : picked) kb.add(pool[p]);
      out.kbs.push_back(std::move(kb));
      rec(i + 1);
      picked.pop_back();
    }
  };
  rec(0);
  return out;
}

struct Counterexample {
  std::size_t t = SIZE_MAX, tp = SIZE_MAX, tpp = SIZE_MAX;  // corpus indices
  std::string detail;
};

struct CheckStat {
  std::string name;
  std::size_t checked = 0;
  std::size_t passed = 0;
  std::vector<Counterexample> failures;

  void record(bool ok, std::size_t t, std::size_t tp, std::size_t tpp,
              const std::string& detail) {
    ++checked;
    if (ok)
      ++passed;
    else
      failures.push_back(Counterexample{t, tp, tpp, detail});
  }
};

struct PostulateReport {
  std::vector<CheckStat> stats;

  const CheckStat& stat(const std::string& name) const {
    for (const auto& s : stats)
      if (s.name == name) return s;
    throw Error::semantic("no such postulate in report: " + name);
  }
  bool all_passed(const std::string& name) const {
    const auto& s = stat(name);
    return s.checked == s.passed;
  }
};

// Memoized, determinism-checked view of a revision operator over a corpus.
template <class S>
class OperatorCache {
 public:
  OperatorCache(const S& sys, const RevisionOperator<S>& op) : sys_(sys), op_(op) {}

  const Bitset& result_models(const KBOf<S>& t, const KBOf<S>& tp) {
    std::string key = kb_key(sys_, t) + "\x1f" + kb_key(sys_, tp);
    auto it = mods_.find(key);
    if (it != mods_.end()) return it->second;
    KBOf<S> first = op_.apply(t, tp);
    KBOf<S> second = op_.apply(t, tp);
    if (!(first == second))
      throw Error::semantic("revision operator '" + op_.name + "' is nondeterministic");
    return mods_.emplace(key, models_of(sys_, first)).first->second;
  }

 private:
  const S& sys_;
  const RevisionOperator<S>& op_;
  std::map<std::string, Bitset> mods_;
};

struct PostulateOptions {
  bool check_g56 = true;  // triples are cubic in the corpus size
};

// G1-G6 evaluated semantically on every applicable corpus tuple; G4 on
// cn-equal pairs only. The stronger syntax-independence (G'4) is reported
// separately and expected to fail for structure-preserving operators.
template <LogicSystem S>
PostulateReport check_postulates(const S& sys, const RevisionOperator<S>& op,
                                 const Corpus<S>& corpus,
                                 const PostulateOptions& options = {}) {
  OperatorCache<S> cache(sys, op);
  const auto& kbs = corpus.kbs;

  std::vector<Bitset> mods;
  std::vector<bool> consistent;
  for (const auto& kb : kbs) {
    mods.push_back(models_of(sys, kb));
    consistent.push_back(minus(mods.back(), sys.trivial_models()).any());
  }

  CheckStat g1{"G1"}, g2{"G2"}, g3{"G3"}, g4{"G4"}, g5{"G5"}, g6{"G6"}, gp4{"G'4"};

  for (std::size_t ti = 0; ti < kbs.size(); ++ti) {
    for (std::size_t pi = 0; pi < kbs.size(); ++pi) {
      const Bitset& r = cache.result_models(kbs[ti], kbs[pi]);
      if (consistent[pi])
        g1.record(minus(r, sys.trivial_models()).any(), ti, pi, SIZE_MAX,
                  "T∘T' inconsistent for consistent T'");
      g2.record(r.subset_of(mods[pi]), ti, pi, SIZE_MAX, "Mod(T∘T') ⊄ Mod(T')");
      Bitset both = mods[ti] & mods[pi];
      if (minus(both, sys.trivial_models()).any())
        g3.record(r == both, ti, pi, SIZE_MAX, "T∘T' differs from consistent T∪T'");
      if (options.check_g56) {
        for (std::size_t qi = 0; qi < kbs.size(); ++qi) {
          const Bitset& ru = cache.result_models(kbs[ti], kbs[pi].united(kbs[qi]));
          Bitset lhs = r & mods[qi];
          g5.record(lhs.subset_of(ru), ti, pi, qi, "Mod((T∘T')∪T'') ⊄ Mod(T∘(T'∪T''))");
          if (minus(lhs, sys.trivial_models()).any())
            g6.record(ru.subset_of(lhs), ti, pi, qi, "Mod(T∘(T'∪T'')) ⊄ Mod((T∘T')∪T'')");
        }
      }
    }
    // G4 on pairs already known cn-equal
    for (std::size_t a = 0; a < kbs.size(); ++a)
      for (std::size_t b = a + 1; b < kbs.size(); ++b)
        if (mods[a] == mods[b])
          g4.record(cache.result_models(kbs[ti], kbs[a]) ==
                        cache.result_models(kbs[ti], kbs[b]),
                    ti, a, b, "cn-equal inputs revised to different model sets");
  }

  // G'4: syntax independence in the first argument as well
  for (std::size_t a = 0; a < kbs.size(); ++a)
    for (std::size_t b = a + 1; b < kbs.size(); ++b) {
      if (mods[a] != mods[b]) continue;
      for (std::size_t pi = 0; pi < kbs.size(); ++pi)
        gp4.record(cache.result_models(kbs[a], kbs[pi]) ==
                       cache.result_models(kbs[b], kbs[pi]),
                   a, b, pi, "cn-equal bases revised to different model sets");
    }

  return PostulateReport{{g1, g2, g3, g4, g5, g6, gp4}};
}

// Empirical check of the reduction: any tuple passing G1-G3, G5 and G6 also
// passes G4. A violation falsifies the implementation, not the proposition.
template <LogicSystem S>
CheckStat check_g4_derivation(const S& sys, const RevisionOperator<S>& op,
                              const Corpus<S>& corpus) {
  OperatorCache<S> cache(sys, op);
  const auto& kbs = corpus.kbs;
  std::vector<Bitset> mods;
  std::vector<bool> consistent;
  for (const auto& kb : kbs) {
    mods.push_back(models_of(sys, kb));
    consistent.push_back(minus(mods.back(), sys.trivial_models()).any());
  }

  CheckStat out{"G4-derivation"};
  for (std::size_t ti = 0; ti < kbs.size(); ++ti) {
    // T' indices compatible with T under G1-G3, G5, G6 across the corpus
    std::vector<bool> good(kbs.size(), true);
    for (std::size_t pi = 0; pi < kbs.size(); ++pi) {
      const Bitset& r = cache.result_models(kbs[ti], kbs[pi]);
      if (consistent[pi] && !minus(r, sys.trivial_models()).any()) good[pi] = false;
      if (!r.subset_of(mods[pi])) good[pi] = false;
      Bitset both = mods[ti] & mods[pi];
      if (minus(both, sys.trivial_models()).any() && !(r == both)) good[pi] = false;
      for (std::size_t qi = 0; qi < kbs.size() && good[pi]; ++qi) {
        const Bitset& ru = cache.result_models(kbs[ti], kbs[pi].united(kbs[qi]));
        Bitset lhs = r & mods[qi];
        if (!lhs.subset_of(ru)) good[pi] = false;
        if (minus(lhs, sys.trivial_models()).any() && !ru.subset_of(lhs)) good[pi] = false;
      }
    }
    for (std::size_t a = 0; a < kbs.size(); ++a)
      for (std::size_t b = a + 1; b < kbs.size(); ++b)
        if (good[a] && good[b] && mods[a] == mods[b])
          out.record(cache.result_models(kbs[ti], kbs[a]) ==
                         cache.result_models(kbs[ti], kbs[b]),
                     ti, a, b, "tuple passes G1-G3,G5,G6 but fails G4");
  }
  return out;
}

// Both conditions of a faithful assignment, over all bounded model pairs.
template <LogicSystem S>
bool check_faithful(const S& sys, const ModelRelation& rel, const KBOf<S>& kb) {
  Bitset mod = models_of(sys, kb);
  std::size_t n = sys.model_count();
  for (std::size_t i = 0; i < n; ++i) {
    if (!sys.universe().test(i)) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (!sys.universe().test(j)) continue;
      if (mod.test(i) && mod.test(j) && rel.strict(i, j)) return false;
      if (mod.test(i) && !mod.test(j) && !rel.strict(i, j)) return false;
    }
  }
  return true;
}

// The three supplementary FA+ conditions from the correspondence theorem.
template <LogicSystem S>
PostulateReport check_fa_plus(const S& sys, const Assignment<S>& assignment,
                              const RevisionOperator<S>& op, const Corpus<S>& corpus) {
  OperatorCache<S> cache(sys, op);
  const auto& kbs = corpus.kbs;
  std::vector<Bitset> mods;
  std::vector<bool> consistent;
  for (const auto& kb : kbs) {
    mods.push_back(models_of(sys, kb));
    consistent.push_back(minus(mods.back(), sys.trivial_models()).any());
  }

  CheckStat min_eq{"min-equation"}, nonempty{"min-nonempty"}, cut{"cut-equation"};
  for (std::size_t ti = 0; ti < kbs.size(); ++ti) {
    ModelRelation rel = assignment(kbs[ti]);
    for (std::size_t pi = 0; pi < kbs.size(); ++pi) {
      Bitset nontrivial = minus(mods[pi], sys.trivial_models());
      Bitset min = min_models(nontrivial, rel);
      Bitset lhs = minus(cache.result_models(kbs[ti], kbs[pi]), sys.trivial_models());
      min_eq.record(lhs == min, ti, pi, SIZE_MAX, "Mod(T∘T')∖Triv ≠ Min(Mod(T')∖Triv,⪯)");
      if (consistent[pi])
        nonempty.record(min.any(), ti, pi, SIZE_MAX, "Min empty for consistent T'");
      for (std::size_t qi = 0; qi < kbs.size(); ++qi) {
        Bitset joined = cache.result_models(kbs[ti], kbs[pi]) & mods[qi];
        if (!minus(joined, sys.trivial_models()).any()) continue;
        Bitset rhs = min_models(
            minus(mods[pi] & mods[qi], sys.trivial_models()), rel);
        cut.record((min & mods[qi]) == rhs, ti, pi, qi,
                   "Min(Mod(T')∖Triv,⪯)∩Mod(T'') ≠ Min(Mod(T'∪T'')∖Triv,⪯)");
      }
    }
  }
  return PostulateReport{{min_eq, nonempty, cut}};
}

// ⪯_T = ∪_{T'} ⪯^{T'}_T where T' ranges over canonical theories of bounded
// model subsets (plus the empty knowledge base).
template <LogicSystem S>
ModelRelation induced_assignment(const S& sys, const RevisionOperator<S>& op,
                                 const KBOf<S>& kb) {
  if (!TheoryFromModels<S>::available)
    throw Error::semantic(
        "induced_assignment needs theory_from_models, unsupported for this logic");
  std::size_t n = sys.model_count();
  if (n > 12) throw Error::semantic("induced_assignment is limited to tiny model spaces");

  ModelRelation rel(n);
  auto add_context = [&](const KBOf<S>& context) {
    Bitset dom = models_of(sys, context);
    Bitset r = models_of(sys, op.apply(kb, context));
    dom.for_each_set([&](std::size_t i) {
      if (!r.test(i)) return;
      dom.for_each_set([&](std::size_t j) {
        if (!r.test(j)) rel.set(i, j);
      });
    });
  };

  add_context(KBOf<S>{});
  std::size_t subsets = std::size_t{1} << n;
  for (std::size_t mask = 0; mask < subsets; ++mask) {
    Bitset ms(n);
    for (std::size_t b = 0; b < n; ++b)
      if ((mask >> b) & 1u) ms.set(b);
    if (!ms.subset_of(sys.universe())) continue;
    add_context(TheoryFromModels<S>::build(sys, ms));
  }
  return rel;
}

template <class S>
Assignment<S> fa_join(const Assignment<S>& a, const Assignment<S>& b) {
  return [a, b](const KBOf<S>& kb) { return a(kb).united(b(kb)); };
}
template <class S>
Assignment<S> fa_meet(const Assignment<S>& a, const Assignment<S>& b) {
  return [a, b](const KBOf<S>& kb) { return a(kb).intersected(b(kb)); };
}

}  // namespace satrev::agm
