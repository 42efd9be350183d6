#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "satrev/ops.hpp"
#include "satrev/revision.hpp"
#include "support/generators.hpp"

using namespace satrev;
using dl::Axiom;
using dl::Concept;

namespace {

struct TweetySetup {
  dl::System sys;
  dl::KB t, tp;
  Relaxation<dl::System> rho;

  static TweetySetup make() {
    dl::Signature sig{{"Tweety", "bird", "flies"}, {"r_top"}, {}};
    dl::Options opts;
    opts.nonempty_concepts = true;
    dl::System sys(sig, dl::Fragment::EL, 3, opts);
    dl::KB t({Axiom::subsumes(Concept::name(0), Concept::name(1)),
              Axiom::subsumes(Concept::name(1), Concept::name(2))});
    dl::KB tp({Axiom::subsumes(Concept::conj(Concept::name(0), Concept::name(2)),
                               Concept::bot())});
    auto rho = ops::dl_relaxation(sys, "kappa_bot", {});
    return TweetySetup{std::move(sys), std::move(t), std::move(tp), std::move(rho)};
  }
};

pl::System pq() { return pl::System{pl::Signature{{"p", "q"}}}; }

}  // namespace

TEST_CASE("apply_vector") {
  auto sys = pq();
  auto rho = ops::pl_relaxation(sys, "hamming");
  pl::KB kb({pl::Sentence::atom(0), pl::Sentence::atom(1)});

  CHECK(apply_vector(rho, kb, {0, 0}) == kb);

  pl::KB once = apply_vector(rho, kb, {0, 1});
  CHECK(once[0] == kb[0]);
  CHECK(sys.sentence_models(once[1]) == sys.universe());  // dilated q covers the space

  auto tw = TweetySetup::make();
  dl::KB relaxed = apply_vector(tw.rho, tw.t, {1, 1});
  dl::KB expected({Axiom::subsumes(Concept::bot(), Concept::name(1)),
                   Axiom::subsumes(Concept::bot(), Concept::name(2))});
  CHECK(relaxed == expected);
}

TEST_CASE("apply_vector needs a total vector") {
  auto sys = pq();
  auto rho = ops::pl_relaxation(sys, "hamming");
  pl::KB kb({pl::Sentence::atom(0)});
  CHECK_THROWS_AS(apply_vector(rho, kb, {0, 1}), Error);
}

TEST_CASE("extensivity and exhaustivity checks") {
  auto sys = pq();
  auto triv = trivial_relaxation(sys);
  CHECK(check_extensivity(sys, triv, pl::Sentence::atom(0)));
  CHECK(exhaustivity_index(sys, triv, pl::Sentence::atom(0), 3) == 1);
  CHECK(exhaustivity_index(sys, triv, sys.tautology(), 3) == 0);

  auto rho = ops::pl_relaxation(sys, "hamming");
  CHECK(exhaustivity_index(sys, rho, pl::Sentence::atom(0), 3) == 1);

  // an exception relaxation without usable exceptions never reaches the space
  dl::Signature sig{{"A", "B"}, {"r_top"}, {}};
  dl::System dsys(sig, dl::Fragment::ELU, 2);
  auto rex = ops::dl_relaxation(dsys, "rho_exceptions", {});
  CHECK_FALSE(exhaustivity_index(dsys, rex, Axiom::subsumes(Concept::name(0), Concept::name(1)), 4)
                  .has_value());
}

TEST_CASE("revision order") {
  auto sys = pq();
  pl::Sentence p = pl::Sentence::atom(0), q = pl::Sentence::atom(1);
  CHECK(revision_order_leq(sys, pl::KB({p}), pl::KB({p, q})));
  CHECK_FALSE(revision_order_leq(sys, pl::KB({p}), pl::KB({q})));
  CHECK(revision_order_leq(sys, pl::KB{}, pl::KB({q})));

  // definitional form: T' ⊑ T'' iff the witness T''' = T'∪T'' matches Mod(T'')
  gen::Rng rng(51);
  for (int trial = 0; trial < 100; ++trial) {
    pl::KB tp = gen::pl_kb(rng, 2, 2, 2);
    pl::KB tpp = gen::pl_kb(rng, 2, 2, 2);
    bool direct = revision_order_leq(sys, tp, tpp);
    bool witness = models_of(sys, tp.united(tpp)) == models_of(sys, tpp);
    CHECK(direct == witness);
  }
}

TEST_CASE("revise: propositional example") {
  auto sys = pq();
  auto rho = ops::pl_relaxation(sys, "hamming");
  RevisionConfig config;
  config.mode = Mode::Minimal;

  pl::KB t({pl::Sentence::atom(0), pl::Sentence::atom(1)});
  pl::KB tp({pl::Sentence::neg(pl::Sentence::atom(1))});
  auto result = revise(sys, t, tp, rho, config);
  CHECK(result.vector == RelaxationVector{0, 1});
  Bitset expect(4);
  expect.set(0b01);
  CHECK(models_of(sys, result.revised) == expect);
  CHECK(result.candidates == std::vector<RelaxationVector>{{0, 1}});
}

TEST_CASE("revise: Tweety") {
  auto tw = TweetySetup::make();
  REQUIRE(is_consistent(tw.sys, tw.t));
  REQUIRE(is_consistent(tw.sys, tw.tp));
  REQUIRE_FALSE(is_consistent(tw.sys, tw.t.united(tw.tp)));

  RevisionConfig minimal;
  minimal.mode = Mode::Minimal;
  auto r1 = revise(tw.sys, tw.t, tw.tp, tw.rho, minimal);
  CHECK(r1.vector == RelaxationVector{1, 0});
  dl::KB t_circ_1({Axiom::subsumes(Concept::bot(), Concept::name(1)),
                   Axiom::subsumes(Concept::name(1), Concept::name(2)),
                   Axiom::subsumes(Concept::conj(Concept::name(0), Concept::name(2)),
                                   Concept::bot())});
  CHECK(r1.revised == t_circ_1);
  CHECK(r1.candidates == std::vector<RelaxationVector>{{0, 1}, {1, 0}});

  // no consistent vector of strictly smaller sum exists
  Bitset target = models_of(tw.sys, tw.tp);
  for (RelaxationVector smaller : {RelaxationVector{0, 0}}) {
    Bitset inter = target;
    for (std::size_t i = 0; i < tw.t.size(); ++i) {
      auto s = tw.t[i];
      for (int r = 0; r < smaller[i]; ++r) s = tw.rho.apply(s);
      inter &= tw.sys.sentence_models(s);
    }
    CHECK_FALSE(minus(std::move(inter), tw.sys.trivial_models()).any());
  }

  RevisionConfig coherent;
  coherent.mode = Mode::Coherent;
  auto r2 = revise(tw.sys, tw.t, tw.tp, tw.rho, coherent);
  CHECK(r2.vector == RelaxationVector{1, 1});
  dl::KB expected({Axiom::subsumes(Concept::bot(), Concept::name(1)),
                   Axiom::subsumes(Concept::bot(), Concept::name(2)),
                   Axiom::subsumes(Concept::conj(Concept::name(0), Concept::name(2)),
                                   Concept::bot())});
  CHECK(r2.revised == expected);
  CHECK(is_consistent(tw.sys, r2.revised));
}

TEST_CASE("revise: inconsistent new knowledge short-circuits") {
  auto sys = pq();
  auto rho = ops::pl_relaxation(sys, "hamming");
  pl::KB t({pl::Sentence::atom(0)});
  pl::KB bad({pl::Sentence::atom(1), pl::Sentence::neg(pl::Sentence::atom(1))});
  auto result = revise(sys, t, bad, rho, RevisionConfig{});
  CHECK(result.new_inconsistent);
  CHECK(result.revised == bad);
  CHECK(result.vector.empty());
}

TEST_CASE("revise: inconsistent old base proceeds with a flag") {
  auto sys = pq();
  auto rho = ops::pl_relaxation(sys, "hamming");
  pl::KB t({pl::Sentence::atom(0), pl::Sentence::neg(pl::Sentence::atom(0))});
  pl::KB tp({pl::Sentence::atom(1)});
  auto result = revise(sys, t, tp, rho, RevisionConfig{});
  CHECK(result.old_inconsistent);
  CHECK(is_consistent(sys, result.revised));
}

TEST_CASE("revise: non-exhaustive relaxation needs the override") {
  dl::Signature sig{{"A", "B"}, {"r_top"}, {}};
  dl::System sys(sig, dl::Fragment::ELU, 2);
  auto rex = ops::dl_relaxation(sys, "rho_exceptions", {});
  dl::KB t({Axiom::subsumes(Concept::top(), Concept::name(0))});
  dl::KB tp({Axiom::subsumes(Concept::name(0), Concept::bot())});

  RevisionConfig config;
  CHECK_THROWS_AS(revise(sys, t, tp, rex, config), Error);

  config.allow_non_exhaustive = true;
  // still fails: no exception can rescue consistency, but now with the
  // search-frontier diagnostic
  CHECK_THROWS_WITH_AS(revise(sys, t, tp, rex, config),
                       doctest::Contains("revision failed"), Error);
}

TEST_CASE("relevance") {
  auto tw = TweetySetup::make();
  RevisionConfig minimal;
  minimal.mode = Mode::Minimal;
  auto r1 = revise(tw.sys, tw.t, tw.tp, tw.rho, minimal);
  CHECK(check_relevance(tw.sys, tw.rho, tw.t, tw.tp, r1));

  // all-zero vector is vacuously relevant
  auto sys = pq();
  auto rho = ops::pl_relaxation(sys, "hamming");
  pl::KB t({pl::Sentence::atom(0)});
  pl::KB tp({pl::Sentence::atom(1)});
  auto r2 = revise(sys, t, tp, rho, minimal);
  CHECK(r2.vector == RelaxationVector{0});
  CHECK(check_relevance(sys, rho, t, tp, r2));

  // an oversized hand-built vector still passes relevance
  auto r3 = r1;
  r3.vector = {2, 0};
  r3.revised = apply_vector(tw.rho, tw.t, r3.vector).united(tw.tp);
  CHECK(check_relevance(tw.sys, tw.rho, tw.t, tw.tp, r3));
}

TEST_CASE("trivial relaxation") {
  auto sys = pq();
  auto triv = trivial_relaxation(sys);
  pl::Sentence s = pl::Sentence::conj(pl::Sentence::atom(0), pl::Sentence::atom(1));
  CHECK(triv.apply(s) == sys.tautology());
  CHECK(triv.apply(triv.apply(s)) == triv.apply(s));

  // Tweety with the trivial relaxation drops the first conflicting axiom
  auto tw = TweetySetup::make();
  auto dtriv = trivial_relaxation(tw.sys);
  RevisionConfig minimal;
  minimal.mode = Mode::Minimal;
  auto result = revise(tw.sys, tw.t, tw.tp, dtriv, minimal);
  CHECK(result.vector == RelaxationVector{1, 0});
  CHECK(result.revised[0] == tw.sys.tautology());
  CHECK(is_consistent(tw.sys, result.revised));
}

TEST_CASE("revise is deterministic") {
  auto tw = TweetySetup::make();
  RevisionConfig coherent;
  auto a = revise(tw.sys, tw.t, tw.tp, tw.rho, coherent);
  auto b = revise(tw.sys, tw.t, tw.tp, tw.rho, coherent);
  CHECK(a.revised == b.revised);
  CHECK(a.vector == b.vector);
  CHECK(a.candidates == b.candidates);
}

TEST_CASE("engine-level AGM invariants on random inputs") {
  auto sys = pq();
  auto rho = ops::pl_relaxation(sys, "hamming");
  gen::Rng rng(52);
  for (auto mode : {Mode::Minimal, Mode::Coherent}) {
    RevisionConfig config;
    config.mode = mode;
    for (int trial = 0; trial < 100; ++trial) {
      pl::KB t = gen::pl_kb(rng, 2, 2, 2);
      pl::KB tp = gen::pl_kb(rng, 2, 2, 2);
      if (!is_consistent(sys, tp)) continue;
      bool unsat_member = false;
      for (const auto& s : t)
        if (sys.sentence_models(s).none()) unsat_member = true;
      if (unsat_member) {
        // dilation never grows an empty model set, so the search must fail
        CHECK_THROWS_AS(revise(sys, t, tp, rho, config), Error);
        continue;
      }
      auto result = revise(sys, t, tp, rho, config);
      CHECK(is_consistent(sys, result.revised));                            // G1
      CHECK(models_of(sys, result.revised).subset_of(models_of(sys, tp)));  // G2
      if (is_consistent(sys, t.united(tp)))
        CHECK(cn_equal(sys, result.revised, t.united(tp)));  // G3
      if (mode == Mode::Minimal)
        CHECK(check_relevance(sys, rho, t, tp, result));
    }
  }
}

TEST_CASE("f_rho_relation over one atom") {
  pl::System sys{pl::Signature{{"p"}}};
  auto rho = ops::pl_relaxation(sys, "hamming");
  RevisionConfig config;
  pl::KB t({pl::Sentence::atom(0)});

  ModelRelation rel = f_rho_relation(sys, rho, t, config);
  // model 1 satisfies p, model 0 does not
  CHECK(rel.leq(1, 0));
  CHECK_FALSE(rel.leq(0, 1));
  CHECK(rel.strict(1, 0));

  // FA condition 1 inside Mod(T) by construction
  Bitset mod = models_of(sys, t);
  mod.for_each_set([&](std::size_t i) {
    mod.for_each_set([&](std::size_t j) { CHECK_FALSE(rel.strict(i, j)); });
  });
}

TEST_CASE("f_rho_relation refuses logics without theory synthesis") {
  dl::Signature sig{{"A"}, {"r_top"}, {}};
  dl::System sys(sig, dl::Fragment::EL, 1);
  auto rho = ops::dl_relaxation(sys, "kappa_bot", {});
  dl::KB t({Axiom::subsumes(Concept::top(), Concept::name(0))});
  CHECK_THROWS_AS(f_rho_relation(sys, rho, t, RevisionConfig{}), Error);
}
