#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "satrev/dl.hpp"
#include "satrev/ops.hpp"
#include "support/generators.hpp"

using namespace satrev;
using dl::Axiom;
using dl::Concept;

namespace {

dl::Signature abr() { return dl::Signature{{"A", "B", "E"}, {"r_top", "r", "s"}, {}}; }

Concept A() { return Concept::name(0); }
Concept B() { return Concept::name(1); }
Concept E() { return Concept::name(2); }

}  // namespace

TEST_CASE("eval_concept") {
  dl::Signature sig = abr();
  dl::Interpretation i;
  i.n = 2;
  i.concepts = {0b01, 0b10, 0b00};       // A = {d0}, B = {d1}
  i.roles = {0b1111, 0b0010, 0b0000};    // r = {(d0, d1)}  (bit x*n+y)
  CHECK(dl::eval_concept(sig, i, Concept::top()) == 0b11);
  CHECK(dl::eval_concept(sig, i, Concept::exists(1, B())) == 0b01);
  CHECK(dl::eval_concept(sig, i, Concept::forall(2, A())) == 0b11);  // s is empty
}

TEST_CASE("satisfies_dl") {
  dl::Signature sig{{"A", "B"}, {"r_top", "r"}, {"a", "b"}};
  dl::Interpretation i;
  i.n = 1;
  i.concepts = {0b1, 0b0};
  i.roles = {0b1, 0b0};
  i.individuals = {0, 0};
  CHECK(dl::satisfies(sig, i, Axiom::subsumes(Concept::name(1), Concept::name(0))));
  CHECK_FALSE(dl::satisfies(sig, i, Axiom::subsumes(Concept::name(0), Concept::name(1))));
  CHECK(dl::satisfies(sig, i, Axiom::instance(0, Concept::name(0))));
  CHECK_FALSE(dl::satisfies(sig, i, Axiom::instance(0, Concept::name(1))));
  CHECK(dl::satisfies(sig, i, Axiom::role_assertion(0, 1, 0)));
  CHECK_FALSE(dl::satisfies(sig, i, Axiom::role_assertion(0, 1, 1)));
}

TEST_CASE("interpretation enumeration") {
  dl::System two(dl::Signature{{"A"}, {"r_top"}, {}}, dl::Fragment::EL, 1);
  CHECK(two.model_count() == 2);

  dl::Options empty_ok;
  empty_ok.allow_empty_domain = true;
  dl::System none(dl::Signature{{"A"}, {"r_top"}, {"a"}}, dl::Fragment::EL, 0, empty_ok);
  CHECK(none.model_count() == 0);

  dl::System counted(dl::Signature{{"A"}, {"r_top", "r"}, {}}, dl::Fragment::EL, 2);
  CHECK(counted.model_count() == 68);  // 2*2 + 4*16

  CHECK_THROWS_AS(dl::System(dl::Signature{{"A"}, {"r_top", "r"}, {}}, dl::Fragment::EL, 4,
                             dl::Options{false, false, 1000}),
                  Error);
}

TEST_CASE("description trees") {
  dl::Signature sig = abr();
  Concept c = Concept::conj(A(), Concept::exists(1, B()));
  dl::DescriptionTree t = dl::to_tree(sig, c);
  REQUIRE(t.nodes.size() == 2);
  CHECK(t.nodes[0].labels == std::vector<int>{0});
  REQUIRE(t.nodes[0].children.size() == 1);
  CHECK(t.nodes[0].children[0].first == 1);
  CHECK(t.nodes[1].labels == std::vector<int>{1});
  CHECK(dl::from_tree(sig, t) == c);

  dl::DescriptionTree top = dl::to_tree(sig, Concept::top());
  REQUIRE(top.nodes.size() == 1);
  CHECK(top.nodes[0].labels.empty());
  CHECK(dl::from_tree(sig, top) == Concept::top());

  CHECK_THROWS_AS(dl::to_tree(sig, Concept::bot()), Error);
  CHECK_THROWS_AS(dl::to_tree(sig, Concept::disj(A(), B())), Error);

  // round-trip is the identity on bounded semantics
  dl::System sys(sig, dl::Fragment::EL, 2);
  gen::Rng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    Concept c2 = gen::el_concept(rng, sig, 2);
    CHECK(sys.concept_equiv(dl::from_tree(sig, dl::to_tree(sig, c2)), c2));
  }
}

TEST_CASE("rho_top and kappa_bot") {
  Concept any = Concept::conj(A(), Concept::exists(1, B()));
  CHECK(dl::rho_top(any) == Concept::top());
  CHECK(dl::rho_top(dl::rho_top(any)) == Concept::top());
  CHECK(dl::kappa_bot(any) == Concept::bot());
  CHECK(dl::kappa_bot(dl::kappa_bot(any)) == Concept::bot());
}

TEST_CASE("rho_depth prunes the deepest level") {
  dl::Signature sig = abr();
  Concept deep = Concept::conj(
      A(), Concept::exists(1, Concept::conj(B(), Concept::exists(2, E()))));
  CHECK(dl::rho_depth(sig, deep) == Concept::conj(A(), Concept::exists(1, B())));
  CHECK(dl::rho_depth(sig, A()) == Concept::top());
}

TEST_CASE("rho_leaves removes leaf nodes") {
  dl::Signature sig = abr();
  Concept c = Concept::conj(A(), Concept::exists(1, B()));
  CHECK(dl::rho_leaves(sig, c) == A());
  CHECK(dl::rho_leaves(sig, A()) == Concept::top());
  // both pruning operators reach Top within depth+1 steps
  Concept deep = Concept::conj(
      A(), Concept::exists(1, Concept::conj(B(), Concept::exists(2, E()))));
  CHECK(dl::rho_depth(sig, dl::rho_depth(sig, dl::rho_depth(sig, deep))) == Concept::top());
  CHECK(dl::rho_leaves(sig, dl::rho_leaves(sig, dl::rho_leaves(sig, deep))) == Concept::top());
}

TEST_CASE("normalize_grouping") {
  dl::Signature sig{{"P", "A", "B"}, {"r_top", "r"}, {}};
  dl::System sys(sig, dl::Fragment::ELU, 2);
  Concept P = Concept::name(0), Ac = Concept::name(1), Bc = Concept::name(2);

  // existential restrictions regroup behind the names
  Concept in = Concept::conj(Concept::conj(Concept::exists(1, Ac), Concept::exists(1, Bc)), P);
  Concept normal = dl::normalize_grouping(sys, in);
  CHECK(normal == Concept::conj(Concept::conj(P, Concept::exists(1, Ac)),
                                Concept::exists(1, Bc)));

  // the Top filler is subsumed by any other conjunct of the group
  CHECK(dl::normalize_grouping(
            sys, Concept::conj(Concept::exists(1, Ac), Concept::exists(1, Concept::top()))) ==
        Concept::exists(1, Ac));

  // already-normal input is unchanged
  CHECK(dl::normalize_grouping(sys, normal) == normal);
}

TEST_CASE("rho_e") {
  dl::Signature sig{{"male", "female", "judge"}, {"r_top", "m"}, {}};
  dl::System sys(sig, dl::Fragment::ELU, 2);
  Concept male = Concept::name(0), female = Concept::name(1), judge = Concept::name(2);

  CHECK(dl::rho_e(sys, Concept::top()) == Concept::top());
  CHECK(dl::rho_e(sys, Concept::exists(1, Concept::top())) == Concept::top());

  // the married-to-a-female-judge belief relaxes to the minimal alternatives
  Concept d = Concept::exists(1, Concept::conj(female, judge));
  Concept relaxed = dl::rho_e(sys, Concept::conj(male, d));
  Concept expected = Concept::disj(
      d, Concept::conj(male, Concept::disj(Concept::exists(1, female),
                                           Concept::exists(1, judge))));
  CHECK(sys.concept_equiv(relaxed, expected));
  CHECK(relaxed.fragment() != dl::Fragment::ALC);  // stays within ELU
}

TEST_CASE("exception operators") {
  dl::Signature sig{{"Tweety", "bird", "flies"}, {"r_top"}, {}};
  dl::System sys(sig, dl::Fragment::ALC, 2);
  Concept tweety = Concept::name(0), bird = Concept::name(1), flies = Concept::name(2);

  dl::ExceptionSet es;
  es.exceptions = {tweety};
  es.context.add(Axiom::subsumes(Concept::conj(tweety, flies), Concept::bot()));

  bool flagged = false;
  CHECK(dl::rho_exceptions(sys, flies, es, 1, &flagged) == Concept::disj(flies, tweety));
  CHECK_FALSE(flagged);
  CHECK(dl::rho_exceptions(sys, flies, es, 0, nullptr) == flies);

  dl::ExceptionSet no_context;
  no_context.exceptions = {tweety};
  CHECK(dl::rho_exceptions(sys, flies, no_context, 1, &flagged) == flies);
  CHECK(flagged);  // nothing eligible without the disjointness context

  dl::ExceptionSet kes;
  kes.exceptions = {tweety};
  kes.context.add(Axiom::subsumes(tweety, bird));
  CHECK(dl::kappa_exceptions(sys, bird, kes) == Concept::conj(bird, Concept::neg(tweety)));
  CHECK(dl::kappa_exceptions(sys, flies, kes) == flies);  // Tweety [= flies not entailed

  dl::ExceptionSet top_exc;
  top_exc.exceptions = {Concept::top()};
  Concept collapsed = dl::kappa_exceptions(sys, Concept::top(), top_exc);
  CHECK(sys.concept_equiv(collapsed, Concept::bot()));
}

TEST_CASE("Dalal operators") {
  dl::Signature sig = abr();
  dl::System sys(sig, dl::Fragment::ALC, 2);

  // single-literal clause erodes to Bot, single-literal cube dilates to Top
  CHECK(dl::kappa_dalal(A()) == Concept::bot());
  CHECK(dl::rho_dalal(A()) == Concept::top());

  // two-literal clause keeps its literals, one dropped at a time
  Concept clause = Concept::disj(A(), B());
  CHECK(sys.concept_equiv(dl::kappa_dalal(clause), Concept::conj(B(), A())));
  Concept cube = Concept::conj(A(), B());
  CHECK(sys.concept_equiv(dl::rho_dalal(cube), Concept::disj(B(), A())));

  // prefixes are carried through
  Concept under = Concept::exists(1, Concept::conj(A(), B()));
  Concept dilated = dl::rho_dalal(under);
  CHECK(sys.concept_equiv(dilated, Concept::exists(1, Concept::disj(B(), A()))));

  CHECK_THROWS_AS(dl::kappa_dalal(Concept::conj(A(), Concept::exists(1, B()))), Error);

  gen::Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    Concept c = gen::prefix_concept(rng, sig, 2);
    CHECK(sys.subsumed(dl::kappa_dalal(c), c));  // anti-extensive, plain scope
    CHECK(sys.subsumed(c, dl::rho_dalal(c)));    // extensive, plain scope
  }
}

TEST_CASE("quantifier-flip operators") {
  dl::Signature sig{{"rich"}, {"r_top", "hasChild"}, {}};
  dl::System sys(sig, dl::Fragment::ALC, 2);
  Concept rich = Concept::name(0);

  bool flagged = false;
  CHECK(dl::rho_q(Concept::forall(1, rich), &flagged) == Concept::exists(1, rich));
  CHECK_FALSE(flagged);

  // kappa_q on exists r. exists s.D flips one position at a time
  dl::Signature sig2 = abr();
  Concept inner = Concept::exists(2, E());
  Concept c = Concept::exists(1, inner);
  Concept k = dl::kappa_q(c, &flagged);
  CHECK(k == Concept::conj(Concept::forall(1, inner), Concept::exists(1, Concept::forall(2, E()))));
  CHECK_FALSE(flagged);

  Concept all_univ = Concept::forall(1, Concept::forall(2, E()));
  CHECK(dl::kappa_q(all_univ, &flagged) == all_univ);
  CHECK(flagged);

  // contract over serial interpretations
  dl::System sys2(sig2, dl::Fragment::ALC, 2);
  gen::Rng rng(32);
  for (int trial = 0; trial < 200; ++trial) {
    Concept pc = gen::prefix_concept(rng, sig2, 2);
    CHECK(sys2.subsumed(dl::kappa_q(pc, nullptr), pc, nullptr, true));
  }
}

TEST_CASE("formula relaxations") {
  dl::Signature sig{{"Tweety", "bird", "flies"}, {"r_top", "r"}, {"a", "b"}};
  dl::System sys(sig, dl::Fragment::ALC, 2);
  Concept tweety = Concept::name(0), bird = Concept::name(1), flies = Concept::name(2);

  dl::ExceptionSet es;
  es.exceptions = {tweety};
  es.context.add(Axiom::subsumes(Concept::conj(tweety, flies), Concept::bot()));
  auto rho = [&](const Concept& c) { return dl::rho_exceptions(sys, c, es, 1, nullptr); };

  CHECK(dl::formula_relax_right(sys, rho, Axiom::subsumes(bird, flies)) ==
        Axiom::subsumes(bird, Concept::disj(flies, tweety)));
  CHECK(dl::formula_relax_right(sys, rho, Axiom::role_assertion(0, 1, 1)) ==
        Axiom::role_assertion(0, 1, dl::Signature::kRoleTop));
  CHECK(dl::formula_relax_right(sys, rho, Axiom::instance(0, flies)) ==
        Axiom::instance(0, Concept::disj(flies, tweety)));

  auto kbot = [](const Concept&) { return Concept::bot(); };
  CHECK(dl::formula_relax_left(sys, kbot, Axiom::subsumes(tweety, bird)) ==
        Axiom::subsumes(Concept::bot(), bird));
  CHECK(dl::formula_relax_left(sys, kbot, Axiom::instance(0, bird)) ==
        Axiom::instance(0, Concept::top()));

  dl::ExceptionSet kes;
  kes.exceptions = {tweety};
  kes.context.add(Axiom::subsumes(tweety, bird));
  auto kexc = [&](const Concept& c) { return dl::kappa_exceptions(sys, c, kes); };
  CHECK(dl::formula_relax_left(sys, kexc, Axiom::subsumes(bird, flies)) ==
        Axiom::subsumes(Concept::conj(bird, Concept::neg(tweety)), flies));
}

TEST_CASE("rho_cup and kappa_cap under a prefix") {
  dl::Signature sig{{"rich", "John", "C", "Emark"}, {"r_top", "hasChild", "r"}, {}};
  dl::System sys(sig, dl::Fragment::ALC, 2);
  Concept rich = Concept::name(0), john = Concept::name(1);

  dl::ExceptionSet es;
  es.exceptions = {john};
  es.context.add(Axiom::subsumes(john, Concept::neg(rich)));
  CHECK(dl::rho_cup(sys, Concept::forall(1, rich), es) ==
        Concept::forall(1, Concept::disj(rich, john)));

  dl::ExceptionSet empty_es;
  CHECK(dl::rho_cup(sys, Concept::forall(1, rich), empty_es) == Concept::forall(1, rich));

  // kappa under an existential prefix: E [= C makes C shrink to C & ~E
  Concept c = Concept::name(2), e = Concept::name(3);
  dl::ExceptionSet kes;
  kes.exceptions = {e};
  kes.context.add(Axiom::subsumes(e, c));
  Concept shrunk = dl::kappa_cap(sys, Concept::exists(2, c), kes);
  CHECK(shrunk == Concept::exists(2, Concept::conj(c, Concept::neg(e))));
  Bitset dom = sys.universe();
  for (const auto& ax : kes.context) dom &= sys.sentence_models(ax);
  CHECK(dom.subset_of(sys.sentence_models(Axiom::subsumes(shrunk, Concept::exists(2, c)))));
}

TEST_CASE("formula relaxations inherit the concept contracts") {
  dl::Signature sig{{"A", "B"}, {"r_top", "r"}, {"a", "b"}};
  dl::System sys(sig, dl::Fragment::ALC, 2);
  gen::Rng rng(34);
  for (const char* name : {"rho_top", "kappa_bot", "rho_e"}) {
    auto rel = ops::dl_relaxation(sys, name, {});
    for (int trial = 0; trial < 50; ++trial) {
      dl::Concept c = name == std::string("rho_e") ? gen::elu_concept(rng, sig, 2)
                                                   : gen::alc_concept(rng, sig, 2);
      dl::Concept d = name == std::string("rho_e") ? gen::elu_concept(rng, sig, 2)
                                                   : gen::alc_concept(rng, sig, 2);
      dl::Axiom ax = gen::pick(rng, 0, 2) == 0 ? dl::Axiom::instance(0, c)
                     : gen::pick(rng, 0, 1)    ? dl::Axiom::role_assertion(0, 1, 1)
                                               : dl::Axiom::subsumes(c, d);
      CHECK(check_extensivity(sys, rel, ax));
    }
    // exhaustive concept operators lift to exhaustive formula relaxations
    dl::Axiom probe = dl::Axiom::subsumes(dl::Concept::name(0),
                                          dl::Concept::exists(1, dl::Concept::name(1)));
    CHECK(exhaustivity_index(sys, rel, probe, 4).has_value());
  }
}

TEST_CASE("operators stay inside their fragments") {
  dl::Signature sig = abr();
  dl::System sys(sig, dl::Fragment::ELU, 2);
  gen::Rng rng(33);
  for (int trial = 0; trial < 100; ++trial) {
    Concept el = gen::el_concept(rng, sig, 2);
    CHECK(dl::rho_depth(sig, el).fragment() == dl::Fragment::EL);
    CHECK(dl::rho_leaves(sig, el).fragment() == dl::Fragment::EL);
    Concept elu = gen::elu_concept(rng, sig, 2);
    CHECK(dl::rho_e(sys, elu).fragment() != dl::Fragment::ALC);
    CHECK(dl::normalize_grouping(sys, elu).fragment() != dl::Fragment::ALC);
  }
}
