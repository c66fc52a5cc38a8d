#include "doctest.h"

#include "mlwb/horn.hpp"
#include "mlwb/predicate.hpp"

using namespace mlwb;

namespace {
KripkeFrame chain3() { return KripkeFrame::from_names({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}, "a"); }
const HornSentence trans = *axiom_to_horn(2);
const HornSentence refl = *axiom_to_horn(0);
}  // namespace

TEST_CASE("evaluating Horn sentences") {
  const auto f = chain3();
  CHECK(eval_horn(gamma_close(f, {{trans}}), trans));
  const auto v = horn_violation(f, trans);
  REQUIRE(v.has_value());
  CHECK((*v)[0] == 0);
  CHECK((*v)[1] == 2);
  CHECK_FALSE(eval_horn(KripkeFrame({"a"}, {}), refl));
  CHECK(eval_horn(KripkeFrame({"a"}, {{0, 0}}), refl));
}

TEST_CASE("axiom sentences match the relation conditions") {
  for (int k : {0, 2, 3}) {
    for (std::uint32_t mask = 0; mask < (1U << 9); ++mask) {
      std::vector<Edge> edges;
      for (int i = 0; i < 9; ++i)
        if (mask >> i & 1U) edges.emplace_back(i / 3, i % 3);
      const KripkeFrame f({"a", "b", "c"}, edges);
      CHECK(eval_horn(f, *axiom_to_horn(k)) == static_cast<bool>(check_axiom_inclusion(f, k)));
    }
  }
}

TEST_CASE("closure") {
  const auto f = chain3();
  int rounds = 0;
  const auto t = gamma_close(f, {{trans}}, &rounds);
  CHECK(t.edge_count() == 3);
  CHECK(t.related(0, 2));
  CHECK(rounds >= 1);
  const auto rt = gamma_close(f, {{refl, trans}});
  CHECK(rt.edge_count() == 6);
  CHECK(gamma_close(f, {}) == f);
  const auto sym = gamma_close(KripkeFrame({"a", "b"}, {{0, 1}}), HornTheory::parse("x R y => y R x"));
  CHECK(sym.related(1, 0));
}

TEST_CASE("closure minimality") {
  const auto r = closure_minimality_check(chain3(), {{trans}}, 200);
  CHECK(r.ok());
  CHECK(r.added == 1);
  CHECK(closure_minimality_check(chain3(), {}).added == 0);
  CHECK(closure_minimality_check(KripkeFrame({"a", "b"}, {{0, 1}}), HornTheory::parse("x R y => y R x")).ok());
}

TEST_CASE("p-morphisms lift to the closure") {
  const auto chain = KripkeFrame::from_names({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"c", "a"}});
  const auto loop = KripkeFrame::from_names({"r"}, {{"r", "r"}});
  const auto m = KripkeMorphism::make(chain, loop, {0, 0, 0});
  const auto lifted = closure_pmorphism_lift_check(m, {{trans}});
  CHECK(lifted.outcome == LiftVerdict::Outcome::Verified);
  CHECK(closure_pmorphism_lift_check(m, {}).outcome == LiftVerdict::Outcome::Verified);
  const auto line = KripkeFrame::from_names({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
  CHECK(closure_pmorphism_lift_check(KripkeMorphism::make(line, loop, {0, 0, 0}), {{trans}}).outcome ==
        LiftVerdict::Outcome::PreconditionFailed);
  const auto chain2 = KripkeFrame::from_names({"u", "v"}, {{"u", "v"}});
  const auto pre = closure_pmorphism_lift_check(KripkeMorphism::make(chain2, chain2, {0, 1}), {{refl}});
  CHECK(pre.outcome == LiftVerdict::Outcome::PreconditionFailed);
}

TEST_CASE("theory text") {
  const auto g = HornTheory::parse("# comment\n\nx R z1 & z1 R y => x R y\ntrue => x R x\n");
  REQUIRE(g.sentences.size() == 2);
  CHECK(g.sentences[0] == trans);
  CHECK(axioms_to_theory({1, 2}).sentences.size() == 1);
}

TEST_CASE("lifting on random instances") {
  Rng rng(8);
  const HornTheory g{{trans}};
  int verified = 0;
  for (int i = 0; i < 200; ++i) {
    const auto kk = random_kk_instance(rng, 3, 1);
    const auto target = gamma_close(kk.target.frame(), g);
    const auto m = KripkeMorphism::make(gamma_close(kk.source.frame(), {}), target, kk.phi0);
    if (!m.verified()) continue;
    const auto r = closure_pmorphism_lift_check(m, g);
    CHECK(r.outcome != LiftVerdict::Outcome::Violated);
    verified += r.outcome == LiftVerdict::Outcome::Verified;
  }
  CHECK(verified > 0);
}
