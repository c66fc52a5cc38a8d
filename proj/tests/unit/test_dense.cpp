#include "doctest.h"

#include "mlwb/dense.hpp"
#include "mlwb/error.hpp"

using namespace mlwb;

namespace {
KripkeFrame ab() { return KripkeFrame::from_names({"a0", "b"}, {{"a0", "b"}}, "a0"); }
KripkeFrame ab_cycle() { return KripkeFrame::from_names({"a0", "b"}, {{"a0", "b"}, {"b", "a0"}}, "a0"); }
StopWord zeros_then_one(int k) { return StopWord().then(k, {world_letter(1)}); }
DenseFrame g_frame(int depth = 4) {
  DenseBounds b;
  b.depth = depth;
  return DenseFrame(next_frame(depth), b);
}
}  // namespace

TEST_CASE("stop-words and f0") {
  const auto f = ab();
  CHECK(f0(StopWord(), f) == std::vector<World>{0});
  const auto w = parse_stopword("0.0.b.0.0", f);
  CHECK(to_string(w, f) == "0.0.b");
  CHECK(w.st() == 3);
  CHECK(f0(w, f) == std::vector<World>{0, 1});
  const auto refl = KripkeFrame::from_names({"a0"}, {{"a0", "a0"}}, "a0");
  CHECK(f0(parse_stopword("a0", refl), refl) == std::vector<World>{0, 0});
  CHECK_THROWS_AS(f0(parse_stopword("a0", f), f), InputError);
}

TEST_CASE("paths with stops") {
  const auto c = ab_cycle();
  CHECK(static_cast<bool>(validate_stopword(parse_stopword("b.a0.b.a0", c), c)));
  CHECK_FALSE(static_cast<bool>(validate_stopword(parse_stopword("a0", c), c)));
  CHECK(static_cast<bool>(validate_stopword(StopWord(), c)));
  CHECK(static_cast<bool>(validate_stopword(parse_stopword("eps", ab()), ab())));
}

TEST_CASE("neighbourhoods U_k") {
  const auto d = g_frame(5);
  const StopWord eps;
  CHECK(is_member_uk(parse_stopword("0.0.1", d.base()), eps, 2, d));
  CHECK_FALSE(is_member_uk(parse_stopword("0.1", d.base()), eps, 2, d));
  CHECK_FALSE(is_member_uk(eps, eps, 0, d));
  const auto e = uk_members(eps, 2, d, 4);
  REQUIRE(e.members.size() == 5);
  for (int j = 0; j <= 4; ++j) CHECK(e.members[static_cast<std::size_t>(j)] == zeros_then_one(2 + j));
  for (const auto& m : uk_members(eps, 3, d, 4).members)
    for (int k = 0; k <= 3; ++k) CHECK(is_member_uk(m, eps, k, d));
  // terminal endpoint
  DenseBounds b;
  b.depth = 3;
  const DenseFrame t(ab(), b);
  const auto end = parse_stopword("b", ab());
  for (int k = 0; k < 4; ++k) CHECK(uk_members(end, k, t, 4).members.empty());
}

TEST_CASE("density witnesses") {
  const auto d = g_frame(5);
  const StopWord eps;
  const auto beta = parse_stopword("0.0.1", d.base());
  CHECK(density_witness(eps, 2, beta, d) == 3);
  CHECK_FALSE(is_member_uk(beta, eps, 4, d));
  CHECK_THROWS_AS(density_witness(eps, 2, eps, d), PreconditionError);
  for (const auto& m : uk_members(eps, 1, d, 5).members) {
    const int k = density_witness(eps, 1, m, d);
    CHECK_FALSE(is_member_uk(m, eps, k + 1, d));
  }
}

TEST_CASE("bounded evaluation") {
  DenseBounds b;
  b.depth = 3;
  const auto f = ab();
  const auto end = parse_stopword("b", f);
  DenseModel m{DenseFrame(f, b), {{"p", FiniteSet{{end}}}}};
  const auto v = bounded_eval(m, end, parse_prop("box p"));
  CHECK(v.value);
  CHECK(v.certified);

  DenseModel g{g_frame(4), {{"p", ZeroParity{1, 0}}}};
  const auto both = bounded_eval(g, StopWord(), parse_prop("dia p & dia ~p"));
  CHECK(both.value);
  CHECK(both.certified);
  const auto box = bounded_eval(g, StopWord(), parse_prop("box p"));
  CHECK_FALSE(box.value);
  CHECK(box.certified);
  CHECK(eval_dense_atom(g, zeros_then_one(4), "p"));
  CHECK_FALSE(eval_dense_atom(g, zeros_then_one(5), "p"));
}

TEST_CASE("counterexample") {
  const auto r = counterexample_g(10);
  CHECK(r.ok);
  CHECK(r.kripke_valid);
  REQUIRE(r.witnesses.size() == 11);
  CHECK(r.witnesses[4] == std::pair{zeros_then_one(4), zeros_then_one(5)});
  CHECK_THROWS_AS(counterexample_g(1), PreconditionError);
}

TEST_CASE("f0 images") {
  const auto d = g_frame(4);
  CHECK(f0_image_check(StopWord(), 3, d).ok());
  DenseBounds b;
  b.depth = 3;
  const DenseFrame t(ab(), b);
  const auto r = f0_image_check(parse_stopword("b", ab()), 2, t);
  CHECK(r.ok());
  CHECK(f0_pmorphism_check(DenseFrame(KripkeFrame({"a"}, {}, 0), b), 10).ok());
  DenseBounds b4;
  b4.depth = 4;
  CHECK(f0_pmorphism_check(DenseFrame(ab_cycle(), b4), 50).ok());
}

TEST_CASE("closed dense frames") {
  DenseBounds b;
  b.depth = 4;
  const HornTheory trans{{*axiom_to_horn(2)}};
  const DenseFrame g(next_frame(4), b, trans);
  CHECK(g.has_gamma());
  CHECK(f0_pmorphism_check(g, 30).ok());
  CHECK(chain_collapse_check(StopWord(), 1, 2, g, 100).ok());
  CHECK(chain_collapse_check(StopWord(), 1, 1, g, 10).ok());
  const auto t3 = KripkeFrame::from_names({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"a", "c"}}, "a");
  CHECK(chain_collapse_check(StopWord(), 1, 2, DenseFrame(t3, b, trans), 100).ok());
  CHECK_THROWS_AS(chain_collapse_check(StopWord(), 1, 2, DenseFrame(next_frame(4), b), 10), PreconditionError);
}
