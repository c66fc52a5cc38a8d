#include "doctest.h"

#include "mlwb/error.hpp"
#include "mlwb/formats.hpp"

using namespace mlwb;

TEST_CASE("Kripke model files") {
  const auto doc = parse_model_doc(
      "frame F\nworlds a b c\nroot a\nedges a->b b->c\n# comment\nval p = {b}\nval q = {}\n");
  const auto m = doc_kripke_model(doc);
  CHECK(m.frame().size() == 3);
  CHECK(m.frame().root() == 0);
  CHECK(eval_kripke(m, "a", parse_prop("dia p & box ~q")));
  const auto again = doc_frame(parse_model_doc(frame_text(m.frame())));
  CHECK(again == m.frame());
  CHECK_THROWS_AS(doc_kripke_model(parse_model_doc("worlds a\nval p = {z}\n")), InputError);
  CHECK_THROWS_AS(parse_model_doc("edges a=>b\n"), ParseError);
}

TEST_CASE("neighbourhood model files") {
  const auto doc = parse_model_doc("nframe N\npoints x y\nbase x = {x,y}\nbase y = {}\nval p = {x,y}\n");
  const auto n = doc_nmodel(doc);
  CHECK(eval_nbhd(n, 0, parse_prop("box p")));
  CHECK(eval_nbhd(n, 1, parse_prop("box false")));
  const auto again = doc_nframe(parse_model_doc(nframe_text(n.frame())));
  CHECK(again.base(0) == n.frame().base(0));
}

TEST_CASE("predicate model files") {
  const auto doc = parse_model_doc(
      "worlds u v\nroot u\nedges u->v\ndomain u = {d}\ndomain v = {d,e}\nval P @ u = {(d)}\nval P @ v = {(d)}\n"
      "val r @ v = true\n");
  const auto m = doc_pred_model(doc);
  CHECK_FALSE(eval_pred_kripke(m, 0, barcan_formula()));
  CHECK(eval_pred_kripke(m, 1, parse_pred("r")));
  CHECK_FALSE(eval_pred_kripke(m, 0, parse_pred("r")));
  const auto f = doc_pred_frame(parse_model_doc(pred_frame_text(m.frame())));
  CHECK(f == m.frame());
  const auto c = doc_pred_nmodel(parse_model_doc(
      "nframe N\npoints x\nbase x = {x}\nconstdomain = {d,e}\nval P @ x = {(d),(e)}\n"));
  CHECK(eval_pred_nbhd(c, 0, parse_pred("box forall x. P(x)")));
}

TEST_CASE("dense valuations") {
  const auto doc = parse_model_doc("worlds e 1\nroot e\nedges e->1\nval p = parity(1, even)\n"
                                   "val q = finite{0.1, eps}\nval r = viapath{e.1}\n");
  const auto f = doc_frame(doc);
  const auto v = doc_pattern_valuation(doc, f);
  REQUIRE(v.size() == 3);
  CHECK(std::holds_alternative<ZeroParity>(v.at("p")));
  CHECK(std::get<FiniteSet>(v.at("q")).words.size() == 2);
  CHECK(std::get<PathFactored>(v.at("r")).paths.count({0, 1}) == 1);
}

TEST_CASE("map files") {
  const auto md = parse_map_doc("map a = r\nmap b = r\nelements a = {d->x}\nelements b = {d->x, e->x}\n");
  CHECK(doc_point_map(md, {"a", "b"}, {"r"}) == std::vector<World>{0, 0});
  const auto el = doc_element_maps(md, {"a", "b"});
  CHECK(el[1].at("e") == "x");
  CHECK_THROWS_AS(doc_point_map(md, {"a", "b", "c"}, {"r"}), InputError);
  CHECK(parse_name_set("{a, b}") == std::set<std::string>{"a", "b"});
  CHECK(split_ws("  a  b\tc ") == std::vector<std::string>{"a", "b", "c"});
}
