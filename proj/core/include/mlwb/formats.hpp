#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mlwb/dense.hpp"
#include "mlwb/neighbourhood.hpp"
#include "mlwb/predicate.hpp"

namespace mlwb {

// Line-oriented model files. Recognised lines ('#' starts a comment):
//   frame NAME | worlds a b c | root a | edges a->b b->c
//   nframe NAME | points x y | base x = {x,y} {y}
//   domain w = {d1,d2} | constdomain = {d1,d2}
//   val p = {a,b}                    propositional
//   val P @ w = {(d1),(d1,d2)}       predicate ({()} makes a 0-ary letter true)
//   val p = finite{a.0.b, eps} | parity(WORLD, even|odd) | viapath{r.a, r.a.b}
struct ModelDoc {
  std::string name;
  std::vector<std::string> worlds;
  std::optional<std::string> root;
  std::vector<std::pair<std::string, std::string>> edges;
  bool is_nframe = false;
  std::vector<std::string> points;
  std::map<std::string, std::vector<std::set<std::string>>> bases;
  std::map<std::string, Domain> domains;
  std::optional<Domain> constdomain;
  std::map<std::string, std::set<std::string>> prop_val;
  std::map<std::string, std::map<std::string, Relation>> pred_val;
  std::map<std::string, std::string> dense_val;
  std::vector<std::string> letter_order;
};

ModelDoc parse_model_doc(std::string_view text);

KripkeFrame doc_frame(const ModelDoc& d);
NFrame doc_nframe(const ModelDoc& d);
KripkeModel doc_kripke_model(const ModelDoc& d);
NModel doc_nmodel(const ModelDoc& d);
PredKripkeFrame doc_pred_frame(const ModelDoc& d);
PredKripkeModel doc_pred_model(const ModelDoc& d);
PredNFrame doc_pred_nframe(const ModelDoc& d);
PredNModel doc_pred_nmodel(const ModelDoc& d);
PatternValuation doc_pattern_valuation(const ModelDoc& d, const KripkeFrame& f);

// Morphism files: `map a = x` per source point and, for predicate morphisms,
// `elements a = {d->e, d2->e}`.
struct MapDoc {
  std::map<std::string, std::string> points;
  std::map<std::string, ElementMap> elements;
};
MapDoc parse_map_doc(std::string_view text);
std::vector<World> doc_point_map(const MapDoc& m, const std::vector<std::string>& source,
                                 const std::vector<std::string>& target);
std::vector<ElementMap> doc_element_maps(const MapDoc& m, const std::vector<std::string>& source);

std::string frame_text(const KripkeFrame& f, std::string_view name = "F");
std::string nframe_text(const NFrame& f, std::string_view name = "N");
std::string pred_frame_text(const PredKripkeFrame& f, std::string_view name = "F");
std::string pred_valuation_text(const PredValuation& v, const std::vector<std::string>& points);
std::string map_text(const std::vector<World>& map, const std::vector<std::string>& source,
                     const std::vector<std::string>& target, const std::vector<ElementMap>* elements = nullptr);

// Helpers shared with the scenario reader.
std::string trim(std::string_view s);
std::vector<std::string> split_ws(std::string_view s);
// `{a,b}` → {a, b}; throws ParseError.
std::set<std::string> parse_name_set(std::string_view s);

}  // namespace mlwb
