#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "acceptance.hpp"
#include "mlwb/constant_domain.hpp"
#include "mlwb/dense.hpp"
#include "mlwb/error.hpp"
#include "mlwb/formats.hpp"
#include "mlwb/horn.hpp"
#include "mlwb/kripke.hpp"
#include "mlwb/neighbourhood.hpp"
#include "mlwb/pipeline.hpp"
#include "mlwb/predicate.hpp"
#include "mlwb/syntax.hpp"

namespace {

using namespace mlwb;

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kInputError = 2;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int cmd_parse(const std::string& file, bool horn) {
  std::istringstream in(slurp(file));
  int line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    try {
      if (horn) {
        std::cout << to_string(parse_horn(t)) << "\n";
      } else {
        const auto f = parse_pred(t);
        std::cout << to_string(f) << "\t# depth " << modal_depth(f) << (is_closed(f) ? "" : ", open") << "\n";
      }
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what(), e.position());
    }
  }
  return kOk;
}

int report_truth(bool value, const std::string& where) {
  std::cout << (value ? "true" : "false") << " at " << where << "\n";
  return value ? kOk : kViolation;
}

int cmd_eval(const std::string& model_file, const std::string& at, const std::string& formula, int depth,
             int modalities) {
  const auto doc = parse_model_doc(slurp(model_file));
  ParseOptions po;
  po.modalities = modalities;
  if (!doc.dense_val.empty()) {
    const auto f = doc_frame(doc);
    DenseBounds b;
    b.depth = depth;
    DenseModel m{DenseFrame(f, b), doc_pattern_valuation(doc, f)};
    const auto alpha = parse_stopword(at, f);
    const auto v = bounded_eval(m, alpha, parse_prop(formula, po));
    std::cout << (v.value ? "true" : "false") << (v.certified ? " (certified)" : " (uncertified)") << " at "
              << to_string(alpha, f) << (v.witness.empty() ? "" : "\nwitness: " + v.witness) << "\n";
    return v.value ? kOk : kViolation;
  }
  if (doc.is_nframe) {
    if (doc.constdomain) {
      const auto m = doc_pred_nmodel(doc);
      return report_truth(eval_pred_nbhd(m, m.frame().space().index(at), universal_closure(parse_pred(formula))), at);
    }
    const auto m = doc_nmodel(doc);
    return report_truth(eval_nbhd(m, m.frame().index(at), parse_prop(formula, po)), at);
  }
  if (!doc.domains.empty()) {
    const auto m = doc_pred_model(doc);
    return report_truth(eval_pred_kripke(m, m.frame().frame().index(at), universal_closure(parse_pred(formula))), at);
  }
  const auto m = doc_kripke_model(doc);
  return report_truth(eval_kripke(m, m.frame().index(at), parse_prop(formula, po)), at);
}

int cmd_close(const std::string& frame_file, const std::string& horn_file, const std::vector<int>& axioms) {
  const auto f = doc_frame(parse_model_doc(slurp(frame_file)));
  HornTheory g = horn_file.empty() ? HornTheory{} : HornTheory::parse(slurp(horn_file));
  for (const auto& s : axioms_to_theory(axioms).sentences) g.sentences.push_back(s);
  int rounds = 0;
  const auto closed = gamma_close(f, g, &rounds);
  std::cout << frame_text(closed, "closed");
  std::cout << "# " << closed.edge_count() - f.edge_count() << " edges added in " << rounds << " rounds\n";
  return kOk;
}

int cmd_unravel(const std::string& frame_file, int depth) {
  const auto f = doc_frame(parse_model_doc(slurp(frame_file)));
  const auto u = unravel(f, depth);
  std::cout << frame_text(u.frame, "unravelled");
  for (std::size_t i = 0; i < u.paths.size(); ++i)
    std::cout << "# " << u.frame.name(static_cast<World>(i)) << " -> " << f.name(u.projection[i])
              << (u.interior.test(i) ? "" : " (frontier)") << "\n";
  return kOk;
}

int report_verdict(const MorphismVerdict& v) {
  if (v.verified) {
    std::cout << "verified\n";
    return kOk;
  }
  std::cout << "violated: " << v.condition << " " << v.witness << "\n";
  return kViolation;
}

int cmd_pmorph(const std::string& kind, const std::string& source, const std::string& target, const std::string& map) {
  const auto sd = parse_model_doc(slurp(source));
  const auto td = parse_model_doc(slurp(target));
  const auto md = parse_map_doc(slurp(map));
  if (kind == "kripke") {
    const auto f = doc_frame(sd);
    const auto g = doc_frame(td);
    return report_verdict(check_pmorphism(doc_point_map(md, f.names(), g.names()), f, g));
  }
  if (kind == "nframe") {
    const auto x = sd.is_nframe ? doc_nframe(sd) : nf_from_kripke(doc_frame(sd));
    const auto y = td.is_nframe ? doc_nframe(td) : nf_from_kripke(doc_frame(td));
    return report_verdict(check_n_pmorphism(doc_point_map(md, x.names(), y.names()), x, y));
  }
  if (kind == "kk") {
    const auto f = doc_pred_frame(sd);
    const auto g = doc_pred_frame(td);
    PredKKMorphism m{f, g, doc_point_map(md, f.frame().names(), g.frame().names()),
                     doc_element_maps(md, f.frame().names())};
    return report_verdict(check_kk_morphism(m));
  }
  if (kind == "nk") {
    const auto x = doc_pred_nframe(sd);
    const auto g = doc_pred_frame(td);
    PredNKMorphism m{x, g, doc_point_map(md, x.space().names(), g.frame().names()),
                     doc_element_maps(md, x.space().names())};
    return report_verdict(check_nk_morphism(m));
  }
  throw InputError("unknown morphism kind '" + kind + "'");
}

int cmd_counterexample(int k_max) {
  const auto start = std::chrono::steady_clock::now();
  const auto r = counterexample_g(k_max);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const auto& f = r.frame;
  auto line = [](const char* what, const Verdict& v) {
    std::cout << what << ": " << (v.value ? "true" : "false") << (v.certified ? " (certified)" : " (uncertified)")
              << (v.witness.empty() ? "" : " " + v.witness) << "\n";
  };
  std::cout << "frame: next frame on " << f.size() << " worlds, p = even zeros before " << "1" << "\n";
  line("dia p & dia ~p at 0^w", r.dia_p_and_dia_not_p);
  line("dia p -> box p at 0^w", r.dia_p_implies_box_p);
  line("box p at 0^w", r.box_p);
  for (std::size_t k = 0; k < r.witnesses.size(); ++k)
    std::cout << "k=" << k << ": p at " << to_string(r.witnesses[k].first, f) << ", ~p at "
              << to_string(r.witnesses[k].second, f) << "\n";
  std::cout << "Kripke side: dia p -> box p " << (r.kripke_valid ? "valid" : "NOT valid") << "\n";
  std::cout << "result: " << (r.ok ? "confirmed" : "not confirmed") << " in " << secs << " s\n";
  return r.ok ? kOk : kViolation;
}

int cmd_pipeline(const std::string& file, bool json) {
  auto name = file.substr(file.find_last_of('/') == std::string::npos ? 0 : file.find_last_of('/') + 1);
  const auto r = run_pipeline(parse_scenario(slurp(file), name));
  if (json) {
    std::cout << r.summary_json() << "\n";
  } else {
    std::cout << r.text();
  }
  return r.ok ? kOk : kViolation;
}

int cmd_selftest(const std::string& dir) {
  acceptance::Options o;
  o.scenario_dir = dir.empty() ? acceptance::default_scenario_dir() : dir;
  return acceptance::print_results(acceptance::run_all(o), std::cout) == 0 ? kOk : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mlwb: modal logic workbench for Kripke, neighbourhood and dense frames"};
  app.require_subcommand(1);
  int code = kOk;

  std::string parse_file;
  bool parse_horn_flag = false;
  auto* parse = app.add_subcommand("parse", "Parse formulas (one per line) and print them back");
  parse->add_option("file", parse_file)->required();
  parse->add_flag("--horn", parse_horn_flag, "Lines are Horn sentences");

  std::string model, at, formula;
  int depth = 6, modalities = 1;
  auto* eval = app.add_subcommand("eval", "Evaluate a formula at a point of a model file");
  eval->add_option("--model", model)->required();
  eval->add_option("--at", at)->required();
  eval->add_option("--formula", formula)->required();
  eval->add_option("--depth", depth, "Truncation depth for dense models");
  eval->add_option("--modalities", modalities, "Number of box indices");

  std::string frame_file, horn_file;
  std::vector<int> axioms;
  auto* close = app.add_subcommand("close", "Least extension of a frame satisfying a Horn theory");
  close->add_option("--frame", frame_file)->required();
  close->add_option("--horn", horn_file);
  close->add_option("--axiom", axioms, "k for the axiom box p -> box^k p");

  std::string unravel_frame;
  int unravel_depth = 3;
  auto* unr = app.add_subcommand("unravel", "Depth-bounded unravelling");
  unr->add_option("--frame", unravel_frame)->required();
  unr->add_option("--depth", unravel_depth)->required();

  std::string kind, source, target, map;
  auto* pm = app.add_subcommand("pmorph", "Check a p-morphism");
  pm->add_option("--kind", kind)->required()->check(CLI::IsMember({"kripke", "nframe", "kk", "nk"}));
  pm->add_option("--source", source)->required();
  pm->add_option("--target", target)->required();
  pm->add_option("--map", map)->required();

  int k_max = 10;
  auto* dense = app.add_subcommand("dense", "Dense n-frame tools");
  auto* ce = dense->add_subcommand("counterexample", "◇p∧◇¬p on the next frame with the parity valuation");
  ce->add_option("--kmax", k_max);
  dense->require_subcommand(1);

  std::string scenario;
  bool json = false;
  auto* pipe = app.add_subcommand("pipeline", "Run the completeness pipeline on a scenario");
  pipe->add_option("scenario", scenario)->required();
  pipe->add_flag("--json", json, "Print only the JSON summary");

  std::string scenario_dir;
  auto* self = app.add_subcommand("selftest", "Run the acceptance suite");
  self->add_option("--scenarios", scenario_dir, "Scenario directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  }

  try {
    if (*parse) code = cmd_parse(parse_file, parse_horn_flag);
    else if (*eval) code = cmd_eval(model, at, formula, depth, modalities);
    else if (*close) code = cmd_close(frame_file, horn_file, axioms);
    else if (*unr) code = cmd_unravel(unravel_frame, unravel_depth);
    else if (*pm) code = cmd_pmorph(kind, source, target, map);
    else if (*ce) code = cmd_counterexample(k_max);
    else if (*pipe) code = cmd_pipeline(scenario, json);
    else if (*self) code = cmd_selftest(scenario_dir);
  } catch (const mlwb::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return code;
}
