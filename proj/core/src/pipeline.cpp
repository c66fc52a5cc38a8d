#include "mlwb/pipeline.hpp"

#include <chrono>
#include <sstream>

#include "json.hpp"
#include "mlwb/formats.hpp"

namespace mlwb {

HornTheory Scenario::theory() const {
  HornTheory t = horn;
  for (const auto& s : axioms_to_theory(axioms).sentences) t.sentences.push_back(s);
  return t;
}

namespace {

int to_int(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const int n = std::stoi(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return n;
  } catch (const std::exception&) {
    throw InputError("bound '" + key + "' needs an integer, got '" + v + "'");
  }
}

}  // namespace

Scenario parse_scenario(std::string_view text, std::string name) {
  std::map<std::string, std::string> sections;
  std::string current;
  std::istringstream is{std::string(text)};
  for (std::string raw; std::getline(is, raw);) {
    const std::string line = trim(raw);
    if (line.size() > 2 && line.front() == '[' && line.back() == ']') {
      current = line.substr(1, line.size() - 2);
      static const std::set<std::string> known{"frame", "domains", "valuation", "horn", "axioms", "formula", "bounds"};
      if (!known.count(current)) throw ParseError("unknown scenario section [" + current + "]", 0);
      sections[current];
      continue;
    }
    if (line.empty() || line.front() == '#') continue;
    if (current.empty()) throw ParseError("scenario content before the first section", 0);
    sections[current] += raw + "\n";
  }
  for (const char* required : {"frame", "domains", "formula"})
    if (!sections.count(required)) throw InputError(std::string("scenario lacks a [") + required + "] section");

  Scenario s;
  s.name = std::move(name);
  const auto doc = parse_model_doc(sections["frame"] + sections["domains"] + sections["valuation"]);
  s.model = doc_pred_model(doc);
  if (!s.model.frame().frame().root()) throw InputError("scenario frame needs a root");
  s.horn = HornTheory::parse(sections["horn"]);
  for (const auto& tok : split_ws(sections["axioms"])) s.axioms.push_back(to_int("axioms", tok));
  const std::string ftext = trim(sections["formula"]);
  if (ftext.empty()) throw InputError("empty [formula] section");
  s.formula = universal_closure(parse_pred(ftext));

  std::istringstream bs(sections["bounds"]);
  for (std::string raw; std::getline(bs, raw);) {
    const std::string line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("bounds line '" + line + "' lacks '='", 0);
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string val = trim(std::string_view(line).substr(eq + 1));
    if (key == "depth") s.dense.depth = to_int(key, val);
    else if (key == "k_max") s.dense.k_max = to_int(key, val);
    else if (key == "j_max") s.dense.j_max = to_int(key, val);
    else if (key == "sigma_max" || key == "max_len") s.domain.sigma_max = to_int(key, val);
    else if (key == "window") s.domain.window = to_int(key, val);
    else if (key == "saturation") s.domain.saturation_samples = to_int(key, val);
    else if (key == "samples") s.samples = to_int(key, val);
    else if (key == "seed") s.domain.seed = static_cast<std::uint64_t>(to_int(key, val));
    else if (key == "dalphabet") s.alphabet = DomainAlphabet(split_ws(val));
    else if (key == "walphabet") {
      auto ws = split_ws(val);
      auto names = s.model.frame().frame().names();
      std::sort(ws.begin(), ws.end());
      std::sort(names.begin(), names.end());
      if (ws != names) throw InputError("walphabet does not list the frame's worlds");
    } else {
      throw InputError("unknown bound '" + key + "'");
    }
  }
  for (const auto& label : s.alphabet.labels())
    if (s.model.frame().frame().find(label))
      throw InputError("element label '" + label + "' clashes with a world name");
  return s;
}

namespace {

std::string verdict_text(const Verdict& v) {
  return std::string(v.value ? "true" : "false") + (v.certified ? " (certified)" : " (uncertified)");
}

std::string report_text(const CheckReport& r) {
  return std::to_string(r.passed) + "/" + std::to_string(r.checked) +
         (r.failures.empty() ? "" : "; first failure: " + r.failures.front());
}

}  // namespace

PipelineReport run_pipeline(const Scenario& s) {
  const auto start = std::chrono::steady_clock::now();
  PipelineReport r;
  r.scenario = s.name;
  r.seed = s.domain.seed;
  r.formula = to_string(s.formula);
  const auto& pf = s.model.frame();
  const auto& f = pf.frame();
  const World root = *f.root();
  const HornTheory gamma = s.theory();
  auto stage = [&](std::string name, bool ok, std::string detail) {
    r.stages.push_back({std::move(name), ok, std::move(detail)});
    return ok;
  };

  // input: the frame validates Γ and the declared axioms
  bool input_ok = true;
  std::string input_detail = std::to_string(f.size()) + " worlds, " + std::to_string(gamma.sentences.size()) +
                             " Horn sentences";
  for (const auto& h : gamma.sentences)
    if (auto v = horn_violation(f, h)) {
      input_ok = false;
      input_detail = "frame violates " + to_string(h);
      break;
    }
  for (int k : s.axioms)
    if (input_ok && !brute_validity(f, ptc_axiom(k))) {
      input_ok = false;
      input_detail = "frame refutes " + to_string(ptc_axiom(k));
    }
  if (!stage("input", input_ok, input_detail)) return r;

  r.kripke_refutes = !eval_pred_kripke(s.model, root, s.formula);
  stage("kripke", true, std::string("formula is ") + (r.kripke_refutes ? "refuted" : "true") + " at " + f.name(root));

  const std::optional<HornTheory> g = gamma.empty() ? std::nullopt : std::optional<HornTheory>(gamma);
  const DenseFrame d(f, s.dense, g);
  const auto& u = d.unravelling();
  const auto unravel_ok = check_pmorphism(u.projection, u.frame, f, &u.interior);
  stage("unravelling", unravel_ok.verified,
        std::to_string(u.paths.size()) + " paths to depth " + std::to_string(s.dense.depth) +
            (unravel_ok ? "" : "; " + unravel_ok.condition + " " + unravel_ok.witness));

  bool closure_ok = true;
  std::string closure_detail = "no Horn theory";
  if (g) {
    const auto closed_pm = check_pmorphism(u.projection, d.sharp(), f, &u.interior);
    closure_ok = eval_horn(d.sharp(), *g) && closed_pm.verified;
    closure_detail = std::to_string(d.sharp().edge_count() - u.frame.edge_count()) + " edges added" +
                     (closed_pm ? "" : "; " + closed_pm.condition + " " + closed_pm.witness);
  }
  stage("closure", closure_ok, closure_detail);

  std::optional<PsiMorphism> psi_m;
  try {
    psi_m = build_psi(pf, d, s.alphabet, s.domain.sigma_max);
    const auto v = check_kk_morphism(psi_m->morphism, &psi_m->lifting_domain);
    std::size_t classes = 0;
    for (const auto& dom : psi_m->morphism.source.domains()) classes += dom.size();
    stage("psi", v.verified,
          std::to_string(classes) + " domain classes" + (v ? "" : "; " + v.condition + " " + v.witness));
  } catch (const PreconditionError& e) {
    stage("psi", false, e.what());
  }

  const PsiFamily psi(pf, s.alphabet);
  const auto nk = check_dense_nk(d, psi, s.domain, s.samples);
  stage("f0-xi", nk.f0.ok() && nk.surjectivity.ok() && nk.locality.ok(),
        "f0 " + report_text(nk.f0) + ", onto " + report_text(nk.surjectivity) + ", local " +
            report_text(nk.locality));
  stage("composition", nk.composite.ok(), "eta " + report_text(nk.composite));

  r.morphisms_verified = std::all_of(r.stages.begin(), r.stages.end(), [](const StageResult& x) { return x.ok; });
  if (!r.morphisms_verified) return r;

  // pullback: Kripke side through (π, ψ), when the truncation hides nothing
  bool truncated = false;
  for (std::size_t i = 0; i < u.paths.size(); ++i)
    if (!u.interior.test(i) && f.successors(u.paths[i].back()).any()) truncated = true;
  if (truncated || !constants(s.formula).empty()) {
    stage("pullback", true, "dense valuation built; Kripke cross-check skipped (truncated unravelling or constants)");
  } else {
    const PredKripkeModel sharp_model(psi_m->morphism.source, pullback_kk(s.model.valuation(), psi_m->morphism));
    const bool here = eval_pred_kripke(sharp_model, 0, s.formula);
    stage("pullback", here == !r.kripke_refutes,
          std::string("unravelled model gives ") + (here ? "true" : "false") + " at the root path");
  }

  const auto dm = pullback_dense(s.model, d, s.alphabet, s.domain);
  r.dense = eval_pred_dense(dm, StopWord(), s.formula);
  r.dense_ran = true;
  const bool matches = r.kripke_refutes ? (!r.dense.value && r.dense.certified) : r.dense.value;
  stage("dense", matches, "at 0^w: " + verdict_text(r.dense) + (r.dense.witness.empty() ? "" : "; " + r.dense.witness));
  r.ok = std::all_of(r.stages.begin(), r.stages.end(), [](const StageResult& x) { return x.ok; });
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::string PipelineReport::summary_json() const {
  nlohmann::ordered_json j;
  j["scenario"] = scenario;
  j["seed"] = seed;
  j["formula"] = formula;
  j["kripke_refutes"] = kripke_refutes;
  j["morphisms_verified"] = morphisms_verified;
  if (dense_ran) {
    j["dense"] = {{"value", dense.value}, {"certified", dense.certified}};
  } else {
    j["dense"] = nullptr;
  }
  nlohmann::ordered_json st = nlohmann::ordered_json::object();
  for (const auto& s : stages) st[s.name] = s.ok;
  j["stages"] = st;
  j["ok"] = ok;
  return j.dump();
}

std::string PipelineReport::text() const {
  std::ostringstream os;
  os << "scenario: " << scenario << "\n";
  os << "seed: " << seed << "\n";
  os << "formula: " << formula << "\n";
  for (const auto& s : stages) os << "[" << (s.ok ? "ok" : "FAIL") << "] " << s.name << ": " << s.detail << "\n";
  if (!morphisms_verified) {
    os << "result: morphism stage failed; final evaluation not run\n";
  } else if (kripke_refutes) {
    os << "result: " << (ok ? "refutation reproduced on the dense side" : "refutation not reproduced") << "\n";
  } else {
    os << "result: " << (ok ? "nothing to refute; morphisms verified" : "dense side disagrees") << "\n";
  }
  os << "summary: " << summary_json() << "\n";
  return os.str();
}

}  // namespace mlwb
