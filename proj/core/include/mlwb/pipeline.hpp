#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mlwb/constant_domain.hpp"
#include "mlwb/horn.hpp"
#include "mlwb/predicate.hpp"

namespace mlwb {

// Scenario file sections:
//   [frame]      frame/worlds/root/edges lines
//   [domains]    domain w = {..}
//   [valuation]  val P @ w = {..}
//   [horn]       one Horn sentence per line
//   [axioms]     k values for □p → □^k p, space separated
//   [formula]    one predicate formula (closed after universal closure)
//   [bounds]     key = value: depth, k_max, j_max, sigma_max, window,
//                saturation, samples, seed, dalphabet (labels), walphabet
struct Scenario {
  std::string name;
  PredKripkeModel model;
  HornTheory horn;
  std::vector<int> axioms;
  Formula formula = Formula::verum();
  DenseBounds dense{8, 3, 4};
  DenseDomainBounds domain;
  DomainAlphabet alphabet = DomainAlphabet::standard(2);
  int samples = 12;

  // Horn sentences plus the chain sentences of the axioms.
  HornTheory theory() const;
};

Scenario parse_scenario(std::string_view text, std::string name = "scenario");

struct StageResult {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct PipelineReport {
  std::string scenario;
  std::uint64_t seed = 0;
  std::string formula;
  std::vector<StageResult> stages;
  bool kripke_refutes = false;
  bool morphisms_verified = false;
  bool dense_ran = false;
  Verdict dense;
  // Kripke refutation matched by a certified dense refutation, or nothing to
  // refute and all morphism stages verified.
  bool ok = false;
  double seconds = 0;

  // Deterministic text: stages, verdicts and a JSON summary line.
  std::string text() const;
  std::string summary_json() const;
};

PipelineReport run_pipeline(const Scenario& s);

}  // namespace mlwb
