#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "mlwb/dense.hpp"
#include "mlwb/entangle.hpp"
#include "mlwb/predicate.hpp"

namespace mlwb {

// Constant-domain predicate n-frame over a dense space: points are stop-words
// over W, individuals are stop-words over Σ₂.
struct DenseDomainBounds {
  // Σ₂ letters per D♯ representative.
  int sigma_max = 1;
  // Random individuals per ∀ compared against the class representatives.
  int saturation_samples = 6;
  // Gap values g, g+1, ... checked for j-independence per family.
  int window = 3;
  std::uint64_t seed = 1;
};

// Truth of P(γ1..γm) at a point.
using DenseAtomFn =
    std::function<bool(const StopWord& point, const std::string& letter, const std::vector<StopWord>& args)>;

struct DensePredModel {
  DenseFrame frame;
  DomainAlphabet alphabet;
  DenseDomainBounds bounds;
  DenseAtomFn atom;
  // Names of constants used in formulas.
  std::map<std::string, StopWord> constants;
};

// θ_α(P) ∋ γ̄ iff ξ_{π f0 α}(P) ∋ (ψ_{f0 α}(ξ_α(γi)))i, the pullback along the
// composite of (f0, ξ) with (π, ψ). Root-domain elements become constants.
DensePredModel pullback_dense(const PredKripkeModel& target, const DenseFrame& d, const DomainAlphabet& s,
                              const DenseDomainBounds& b);

// Composite element map η_α(γ) = ψ_{f0 α}(ξ_α(γ)).
Element eta(const PsiFamily& psi, const StopWord& alpha, const StopWord& gamma, const KripkeFrame& f);

// Closed formulas only. ∀ ranges over one γ per truncated D♯ class of the
// point (built with t) plus seeded random individuals; □ takes the gap of the
// first extension letter past every individual in scope and requires the
// verdict to be constant over the gap window.
Verdict eval_pred_dense(const DensePredModel& m, const StopWord& alpha, const Formula& a);

struct DenseMorphismReport {
  CheckReport f0;
  CheckReport surjectivity;
  CheckReport locality;
  CheckReport composite;
  bool ok() const { return f0.ok() && surjectivity.ok() && locality.ok() && composite.ok(); }
};

// (f0, ξ) and its composite with ψ on sampled interior points: f0 p-morphism,
// ξ_α onto truncated D♯, ξ and η stable on U_m(α) with m = st γ + st α, η_α onto
// the target domain.
DenseMorphismReport check_dense_nk(const DenseFrame& d, const PsiFamily& psi, const DenseDomainBounds& b,
                                   int samples);

// Individuals with at most `letters` Σ₂ letters and gaps drawn from [0, max_zeros].
StopWord random_individual(const DomainAlphabet& s, Rng& rng, int letters, int max_zeros);

}  // namespace mlwb
