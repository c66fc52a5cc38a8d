#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "mlwb/generate.hpp"
#include "mlwb/kripke.hpp"
#include "mlwb/neighbourhood.hpp"

namespace mlwb {

using Element = std::string;
using Domain = std::set<Element>;
using Tuple = std::vector<Element>;
using Relation = std::set<Tuple>;
// letter -> per-point relation; a 0-ary letter is true where its relation
// holds the empty tuple.
using PredValuation = std::map<std::string, std::vector<Relation>>;
using ElementMap = std::map<Element, Element>;

// Kripke frame with expanding domains.
class PredKripkeFrame {
 public:
  PredKripkeFrame() = default;
  // Throws InputError on an empty domain or when uRv but D_u ⊄ D_v.
  PredKripkeFrame(KripkeFrame frame, std::vector<Domain> domains);

  const KripkeFrame& frame() const { return frame_; }
  const Domain& domain(World w) const { return domains_.at(static_cast<std::size_t>(w)); }
  const std::vector<Domain>& domains() const { return domains_; }
  Domain universe() const;

  friend bool operator==(const PredKripkeFrame&, const PredKripkeFrame&) = default;

 private:
  KripkeFrame frame_;
  std::vector<Domain> domains_;
};

// Neighbourhood frame with a constant domain.
class PredNFrame {
 public:
  PredNFrame() = default;
  PredNFrame(NFrame space, Domain domain);
  const NFrame& space() const { return space_; }
  const Domain& domain() const { return domain_; }

 private:
  NFrame space_;
  Domain domain_;
};

// Checks that every relation has the frame's point count and tuples of one
// arity drawn from the given per-point domains.
void validate_valuation(const PredValuation& v, const std::vector<Domain>& domains);

class PredKripkeModel {
 public:
  PredKripkeModel() = default;
  PredKripkeModel(PredKripkeFrame frame, PredValuation xi);
  const PredKripkeFrame& frame() const { return frame_; }
  const PredValuation& valuation() const { return xi_; }

 private:
  PredKripkeFrame frame_;
  PredValuation xi_;
};

class PredNModel {
 public:
  PredNModel(PredNFrame frame, PredValuation theta);
  const PredNFrame& frame() const { return frame_; }
  const PredValuation& valuation() const { return theta_; }

 private:
  PredNFrame frame_;
  PredValuation theta_;
};

// Closed formulas only (constants allowed); throws InputError on free
// variables, unknown letters, or constants outside D_u.
bool eval_pred_kripke(const PredKripkeModel& m, World u, const Formula& a);
bool eval_pred_nbhd(const PredNModel& m, Point x, const Formula& a);

struct PredKKMorphism {
  PredKripkeFrame source;
  PredKripkeFrame target;
  std::vector<World> phi0;
  std::vector<ElementMap> phi1;
};

struct PredNKMorphism {
  PredNFrame source;
  PredKripkeFrame target;
  std::vector<World> phi0;
  std::vector<ElementMap> phi1;
};

// Lifting is only required on `lifting_domain` when given.
MorphismVerdict check_kk_morphism(const PredKKMorphism& m, const WorldSet* lifting_domain = nullptr);
MorphismVerdict check_nk_morphism(const PredNKMorphism& m);

// (a1..am) ∈ ξ_u(P) iff (φ1u(a1)..φ1u(am)) ∈ ξ'_{φ0 u}(P)
PredValuation pullback_kk(const PredValuation& target_xi, const PredKKMorphism& m);
PredValuation pullback_nk(const PredValuation& target_xi, const PredNKMorphism& m);

// η_x(d) = ψ1_{φ0 x}(φ1x(d)); throws InputError when nk's target is not
// kk's source.
PredNKMorphism compose_morphisms(const PredNKMorphism& nk, const PredKKMorphism& kk);
PredKKMorphism compose_kk(const PredKKMorphism& first, const PredKKMorphism& second);

PredKKMorphism identity_kk(const PredKripkeFrame& f);

// Barcan ∀x□P(x) → □∀xP(x) and its converse.
Formula barcan_formula();
Formula converse_barcan_formula();

// □ and ∀ shapes, Barcan and converse Barcan over P/1, Q/2, r/0.
std::vector<Formula> preservation_pool();

PredValuation random_pred_valuation(const std::vector<Domain>& domains, const std::map<std::string, int>& signature,
                                    Rng& rng, double density = 0.5);

// Random closed formulas of modal depth <= 2 over x, y plus the fixed pool;
// compares both sides under the pullback valuation.
PreservationReport pred_truth_preservation_test(const PredKKMorphism& m, int samples, std::uint64_t seed = 1);
PreservationReport pred_truth_preservation_test(const PredNKMorphism& m, int samples, std::uint64_t seed = 1);

// Random verified instances: copies of target worlds with lifting ensured
// and a global element surjection.
PredKKMorphism random_kk_instance(Rng& rng, int max_worlds = 3, int max_elements = 3);
// Target with constant domains, source N(F) of a copied frame.
PredNKMorphism random_nk_instance(Rng& rng, int max_worlds = 3, int max_elements = 3);

std::string tuple_text(const Tuple& t);

}  // namespace mlwb
