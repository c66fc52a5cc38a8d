#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "mlwb/kripke.hpp"

namespace mlwb {

using Point = int;
using PointSet = WorldSet;

// Neighbourhood frame given by filter bases: U ∈ τ(x) iff some base member of
// x is contained in U. Improper filters (∅ in a base) are allowed.
class NFrame {
 public:
  NFrame() = default;
  // Throws InputError on an empty base or when a base is not closed under
  // intersection up to refinement.
  NFrame(std::vector<std::string> names, std::vector<std::vector<PointSet>> bases);

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(Point x) const { return names_.at(static_cast<std::size_t>(x)); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<Point> find(std::string_view name) const;
  Point index(std::string_view name) const;
  const std::vector<PointSet>& base(Point x) const { return bases_.at(static_cast<std::size_t>(x)); }

  bool in_filter(Point x, const PointSet& u) const;

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<PointSet>> bases_;
};

class NModel {
 public:
  NModel(NFrame frame, std::map<std::string, PointSet> valuation);
  const NFrame& frame() const { return frame_; }
  const std::map<std::string, PointSet>& valuation() const { return valuation_; }
  const PointSet& value(const std::string& letter) const;

 private:
  NFrame frame_;
  std::map<std::string, PointSet> valuation_;
};

PointSet extension_nbhd(const NModel& m, const Formula& a);
bool eval_nbhd(const NModel& m, Point x, const Formula& a);

// base(w) = { R(w) }
NFrame nf_from_kripke(const KripkeFrame& f);

// Surjectivity, zig on base members of x, zag on base members of f(x).
MorphismVerdict check_n_pmorphism(const std::vector<Point>& map, const NFrame& x, const NFrame& y);

struct NMorphism {
  NFrame source;
  NFrame target;
  std::vector<Point> map;
  MorphismVerdict verdict;

  static NMorphism make(NFrame source, NFrame target, std::vector<Point> map);
  bool verified() const { return verdict.verified; }
};

PreservationReport n_truth_preservation_test(const NMorphism& f, int samples, std::uint64_t seed = 1);

std::string set_text(const std::vector<std::string>& names, const PointSet& s);

}  // namespace mlwb
