#include "mlwb/neighbourhood.hpp"

#include <set>

#include "mlwb/generate.hpp"

namespace mlwb {

std::string set_text(const std::vector<std::string>& names, const PointSet& s) {
  std::string out = "{";
  bool first = true;
  for (Point x : members(s)) {
    if (!first) out += ",";
    first = false;
    out += names[static_cast<std::size_t>(x)];
  }
  return out + "}";
}

NFrame::NFrame(std::vector<std::string> names, std::vector<std::vector<PointSet>> bases)
    : names_(std::move(names)), bases_(std::move(bases)) {
  const auto n = names_.size();
  std::set<std::string> seen;
  for (const auto& s : names_)
    if (!seen.insert(s).second) throw InputError("duplicate point '" + s + "'");
  if (bases_.size() != n) throw InputError("every point needs a filter base");
  for (std::size_t x = 0; x < n; ++x) {
    const auto& b = bases_[x];
    if (b.empty()) throw InputError("empty filter base at '" + names_[x] + "'");
    for (const auto& u : b)
      if (u.size() != n) throw InputError("base member of wrong size at '" + names_[x] + "'");
    for (const auto& u1 : b) {
      for (const auto& u2 : b) {
        const PointSet meet = u1 & u2;
        bool refined = false;
        for (const auto& u3 : b)
          if (u3.is_subset_of(meet)) { refined = true; break; }
        if (!refined)
          throw InputError("base at '" + names_[x] + "' is not a filter base: no member inside " +
                           set_text(names_, u1) + " ∩ " + set_text(names_, u2));
      }
    }
  }
}

std::optional<Point> NFrame::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<Point>(i);
  return std::nullopt;
}

Point NFrame::index(std::string_view name) const {
  if (auto p = find(name)) return *p;
  throw InputError("unknown point '" + std::string(name) + "'");
}

bool NFrame::in_filter(Point x, const PointSet& u) const {
  for (const auto& b : base(x))
    if (b.is_subset_of(u)) return true;
  return false;
}

NModel::NModel(NFrame frame, std::map<std::string, PointSet> valuation)
    : frame_(std::move(frame)), valuation_(std::move(valuation)) {
  for (const auto& [p, s] : valuation_)
    if (s.size() != static_cast<std::size_t>(frame_.size()))
      throw InputError("valuation of '" + p + "' has the wrong size");
}

const PointSet& NModel::value(const std::string& letter) const {
  auto it = valuation_.find(letter);
  if (it == valuation_.end()) throw InputError("no valuation entry for letter '" + letter + "'");
  return it->second;
}

PointSet extension_nbhd(const NModel& m, const Formula& a) {
  const auto& f = m.frame();
  const auto n = static_cast<std::size_t>(f.size());
  auto letter = [&](const std::string& p) { return m.value(p); };
  auto box = [&](const PointSet& body) {
    PointSet out(n);
    for (std::size_t x = 0; x < n; ++x)
      if (f.in_filter(static_cast<Point>(x), body)) out.set(x);
    return out;
  };
  return detail::extension_with(n, a, letter, box);
}

bool eval_nbhd(const NModel& m, Point x, const Formula& a) {
  if (x < 0 || x >= m.frame().size()) throw InputError("point out of range");
  return extension_nbhd(m, a).test(static_cast<std::size_t>(x));
}

NFrame nf_from_kripke(const KripkeFrame& f) {
  std::vector<std::vector<PointSet>> bases;
  for (World w = 0; w < f.size(); ++w) bases.push_back({f.successors(w)});
  return NFrame(f.names(), std::move(bases));
}

MorphismVerdict check_n_pmorphism(const std::vector<Point>& map, const NFrame& x, const NFrame& y) {
  if (map.size() != static_cast<std::size_t>(x.size()))
    return MorphismVerdict::fail("totality", "map size differs from the source");
  const auto ny = static_cast<std::size_t>(y.size());
  const auto nx = static_cast<std::size_t>(x.size());
  PointSet hit(ny);
  for (Point v : map) {
    if (v < 0 || static_cast<std::size_t>(v) >= ny)
      return MorphismVerdict::fail("totality", "map leaves the target");
    hit.set(static_cast<std::size_t>(v));
  }
  if (!hit.all())
    return MorphismVerdict::fail("surjectivity",
                                 y.name(static_cast<Point>((~hit).find_first())) + " has no preimage");
  for (std::size_t p = 0; p < nx; ++p) {
    const Point fp = map[p];
    for (const auto& u : x.base(static_cast<Point>(p))) {
      PointSet img(ny);
      for (Point q : members(u)) img.set(static_cast<std::size_t>(map[static_cast<std::size_t>(q)]));
      if (!y.in_filter(fp, img))
        return MorphismVerdict::fail("zig", x.name(static_cast<Point>(p)) + ": image of " +
                                                set_text(x.names(), u) + " not in the filter of " +
                                                y.name(fp));
    }
    for (const auto& v : y.base(fp)) {
      PointSet pre(nx);
      for (std::size_t q = 0; q < nx; ++q)
        if (v.test(static_cast<std::size_t>(map[q]))) pre.set(q);
      if (!x.in_filter(static_cast<Point>(p), pre))
        return MorphismVerdict::fail("zag", x.name(static_cast<Point>(p)) + ": preimage of " +
                                                set_text(y.names(), v) + " not in its filter");
    }
  }
  return MorphismVerdict::ok();
}

NMorphism NMorphism::make(NFrame source, NFrame target, std::vector<Point> map) {
  auto v = check_n_pmorphism(map, source, target);
  return {std::move(source), std::move(target), std::move(map), std::move(v)};
}

PreservationReport n_truth_preservation_test(const NMorphism& f, int samples, std::uint64_t seed) {
  if (!f.verified()) throw PreconditionError("truth preservation needs a verified n-p-morphism");
  Rng rng(seed);
  PreservationReport r;
  const auto nt = static_cast<std::size_t>(f.target.size());
  const auto ns = static_cast<std::size_t>(f.source.size());
  PropGenOptions opts;
  std::bernoulli_distribution coin(0.5);
  for (int i = 0; i < samples; ++i) {
    std::map<std::string, PointSet> vt, vs;
    for (const auto& p : opts.letters) {
      PointSet t(nt), s(ns);
      for (std::size_t w = 0; w < nt; ++w) t[w] = coin(rng);
      for (std::size_t x = 0; x < ns; ++x) s[x] = t[static_cast<std::size_t>(f.map[x])];
      vt.emplace(p, t);
      vs.emplace(p, s);
    }
    const Formula a = random_prop(rng, opts);
    const Point x = std::uniform_int_distribution<Point>(0, f.source.size() - 1)(rng);
    const bool lhs = eval_nbhd(NModel(f.source, vs), x, a);
    const bool rhs = eval_nbhd(NModel(f.target, vt), f.map[static_cast<std::size_t>(x)], a);
    ++r.samples;
    if (lhs == rhs) {
      ++r.passed;
    } else if (!r.first_failure) {
      r.first_failure = to_string(a) + " at " + f.source.name(x);
    }
  }
  return r;
}

}  // namespace mlwb
