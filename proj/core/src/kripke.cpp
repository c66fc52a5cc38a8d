#include "mlwb/kripke.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "mlwb/generate.hpp"

namespace mlwb {

WorldSet empty_set(std::size_t n) { return WorldSet(n); }

WorldSet full_set(std::size_t n) {
  WorldSet s(n);
  s.set();
  return s;
}

std::vector<World> members(const WorldSet& s) {
  std::vector<World> out;
  for (auto i = s.find_first(); i != WorldSet::npos; i = s.find_next(i))
    out.push_back(static_cast<World>(i));
  return out;
}

bool is_subset(const WorldSet& a, const WorldSet& b) { return a.is_subset_of(b); }

// ---------------------------------------------------------------------------

KripkeFrame::KripkeFrame(std::vector<std::string> names, const std::vector<Edge>& edges,
                         std::optional<World> root)
    : names_(std::move(names)), root_(root) {
  const auto n = names_.size();
  std::set<std::string> seen;
  for (const auto& s : names_) {
    if (s.empty()) throw InputError("empty world name");
    if (!seen.insert(s).second) throw InputError("duplicate world '" + s + "'");
  }
  succ_.assign(n, WorldSet(n));
  for (const auto& [a, b] : edges) {
    if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= n || static_cast<std::size_t>(b) >= n)
      throw InputError("edge endpoint out of range");
    succ_[static_cast<std::size_t>(a)].set(static_cast<std::size_t>(b));
  }
  if (root_) {
    if (*root_ < 0 || static_cast<std::size_t>(*root_) >= n) throw InputError("root out of range");
    const WorldSet r = reachable(*root_);
    if (!r.all()) {
      const auto missing = (~r).find_first();
      throw InputError("world '" + names_[missing] + "' is not reachable from root '" +
                       names_[static_cast<std::size_t>(*root_)] + "'");
    }
  }
}

KripkeFrame KripkeFrame::from_names(std::vector<std::string> names,
                                    const std::vector<std::pair<std::string, std::string>>& edges,
                                    std::optional<std::string> root) {
  std::map<std::string, World> idx;
  for (std::size_t i = 0; i < names.size(); ++i) idx.emplace(names[i], static_cast<World>(i));
  auto lookup = [&](const std::string& s) {
    auto it = idx.find(s);
    if (it == idx.end()) throw InputError("unknown world '" + s + "'");
    return it->second;
  };
  std::vector<Edge> e;
  for (const auto& [a, b] : edges) e.emplace_back(lookup(a), lookup(b));
  std::optional<World> r;
  if (root) r = lookup(*root);
  return KripkeFrame(std::move(names), e, r);
}

std::optional<World> KripkeFrame::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<World>(i);
  return std::nullopt;
}

World KripkeFrame::index(std::string_view name) const {
  if (auto w = find(name)) return *w;
  throw InputError("unknown world '" + std::string(name) + "'");
}

std::vector<Edge> KripkeFrame::edges() const {
  std::vector<Edge> out;
  for (std::size_t a = 0; a < succ_.size(); ++a)
    for (World b : members(succ_[a])) out.emplace_back(static_cast<World>(a), b);
  return out;
}

std::size_t KripkeFrame::edge_count() const {
  std::size_t c = 0;
  for (const auto& s : succ_) c += s.count();
  return c;
}

KripkeFrame KripkeFrame::with_edges(const std::vector<Edge>& edges) const {
  return KripkeFrame(names_, edges, root_);
}

KripkeFrame KripkeFrame::with_root(std::optional<World> root) const {
  return KripkeFrame(names_, edges(), root);
}

WorldSet KripkeFrame::image(const WorldSet& s) const {
  WorldSet out(names_.size());
  for (auto i = s.find_first(); i != WorldSet::npos; i = s.find_next(i)) out |= succ_[i];
  return out;
}

WorldSet KripkeFrame::power_image(World w, int k) const {
  WorldSet cur(names_.size());
  cur.set(static_cast<std::size_t>(w));
  for (int i = 0; i < k; ++i) cur = image(cur);
  return cur;
}

WorldSet KripkeFrame::reachable(World w) const {
  WorldSet seen(names_.size());
  seen.set(static_cast<std::size_t>(w));
  WorldSet frontier = seen;
  while (frontier.any()) {
    WorldSet next = image(frontier) - seen;
    seen |= next;
    frontier = std::move(next);
  }
  return seen;
}

// ---------------------------------------------------------------------------

KripkeModel::KripkeModel(KripkeFrame frame, std::map<std::string, WorldSet> valuation)
    : frame_(std::move(frame)), valuation_(std::move(valuation)) {
  for (const auto& [p, s] : valuation_)
    if (s.size() != static_cast<std::size_t>(frame_.size()))
      throw InputError("valuation of '" + p + "' has the wrong size");
}

const WorldSet& KripkeModel::value(const std::string& letter) const {
  auto it = valuation_.find(letter);
  if (it == valuation_.end()) throw InputError("no valuation entry for letter '" + letter + "'");
  return it->second;
}

WorldSet extension(const KripkeModel& m, const Formula& a) {
  const auto& f = m.frame();
  const auto n = static_cast<std::size_t>(f.size());
  auto letter = [&](const std::string& p) { return m.value(p); };
  auto box = [&](const WorldSet& body) {
    WorldSet out(n);
    for (std::size_t w = 0; w < n; ++w)
      if (f.successors(static_cast<World>(w)).is_subset_of(body)) out.set(w);
    return out;
  };
  return detail::extension_with(n, a, letter, box);
}

bool eval_kripke(const KripkeModel& m, World w, const Formula& a) {
  if (w < 0 || w >= m.frame().size()) throw InputError("world out of range");
  return extension(m, a).test(static_cast<std::size_t>(w));
}

bool eval_kripke(const KripkeModel& m, std::string_view world, const Formula& a) {
  return eval_kripke(m, m.frame().index(world), a);
}

KripkeFrame generated_subframe(const KripkeFrame& f, World w) {
  if (w < 0 || w >= f.size()) throw InputError("world out of range");
  const auto keep = members(f.reachable(w));
  std::vector<int> pos(static_cast<std::size_t>(f.size()), -1);
  std::vector<std::string> names;
  for (World v : keep) {
    pos[static_cast<std::size_t>(v)] = static_cast<int>(names.size());
    names.push_back(f.name(v));
  }
  std::vector<Edge> edges;
  for (const auto& [a, b] : f.edges())
    if (pos[static_cast<std::size_t>(a)] >= 0 && pos[static_cast<std::size_t>(b)] >= 0)
      edges.emplace_back(pos[static_cast<std::size_t>(a)], pos[static_cast<std::size_t>(b)]);
  return KripkeFrame(std::move(names), edges, pos[static_cast<std::size_t>(w)]);
}

// ---------------------------------------------------------------------------

MorphismVerdict check_pmorphism(const std::vector<World>& map, const KripkeFrame& f,
                                const KripkeFrame& g, const WorldSet* lifting_domain) {
  if (map.size() != static_cast<std::size_t>(f.size()))
    return MorphismVerdict::fail("totality", "map has " + std::to_string(map.size()) +
                                                 " entries for " + std::to_string(f.size()) +
                                                 " worlds");
  for (World x = 0; x < f.size(); ++x)
    if (map[x] < 0 || map[x] >= g.size())
      return MorphismVerdict::fail("totality", f.name(x) + " maps outside the target");
  WorldSet hit(static_cast<std::size_t>(g.size()));
  for (World v : map) hit.set(static_cast<std::size_t>(v));
  if (!hit.all())
    return MorphismVerdict::fail("surjectivity", g.name(static_cast<World>((~hit).find_first())) +
                                                     " has no preimage");
  for (const auto& [x, y] : f.edges())
    if (!g.related(map[x], map[y]))
      return MorphismVerdict::fail("monotonicity", "(" + f.name(x) + ", " + f.name(y) + ")");
  for (World x = 0; x < f.size(); ++x) {
    if (lifting_domain && !lifting_domain->test(static_cast<std::size_t>(x))) continue;
    WorldSet covered(static_cast<std::size_t>(g.size()));
    for (World y : members(f.successors(x))) covered.set(static_cast<std::size_t>(map[y]));
    const WorldSet missing = g.successors(map[x]) - covered;
    if (missing.any())
      return MorphismVerdict::fail(
          "lifting", "(" + f.name(x) + ", " + g.name(static_cast<World>(missing.find_first())) + ")");
  }
  return MorphismVerdict::ok();
}

KripkeMorphism KripkeMorphism::make(KripkeFrame source, KripkeFrame target, std::vector<World> map) {
  auto v = check_pmorphism(map, source, target);
  return {std::move(source), std::move(target), std::move(map), std::move(v)};
}

// ---------------------------------------------------------------------------

std::optional<Countermodel> brute_countermodel(const KripkeFrame& f, const Formula& a,
                                               std::uint64_t cap) {
  const auto ls = letters(a);
  const std::vector<std::string> lv(ls.begin(), ls.end());
  const auto n = static_cast<std::size_t>(f.size());
  const std::size_t bits = n * lv.size();
  if (bits >= 63 || (std::uint64_t{1} << bits) > cap)
    throw CapExceeded("brute-force validity needs 2^" + std::to_string(bits) +
                      " valuations, above the cap of " + std::to_string(cap));
  const std::uint64_t total = std::uint64_t{1} << bits;
  std::map<std::string, WorldSet> val;
  for (const auto& p : lv) val.emplace(p, WorldSet(n));
  for (std::uint64_t code = 0; code < total; ++code) {
    for (std::size_t li = 0; li < lv.size(); ++li) {
      auto& s = val[lv[li]];
      for (std::size_t w = 0; w < n; ++w) s[w] = (code >> (li * n + w)) & 1U;
    }
    const KripkeModel m(f, val);
    const WorldSet ext = extension(m, a);
    if (!ext.all()) return Countermodel{val, static_cast<World>((~ext).find_first())};
  }
  return std::nullopt;
}

bool brute_validity(const KripkeFrame& f, const Formula& a, std::uint64_t cap) {
  return !brute_countermodel(f, a, cap).has_value();
}

InclusionVerdict check_axiom_inclusion(const KripkeFrame& f, int k) {
  if (k < 0) throw InputError("k must be non-negative");
  for (World w = 0; w < f.size(); ++w) {
    const WorldSet bad = f.power_image(w, k) - f.successors(w);
    if (bad.any()) return {false, Edge{w, static_cast<World>(bad.find_first())}};
  }
  return {};
}

InclusionVerdict check_pretransitive(const KripkeFrame& f, int k) {
  if (k < 0) throw InputError("k must be non-negative");
  const auto n = static_cast<std::size_t>(f.size());
  for (World w = 0; w < f.size(); ++w) {
    WorldSet layer(n);
    layer.set(static_cast<std::size_t>(w));
    WorldSet seen = layer;
    for (int i = 1; i <= k; ++i) {
      layer = f.image(layer);
      seen |= layer;
    }
    const WorldSet bad = f.image(layer) - seen;
    if (bad.any()) return {false, Edge{w, static_cast<World>(bad.find_first())}};
  }
  return {};
}

Formula ptc_axiom(int k) {
  const Formula p = Formula::atom("p");
  return Formula::implies(Formula::box(p), box_power(p, k));
}

Formula pretransitivity_axiom(int k) {
  const Formula p = Formula::atom("p");
  Formula ante = p;
  for (int i = 1; i <= k; ++i) ante = Formula::conjunction(ante, box_power(p, i));
  return Formula::implies(ante, box_power(p, k + 1));
}

// ---------------------------------------------------------------------------

Unravelling unravel(const KripkeFrame& f, int depth, std::size_t cap) {
  if (!f.root()) throw InputError("unravelling needs a rooted frame");
  if (depth < 1) throw InputError("unravelling depth must be at least 1");
  Unravelling u;
  std::vector<std::string> names;
  std::vector<Edge> edges;
  std::deque<std::size_t> queue;
  u.paths.push_back({*f.root()});
  names.push_back(f.name(*f.root()));
  queue.push_back(0);
  while (!queue.empty()) {
    const std::size_t i = queue.front();
    queue.pop_front();
    if (static_cast<int>(u.paths[i].size()) >= depth) continue;
    for (World v : members(f.successors(u.paths[i].back()))) {
      if (u.paths.size() >= cap)
        throw CapExceeded("unravelling exceeds " + std::to_string(cap) + " paths");
      auto p = u.paths[i];
      p.push_back(v);
      edges.emplace_back(static_cast<World>(i), static_cast<World>(u.paths.size()));
      names.push_back(names[i] + "." + f.name(v));
      u.paths.push_back(std::move(p));
      queue.push_back(u.paths.size() - 1);
    }
  }
  u.frame = KripkeFrame(std::move(names), edges, 0);
  u.interior = WorldSet(u.paths.size());
  for (std::size_t i = 0; i < u.paths.size(); ++i) {
    u.projection.push_back(u.paths[i].back());
    if (static_cast<int>(u.paths[i].size()) < depth) u.interior.set(i);
  }
  return u;
}

// ---------------------------------------------------------------------------

PreservationReport truth_preservation_test(const KripkeMorphism& f, int samples,
                                           std::uint64_t seed) {
  if (!f.verified()) throw PreconditionError("truth preservation needs a verified p-morphism");
  Rng rng(seed);
  PreservationReport r;
  const auto nt = static_cast<std::size_t>(f.target.size());
  const auto ns = static_cast<std::size_t>(f.source.size());
  PropGenOptions opts;
  opts.max_modal_depth = 3;
  std::bernoulli_distribution coin(0.5);
  for (int i = 0; i < samples; ++i) {
    std::map<std::string, WorldSet> vt, vs;
    for (const auto& p : opts.letters) {
      WorldSet t(nt), s(ns);
      for (std::size_t w = 0; w < nt; ++w) t[w] = coin(rng);
      for (std::size_t x = 0; x < ns; ++x) s[x] = t[static_cast<std::size_t>(f.map[x])];
      vt.emplace(p, t);
      vs.emplace(p, s);
    }
    const Formula a = random_prop(rng, opts);
    const World x = std::uniform_int_distribution<World>(0, f.source.size() - 1)(rng);
    const bool lhs = eval_kripke(KripkeModel(f.source, vs), x, a);
    const bool rhs = eval_kripke(KripkeModel(f.target, vt), f.map[static_cast<std::size_t>(x)], a);
    ++r.samples;
    if (lhs == rhs) {
      ++r.passed;
    } else if (!r.first_failure) {
      r.first_failure = to_string(a) + " at " + f.source.name(x);
    }
  }
  return r;
}

std::string describe(const KripkeFrame& f) {
  std::ostringstream os;
  os << "worlds";
  for (const auto& n : f.names()) os << ' ' << n;
  os << '\n';
  if (f.root()) os << "root " << f.name(*f.root()) << '\n';
  os << "edges";
  for (const auto& [a, b] : f.edges()) os << ' ' << f.name(a) << "->" << f.name(b);
  os << '\n';
  return os.str();
}

}  // namespace mlwb
