#include "mlwb/predicate.hpp"

#include <algorithm>
#include <functional>

namespace mlwb {

std::string tuple_text(const Tuple& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) s += ",";
    s += t[i];
  }
  return s + ")";
}

PredKripkeFrame::PredKripkeFrame(KripkeFrame frame, std::vector<Domain> domains)
    : frame_(std::move(frame)), domains_(std::move(domains)) {
  if (domains_.size() != static_cast<std::size_t>(frame_.size()))
    throw InputError("every world needs a domain");
  for (World w = 0; w < frame_.size(); ++w)
    if (domain(w).empty()) throw InputError("empty domain at '" + frame_.name(w) + "'");
  for (const auto& [u, v] : frame_.edges())
    if (!std::includes(domain(v).begin(), domain(v).end(), domain(u).begin(), domain(u).end()))
      throw InputError("domains do not expand along " + frame_.name(u) + " -> " + frame_.name(v));
}

Domain PredKripkeFrame::universe() const {
  Domain all;
  for (const auto& d : domains_) all.insert(d.begin(), d.end());
  return all;
}

PredNFrame::PredNFrame(NFrame space, Domain domain) : space_(std::move(space)), domain_(std::move(domain)) {
  if (domain_.empty()) throw InputError("constant domain must be nonempty");
}

void validate_valuation(const PredValuation& v, const std::vector<Domain>& domains) {
  for (const auto& [letter, rels] : v) {
    if (rels.size() != domains.size())
      throw InputError("valuation of '" + letter + "' has the wrong number of points");
    int arity = -1;
    for (std::size_t p = 0; p < rels.size(); ++p) {
      for (const auto& t : rels[p]) {
        if (arity < 0) arity = static_cast<int>(t.size());
        if (static_cast<int>(t.size()) != arity)
          throw InputError("letter '" + letter + "' used with two arities");
        for (const auto& e : t)
          if (!domains[p].count(e))
            throw InputError("tuple " + tuple_text(t) + " of '" + letter + "' leaves the local domain");
      }
    }
  }
}

PredKripkeModel::PredKripkeModel(PredKripkeFrame frame, PredValuation xi)
    : frame_(std::move(frame)), xi_(std::move(xi)) {
  validate_valuation(xi_, frame_.domains());
}

PredNModel::PredNModel(PredNFrame frame, PredValuation theta) : frame_(std::move(frame)), theta_(std::move(theta)) {
  validate_valuation(theta_, std::vector<Domain>(static_cast<std::size_t>(frame_.space().size()), frame_.domain()));
}

namespace {

using Env = std::map<std::string, Element>;

// Extension-based evaluator shared by the Kripke and neighbourhood sides.
class PredEvaluator {
 public:
  using DomainOf = std::function<const Domain&(Point)>;
  using Box = std::function<PointSet(const PointSet&)>;

  PredEvaluator(std::size_t n, const PredValuation& v, Domain universe, DomainOf domain_of, Box box)
      : n_(n), v_(v), universe_(std::move(universe)), domain_of_(std::move(domain_of)), box_(std::move(box)) {}

  PointSet ext(const Formula& a, Env& env) const {
    switch (a.kind()) {
      case Formula::Kind::Falsum:
        return PointSet(n_);
      case Formula::Kind::Atom: {
        auto it = v_.find(a.name());
        if (it == v_.end()) throw InputError("no valuation entry for letter '" + a.name() + "'");
        Tuple t;
        for (const auto& term : a.args()) {
          if (term.is_variable()) {
            auto e = env.find(term.name);
            if (e == env.end()) throw InputError("free variable '" + term.name + "' during evaluation");
            t.push_back(e->second);
          } else {
            t.push_back(term.name);
          }
        }
        PointSet out(n_);
        for (std::size_t p = 0; p < n_; ++p)
          if (it->second[p].count(t)) out.set(p);
        return out;
      }
      case Formula::Kind::Implies: {
        PointSet out = ~ext(a.lhs(), env);
        out |= ext(a.rhs(), env);
        return out;
      }
      case Formula::Kind::Box:
        if (a.modality() != 1) throw InputError("single-relation frame; modality index must be 1");
        return box_(ext(a.body(), env));
      case Formula::Kind::Forall: {
        PointSet out(n_);
        out.set();
        const std::string v = a.name();
        const auto saved = env.find(v) != env.end() ? std::optional<Element>(env[v]) : std::nullopt;
        const Formula body = a.body();
        for (const auto& d : universe_) {
          env[v] = d;
          const PointSet e = ext(body, env);
          for (std::size_t p = 0; p < n_; ++p)
            if (!e.test(p) && domain_of_(static_cast<Point>(p)).count(d)) out.reset(p);
        }
        if (saved) env[v] = *saved; else env.erase(v);
        return out;
      }
    }
    return PointSet(n_);
  }

 private:
  std::size_t n_;
  const PredValuation& v_;
  Domain universe_;
  DomainOf domain_of_;
  Box box_;
};

void require_closed(const Formula& a, const Domain& local, const std::string& where) {
  if (!is_closed(a)) throw InputError("formula has free variables; take its universal closure first");
  for (const auto& c : constants(a))
    if (!local.count(c)) throw InputError("constant '" + c + "' is not in the domain of " + where);
}

}  // namespace

bool eval_pred_kripke(const PredKripkeModel& m, World u, const Formula& a) {
  const auto& f = m.frame();
  if (u < 0 || u >= f.frame().size()) throw InputError("world out of range");
  require_closed(a, f.domain(u), f.frame().name(u));
  const auto n = static_cast<std::size_t>(f.frame().size());
  PredEvaluator ev(
      n, m.valuation(), f.universe(), [&](Point p) -> const Domain& { return f.domain(p); },
      [&](const PointSet& body) {
        PointSet out(n);
        for (std::size_t w = 0; w < n; ++w)
          if (f.frame().successors(static_cast<World>(w)).is_subset_of(body)) out.set(w);
        return out;
      });
  Env env;
  return ev.ext(a, env).test(static_cast<std::size_t>(u));
}

bool eval_pred_nbhd(const PredNModel& m, Point x, const Formula& a) {
  const auto& f = m.frame();
  const auto& sp = f.space();
  if (x < 0 || x >= sp.size()) throw InputError("point out of range");
  require_closed(a, f.domain(), "the constant domain");
  const auto n = static_cast<std::size_t>(sp.size());
  PredEvaluator ev(
      n, m.valuation(), f.domain(), [&](Point) -> const Domain& { return f.domain(); },
      [&](const PointSet& body) {
        PointSet out(n);
        for (std::size_t p = 0; p < n; ++p)
          if (sp.in_filter(static_cast<Point>(p), body)) out.set(p);
        return out;
      });
  Env env;
  return ev.ext(a, env).test(static_cast<std::size_t>(x));
}

// ---------------------------------------------------------------------------

namespace {

std::optional<MorphismVerdict> check_element_map(const ElementMap& phi, const Domain& from, const Domain& to,
                                                 const std::string& where) {
  std::set<Element> hit;
  for (const auto& d : from) {
    auto it = phi.find(d);
    if (it == phi.end()) return MorphismVerdict::fail("domain", where + ": " + d + " has no image");
    if (!to.count(it->second))
      return MorphismVerdict::fail("domain", where + ": " + d + " maps to " + it->second + " outside the target domain");
    hit.insert(it->second);
  }
  if (hit.size() != to.size()) {
    for (const auto& e : to)
      if (!hit.count(e)) return MorphismVerdict::fail("domain", where + ": " + e + " has no preimage");
  }
  return std::nullopt;
}

}  // namespace

MorphismVerdict check_kk_morphism(const PredKKMorphism& m, const WorldSet* lifting_domain) {
  const auto& sf = m.source.frame();
  const auto& tf = m.target.frame();
  auto v = check_pmorphism(m.phi0, sf, tf, lifting_domain);
  if (!v) return v;
  if (m.phi1.size() != static_cast<std::size_t>(sf.size()))
    return MorphismVerdict::fail("totality", "one element map per source world is required");
  for (World w = 0; w < sf.size(); ++w)
    if (auto bad = check_element_map(m.phi1[static_cast<std::size_t>(w)], m.source.domain(w),
                                     m.target.domain(m.phi0[static_cast<std::size_t>(w)]), sf.name(w)))
      return *bad;
  for (const auto& [w, u] : sf.edges())
    for (const auto& d : m.source.domain(w))
      if (m.phi1[static_cast<std::size_t>(w)].at(d) != m.phi1[static_cast<std::size_t>(u)].at(d))
        return MorphismVerdict::fail("locality", "(" + sf.name(w) + ", " + sf.name(u) + ") disagree on " + d);
  return MorphismVerdict::ok();
}

MorphismVerdict check_nk_morphism(const PredNKMorphism& m) {
  const auto& sp = m.source.space();
  const auto& tf = m.target.frame();
  auto v = check_n_pmorphism(m.phi0, sp, nf_from_kripke(tf));
  if (!v) return v;
  if (m.phi1.size() != static_cast<std::size_t>(sp.size()))
    return MorphismVerdict::fail("totality", "one element map per source point is required");
  for (Point x = 0; x < sp.size(); ++x)
    if (auto bad = check_element_map(m.phi1[static_cast<std::size_t>(x)], m.source.domain(),
                                     m.target.domain(m.phi0[static_cast<std::size_t>(x)]), sp.name(x)))
      return *bad;
  for (const auto& d : m.source.domain()) {
    for (Point x = 0; x < sp.size(); ++x) {
      const auto& here = m.phi1[static_cast<std::size_t>(x)].at(d);
      bool found = false;
      for (const auto& b : sp.base(x)) {
        bool agree = true;
        for (Point y : members(b))
          if (m.phi1[static_cast<std::size_t>(y)].at(d) != here) {
            agree = false;
            break;
          }
        if (agree) {
          found = true;
          break;
        }
      }
      if (!found)
        return MorphismVerdict::fail("locality", sp.name(x) + ": no neighbourhood fixes the image of " + d);
    }
  }
  return MorphismVerdict::ok();
}

namespace {

void for_each_tuple(const Domain& d, int arity, const std::function<void(const Tuple&)>& fn) {
  const std::vector<Element> elems(d.begin(), d.end());
  Tuple t(static_cast<std::size_t>(arity));
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == t.size()) {
      fn(t);
      return;
    }
    for (const auto& e : elems) {
      t[i] = e;
      rec(i + 1);
    }
  };
  rec(0);
}

int arity_of(const std::vector<Relation>& rels, int fallback) {
  for (const auto& r : rels)
    if (!r.empty()) return static_cast<int>(r.begin()->size());
  return fallback;
}

PredValuation pullback(const PredValuation& xi, const std::vector<World>& phi0, const std::vector<ElementMap>& phi1,
                       const std::function<const Domain&(std::size_t)>& source_domain) {
  PredValuation out;
  for (const auto& [letter, rels] : xi) {
    const int arity = arity_of(rels, 0);
    std::vector<Relation> mine(phi0.size());
    for (std::size_t x = 0; x < phi0.size(); ++x) {
      const auto& target = rels[static_cast<std::size_t>(phi0[x])];
      for_each_tuple(source_domain(x), arity, [&](const Tuple& t) {
        Tuple img;
        for (const auto& e : t) img.push_back(phi1[x].at(e));
        if (target.count(img)) mine[x].insert(t);
      });
    }
    out.emplace(letter, std::move(mine));
  }
  return out;
}

}  // namespace

PredValuation pullback_kk(const PredValuation& target_xi, const PredKKMorphism& m) {
  return pullback(target_xi, m.phi0, m.phi1,
                  [&](std::size_t x) -> const Domain& { return m.source.domain(static_cast<World>(x)); });
}

PredValuation pullback_nk(const PredValuation& target_xi, const PredNKMorphism& m) {
  return pullback(target_xi, m.phi0, m.phi1, [&](std::size_t) -> const Domain& { return m.source.domain(); });
}

PredNKMorphism compose_morphisms(const PredNKMorphism& nk, const PredKKMorphism& kk) {
  if (!(nk.target == kk.source)) throw InputError("composition needs the n-to-Kripke target to be the Kripke source");
  PredNKMorphism out{nk.source, kk.target, {}, {}};
  for (std::size_t x = 0; x < nk.phi0.size(); ++x) {
    const auto mid = static_cast<std::size_t>(nk.phi0[x]);
    out.phi0.push_back(kk.phi0.at(mid));
    ElementMap eta;
    for (const auto& [d, e] : nk.phi1[x]) eta[d] = kk.phi1.at(mid).at(e);
    out.phi1.push_back(std::move(eta));
  }
  return out;
}

PredKKMorphism compose_kk(const PredKKMorphism& first, const PredKKMorphism& second) {
  if (!(first.target == second.source)) throw InputError("composition needs matching frames");
  PredKKMorphism out{first.source, second.target, {}, {}};
  for (std::size_t w = 0; w < first.phi0.size(); ++w) {
    const auto mid = static_cast<std::size_t>(first.phi0[w]);
    out.phi0.push_back(second.phi0.at(mid));
    ElementMap eta;
    for (const auto& [d, e] : first.phi1[w]) eta[d] = second.phi1.at(mid).at(e);
    out.phi1.push_back(std::move(eta));
  }
  return out;
}

PredKKMorphism identity_kk(const PredKripkeFrame& f) {
  PredKKMorphism m{f, f, {}, {}};
  for (World w = 0; w < f.frame().size(); ++w) {
    m.phi0.push_back(w);
    ElementMap id;
    for (const auto& d : f.domain(w)) id[d] = d;
    m.phi1.push_back(std::move(id));
  }
  return m;
}

Formula barcan_formula() { return parse_pred("(forall x. box P(x)) -> box forall x. P(x)"); }
Formula converse_barcan_formula() { return parse_pred("(box forall x. P(x)) -> forall x. box P(x)"); }

std::vector<Formula> preservation_pool() {
  std::vector<Formula> pool;
  for (const char* s : {"forall x. box P(x)", "box forall x. P(x)", "forall x. exists y. Q(x, y)",
                        "forall x. (P(x) -> box P(x))", "dia exists x. P(x)", "box r -> forall x. dia Q(x, x)",
                        "forall x. forall y. (Q(x, y) -> box Q(x, y))", "r | ~r"})
    pool.push_back(universal_closure(parse_pred(s)));
  pool.push_back(barcan_formula());
  pool.push_back(converse_barcan_formula());
  return pool;
}

PredValuation random_pred_valuation(const std::vector<Domain>& domains, const std::map<std::string, int>& signature,
                                    Rng& rng, double density) {
  std::bernoulli_distribution coin(density);
  PredValuation v;
  for (const auto& [letter, arity] : signature) {
    std::vector<Relation> rels(domains.size());
    for (std::size_t p = 0; p < domains.size(); ++p)
      for_each_tuple(domains[p], arity, [&](const Tuple& t) {
        if (coin(rng)) rels[p].insert(t);
      });
    v.emplace(letter, std::move(rels));
  }
  return v;
}

namespace {

const std::map<std::string, int>& pool_signature() {
  static const std::map<std::string, int> sig{{"P", 1}, {"Q", 2}, {"r", 0}};
  return sig;
}

Formula sample_formula(Rng& rng, const std::vector<Formula>& pool) {
  if (std::uniform_int_distribution<int>(0, 3)(rng) == 0)
    return pool[static_cast<std::size_t>(std::uniform_int_distribution<int>(0, static_cast<int>(pool.size()) - 1)(rng))];
  PredGenOptions o;
  o.predicates = pool_signature();
  o.variables = {"x", "y"};
  o.max_modal_depth = 2;
  o.max_size = 9;
  return universal_closure(random_pred(rng, o));
}

}  // namespace

PreservationReport pred_truth_preservation_test(const PredKKMorphism& m, int samples, std::uint64_t seed) {
  if (auto v = check_kk_morphism(m); !v) throw PreconditionError("morphism not verified: " + v.condition);
  Rng rng(seed);
  const auto pool = preservation_pool();
  PreservationReport r;
  for (int i = 0; i < samples; ++i) {
    const auto xi = random_pred_valuation(m.target.domains(), pool_signature(), rng);
    const PredKripkeModel tm(m.target, xi);
    const PredKripkeModel sm(m.source, pullback_kk(xi, m));
    const Formula a = sample_formula(rng, pool);
    const World u = std::uniform_int_distribution<World>(0, m.source.frame().size() - 1)(rng);
    ++r.samples;
    if (eval_pred_kripke(sm, u, a) == eval_pred_kripke(tm, m.phi0[static_cast<std::size_t>(u)], a)) {
      ++r.passed;
    } else if (!r.first_failure) {
      r.first_failure = to_string(a) + " at " + m.source.frame().name(u);
    }
  }
  return r;
}

PreservationReport pred_truth_preservation_test(const PredNKMorphism& m, int samples, std::uint64_t seed) {
  if (auto v = check_nk_morphism(m); !v) throw PreconditionError("morphism not verified: " + v.condition);
  Rng rng(seed);
  const auto pool = preservation_pool();
  PreservationReport r;
  for (int i = 0; i < samples; ++i) {
    const auto xi = random_pred_valuation(m.target.domains(), pool_signature(), rng);
    const PredKripkeModel tm(m.target, xi);
    const PredNModel sm(m.source, pullback_nk(xi, m));
    const Formula a = sample_formula(rng, pool);
    const Point x = std::uniform_int_distribution<Point>(0, m.source.space().size() - 1)(rng);
    ++r.samples;
    if (eval_pred_nbhd(sm, x, a) == eval_pred_kripke(tm, m.phi0[static_cast<std::size_t>(x)], a)) {
      ++r.passed;
    } else if (!r.first_failure) {
      r.first_failure = to_string(a) + " at " + m.source.space().name(x);
    }
  }
  return r;
}

// ---------------------------------------------------------------------------

namespace {

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

// Random rooted frame on n worlds: a random spanning tree from world 0 plus
// extra edges.
KripkeFrame random_rooted_frame(Rng& rng, int n, const std::string& prefix) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back(prefix + std::to_string(i));
  std::vector<Edge> edges;
  for (int i = 1; i < n; ++i) edges.emplace_back(uniform(rng, 0, i - 1), i);
  std::bernoulli_distribution coin(0.3);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (coin(rng)) edges.emplace_back(a, b);
  return KripkeFrame(std::move(names), edges, 0);
}

// Expanding domains over elements e0..e{k-1}: grow along a BFS order.
std::vector<Domain> random_expanding_domains(Rng& rng, const KripkeFrame& f, int elements, bool constant) {
  Domain all;
  for (int i = 0; i < elements; ++i) all.insert("e" + std::to_string(i));
  std::vector<Domain> dom(static_cast<std::size_t>(f.size()));
  if (constant) {
    std::fill(dom.begin(), dom.end(), all);
    return dom;
  }
  // Worlds on a cycle share a domain; simplest sound choice is to give every
  // world reachable from w at least D_w by propagating to a fixpoint.
  std::bernoulli_distribution coin(0.5);
  for (World w = 0; w < f.size(); ++w) {
    dom[static_cast<std::size_t>(w)].insert("e0");
    for (const auto& e : all)
      if (coin(rng)) dom[static_cast<std::size_t>(w)].insert(e);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [u, v] : f.edges())
      for (const auto& e : dom[static_cast<std::size_t>(u)])
        if (dom[static_cast<std::size_t>(v)].insert(e).second) changed = true;
  }
  return dom;
}

struct CopiedFrame {
  KripkeFrame frame;
  std::vector<World> map;
};

// Each target world gets 1-2 copies; edges respect the map and every copy
// lifts every target edge.
CopiedFrame copy_frame(Rng& rng, const KripkeFrame& g) {
  std::vector<std::string> names;
  std::vector<World> map;
  std::vector<std::vector<World>> copies(static_cast<std::size_t>(g.size()));
  for (World w = 0; w < g.size(); ++w) {
    const int c = uniform(rng, 1, 2);
    for (int i = 0; i < c; ++i) {
      copies[static_cast<std::size_t>(w)].push_back(static_cast<World>(names.size()));
      names.push_back(g.name(w) + "_" + std::to_string(i));
      map.push_back(w);
    }
  }
  std::vector<Edge> edges;
  std::bernoulli_distribution coin(0.4);
  for (std::size_t x = 0; x < names.size(); ++x) {
    for (World v : members(g.successors(map[x]))) {
      const auto& cs = copies[static_cast<std::size_t>(v)];
      edges.emplace_back(static_cast<World>(x), cs[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(cs.size()) - 1))]);
      for (World y : cs)
        if (coin(rng)) edges.emplace_back(static_cast<World>(x), y);
    }
  }
  // copy 0 of the root reaches everything it maps onto; keep the frame
  // unrooted so stray copies are allowed.
  return {KripkeFrame(std::move(names), edges), std::move(map)};
}

}  // namespace

PredKKMorphism random_kk_instance(Rng& rng, int max_worlds, int max_elements) {
  const KripkeFrame g = random_rooted_frame(rng, uniform(rng, 1, max_worlds), "w");
  const int elements = uniform(rng, 1, max_elements);
  const PredKripkeFrame target(g, random_expanding_domains(rng, g, elements, false));
  const auto copied = copy_frame(rng, g);
  // global surjection from source elements onto target elements
  const Domain tu = target.universe();
  const std::vector<Element> telems(tu.begin(), tu.end());
  std::map<Element, Element> gmap;
  int idx = 0;
  for (const auto& e : telems) gmap["s" + std::to_string(idx++)] = e;
  const int extra = uniform(rng, 0, 2);
  for (int i = 0; i < extra; ++i)
    gmap["s" + std::to_string(idx++)] = telems[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(telems.size()) - 1))];
  std::vector<Domain> sdom;
  std::vector<ElementMap> phi1;
  for (World x = 0; x < copied.frame.size(); ++x) {
    Domain d;
    ElementMap m;
    const auto& td = target.domain(copied.map[static_cast<std::size_t>(x)]);
    for (const auto& [s, t] : gmap)
      if (td.count(t)) {
        d.insert(s);
        m[s] = t;
      }
    sdom.push_back(std::move(d));
    phi1.push_back(std::move(m));
  }
  return {PredKripkeFrame(copied.frame, std::move(sdom)), target, copied.map, std::move(phi1)};
}

PredNKMorphism random_nk_instance(Rng& rng, int max_worlds, int max_elements) {
  const KripkeFrame g = random_rooted_frame(rng, uniform(rng, 1, max_worlds), "w");
  const int elements = uniform(rng, 1, max_elements);
  const PredKripkeFrame target(g, random_expanding_domains(rng, g, elements, true));
  const auto copied = copy_frame(rng, g);
  const Domain tu = target.universe();
  const std::vector<Element> telems(tu.begin(), tu.end());
  ElementMap gmap;
  int idx = 0;
  for (const auto& e : telems) gmap["s" + std::to_string(idx++)] = e;
  const int extra = uniform(rng, 0, 2);
  for (int i = 0; i < extra; ++i)
    gmap["s" + std::to_string(idx++)] = telems[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(telems.size()) - 1))];
  Domain dstar;
  for (const auto& [s, t] : gmap) dstar.insert(s);
  PredNKMorphism m{PredNFrame(nf_from_kripke(copied.frame), dstar), target, copied.map, {}};
  m.phi1.assign(static_cast<std::size_t>(copied.frame.size()), gmap);
  return m;
}

}  // namespace mlwb
