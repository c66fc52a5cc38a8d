#include "mlwb/horn.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace mlwb {

HornTheory HornTheory::parse(std::string_view text) {
  HornTheory t;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string_view line = text.substr(start, end - start);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (line.find_first_not_of(" \t\r") != std::string_view::npos) {
      try {
        t.sentences.push_back(parse_horn(line));
      } catch (const ParseError& e) {
        throw ParseError("line " + std::to_string(line_no) + ": " + e.what(), start + e.position());
      }
    }
    start = end + 1;
  }
  return t;
}

namespace {

enum class Tri { False, True, Unknown };

Tri eval_body(const HornBody& b, const KripkeFrame& f, const std::vector<World>& a) {
  switch (b.kind) {
    case HornBody::Kind::True:
      return Tri::True;
    case HornBody::Kind::Atom: {
      const World u = a[static_cast<std::size_t>(b.atom.from)];
      const World v = a[static_cast<std::size_t>(b.atom.to)];
      if (u < 0 || v < 0) return Tri::Unknown;
      return f.related(u, v) ? Tri::True : Tri::False;
    }
    case HornBody::Kind::And: {
      Tri r = Tri::True;
      for (const auto& c : b.children) {
        const Tri t = eval_body(c, f, a);
        if (t == Tri::False) return Tri::False;
        if (t == Tri::Unknown) r = Tri::Unknown;
      }
      return r;
    }
    case HornBody::Kind::Or: {
      Tri r = Tri::False;
      for (const auto& c : b.children) {
        const Tri t = eval_body(c, f, a);
        if (t == Tri::True) return Tri::True;
        if (t == Tri::Unknown) r = Tri::Unknown;
      }
      return r;
    }
  }
  return Tri::Unknown;
}

// Extends the partial assignment a[from..] until the body is true.
bool satisfy_body(const HornBody& b, const KripkeFrame& f, std::vector<World>& a, std::size_t from) {
  const Tri t = eval_body(b, f, a);
  if (t == Tri::True) return true;
  if (t == Tri::False || from >= a.size()) return false;
  for (World w = 0; w < f.size(); ++w) {
    a[from] = w;
    if (satisfy_body(b, f, a, from + 1)) return true;
  }
  a[from] = -1;
  return false;
}

bool head_holds(const HornSentence& s, const KripkeFrame& f, const std::vector<World>& a) {
  return f.related(a[static_cast<std::size_t>(s.head().from)], a[static_cast<std::size_t>(s.head().to)]);
}

}  // namespace

std::optional<std::vector<World>> horn_violation(const KripkeFrame& f, const HornSentence& s) {
  std::vector<World> a(s.variables().size(), -1);
  for (World x = 0; x < f.size(); ++x) {
    for (World y = 0; y < f.size(); ++y) {
      std::fill(a.begin(), a.end(), -1);
      a[0] = x;
      a[1] = y;
      if (head_holds(s, f, a)) continue;
      if (satisfy_body(s.body(), f, a, 2)) {
        for (auto& w : a)
          if (w < 0) w = 0;
        return a;
      }
    }
  }
  return std::nullopt;
}

bool eval_horn(const KripkeFrame& f, const HornSentence& s) { return !horn_violation(f, s); }

bool eval_horn(const KripkeFrame& f, const HornTheory& g) {
  return std::all_of(g.sentences.begin(), g.sentences.end(),
                     [&](const HornSentence& s) { return eval_horn(f, s); });
}

KripkeFrame gamma_close(const KripkeFrame& f, const HornTheory& g, int* rounds) {
  KripkeFrame cur = f;
  int passes = 0;
  const int limit = f.size() * f.size() + 1;
  for (;;) {
    std::vector<Edge> added;
    for (const auto& s : g.sentences) {
      if (auto k = chain_sentence_k(s)) {
        // R^k ⊆ R (or reflexivity) via set images instead of assignment search
        for (World x = 0; x < cur.size(); ++x)
          for (World y : members(cur.power_image(x, *k) - cur.successors(x)))
            if (std::find(added.begin(), added.end(), Edge{x, y}) == added.end())
              added.emplace_back(x, y);
        continue;
      }
      std::vector<World> a(s.variables().size(), -1);
      for (World x = 0; x < cur.size(); ++x) {
        for (World y = 0; y < cur.size(); ++y) {
          std::fill(a.begin(), a.end(), -1);
          a[0] = x;
          a[1] = y;
          const Edge e{a[static_cast<std::size_t>(s.head().from)], a[static_cast<std::size_t>(s.head().to)]};
          if (cur.related(e.first, e.second)) continue;
          if (std::find(added.begin(), added.end(), e) != added.end()) continue;
          if (satisfy_body(s.body(), cur, a, 2)) added.push_back(e);
        }
      }
    }
    if (added.empty()) break;
    ++passes;
    if (passes > limit) throw Error("Horn closure failed to converge");
    auto edges = cur.edges();
    edges.insert(edges.end(), added.begin(), added.end());
    cur = cur.with_edges(edges);
  }
  if (rounds) *rounds = passes;
  return cur;
}

MinimalityReport closure_minimality_check(const KripkeFrame& f, const HornTheory& g, int trials,
                                          std::uint64_t seed) {
  MinimalityReport r;
  const KripkeFrame closed = gamma_close(f, g);
  auto pair_name = [&](const Edge& e) { return "(" + f.name(e.first) + ", " + f.name(e.second) + ")"; };
  for (const auto& e : closed.edges()) {
    if (f.related(e.first, e.second)) continue;
    ++r.added;
    auto rest = closed.edges();
    rest.erase(std::find(rest.begin(), rest.end(), e));
    if (eval_horn(closed.with_edges(rest), g))
      r.violations.push_back("removing " + pair_name(e) + " still satisfies the theory");
  }
  std::mt19937_64 rng(seed);
  const int n = f.size();
  for (int t = 0; t < trials && n > 0; ++t) {
    auto edges = f.edges();
    const double density = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    std::bernoulli_distribution coin(density);
    for (World a = 0; a < n; ++a)
      for (World b = 0; b < n; ++b)
        if (!f.related(a, b) && coin(rng)) edges.emplace_back(a, b);
    const KripkeFrame sup = f.with_edges(edges);
    ++r.supersets_tried;
    if (!eval_horn(sup, g)) continue;
    ++r.supersets_satisfying;
    for (const auto& e : closed.edges()) {
      if (!sup.related(e.first, e.second)) {
        r.violations.push_back("satisfying superset misses " + pair_name(e));
        break;
      }
    }
  }
  return r;
}

LiftVerdict closure_pmorphism_lift_check(const KripkeMorphism& f, const HornTheory& g) {
  LiftVerdict v;
  if (!f.verified()) {
    v.outcome = LiftVerdict::Outcome::PreconditionFailed;
    v.message = "map is not a p-morphism: " + f.verdict.condition + " " + f.verdict.witness;
    return v;
  }
  for (const auto& s : g.sentences) {
    if (!eval_horn(f.target, s)) {
      v.outcome = LiftVerdict::Outcome::PreconditionFailed;
      v.message = "target does not satisfy " + to_string(s);
      return v;
    }
  }
  v.detail = check_pmorphism(f.map, gamma_close(f.source, g), f.target);
  if (!v.detail.verified) {
    v.outcome = LiftVerdict::Outcome::Violated;
    v.message = v.detail.condition + " " + v.detail.witness;
  }
  return v;
}

std::optional<HornSentence> axiom_to_horn(int k) {
  if (k < 0) throw InputError("k must be non-negative");
  if (k == 1) return std::nullopt;
  if (k == 0) return HornSentence({"x", "y"}, HornBody{}, HornAtom{0, 0});
  std::vector<std::string> vars{"x", "y"};
  for (int i = 1; i < k; ++i) vars.push_back("z" + std::to_string(i));
  HornBody body{HornBody::Kind::And, {}, {}};
  // chain x, z1, ..., z_{k-1}, y
  std::vector<int> chain{0};
  for (int i = 1; i < k; ++i) chain.push_back(i + 1);
  chain.push_back(1);
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    HornBody atom;
    atom.kind = HornBody::Kind::Atom;
    atom.atom = {chain[i], chain[i + 1]};
    body.children.push_back(atom);
  }
  return HornSentence(std::move(vars), std::move(body), HornAtom{0, 1});
}

HornTheory axioms_to_theory(const std::vector<int>& ks) {
  HornTheory t;
  for (int k : ks)
    if (auto s = axiom_to_horn(k)) t.sentences.push_back(*s);
  return t;
}

std::optional<int> chain_sentence_k(const HornSentence& s) {
  const auto& b = s.body();
  if (b.kind == HornBody::Kind::True) {
    if (s.head().from == s.head().to) return 0;
    return std::nullopt;
  }
  if (!(s.head().from == 0 && s.head().to == 1)) return std::nullopt;
  std::vector<HornAtom> atoms;
  if (b.kind == HornBody::Kind::Atom) {
    atoms.push_back(b.atom);
  } else if (b.kind == HornBody::Kind::And) {
    for (const auto& c : b.children) {
      if (c.kind != HornBody::Kind::Atom) return std::nullopt;
      atoms.push_back(c.atom);
    }
  } else {
    return std::nullopt;
  }
  const int nvars = static_cast<int>(s.variables().size());
  const int k = static_cast<int>(atoms.size());
  if (nvars != k + 1) return std::nullopt;
  // atoms must form a path x -> ... -> y through distinct intermediate variables
  std::vector<bool> used(static_cast<std::size_t>(nvars), false);
  int at = 0;
  used[0] = true;
  std::vector<bool> taken(atoms.size(), false);
  for (int step = 0; step < k; ++step) {
    bool moved = false;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      if (taken[i] || atoms[i].from != at) continue;
      const int next = atoms[i].to;
      const bool last = step == k - 1;
      if (last ? next != 1 : (next == 1 || next == 0 || used[static_cast<std::size_t>(next)])) continue;
      taken[i] = true;
      used[static_cast<std::size_t>(next)] = true;
      at = next;
      moved = true;
      break;
    }
    if (!moved) return std::nullopt;
  }
  if (k == 1) return std::nullopt;  // x R y => x R y is trivial, not produced by axiom_to_horn
  return k;
}

}  // namespace mlwb
