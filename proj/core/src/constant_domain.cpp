#include "mlwb/constant_domain.hpp"

#include <algorithm>
#include <memory>

namespace mlwb {

StopWord random_individual(const DomainAlphabet& s, Rng& rng, int letters, int max_zeros) {
  const int n = std::uniform_int_distribution<int>(0, std::max(letters, 0))(rng);
  std::uniform_int_distribution<int> zeros(0, std::max(max_zeros, 0));
  std::uniform_int_distribution<int> pick(0, s.size() - 1);
  std::vector<Letter> out;
  for (int i = 0; i < n; ++i) {
    out.insert(out.end(), static_cast<std::size_t>(zeros(rng)), kStop);
    out.push_back(s.letter(pick(rng)));
  }
  return StopWord(std::move(out));
}

Element eta(const PsiFamily& psi, const StopWord& alpha, const StopWord& gamma, const KripkeFrame& f) {
  return psi(f0(alpha, f), xi(alpha, gamma));
}

DensePredModel pullback_dense(const PredKripkeModel& target, const DenseFrame& d, const DomainAlphabet& s,
                              const DenseDomainBounds& b) {
  const auto& pf = target.frame();
  if (!(pf.frame() == d.base())) throw InputError("predicate frame and dense base differ");
  auto psi = std::make_shared<const PsiFamily>(pf, s);
  psi->check_capacity(b.sigma_max);
  auto xi_val = std::make_shared<const PredValuation>(target.valuation());
  const KripkeFrame base = d.base();
  DenseAtomFn atom = [psi, xi_val, base](const StopWord& point, const std::string& letter,
                                         const std::vector<StopWord>& args) {
    auto it = xi_val->find(letter);
    if (it == xi_val->end()) throw InputError("no valuation entry for letter '" + letter + "'");
    const auto path = f0(point, base);
    Tuple tuple;
    for (const auto& g : args) tuple.push_back((*psi)(path, xi(point, g)));
    return it->second[static_cast<std::size_t>(path.back())].count(tuple) > 0;
  };
  DensePredModel m{d, s, b, std::move(atom), {}};
  // constant d ↦ a single-letter individual whose class ψ_ε sends to d
  const std::vector<World> root{*pf.frame().root()};
  for (const auto& c : dsharp(root, s, std::max(b.sigma_max, 1))) {
    const Element e = (*psi)(root, c);
    if (!m.constants.count(e)) m.constants.emplace(e, StopWord(c));
  }
  return m;
}

namespace {

std::uint64_t fnv(std::string_view s, std::uint64_t h = 1469598103934665603ULL) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

using Env = std::map<std::string, StopWord>;

class DensePredEvaluator {
 public:
  explicit DensePredEvaluator(const DensePredModel& m) : m_(m), f_(m.frame.base()) {}

  Verdict eval(const StopWord& b, const Formula& a, Env& env) const {
    switch (a.kind()) {
      case Formula::Kind::Falsum:
        return {false, true, ""};
      case Formula::Kind::Atom:
        return atom(b, a, env);
      case Formula::Kind::Implies: {
        const Verdict l = eval(b, a.lhs(), env);
        if (!l.value && l.certified) return {true, true, ""};
        const Verdict r = eval(b, a.rhs(), env);
        if (r.value && r.certified) return {true, true, ""};
        Verdict out{!l.value || r.value, l.certified && r.certified, ""};
        if (!out.value) out.witness = r.witness;
        return out;
      }
      case Formula::Kind::Forall:
        return forall(b, a, env);
      case Formula::Kind::Box:
        if (a.modality() != 1) throw InputError("single-relation frame; modality index must be 1");
        return box(b, a.body(), env);
    }
    return {};
  }

 private:
  Verdict atom(const StopWord& b, const Formula& a, const Env& env) const {
    std::vector<StopWord> args;
    for (const auto& term : a.args()) {
      if (term.is_variable()) {
        auto it = env.find(term.name);
        if (it == env.end()) throw InputError("free variable '" + term.name + "' during evaluation");
        args.push_back(it->second);
      } else {
        auto it = m_.constants.find(term.name);
        if (it == m_.constants.end()) throw InputError("constant '" + term.name + "' has no individual");
        args.push_back(it->second);
      }
    }
    return {m_.atom(b, a.name(), args), true, ""};
  }

  std::string env_text(const Env& env) const {
    std::string s;
    for (const auto& [k, v] : env) s += k + "=" + mixed_text(v, f_, m_.alphabet) + ";";
    return s;
  }

  Verdict forall(const StopWord& b, const Formula& a, Env& env) const {
    const std::string var = a.name();
    const Formula body = a.body();
    const auto saved = env.count(var) ? std::optional<StopWord>(env.at(var)) : std::nullopt;
    const auto path = f0(b, f_);
    std::vector<Letter> rest;
    for (std::size_t i = 1; i < path.size(); ++i) rest.push_back(world_letter(path[i]));

    std::vector<StopWord> individuals;
    for (const auto& c : dsharp(path, m_.alphabet, m_.bounds.sigma_max)) {
      EntangledWord y = c;
      std::size_t have = 0;
      for (Letter l : c)
        if (is_world_letter(l)) ++have;
      y.insert(y.end(), rest.begin() + static_cast<std::ptrdiff_t>(have), rest.end());
      individuals.push_back(zero_pattern(t(b, y)));
    }
    Rng rng(m_.bounds.seed ^ fnv(to_string(b, f_) + "|" + to_string(a) + "|" + env_text(env)));
    for (int i = 0; i < m_.bounds.saturation_samples; ++i)
      individuals.push_back(random_individual(m_.alphabet, rng, m_.bounds.sigma_max, b.st() + 2));

    Verdict out{true, true, ""};
    for (const auto& g : individuals) {
      env[var] = g;
      const Verdict v = eval(b, body, env);
      if (!v.value && v.certified) {
        out = {false, true, var + " := " + mixed_text(g, f_, m_.alphabet) + (v.witness.empty() ? "" : "; " + v.witness)};
        break;
      }
      if (!v.value) out.value = false;
      if (!v.certified) out.certified = false;
    }
    if (saved) env[var] = *saved; else env.erase(var);
    return out;
  }

  Verdict box(const StopWord& b, const Formula& body, Env& env) const {
    std::vector<std::vector<World>> exts;
    bool complete = true;
    try {
      exts = m_.frame.steps(f0(b, f_), &complete);
    } catch (const BoundsExceeded& e) {
      return {false, false, std::string("bounds exhausted: ") + e.what()};
    }
    int gap = 0;
    for (const auto& [k, v] : env) gap = std::max(gap, v.st());
    for (const auto& [k, v] : m_.constants) gap = std::max(gap, v.st());

    Verdict out{true, complete, ""};
    for (const auto& e : exts) {
      if (e.empty()) {
        const Verdict v = eval(b, body, env);
        if (!v.value && v.certified) return {false, true, "at " + to_string(b, f_) + (v.witness.empty() ? "" : "; " + v.witness)};
        if (!v.value) out.value = false;
        if (!v.certified) out.certified = false;
        continue;
      }
      // truth per first gap g, g+1, ...; later gaps range over {0, 1}
      std::vector<bool> seen;
      bool fam_cert = true;
      std::string fam_witness;
      for (int w = 0; w < std::max(m_.bounds.window, 1); ++w) {
        bool value = true;
        const std::size_t later = e.size() - 1;
        for (std::size_t mask = 0; mask < (std::size_t{1} << later); ++mask) {
          std::vector<Letter> letters = b.letters();
          letters.insert(letters.end(), static_cast<std::size_t>(gap + w), kStop);
          letters.push_back(world_letter(e[0]));
          for (std::size_t i = 1; i < e.size(); ++i) {
            if (mask & (std::size_t{1} << (i - 1))) letters.push_back(kStop);
            letters.push_back(world_letter(e[i]));
          }
          const StopWord member(std::move(letters));
          const Verdict v = eval(member, body, env);
          if (!v.certified) fam_cert = false;
          if (!v.value && value) {
            value = false;
            fam_witness = "at " + to_string(member, f_) + (v.witness.empty() ? "" : "; " + v.witness);
          }
        }
        seen.push_back(value);
      }
      const bool constant = std::all_of(seen.begin(), seen.end(), [&](bool x) { return x == seen.front(); });
      const bool eventual = seen.back();
      if (!eventual && fam_cert && constant) return {false, true, fam_witness};
      if (!eventual) {
        out.value = false;
        out.witness = fam_witness;
      }
      if (!fam_cert || !constant) out.certified = false;
    }
    return out;
  }

  const DensePredModel& m_;
  const KripkeFrame& f_;
};

void merge(CheckReport& into, const CheckReport& from, const std::string& where) {
  into.checked += from.checked;
  into.passed += from.passed;
  for (const auto& f : from.failures) into.failures.push_back(where + ": " + f);
}

}  // namespace

Verdict eval_pred_dense(const DensePredModel& m, const StopWord& alpha, const Formula& a) {
  if (!is_closed(a)) throw InputError("formula has free variables; take its universal closure first");
  if (auto v = validate_stopword(alpha, m.frame.base()); !v) throw InputError("not a point: " + v.reason);
  Env env;
  return DensePredEvaluator(m).eval(alpha, a, env);
}

DenseMorphismReport check_dense_nk(const DenseFrame& d, const PsiFamily& psi, const DenseDomainBounds& b,
                                   int samples) {
  DenseMorphismReport r;
  const auto& f = d.base();
  const auto& s = psi.alphabet();
  r.f0 = f0_pmorphism_check(d, samples, b.seed);
  Rng rng(b.seed);
  const int j_max = std::min(d.bounds().j_max, 2);
  for (int i = 0; i < samples; ++i) {
    const StopWord alpha = random_stopword(d, rng);
    const std::string where = to_string(alpha, f);
    merge(r.surjectivity, xi_surjectivity_check(alpha, f, s, b.sigma_max), where);

    // η_α onto D_{π f0 α}
    const auto path = f0(alpha, f);
    std::set<Element> hit;
    for (const auto& c : dsharp(path, s, b.sigma_max)) hit.insert(psi(path, c));
    ++r.composite.checked;
    if (hit == psi.target().domain(path.back())) {
      ++r.composite.passed;
    } else {
      r.composite.failures.push_back(where + ": composite misses part of the target domain");
    }

    const StopWord gamma = random_individual(s, rng, b.sigma_max + 1, 3);
    const std::string gwhere = where + ", gamma " + mixed_text(gamma, f, s);
    merge(r.locality, xi_locality_check(alpha, gamma, d, j_max), gwhere);
    const int m = gamma.st() + alpha.st();
    const Element here = eta(psi, alpha, gamma, f);
    for (const auto& beta : uk_members(alpha, m, d, j_max).members) {
      ++r.composite.checked;
      if (eta(psi, beta, gamma, f) == here) {
        ++r.composite.passed;
      } else {
        r.composite.failures.push_back(gwhere + ": composite image changes at " + to_string(beta, f));
      }
    }
  }
  return r;
}

}  // namespace mlwb
