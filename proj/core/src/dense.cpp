#include "mlwb/dense.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace mlwb {

StopWord::StopWord(std::vector<Letter> letters) : letters_(std::move(letters)) {
  while (!letters_.empty() && letters_.back() == kStop) letters_.pop_back();
}

std::vector<Letter> StopWord::restrict(int k) const {
  std::vector<Letter> out(static_cast<std::size_t>(std::max(k, 0)), kStop);
  for (int i = 0; i < k && i < st(); ++i) out[static_cast<std::size_t>(i)] = letters_[static_cast<std::size_t>(i)];
  return out;
}

std::vector<Letter> StopWord::nonzero() const {
  std::vector<Letter> out;
  for (Letter l : letters_)
    if (l != kStop) out.push_back(l);
  return out;
}

StopWord StopWord::then(int zeros, const std::vector<Letter>& tail) const {
  std::vector<Letter> out = letters_;
  out.insert(out.end(), static_cast<std::size_t>(std::max(zeros, 0)), kStop);
  out.insert(out.end(), tail.begin(), tail.end());
  return StopWord(std::move(out));
}

StopWord parse_stopword(std::string_view text, const KripkeFrame& f) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty() || text == "eps") return StopWord();
  std::vector<Letter> letters;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('.', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view tok = text.substr(start, end - start);
    if (tok.empty()) throw ParseError("empty letter in word", start);
    if (tok == "0") {
      letters.push_back(kStop);
    } else {
      auto w = f.find(tok);
      if (!w) throw ParseError("unknown world '" + std::string(tok) + "' in word", start);
      letters.push_back(world_letter(*w));
    }
    start = end + 1;
  }
  return StopWord(std::move(letters));
}

std::string to_string(const StopWord& w, const KripkeFrame& f) {
  if (w.empty()) return "eps";
  std::string out;
  for (std::size_t i = 0; i < w.letters().size(); ++i) {
    if (i) out += '.';
    const Letter l = w.letters()[i];
    if (l == kStop) {
      out += '0';
    } else if (l > 0 && letter_world(l) < f.size()) {
      out += f.name(letter_world(l));
    } else {
      out += "?" + std::to_string(l);
    }
  }
  return out;
}

WordCheck validate_stopword(const StopWord& w, const KripkeFrame& f) {
  if (!f.root()) return {false, "frame has no root"};
  World at = *f.root();
  for (Letter l : w.letters()) {
    if (l == kStop) continue;
    if (l < 0 || letter_world(l) >= f.size()) return {false, "letter outside the frame"};
    const World next = letter_world(l);
    if (!f.related(at, next))
      return {false, f.name(next) + " is not a successor of " + f.name(at)};
    at = next;
  }
  return {};
}

std::vector<World> f0(const StopWord& w, const KripkeFrame& f) {
  if (auto v = validate_stopword(w, f); !v) throw InputError("not a path with stops: " + v.reason);
  std::vector<World> path{*f.root()};
  for (Letter l : w.nonzero()) path.push_back(letter_world(l));
  return path;
}

std::string path_text(const std::vector<World>& path, const KripkeFrame& f) {
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) out += " R ";
    out += f.name(path[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------

DenseFrame::DenseFrame(KripkeFrame base, DenseBounds bounds, std::optional<HornTheory> gamma)
    : base_(std::move(base)), bounds_(bounds), gamma_(std::move(gamma)) {
  if (!base_.root()) throw InputError("dense frame needs a rooted base frame");
  if (bounds_.depth < 1 || bounds_.k_max < 0 || bounds_.j_max < 0)
    throw InputError("dense frame bounds must be non-negative (depth at least 1)");
  if (gamma_) {
    for (const auto& s : gamma_->sentences)
      if (!chain_sentence_k(s))
        throw InputError("Horn sentence outside the chain class: " + to_string(s));
  }
  unravel_ = unravel(base_, bounds_.depth);
  sharp_ = gamma_ ? gamma_close(unravel_.frame, *gamma_) : unravel_.frame;
  for (std::size_t i = 0; i < unravel_.paths.size(); ++i) index_.emplace(unravel_.paths[i], static_cast<int>(i));
}

std::optional<int> DenseFrame::path_index(const std::vector<World>& path) const {
  auto it = index_.find(path);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::vector<World>> DenseFrame::steps(const std::vector<World>& path, bool* complete) const {
  std::vector<std::vector<World>> out;
  if (complete) *complete = true;
  if (path.empty()) throw InputError("empty path");
  if (!gamma_) {
    for (World b : members(base_.successors(path.back()))) out.push_back({b});
    return out;
  }
  const auto idx = path_index(path);
  if (!idx) throw BoundsExceeded("path of length " + std::to_string(path.size()) +
                                 " lies outside the truncated unravelling (depth " +
                                 std::to_string(bounds_.depth) + ")");
  for (World t : members(sharp_.successors(*idx))) {
    const auto& q = unravel_.paths[static_cast<std::size_t>(t)];
    if (q.size() < path.size() || !std::equal(path.begin(), path.end(), q.begin()))
      throw Error("closure edge leaves the ancestor order");
    out.emplace_back(q.begin() + static_cast<std::ptrdiff_t>(path.size()), q.end());
  }
  if (complete) {
    bool deep = false;
    for (const auto& s : gamma_->sentences)
      if (chain_sentence_k(s).value_or(0) >= 2) deep = true;
    for (std::size_t i = 0; i < unravel_.paths.size() && *complete; ++i) {
      const auto& q = unravel_.paths[i];
      if (static_cast<int>(q.size()) < bounds_.depth) continue;
      if (q.size() < path.size() || !std::equal(path.begin(), path.end(), q.begin())) continue;
      if (base_.successors(q.back()).none()) continue;
      if (deep || q.size() == path.size()) *complete = false;
    }
  }
  return out;
}

bool DenseFrame::related(const std::vector<World>& from, const std::vector<World>& to) const {
  if (!gamma_) {
    return to.size() == from.size() + 1 && std::equal(from.begin(), from.end(), to.begin()) &&
           base_.related(from.back(), to.back());
  }
  const auto a = path_index(from);
  const auto b = path_index(to);
  if (!a || !b) throw BoundsExceeded("path outside the truncated unravelling");
  return sharp_.related(*a, *b);
}

// ---------------------------------------------------------------------------

bool is_member_uk(const StopWord& beta, const StopWord& alpha, int k, const DenseFrame& d) {
  const int m = std::max(k, alpha.st());
  if (beta.restrict(m) != alpha.restrict(m)) return false;
  return d.related(f0(alpha, d.base()), f0(beta, d.base()));
}

StopWord TailFamily::member(const std::vector<int>& gaps) const {
  std::vector<Letter> w = prefix;
  for (std::size_t i = 0; i < extension.size(); ++i) {
    w.insert(w.end(), static_cast<std::size_t>(i < gaps.size() ? gaps[i] : 0), kStop);
    w.push_back(world_letter(extension[i]));
  }
  return StopWord(std::move(w));
}

namespace {

// All gap vectors of the given length with sum <= budget.
void for_each_gaps(std::size_t len, int budget, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> g(len, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i == len) {
      fn(g);
      return;
    }
    for (int j = 0; j <= left; ++j) {
      g[i] = j;
      rec(i + 1, left - j);
    }
    g[i] = 0;
  };
  rec(0, budget);
}

std::vector<Letter> to_letters(const std::vector<World>& e) {
  std::vector<Letter> out;
  for (World w : e) out.push_back(world_letter(w));
  return out;
}

}  // namespace

UkEnumeration uk_members(const StopWord& alpha, int k, const DenseFrame& d, int j_max) {
  UkEnumeration out;
  const int m = std::max(k, alpha.st());
  const auto path = f0(alpha, d.base());
  const auto exts = d.steps(path, &out.complete);
  for (const auto& e : exts) {
    TailFamily fam{alpha.restrict(m), e};
    if (e.empty()) {
      out.members.push_back(alpha);
    } else {
      for_each_gaps(e.size(), j_max, [&](const std::vector<int>& g) { out.members.push_back(fam.member(g)); });
    }
    out.families.push_back(std::move(fam));
  }
  return out;
}

int density_witness(const StopWord& alpha, int n, const StopWord& beta, const DenseFrame& d) {
  if (!is_member_uk(beta, alpha, n, d)) throw PreconditionError("word is not a member of U_n(alpha)");
  if (beta == alpha) throw PreconditionError("alpha itself belongs to every U_k(alpha)");
  const int k = beta.st();
  if (is_member_uk(beta, alpha, k + 1, d)) throw Error("density witness failed to exclude the member");
  return k;
}

// ---------------------------------------------------------------------------

bool pattern_member(const LetterPattern& p, const StopWord& w, const DenseFrame& d) {
  if (const auto* fs = std::get_if<FiniteSet>(&p)) return fs->words.count(w) > 0;
  if (const auto* zp = std::get_if<ZeroParity>(&p)) {
    const auto& l = w.letters();
    if (l.empty() || l.back() != world_letter(zp->letter)) return false;
    if (!std::all_of(l.begin(), l.end() - 1, [](Letter x) { return x == kStop; })) return false;
    return static_cast<int>(l.size() - 1) % 2 == zp->parity;
  }
  const auto& pf = std::get<PathFactored>(p);
  return pf.paths.count(f0(w, d.base())) > 0;
}

bool eval_dense_atom(const DenseModel& m, const StopWord& w, const std::string& letter) {
  auto it = m.valuation.find(letter);
  if (it == m.valuation.end()) throw InputError("no valuation entry for letter '" + letter + "'");
  return pattern_member(it->second, w, m.frame);
}

namespace {

TailPattern constant(bool v) { return {0, v, v}; }

// Gaps of w after alpha along extension e, if w = alpha 0^{g1} e1 ... 0^{gr} er.
std::optional<int> family_gap_sum(const StopWord& w, const StopWord& alpha, const std::vector<World>& e) {
  const auto& l = w.letters();
  const auto& a = alpha.letters();
  if (l.size() < a.size() || !std::equal(a.begin(), a.end(), l.begin())) return std::nullopt;
  int zeros = 0;
  std::size_t next = 0;
  for (std::size_t i = a.size(); i < l.size(); ++i) {
    if (l[i] == kStop) {
      ++zeros;
      continue;
    }
    if (next >= e.size() || l[i] != world_letter(e[next])) return std::nullopt;
    ++next;
  }
  if (next != e.size()) return std::nullopt;
  return zeros;
}

TailPattern atom_tail(const LetterPattern& p, const StopWord& alpha, const std::vector<World>& e,
                      const DenseFrame& d) {
  if (e.empty()) return constant(pattern_member(p, alpha, d));
  if (const auto* fs = std::get_if<FiniteSet>(&p)) {
    TailPattern t = constant(false);
    for (const auto& w : fs->words)
      if (auto g = family_gap_sum(w, alpha, e)) t.threshold = std::max(t.threshold, *g + 1);
    return t;
  }
  if (const auto* zp = std::get_if<ZeroParity>(&p)) {
    if (alpha.empty() && e.size() == 1 && e[0] == zp->letter) return {0, zp->parity == 0, zp->parity == 1};
    return constant(false);
  }
  auto path = f0(alpha, d.base());
  path.insert(path.end(), e.begin(), e.end());
  return constant(std::get<PathFactored>(p).paths.count(path) > 0);
}

class DenseEvaluator {
 public:
  explicit DenseEvaluator(const DenseModel& m) : m_(m), d_(m.frame) {}

  bool exact(const StopWord& w, const Formula& a) const {
    switch (a.kind()) {
      case Formula::Kind::Falsum:
        return false;
      case Formula::Kind::Atom:
        if (!a.args().empty()) throw InputError("predicate atom in a propositional evaluation");
        return eval_dense_atom(m_, w, a.name());
      case Formula::Kind::Implies:
        return !exact(w, a.lhs()) || exact(w, a.rhs());
      default:
        throw Error("exact evaluation needs a modal-free formula");
    }
  }

  TailPattern tail(const Formula& a, const StopWord& alpha, const std::vector<World>& e) const {
    switch (a.kind()) {
      case Formula::Kind::Falsum:
        return constant(false);
      case Formula::Kind::Atom: {
        if (!a.args().empty()) throw InputError("predicate atom in a propositional evaluation");
        auto it = m_.valuation.find(a.name());
        if (it == m_.valuation.end()) throw InputError("no valuation entry for letter '" + a.name() + "'");
        return atom_tail(it->second, alpha, e, d_);
      }
      case Formula::Kind::Implies: {
        const TailPattern l = tail(a.lhs(), alpha, e);
        const TailPattern r = tail(a.rhs(), alpha, e);
        return {std::max(l.threshold, r.threshold), !l.even || r.even, !l.odd || r.odd};
      }
      default:
        throw Error("tail patterns need a modal-free formula");
    }
  }

  Verdict eval(const StopWord& alpha, const Formula& a) {
    switch (a.kind()) {
      case Formula::Kind::Falsum:
        return {false, true, ""};
      case Formula::Kind::Atom:
        return {exact(alpha, a), true, ""};
      case Formula::Kind::Implies: {
        const Verdict l = eval(alpha, a.lhs());
        const Verdict r = eval(alpha, a.rhs());
        if (l.certified && !l.value) return {true, true, l.witness};
        if (r.certified && r.value) return {true, true, r.witness};
        std::string w = l.witness;
        if (!r.witness.empty()) w += (w.empty() ? "" : "; ") + r.witness;
        return {!l.value || r.value, l.certified && r.certified, w};
      }
      case Formula::Kind::Box:
        if (a.modality() != 1) throw InputError("dense frames carry a single modality");
        return modal_depth(a.body()) == 0 ? box_exact(alpha, a.body()) : box_bounded(alpha, a.body());
      case Formula::Kind::Forall:
        throw InputError("quantifier in a propositional evaluation");
    }
    return {};
  }

 private:
  Verdict box_exact(const StopWord& alpha, const Formula& body) {
    const auto& f = d_.base();
    bool complete = true;
    const auto exts = d_.steps(f0(alpha, f), &complete);
    const int st = alpha.st();
    int threshold = 0;
    for (const auto& e : exts) {
      const TailPattern t = tail(body, alpha, e);
      if (t.eventually(true)) {
        threshold = std::max(threshold, t.threshold);
        continue;
      }
      // A falsifying family meets every U_k.
      std::string w;
      for (int k = 0; k <= d_.bounds().k_max; ++k) {
        StopWord beta = alpha;
        if (!e.empty()) {
          int i = std::max({0, k - st, t.threshold});
          if (t.even && (i % 2 == 0)) ++i;
          if (t.odd && (i % 2 == 1)) ++i;
          beta = alpha.then(i, to_letters(e));
        }
        if (k) w += ", ";
        w += "U_" + std::to_string(k) + " has " + to_string(beta, f);
      }
      return {false, true, to_string(body) + " fails in every U_k: " + w};
    }
    const int k = st + threshold;
    if (!complete) return {true, false, "k=" + std::to_string(k) + " on the truncated closure"};
    if (exts.empty()) return {true, true, "U_k empty for every k"};
    return {true, true, "k=" + std::to_string(k)};
  }

  Verdict box_bounded(const StopWord& alpha, const Formula& body) {
    std::map<StopWord, bool> memo;
    for (int k = 0; k <= d_.bounds().k_max; ++k) {
      const auto en = uk_members(alpha, k, d_, d_.bounds().j_max);
      bool all = true;
      for (const auto& beta : en.members) {
        auto it = memo.find(beta);
        if (it == memo.end()) it = memo.emplace(beta, eval(beta, body).value).first;
        if (!it->second) {
          all = false;
          break;
        }
      }
      if (all) return {true, false, "k=" + std::to_string(k) + " checked for gaps up to j_max"};
    }
    return {false, false, "no k <= k_max within gaps up to j_max"};
  }

  const DenseModel& m_;
  const DenseFrame& d_;
};

}  // namespace

Verdict bounded_eval(const DenseModel& m, const StopWord& alpha, const Formula& a) {
  if (auto v = validate_stopword(alpha, m.frame.base()); !v) throw InputError("not a path with stops: " + v.reason);
  DenseEvaluator ev(m);
  return ev.eval(alpha, a);
}

// ---------------------------------------------------------------------------

KripkeFrame next_frame(int worlds) {
  if (worlds < 1) throw InputError("next frame needs at least one world");
  std::vector<std::string> names{"e"};
  std::vector<Edge> edges;
  for (int i = 1; i < worlds; ++i) {
    names.push_back(std::string(static_cast<std::size_t>(i), '1'));
    edges.emplace_back(i - 1, i);
  }
  return KripkeFrame(std::move(names), edges, 0);
}

CounterexampleReport counterexample_g(int k_max) {
  if (k_max < 2) throw PreconditionError("counterexample needs k_max >= 2");
  CounterexampleReport r;
  r.frame = next_frame(4);
  DenseBounds b;
  b.k_max = k_max;
  b.depth = 3;
  DenseModel m{DenseFrame(r.frame, b), {}};
  const World one = r.frame.index("1");
  m.valuation["p"] = ZeroParity{one, 0};
  const Formula p = Formula::atom("p");
  const StopWord eps;
  r.box_p = bounded_eval(m, eps, Formula::box(p));
  r.dia_p_and_dia_not_p =
      bounded_eval(m, eps, Formula::conjunction(Formula::diamond(p), Formula::diamond(Formula::negation(p))));
  const Formula axiom = Formula::implies(Formula::diamond(p), Formula::box(p));
  r.dia_p_implies_box_p = bounded_eval(m, eps, axiom);
  bool witnesses_ok = true;
  for (int k = 0; k <= k_max; ++k) {
    const StopWord even = eps.then(k % 2 == 0 ? k : k + 1, {world_letter(one)});
    const StopWord odd = eps.then(k % 2 == 0 ? k + 1 : k, {world_letter(one)});
    witnesses_ok = witnesses_ok && is_member_uk(even, eps, k, m.frame) && is_member_uk(odd, eps, k, m.frame) &&
                   eval_dense_atom(m, even, "p") && !eval_dense_atom(m, odd, "p");
    r.witnesses.emplace_back(even, odd);
  }
  r.kripke_valid = brute_validity(next_frame(std::min(k_max + 2, 16)), axiom);
  r.ok = witnesses_ok && r.kripke_valid && r.box_p.certified && !r.box_p.value &&
         r.dia_p_and_dia_not_p.certified && r.dia_p_and_dia_not_p.value && r.dia_p_implies_box_p.certified &&
         !r.dia_p_implies_box_p.value;
  return r;
}

// ---------------------------------------------------------------------------

CheckReport f0_image_check(const StopWord& alpha, int k, const DenseFrame& d) {
  CheckReport r;
  const auto& f = d.base();
  const auto path = f0(alpha, f);
  const auto exts = d.steps(path);
  std::set<std::vector<World>> image;
  for (const auto& e : exts) {
    auto q = path;
    q.insert(q.end(), e.begin(), e.end());
    image.insert(q);
    const StopWord beta = alpha.then(std::max(0, k - alpha.st()), to_letters(e));
    ++r.checked;
    if (is_member_uk(beta, alpha, k, d) && f0(beta, f) == q) {
      ++r.passed;
    } else {
      r.failures.push_back("witness " + to_string(beta, f) + " for " + path_text(q, f) + " not in U_" +
                           std::to_string(k));
    }
  }
  const auto en = uk_members(alpha, k, d, d.bounds().j_max);
  for (const auto& beta : en.members) {
    ++r.checked;
    if (image.count(f0(beta, f)) && is_member_uk(beta, alpha, k, d)) {
      ++r.passed;
    } else {
      r.failures.push_back("member " + to_string(beta, f) + " maps outside R(f0(alpha))");
    }
  }
  return r;
}

StopWord random_stopword(const DenseFrame& d, Rng& rng, int max_zeros) {
  const auto& f = d.base();
  const int max_letters = std::max(0, d.bounds().depth - 2);
  const int len = std::uniform_int_distribution<int>(0, max_letters)(rng);
  std::uniform_int_distribution<int> zeros(0, max_zeros);
  std::vector<Letter> out;
  World at = *f.root();
  for (int i = 0; i < len; ++i) {
    const auto succ = members(f.successors(at));
    if (succ.empty()) break;
    at = succ[static_cast<std::size_t>(std::uniform_int_distribution<int>(0, static_cast<int>(succ.size()) - 1)(rng))];
    out.insert(out.end(), static_cast<std::size_t>(zeros(rng)), kStop);
    out.push_back(world_letter(at));
  }
  return StopWord(std::move(out));
}

CheckReport f0_pmorphism_check(const DenseFrame& d, int samples, std::uint64_t seed) {
  CheckReport r;
  const auto& f = d.base();
  for (const auto& path : d.unravelling().paths) {
    const StopWord w(to_letters(std::vector<World>(path.begin() + 1, path.end())));
    ++r.checked;
    if (f0(w, f) == path) {
      ++r.passed;
    } else {
      r.failures.push_back("no preimage for " + path_text(path, f));
    }
  }
  Rng rng(seed);
  for (int i = 0; i < samples; ++i) {
    const StopWord alpha = random_stopword(d, rng);
    const int k = std::uniform_int_distribution<int>(0, d.bounds().k_max)(rng);
    const auto sub = f0_image_check(alpha, k, d);
    ++r.checked;
    if (sub.ok()) {
      ++r.passed;
    } else {
      r.failures.push_back("at " + to_string(alpha, f) + ", k=" + std::to_string(k) + ": " + sub.failures.front());
    }
  }
  return r;
}

CheckReport chain_collapse_check(const StopWord& alpha, int m, int n, const DenseFrame& d, int samples,
                                 std::uint64_t seed) {
  if (n < 1) throw InputError("chain length must be at least 1");
  if (auto inc = check_axiom_inclusion(d.sharp(), n); !inc)
    throw PreconditionError("truncated closed unravelling fails R^" + std::to_string(n) + " ⊆ R");
  CheckReport r;
  const auto& f = d.base();
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    StopWord cur = alpha;
    bool stuck = false;
    for (int i = 0; i < n; ++i) {
      std::vector<StopWord> ms;
      try {
        ms = uk_members(cur, m, d, d.bounds().j_max).members;
      } catch (const BoundsExceeded&) {
        stuck = true;
        break;
      }
      if (ms.empty()) {
        stuck = true;
        break;
      }
      cur = ms[static_cast<std::size_t>(std::uniform_int_distribution<int>(0, static_cast<int>(ms.size()) - 1)(rng))];
    }
    if (stuck) continue;
    ++r.checked;
    if (is_member_uk(cur, alpha, m, d)) {
      ++r.passed;
    } else {
      r.failures.push_back("chain end " + to_string(cur, f) + " not in U_" + std::to_string(m) + "(" +
                           to_string(alpha, f) + ")");
    }
  }
  return r;
}

}  // namespace mlwb
