#include "mlwb/entangle.hpp"

#include <algorithm>
#include <functional>

namespace mlwb {

DomainAlphabet::DomainAlphabet(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw InputError("element alphabet must be nonempty");
  std::set<std::string> seen;
  for (const auto& l : labels_) {
    if (l.empty() || l == "0" || l.find('.') != std::string::npos)
      throw InputError("bad element label '" + l + "'");
    if (!seen.insert(l).second) throw InputError("duplicate element label '" + l + "'");
  }
}

DomainAlphabet DomainAlphabet::standard(int n) {
  if (n < 1) throw InputError("element alphabet must be nonempty");
  std::vector<std::string> labels;
  for (int i = 1; i <= n; ++i) labels.push_back(std::to_string(i));
  return DomainAlphabet(std::move(labels));
}

const std::string& DomainAlphabet::label(Letter l) const {
  const int i = index(l);
  if (l >= 0 || i >= size()) throw InputError("letter " + std::to_string(l) + " outside the element alphabet");
  return labels_[static_cast<std::size_t>(i)];
}

std::optional<Letter> DomainAlphabet::find(std::string_view label) const {
  for (int i = 0; i < size(); ++i)
    if (labels_[static_cast<std::size_t>(i)] == label) return letter(i);
  return std::nullopt;
}

std::vector<World> p1(const EntangledWord& x, const KripkeFrame& f) {
  if (!f.root()) throw InputError("frame has no root");
  std::vector<World> path{*f.root()};
  for (Letter l : x)
    if (is_world_letter(l)) path.push_back(letter_world(l));
  return path;
}

std::vector<Letter> p2(const EntangledWord& x) {
  std::vector<Letter> out;
  for (Letter l : x)
    if (is_domain_letter(l)) out.push_back(l);
  return out;
}

Letter pi(const EntangledWord& x) {
  if (x.empty()) throw InputError("pi is undefined on the empty word");
  return x.back();
}

bool is_entangled(const KripkeFrame& f, const EntangledWord& x) {
  if (!f.root()) return false;
  World at = *f.root();
  for (Letter l : x) {
    if (l == kStop) return false;
    if (is_domain_letter(l)) continue;
    const World w = letter_world(l);
    if (w >= f.size() || !f.related(at, w)) return false;
    at = w;
  }
  return true;
}

std::vector<EntangledWord> entangle_enumerate(const KripkeFrame& f, const DomainAlphabet& s, int max_len) {
  if (!f.root()) throw InputError("frame has no root");
  std::vector<EntangledWord> out;
  EntangledWord cur;
  std::function<void(World)> rec = [&](World at) {
    out.push_back(cur);
    if (static_cast<int>(cur.size()) == max_len) return;
    for (World w : members(f.successors(at))) {
      cur.push_back(world_letter(w));
      rec(w);
      cur.pop_back();
    }
    for (int i = 0; i < s.size(); ++i) {
      cur.push_back(s.letter(i));
      rec(at);
      cur.pop_back();
    }
  };
  rec(*f.root());
  return out;
}

namespace {

// Interleavings of the W letters `ws` with q Σ₂ letters; when `end_in_sigma`
// the last letter is from Σ₂.
void interleave(const std::vector<Letter>& ws, int q, bool end_in_sigma, const DomainAlphabet& s,
                const std::function<void(const EntangledWord&)>& fn) {
  EntangledWord cur;
  std::function<void(std::size_t, int)> rec = [&](std::size_t wi, int left) {
    if (wi == ws.size() && left == 0) {
      fn(cur);
      return;
    }
    if (wi < ws.size() && !(end_in_sigma && left == 0)) {
      cur.push_back(ws[wi]);
      rec(wi + 1, left);
      cur.pop_back();
    }
    if (left > 0) {
      for (int i = 0; i < s.size(); ++i) {
        cur.push_back(s.letter(i));
        rec(wi, left - 1);
        cur.pop_back();
      }
    }
  };
  rec(0, q);
}

std::vector<Letter> path_letters(const std::vector<World>& path, std::size_t count) {
  std::vector<Letter> out;
  for (std::size_t i = 1; i <= count && i < path.size(); ++i) out.push_back(world_letter(path[i]));
  return out;
}

std::vector<Letter> w_letters(const EntangledWord& x) {
  std::vector<Letter> out;
  for (Letter l : x)
    if (is_world_letter(l)) out.push_back(l);
  return out;
}

}  // namespace

std::vector<EntangledWord> fiber(const std::vector<World>& path, const DomainAlphabet& s, int max_len) {
  if (path.empty()) throw InputError("empty path");
  const auto ws = path_letters(path, path.size() - 1);
  std::vector<EntangledWord> out;
  for (int q = 0; static_cast<int>(ws.size()) + q <= max_len; ++q)
    interleave(ws, q, false, s, [&](const EntangledWord& x) { out.push_back(x); });
  return out;
}

EntangledWord canonicalize(const EntangledWord& x) {
  EntangledWord c = x;
  while (!c.empty() && is_world_letter(c.back())) c.pop_back();
  return c;
}

bool equiv(const EntangledWord& x, const EntangledWord& y) { return canonicalize(x) == canonicalize(y); }

bool equiv_oracle(const KripkeFrame& f, const EntangledWord& x, const EntangledWord& y) {
  for (std::size_t i = 0; i <= x.size(); ++i) {
    if (!std::all_of(x.begin() + static_cast<std::ptrdiff_t>(i), x.end(), is_world_letter)) continue;
    const EntangledWord tt(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(i));
    if (!is_entangled(f, tt)) continue;
    if (y.size() < i || !std::equal(tt.begin(), tt.end(), y.begin())) continue;
    if (std::all_of(y.begin() + static_cast<std::ptrdiff_t>(i), y.end(), is_world_letter)) return true;
  }
  return false;
}

std::set<EntangledWord> dsharp(const std::vector<World>& path, const DomainAlphabet& s, int sigma_max) {
  if (path.empty()) throw InputError("empty path");
  std::set<EntangledWord> out{EntangledWord{}};
  for (std::size_t p = 0; p < path.size(); ++p) {
    const auto ws = path_letters(path, p);
    for (int q = 1; q <= sigma_max; ++q)
      interleave(ws, q, true, s, [&](const EntangledWord& x) { out.insert(x); });
  }
  return out;
}

bool in_dsharp(const EntangledWord& c, const std::vector<World>& path) {
  const auto ws = w_letters(c);
  if (ws.size() + 1 > path.size()) return false;
  for (std::size_t i = 0; i < ws.size(); ++i)
    if (ws[i] != world_letter(path[i + 1])) return false;
  return true;
}

MonotonicityReport domain_monotonicity_check(const std::vector<World>& from, const std::vector<World>& to,
                                             const DomainAlphabet& s, int sigma_max) {
  if (from.empty() || to.size() < from.size() || !std::equal(from.begin(), from.end(), to.begin()))
    throw PreconditionError("second path must extend the first");
  MonotonicityReport r;
  const auto a = dsharp(from, s, sigma_max);
  const auto b = dsharp(to, s, sigma_max);
  const auto rest = path_letters(to, to.size() - 1);
  for (const auto& c : a) {
    // witness y·c from the inclusion argument: complete c to a fiber word of
    // `from`, append the extension, and check its class lies in D♯_to.
    EntangledWord y = c;
    const auto have = w_letters(c).size();
    for (std::size_t i = have; i < rest.size(); ++i) y.push_back(rest[i]);
    if (!b.count(canonicalize(y)) || canonicalize(y) != c) {
      r.included = false;
      r.missing = c;
      return r;
    }
  }
  for (const auto& c : b)
    if (!a.count(c)) {
      r.strict_witness = c;
      break;
    }
  return r;
}

std::string word_text(const EntangledWord& x, const KripkeFrame& f, const DomainAlphabet& s, std::string_view sep) {
  if (x.empty()) return sep.empty() ? "" : "eps";
  std::string out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) out += sep;
    const Letter l = x[i];
    if (l == kStop) {
      out += '0';
    } else if (is_domain_letter(l)) {
      out += s.label(l);
    } else {
      out += f.name(letter_world(l));
    }
  }
  return out;
}

std::string class_text(const EntangledWord& c, const KripkeFrame& f, const DomainAlphabet& s, std::string_view sep) {
  return "[" + (c.empty() ? std::string() : word_text(c, f, s, sep)) + "]";
}

namespace {

std::vector<Letter> parse_letters(std::string_view text, const KripkeFrame& f, const DomainAlphabet& s,
                                  bool allow_stop) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  std::vector<Letter> out;
  if (text.empty() || text == "eps") return out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('.', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view tok = text.substr(start, end - start);
    if (tok.empty()) throw ParseError("empty letter in word", start);
    if (tok == "0") {
      if (!allow_stop) throw ParseError("stops are not letters of entangled words", start);
      out.push_back(kStop);
    } else if (auto w = f.find(tok)) {
      out.push_back(world_letter(*w));
    } else if (auto l = s.find(tok)) {
      out.push_back(*l);
    } else {
      throw ParseError("unknown letter '" + std::string(tok) + "'", start);
    }
    start = end + 1;
  }
  return out;
}

}  // namespace

EntangledWord parse_entangled(std::string_view text, const KripkeFrame& f, const DomainAlphabet& s) {
  return parse_letters(text, f, s, false);
}

StopWord parse_mixed_stopword(std::string_view text, const KripkeFrame& f, const DomainAlphabet& s) {
  return StopWord(parse_letters(text, f, s, true));
}

std::string mixed_text(const StopWord& w, const KripkeFrame& f, const DomainAlphabet& s, std::string_view sep) {
  if (w.empty()) return "eps";
  return word_text(w.letters(), f, s, sep);
}

EntangledWord h(const StopWord& alpha, const StopWord& gamma) {
  for (Letter l : alpha.letters())
    if (l < 0) throw InputError("h: first argument must be a word over worlds and stops");
  for (Letter l : gamma.letters())
    if (l > 0) throw InputError("h: second argument must be a word over elements and stops");
  EntangledWord out;
  int i = 0;
  int j = 0;
  while (i < alpha.st()) {
    const Letter c = gamma.at(j);
    if (c != kStop) {
      out.push_back(c);
      ++j;
      continue;
    }
    if (alpha.at(i) != kStop) out.push_back(alpha.at(i));
    ++i;
    ++j;
  }
  for (; j < gamma.st(); ++j)
    if (gamma.at(j) != kStop) out.push_back(gamma.at(j));
  return out;
}

StopWord t(const StopWord& alpha, const EntangledWord& y) {
  for (Letter l : alpha.letters())
    if (l < 0) throw InputError("t: first argument must be a word over worlds and stops");
  if (alpha.nonzero() != w_letters(y))
    throw InputError("t: the world letters of the element word do not follow the path of alpha");
  std::vector<Letter> out;
  int i = 0;
  std::size_t j = 0;
  while (j < y.size()) {
    const Letter c = y[j];
    if (c == kStop) throw InputError("t: entangled words carry no stops");
    if (is_domain_letter(c)) {
      out.push_back(c);
      ++j;
    } else if (alpha.at(i) == c) {
      out.push_back(c);
      ++i;
      ++j;
    } else {
      // compatibility guarantees α's head is a stop here
      out.push_back(kStop);
      ++i;
    }
  }
  StopWord result(std::move(out));
  if (result.nonzero() != y) throw Error("t: zero-dropped result differs from the element word");
  return result;
}

StopWord zero_pattern(const StopWord& mixed) {
  std::vector<Letter> out = mixed.letters();
  for (auto& l : out)
    if (is_world_letter(l)) l = kStop;
  return StopWord(std::move(out));
}

EntangledWord xi(const StopWord& alpha, const StopWord& gamma) { return canonicalize(h(alpha, gamma)); }

CheckReport xi_surjectivity_check(const StopWord& alpha, const KripkeFrame& f, const DomainAlphabet& s,
                                  int sigma_max) {
  CheckReport r;
  const auto path = f0(alpha, f);
  const auto rest = path_letters(path, path.size() - 1);
  for (const auto& c : dsharp(path, s, sigma_max)) {
    EntangledWord y = c;
    for (std::size_t i = w_letters(c).size(); i < rest.size(); ++i) y.push_back(rest[i]);
    const StopWord gamma = zero_pattern(t(alpha, y));
    ++r.checked;
    if (xi(alpha, gamma) == c) {
      ++r.passed;
    } else {
      r.failures.push_back("class " + class_text(c, f, s) + " missed by gamma " + mixed_text(gamma, f, s));
    }
  }
  return r;
}

CheckReport xi_locality_check(const StopWord& alpha, const StopWord& gamma, const DenseFrame& d, int j_max) {
  CheckReport r;
  const int m = gamma.st() + alpha.st();
  const auto here = xi(alpha, gamma);
  for (const auto& beta : uk_members(alpha, m, d, j_max).members) {
    ++r.checked;
    if (xi(beta, gamma) == here) {
      ++r.passed;
    } else {
      r.failures.push_back("xi changes at " + to_string(beta, d.base()));
    }
  }
  return r;
}

// ---------------------------------------------------------------------------

PsiFamily::PsiFamily(PredKripkeFrame target, DomainAlphabet alphabet)
    : target_(std::move(target)), alphabet_(std::move(alphabet)) {
  if (!target_.frame().root()) throw InputError("predicate frame needs a root");
}

void PsiFamily::check_capacity(int sigma_max) const {
  const auto& f = target_.frame();
  const auto root_size = target_.domain(*f.root()).size();
  if (root_size > 1 && (sigma_max < 1 || root_size > static_cast<std::size_t>(alphabet_.size()) + 1))
    throw PreconditionError("element alphabet too small for the root domain");
  for (const auto& [u, v] : f.edges()) {
    const auto grow = target_.domain(v).size() - target_.domain(u).size();
    if (grow > 0 && (sigma_max < 1 || grow > static_cast<std::size_t>(alphabet_.size())))
      throw PreconditionError("element alphabet too small for the domain growth at " + f.name(v));
  }
}

Element PsiFamily::operator()(const std::vector<World>& path, const EntangledWord& c) const {
  if (!in_dsharp(c, path)) throw InputError("class outside the domain of the path");
  const auto& f = target_.frame();
  const auto ws = w_letters(c);
  if (ws.empty()) {
    const auto& dom = target_.domain(*f.root());
    std::size_t rank = dom.size();
    if (c.empty()) rank = 0;
    else if (c.size() == 1) rank = static_cast<std::size_t>(alphabet_.index(c[0])) + 1;
    if (rank < dom.size()) return *std::next(dom.begin(), static_cast<std::ptrdiff_t>(rank));
    return *dom.begin();
  }
  const World parent = ws.size() == 1 ? *f.root() : letter_world(ws[ws.size() - 2]);
  const World here = letter_world(ws.back());
  std::vector<Element> fresh;
  std::set_difference(target_.domain(here).begin(), target_.domain(here).end(), target_.domain(parent).begin(),
                      target_.domain(parent).end(), std::back_inserter(fresh));
  if (c.size() == ws.size() + 1 && std::equal(ws.begin(), ws.end(), c.begin())) {
    const auto rank = static_cast<std::size_t>(alphabet_.index(c.back()));
    if (rank < fresh.size()) return fresh[rank];
  }
  return *target_.domain(parent).begin();
}

PsiMorphism build_psi(const PredKripkeFrame& pf, const DenseFrame& d, const DomainAlphabet& s, int sigma_max) {
  if (!(pf.frame() == d.base())) throw InputError("predicate frame and dense base differ");
  const PsiFamily psi(pf, s);
  psi.check_capacity(sigma_max);
  const auto& u = d.unravelling();
  const auto& f = d.base();
  std::vector<Domain> domains;
  std::vector<ElementMap> phi1;
  for (const auto& path : u.paths) {
    Domain dom;
    ElementMap m;
    for (const auto& c : dsharp(path, s, sigma_max)) {
      const auto text = class_text(c, f, s);
      dom.insert(text);
      m[text] = psi(path, c);
    }
    domains.push_back(std::move(dom));
    phi1.push_back(std::move(m));
  }
  PsiMorphism out{{PredKripkeFrame(d.sharp(), std::move(domains)), pf, u.projection, std::move(phi1)}, u.interior};
  return out;
}

}  // namespace mlwb
