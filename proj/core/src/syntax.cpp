#include "mlwb/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <utility>

#include "mlwb/error.hpp"

namespace mlwb {

struct Formula::Node {
  Kind kind = Kind::Falsum;
  std::string name;
  std::vector<Term> args;
  int modality = 0;
  std::shared_ptr<const Node> left;
  std::shared_ptr<const Node> right;
};

namespace {

const std::shared_ptr<const Formula::Node>& falsum_node() {
  static const auto node = std::make_shared<const Formula::Node>();
  return node;
}

bool equal_nodes(const Formula::Node* a, const Formula::Node* b) {
  if (a == b) return true;
  if (a->kind != b->kind || a->name != b->name || a->modality != b->modality ||
      a->args != b->args)
    return false;
  if (static_cast<bool>(a->left) != static_cast<bool>(b->left)) return false;
  if (static_cast<bool>(a->right) != static_cast<bool>(b->right)) return false;
  if (a->left && !equal_nodes(a->left.get(), b->left.get())) return false;
  if (a->right && !equal_nodes(a->right.get(), b->right.get())) return false;
  return true;
}

}  // namespace

Formula Formula::falsum() { return Formula(falsum_node()); }

Formula Formula::atom(std::string letter, std::vector<Term> args) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Atom;
  n->name = std::move(letter);
  n->args = std::move(args);
  return Formula(std::move(n));
}

Formula Formula::implies(Formula lhs, Formula rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Implies;
  n->left = std::move(lhs.node_);
  n->right = std::move(rhs.node_);
  return Formula(std::move(n));
}

Formula Formula::box(Formula body, int modality) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Box;
  n->modality = modality;
  n->left = std::move(body.node_);
  return Formula(std::move(n));
}

Formula Formula::forall(std::string variable, Formula body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Forall;
  n->name = std::move(variable);
  n->left = std::move(body.node_);
  return Formula(std::move(n));
}

Formula Formula::verum() { return negation(falsum()); }
Formula Formula::negation(Formula a) { return implies(std::move(a), falsum()); }
Formula Formula::conjunction(Formula a, Formula b) {
  return negation(implies(std::move(a), negation(std::move(b))));
}
Formula Formula::disjunction(Formula a, Formula b) {
  return implies(negation(std::move(a)), std::move(b));
}
Formula Formula::diamond(Formula a, int modality) {
  return negation(box(negation(std::move(a)), modality));
}
Formula Formula::exists(std::string variable, Formula body) {
  return negation(forall(std::move(variable), negation(std::move(body))));
}

Formula::Kind Formula::kind() const { return node_->kind; }
const std::string& Formula::name() const { return node_->name; }
std::span<const Term> Formula::args() const { return node_->args; }
int Formula::modality() const { return node_->modality; }

Formula Formula::lhs() const { return Formula(node_->left); }
Formula Formula::rhs() const { return Formula(node_->right); }
Formula Formula::body() const { return Formula(node_->left); }

bool operator==(const Formula& a, const Formula& b) {
  return equal_nodes(a.node_.get(), b.node_.get());
}

// ---------------------------------------------------------------------------
// Lexer

namespace {

enum class Tok {
  Ident, Constant, Number, LParen, RParen, LBracket, RBracket, Comma, Dot,
  Tilde, Amp, Bar, Arrow, DArrow, End
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
    std::size_t start = i;
    auto single = [&](Tok t) { out.push_back({t, std::string(1, c), start}); ++i; };
    switch (c) {
      case '(': single(Tok::LParen); continue;
      case ')': single(Tok::RParen); continue;
      case '[': single(Tok::LBracket); continue;
      case ']': single(Tok::RBracket); continue;
      case ',': single(Tok::Comma); continue;
      case '.': single(Tok::Dot); continue;
      case '~': single(Tok::Tilde); continue;
      case '&': single(Tok::Amp); continue;
      case '|': single(Tok::Bar); continue;
      default: break;
    }
    if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
      out.push_back({Tok::Arrow, "->", start});
      i += 2;
      continue;
    }
    if (c == '=' && i + 1 < s.size() && s[i + 1] == '>') {
      out.push_back({Tok::DArrow, "=>", start});
      i += 2;
      continue;
    }
    if (c == '$') {
      ++i;
      std::size_t b = i;
      while (i < s.size()) {
        if (ident_char(s[i]) || s[i] == '-') { ++i; continue; }
        // dots inside a constant name, as in `$a.0.b`
        if (s[i] == '.' && i + 1 < s.size() && ident_char(s[i + 1])) { ++i; continue; }
        break;
      }
      if (b == i) throw ParseError("empty constant name", start);
      out.push_back({Tok::Constant, std::string(s.substr(b, i - b)), start});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      out.push_back({Tok::Number, std::string(s.substr(start, i - start)), start});
      continue;
    }
    if (ident_start(c)) {
      while (i < s.size() && ident_char(s[i])) ++i;
      out.push_back({Tok::Ident, std::string(s.substr(start, i - start)), start});
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", start);
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

bool is_keyword(const std::string& w) {
  return w == "false" || w == "true" || w == "box" || w == "dia" || w == "forall" ||
         w == "exists";
}

class Cursor {
 public:
  explicit Cursor(std::string_view text) : toks_(lex(text)) {}
  const Token& peek() const { return toks_[i_]; }
  bool at(Tok t) const { return peek().kind == t; }
  bool at_word(std::string_view w) const { return at(Tok::Ident) && peek().text == w; }
  Token take() { return toks_[i_ < toks_.size() - 1 ? i_++ : i_]; }
  bool accept(Tok t) {
    if (!at(t)) return false;
    take();
    return true;
  }
  Token expect(Tok t, const char* what) {
    if (!at(t)) fail(std::string("expected ") + what);
    return take();
  }
  [[noreturn]] void fail(const std::string& msg) const {
    const auto& t = peek();
    std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(msg + ", found " + found, t.pos);
  }

 private:
  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

// ---------------------------------------------------------------------------
// Formula parser

class FormulaParser {
 public:
  FormulaParser(std::string_view text, bool predicate, ParseOptions opts)
      : cur_(text), pred_(predicate), opts_(opts) {
    if (opts_.modalities < 1) throw InputError("modality count must be at least 1");
  }

  Formula run() {
    Formula f = implication();
    if (!cur_.at(Tok::End)) cur_.fail("expected end of formula");
    return f;
  }

 private:
  Formula implication() {
    Formula lhs = disjunction();
    if (cur_.accept(Tok::Arrow)) return Formula::implies(lhs, implication());
    return lhs;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (cur_.accept(Tok::Bar)) f = Formula::disjunction(f, conjunction());
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (cur_.accept(Tok::Amp)) f = Formula::conjunction(f, unary());
    return f;
  }

  int modality_index() {
    if (!cur_.accept(Tok::LBracket)) return 1;
    const Token n = cur_.expect(Tok::Number, "modality index");
    int idx = 0;
    try {
      idx = std::stoi(n.text);
    } catch (const std::exception&) {
      throw ParseError("modality index out of range", n.pos);
    }
    if (idx < 1 || idx > opts_.modalities)
      throw ParseError("unknown modality index " + n.text, n.pos);
    cur_.expect(Tok::RBracket, "']'");
    return idx;
  }

  Formula quantified(bool universal) {
    const std::size_t kw_pos = cur_.take().pos;
    if (!pred_) throw ParseError("quantifier in a propositional formula", kw_pos);
    const Token v = cur_.expect(Tok::Ident, "variable");
    if (is_keyword(v.text)) throw ParseError("keyword used as variable", v.pos);
    if (std::find(bound_.begin(), bound_.end(), v.text) != bound_.end())
      throw ParseError("variable '" + v.text + "' shadows an enclosing binder", v.pos);
    cur_.expect(Tok::Dot, "'.' after quantified variable");
    bound_.push_back(v.text);
    Formula body = unary();
    bound_.pop_back();
    return universal ? Formula::forall(v.text, body) : Formula::exists(v.text, body);
  }

  Formula unary() {
    if (cur_.accept(Tok::Tilde)) return Formula::negation(unary());
    if (cur_.at_word("box")) {
      cur_.take();
      const int m = modality_index();
      return Formula::box(unary(), m);
    }
    if (cur_.at_word("dia")) {
      cur_.take();
      const int m = modality_index();
      return Formula::diamond(unary(), m);
    }
    if (cur_.at_word("forall")) return quantified(true);
    if (cur_.at_word("exists")) return quantified(false);
    if (cur_.at_word("false")) { cur_.take(); return Formula::falsum(); }
    if (cur_.at_word("true")) { cur_.take(); return Formula::verum(); }
    if (cur_.accept(Tok::LParen)) {
      Formula f = implication();
      cur_.expect(Tok::RParen, "')'");
      return f;
    }
    if (cur_.at(Tok::Ident)) return atom();
    cur_.fail("expected a formula");
  }

  Formula atom() {
    const Token name = cur_.take();
    std::vector<Term> args;
    if (cur_.at(Tok::LParen)) {
      if (!pred_) cur_.fail("arguments on a propositional letter");
      cur_.take();
      do {
        if (cur_.at(Tok::Constant)) {
          args.push_back(Term::constant(cur_.take().text));
        } else {
          const Token v = cur_.expect(Tok::Ident, "variable or constant");
          if (is_keyword(v.text)) throw ParseError("keyword used as variable", v.pos);
          args.push_back(Term::variable(v.text));
        }
      } while (cur_.accept(Tok::Comma));
      cur_.expect(Tok::RParen, "')'");
    }
    const int arity = static_cast<int>(args.size());
    auto [it, fresh] = arity_.emplace(name.text, arity);
    if (!fresh && it->second != arity)
      throw ParseError("letter '" + name.text + "' used with arity " +
                           std::to_string(arity) + " and " + std::to_string(it->second),
                       name.pos);
    return Formula::atom(name.text, std::move(args));
  }

  Cursor cur_;
  bool pred_;
  ParseOptions opts_;
  std::vector<std::string> bound_;
  std::map<std::string, int> arity_;
};

}  // namespace

Formula parse_prop(std::string_view text, ParseOptions options) {
  return FormulaParser(text, false, options).run();
}

Formula parse_pred(std::string_view text, ParseOptions options) {
  return FormulaParser(text, true, options).run();
}

// ---------------------------------------------------------------------------
// Printer

namespace {

bool is_neg(const Formula& f) { return f.is(Formula::Kind::Implies) && f.rhs().is(Formula::Kind::Falsum); }

enum Prec { kImp = 1, kOr = 2, kAnd = 3, kUnary = 4 };

std::string term_text(const Term& t) { return t.is_variable() ? t.name : "$" + t.name; }

std::string modal_prefix(const char* op, int m) {
  std::string s = op;
  if (m != 1) s += "[" + std::to_string(m) + "]";
  return s + " ";
}

std::string print(const Formula& f, int ctx);

std::string wrap(std::string s, int prec, int ctx) {
  return prec < ctx ? "(" + s + ")" : s;
}

std::string print(const Formula& f, int ctx) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Falsum:
      return "false";
    case K::Atom: {
      std::string s = f.name();
      if (!f.args().empty()) {
        s += "(";
        bool first = true;
        for (const auto& t : f.args()) {
          if (!first) s += ", ";
          first = false;
          s += term_text(t);
        }
        s += ")";
      }
      return s;
    }
    case K::Box:
      return modal_prefix("box", f.modality()) + print(f.body(), kUnary);
    case K::Forall:
      return "forall " + f.name() + ". " + print(f.body(), kUnary);
    case K::Implies:
      break;
  }
  const Formula l = f.lhs();
  const Formula r = f.rhs();
  if (r.is(K::Falsum)) {
    if (l.is(K::Falsum)) return "true";
    // (X -> (Y -> false)) -> false
    if (l.is(K::Implies) && is_neg(l.rhs()))
      return wrap(print(l.lhs(), kAnd) + " & " + print(l.rhs().lhs(), kUnary), kAnd, ctx);
    if (l.is(K::Box) && is_neg(l.body()))
      return modal_prefix("dia", l.modality()) + print(l.body().lhs(), kUnary);
    if (l.is(K::Forall) && is_neg(l.body()))
      return "exists " + l.name() + ". " + print(l.body().lhs(), kUnary);
    return "~" + print(l, kUnary);
  }
  if (is_neg(l)) {
    const Formula x = l.lhs();
    if (!x.is(K::Falsum))
      return wrap(print(x, kOr) + " | " + print(r, kAnd), kOr, ctx);
  }
  return wrap(print(l, kOr) + " -> " + print(r, kImp), kImp, ctx);
}

}  // namespace

std::string to_string(const Formula& f) { return print(f, kImp); }

// ---------------------------------------------------------------------------
// Structural operations

namespace {

template <typename Fn>
void walk(const Formula& f, Fn&& fn) {
  fn(f);
  switch (f.kind()) {
    case Formula::Kind::Implies:
      walk(f.lhs(), fn);
      walk(f.rhs(), fn);
      break;
    case Formula::Kind::Box:
    case Formula::Kind::Forall:
      walk(f.body(), fn);
      break;
    default:
      break;
  }
}

void collect_free(const Formula& f, std::vector<std::string>& bound,
                  std::vector<std::string>& out) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      for (const auto& t : f.args()) {
        if (!t.is_variable()) continue;
        if (std::find(bound.begin(), bound.end(), t.name) != bound.end()) continue;
        if (std::find(out.begin(), out.end(), t.name) == out.end()) out.push_back(t.name);
      }
      break;
    case Formula::Kind::Implies:
      collect_free(f.lhs(), bound, out);
      collect_free(f.rhs(), bound, out);
      break;
    case Formula::Kind::Box:
      collect_free(f.body(), bound, out);
      break;
    case Formula::Kind::Forall:
      bound.push_back(f.name());
      collect_free(f.body(), bound, out);
      bound.pop_back();
      break;
    case Formula::Kind::Falsum:
      break;
  }
}

}  // namespace

bool is_propositional(const Formula& f) {
  bool prop = true;
  walk(f, [&](const Formula& g) {
    if (g.is(Formula::Kind::Forall) || (g.is(Formula::Kind::Atom) && !g.args().empty()))
      prop = false;
  });
  return prop;
}

int modal_depth(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Implies:
      return std::max(modal_depth(f.lhs()), modal_depth(f.rhs()));
    case Formula::Kind::Box:
      return 1 + modal_depth(f.body());
    case Formula::Kind::Forall:
      return modal_depth(f.body());
    default:
      return 0;
  }
}

int max_modality(const Formula& f) {
  int m = 0;
  walk(f, [&](const Formula& g) {
    if (g.is(Formula::Kind::Box)) m = std::max(m, g.modality());
  });
  return m;
}

std::set<std::string> letters(const Formula& f) {
  std::set<std::string> out;
  walk(f, [&](const Formula& g) {
    if (g.is(Formula::Kind::Atom) && g.args().empty()) out.insert(g.name());
  });
  return out;
}

std::map<std::string, int> signature(const Formula& f) {
  std::map<std::string, int> sig;
  walk(f, [&](const Formula& g) {
    if (!g.is(Formula::Kind::Atom)) return;
    const int a = static_cast<int>(g.args().size());
    auto [it, fresh] = sig.emplace(g.name(), a);
    if (!fresh && it->second != a)
      throw InputError("letter '" + g.name() + "' used with arities " +
                       std::to_string(it->second) + " and " + std::to_string(a));
  });
  return sig;
}

std::set<std::string> constants(const Formula& f) {
  std::set<std::string> out;
  walk(f, [&](const Formula& g) {
    if (!g.is(Formula::Kind::Atom)) return;
    for (const auto& t : g.args())
      if (!t.is_variable()) out.insert(t.name);
  });
  return out;
}

std::vector<std::string> free_vars_ordered(const Formula& f) {
  std::vector<std::string> bound, out;
  collect_free(f, bound, out);
  return out;
}

std::set<std::string> free_vars(const Formula& f) {
  auto v = free_vars_ordered(f);
  return {v.begin(), v.end()};
}

bool is_closed(const Formula& f) { return free_vars_ordered(f).empty(); }

Formula universal_closure(const Formula& f) {
  const auto vars = free_vars_ordered(f);
  Formula out = f;
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) out = Formula::forall(*it, out);
  return out;
}

Formula box_power(const Formula& f, int k, int modality) {
  if (k < 0) throw InputError("box_power needs k >= 0");
  Formula out = f;
  for (int i = 0; i < k; ++i) out = Formula::box(out, modality);
  return out;
}

namespace {

Formula subst(const Formula& f, const std::map<std::string, std::string>& a) {
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      std::vector<Term> args(f.args().begin(), f.args().end());
      for (auto& t : args) {
        if (!t.is_variable()) continue;
        if (auto it = a.find(t.name); it != a.end()) t = Term::constant(it->second);
      }
      return Formula::atom(f.name(), std::move(args));
    }
    case Formula::Kind::Implies:
      return Formula::implies(subst(f.lhs(), a), subst(f.rhs(), a));
    case Formula::Kind::Box:
      return Formula::box(subst(f.body(), a), f.modality());
    case Formula::Kind::Forall:
      return Formula::forall(f.name(), subst(f.body(), a));
    case Formula::Kind::Falsum:
      break;
  }
  return f;
}

}  // namespace

Formula substitute_constants(const Formula& f,
                             const std::map<std::string, std::string>& assignment) {
  walk(f, [&](const Formula& g) {
    if (g.is(Formula::Kind::Forall) && assignment.count(g.name()))
      throw PreconditionError("cannot substitute bound variable '" + g.name() + "'");
  });
  return subst(f, assignment);
}

// ---------------------------------------------------------------------------
// Horn sentences

HornSentence::HornSentence(std::vector<std::string> variables, HornBody body, HornAtom head)
    : variables_(std::move(variables)), body_(std::move(body)), head_(head) {
  if (variables_.size() < 2) throw InputError("Horn sentence needs variables x and y");
  const int n = static_cast<int>(variables_.size());
  auto in_range = [n](const HornAtom& a) { return a.from >= 0 && a.from < n && a.to >= 0 && a.to < n; };
  if (head_.from > 1 || head_.to > 1 || head_.from < 0 || head_.to < 0)
    throw InputError("Horn head must relate x and y only");
  std::function<void(const HornBody&)> check = [&](const HornBody& b) {
    switch (b.kind) {
      case HornBody::Kind::True:
        break;
      case HornBody::Kind::Atom:
        if (!in_range(b.atom)) throw InputError("Horn body atom uses an undeclared variable");
        break;
      case HornBody::Kind::And:
      case HornBody::Kind::Or:
        if (b.children.empty()) throw InputError("empty Horn connective");
        for (const auto& c : b.children) check(c);
        break;
    }
  };
  check(body_);
}

namespace {

class HornParser {
 public:
  explicit HornParser(std::string_view text) : cur_(text) {}

  HornSentence run() {
    HornBody body = disjunction();
    cur_.expect(Tok::DArrow, "'=>'");
    const std::size_t head_pos = cur_.peek().pos;
    if (cur_.at_word("true") || cur_.at(Tok::LParen) || cur_.at(Tok::Tilde))
      throw ParseError("Horn head must be a single atom", head_pos);
    const Token a = cur_.expect(Tok::Ident, "head variable");
    expect_r();
    const Token b = cur_.expect(Tok::Ident, "head variable");
    if (!cur_.at(Tok::End)) {
      if (cur_.at(Tok::Amp) || cur_.at(Tok::Bar))
        throw ParseError("Horn head must be a single atom", cur_.peek().pos);
      cur_.fail("expected end of Horn sentence");
    }
    auto head_var = [](const Token& t) {
      if (t.text == "x") return 0;
      if (t.text == "y") return 1;
      throw ParseError("Horn head variable must be x or y", t.pos);
    };
    HornAtom head{head_var(a), head_var(b)};
    std::vector<std::string> vars{"x", "y"};
    for (const auto& v : order_)
      if (v != "x" && v != "y") vars.push_back(v);
    remap(body, vars);
    return HornSentence(std::move(vars), std::move(body), head);
  }

 private:
  void expect_r() {
    if (!cur_.at_word("R")) cur_.fail("expected relation symbol R");
    cur_.take();
  }

  HornBody disjunction() {
    HornBody first = conjunction();
    if (!cur_.at(Tok::Bar)) return first;
    HornBody out{HornBody::Kind::Or, {}, {std::move(first)}};
    while (cur_.accept(Tok::Bar)) out.children.push_back(conjunction());
    return out;
  }

  HornBody conjunction() {
    HornBody first = primary();
    if (!cur_.at(Tok::Amp)) return first;
    HornBody out{HornBody::Kind::And, {}, {std::move(first)}};
    while (cur_.accept(Tok::Amp)) out.children.push_back(primary());
    return out;
  }

  HornBody primary() {
    if (cur_.at(Tok::Tilde)) cur_.fail("negation is not allowed in a Horn body");
    if (cur_.at_word("forall") || cur_.at_word("exists"))
      cur_.fail("quantifiers are not allowed in a Horn body");
    if (cur_.at_word("true")) {
      cur_.take();
      return {};
    }
    if (cur_.accept(Tok::LParen)) {
      HornBody b = disjunction();
      cur_.expect(Tok::RParen, "')'");
      return b;
    }
    const Token a = cur_.expect(Tok::Ident, "variable");
    expect_r();
    const Token b = cur_.expect(Tok::Ident, "variable");
    for (const Token* t : {&a, &b}) {
      if (is_keyword(t->text) || t->text == "R")
        throw ParseError("invalid Horn variable '" + t->text + "'", t->pos);
      note(t->text);
    }
    HornBody out;
    out.kind = HornBody::Kind::Atom;
    // Temporary indices into order_; remapped once all variables are known.
    out.atom = {index_of(a.text), index_of(b.text)};
    return out;
  }

  void note(const std::string& v) {
    if (std::find(order_.begin(), order_.end(), v) == order_.end()) order_.push_back(v);
  }
  int index_of(const std::string& v) const {
    return static_cast<int>(std::find(order_.begin(), order_.end(), v) - order_.begin());
  }

  void remap(HornBody& b, const std::vector<std::string>& vars) const {
    if (b.kind == HornBody::Kind::Atom) {
      auto to_final = [&](int i) {
        return static_cast<int>(std::find(vars.begin(), vars.end(), order_[i]) - vars.begin());
      };
      b.atom = {to_final(b.atom.from), to_final(b.atom.to)};
    }
    for (auto& c : b.children) remap(c, vars);
  }

  Cursor cur_;
  std::vector<std::string> order_;
};

std::string body_text(const HornBody& b, const std::vector<std::string>& vars, bool nested) {
  switch (b.kind) {
    case HornBody::Kind::True:
      return "true";
    case HornBody::Kind::Atom:
      return vars[b.atom.from] + " R " + vars[b.atom.to];
    case HornBody::Kind::And:
    case HornBody::Kind::Or: {
      const bool is_and = b.kind == HornBody::Kind::And;
      std::string s;
      for (std::size_t i = 0; i < b.children.size(); ++i) {
        if (i) s += is_and ? " & " : " | ";
        const auto& c = b.children[i];
        const bool paren =
            c.kind == HornBody::Kind::Or || (is_and && c.kind == HornBody::Kind::And);
        s += body_text(c, vars, paren);
      }
      return nested ? "(" + s + ")" : s;
    }
  }
  return {};
}

}  // namespace

HornSentence parse_horn(std::string_view text) { return HornParser(text).run(); }

std::string to_string(const HornSentence& s) {
  const std::vector<std::string> vars(s.variables().begin(), s.variables().end());
  return body_text(s.body(), vars, false) + " => " + vars[s.head().from] + " R " +
         vars[s.head().to];
}

}  // namespace mlwb
