#include "mlwb/formats.hpp"

#include <sstream>

namespace mlwb {

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

std::vector<std::string> split_ws(std::string_view s) {
  std::istringstream is{std::string(s)};
  std::vector<std::string> out;
  for (std::string tok; is >> tok;) out.push_back(tok);
  return out;
}

namespace {

std::vector<std::string> split_on(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  int depth = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i < s.size() && (s[i] == '(' || s[i] == '{')) ++depth;
    if (i < s.size() && (s[i] == ')' || s[i] == '}')) --depth;
    if (i == s.size() || (s[i] == sep && depth == 0)) {
      auto part = trim(s.substr(start, i - start));
      if (!part.empty()) out.push_back(part);
      start = i + 1;
    }
  }
  return out;
}

std::string_view braced(std::string_view s, char open, char close, std::size_t line) {
  const auto t = trim(s);
  if (t.size() < 2 || t.front() != open || t.back() != close)
    throw ParseError("line " + std::to_string(line) + ": expected " + open + "..." + close, 0);
  const auto a = s.find(open);
  const auto b = s.rfind(close);
  return s.substr(a + 1, b - a - 1);
}

Relation parse_tuple_set(std::string_view s, std::size_t line) {
  Relation out;
  for (const auto& item : split_on(braced(s, '{', '}', line), ',')) {
    if (item.front() == '(') {
      Tuple t;
      for (const auto& e : split_on(braced(item, '(', ')', line), ',')) t.push_back(e);
      out.insert(t);
    } else {
      out.insert(Tuple{item});
    }
  }
  return out;
}

void note_letter(ModelDoc& d, const std::string& letter) {
  if (std::find(d.letter_order.begin(), d.letter_order.end(), letter) == d.letter_order.end())
    d.letter_order.push_back(letter);
}

}  // namespace

std::set<std::string> parse_name_set(std::string_view s) {
  std::set<std::string> out;
  for (const auto& item : split_on(braced(s, '{', '}', 0), ',')) out.insert(item);
  return out;
}

ModelDoc parse_model_doc(std::string_view text) {
  ModelDoc d;
  std::istringstream is{std::string(text)};
  std::size_t line_no = 0;
  for (std::string raw; std::getline(is, raw);) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const auto words = split_ws(line);
    const std::string& key = words[0];
    auto rest = [&]() { return trim(std::string_view(line).substr(key.size())); };
    auto where = [&]() { return "line " + std::to_string(line_no) + ": "; };
    if (key == "frame" || key == "nframe") {
      d.name = rest();
      d.is_nframe = key == "nframe";
    } else if (key == "worlds") {
      d.worlds.assign(words.begin() + 1, words.end());
    } else if (key == "points") {
      d.is_nframe = true;
      d.points.assign(words.begin() + 1, words.end());
    } else if (key == "root") {
      if (words.size() != 2) throw ParseError(where() + "root takes one world", 0);
      d.root = words[1];
    } else if (key == "edges") {
      for (std::size_t i = 1; i < words.size(); ++i) {
        std::string e = words[i];
        if (!e.empty() && e.back() == ',') e.pop_back();
        const auto arrow = e.find("->");
        if (arrow == std::string::npos || arrow == 0 || arrow + 2 >= e.size())
          throw ParseError(where() + "edge '" + e + "' must look like a->b", 0);
        d.edges.emplace_back(e.substr(0, arrow), e.substr(arrow + 2));
      }
    } else if (key == "base") {
      const auto eq = line.find('=');
      if (eq == std::string::npos || words.size() < 2) throw ParseError(where() + "base x = {..} {..}", 0);
      const std::string x = trim(std::string_view(line).substr(4, eq - 4));
      std::vector<std::set<std::string>> sets;
      std::string_view r = std::string_view(line).substr(eq + 1);
      while (!trim(r).empty()) {
        const auto a = r.find('{');
        const auto b = r.find('}');
        if (a == std::string_view::npos || b == std::string_view::npos || b < a)
          throw ParseError(where() + "unbalanced set in base", 0);
        sets.push_back(parse_name_set(r.substr(a, b - a + 1)));
        r = r.substr(b + 1);
      }
      d.bases[x] = std::move(sets);
    } else if (key == "domain") {
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw ParseError(where() + "domain w = {..}", 0);
      d.domains[trim(std::string_view(line).substr(6, eq - 6))] = parse_name_set(std::string_view(line).substr(eq + 1));
    } else if (key == "constdomain") {
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw ParseError(where() + "constdomain = {..}", 0);
      d.constdomain = parse_name_set(std::string_view(line).substr(eq + 1));
    } else if (key == "val") {
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw ParseError(where() + "val needs '='", 0);
      const std::string lhs = trim(std::string_view(line).substr(3, eq - 3));
      const std::string rhs = trim(std::string_view(line).substr(eq + 1));
      if (const auto at = lhs.find('@'); at != std::string::npos) {
        const std::string letter = trim(std::string_view(lhs).substr(0, at));
        const std::string point = trim(std::string_view(lhs).substr(at + 1));
        note_letter(d, letter);
        if (rhs == "true") {
          d.pred_val[letter][point] = Relation{Tuple{}};
        } else if (rhs == "false") {
          d.pred_val[letter][point] = Relation{};
        } else {
          d.pred_val[letter][point] = parse_tuple_set(rhs, line_no);
        }
      } else if (rhs.rfind("finite", 0) == 0 || rhs.rfind("parity", 0) == 0 || rhs.rfind("viapath", 0) == 0) {
        note_letter(d, lhs);
        d.dense_val[lhs] = rhs;
      } else {
        note_letter(d, lhs);
        d.prop_val[lhs] = parse_name_set(rhs);
      }
    } else {
      throw ParseError(where() + "unknown directive '" + key + "'", 0);
    }
  }
  return d;
}

KripkeFrame doc_frame(const ModelDoc& d) {
  if (d.worlds.empty()) throw InputError("model file declares no worlds");
  return KripkeFrame::from_names(d.worlds, d.edges, d.root);
}

NFrame doc_nframe(const ModelDoc& d) {
  if (d.points.empty()) throw InputError("model file declares no points");
  std::vector<std::vector<PointSet>> bases;
  for (const auto& x : d.points) {
    auto it = d.bases.find(x);
    if (it == d.bases.end()) throw InputError("point '" + x + "' has no base");
    std::vector<PointSet> b;
    for (const auto& s : it->second) {
      PointSet u(d.points.size());
      for (const auto& n : s) {
        auto pos = std::find(d.points.begin(), d.points.end(), n);
        if (pos == d.points.end()) throw InputError("unknown point '" + n + "' in base of " + x);
        u.set(static_cast<std::size_t>(pos - d.points.begin()));
      }
      b.push_back(u);
    }
    bases.push_back(std::move(b));
  }
  for (const auto& [x, _] : d.bases)
    if (std::find(d.points.begin(), d.points.end(), x) == d.points.end())
      throw InputError("base for unknown point '" + x + "'");
  return NFrame(d.points, std::move(bases));
}

namespace {

std::map<std::string, WorldSet> prop_valuation(const ModelDoc& d, const std::vector<std::string>& names) {
  std::map<std::string, WorldSet> v;
  for (const auto& [letter, set] : d.prop_val) {
    WorldSet s(names.size());
    for (const auto& n : set) {
      auto pos = std::find(names.begin(), names.end(), n);
      if (pos == names.end()) throw InputError("unknown point '" + n + "' in valuation of " + letter);
      s.set(static_cast<std::size_t>(pos - names.begin()));
    }
    v.emplace(letter, s);
  }
  return v;
}

PredValuation pred_valuation(const ModelDoc& d, const std::vector<std::string>& names) {
  PredValuation v;
  for (const auto& [letter, per] : d.pred_val) {
    std::vector<Relation> rels(names.size());
    for (const auto& [point, rel] : per) {
      auto pos = std::find(names.begin(), names.end(), point);
      if (pos == names.end()) throw InputError("unknown point '" + point + "' in valuation of " + letter);
      rels[static_cast<std::size_t>(pos - names.begin())] = rel;
    }
    v.emplace(letter, std::move(rels));
  }
  return v;
}

}  // namespace

KripkeModel doc_kripke_model(const ModelDoc& d) {
  auto f = doc_frame(d);
  auto v = prop_valuation(d, f.names());
  return KripkeModel(std::move(f), std::move(v));
}

NModel doc_nmodel(const ModelDoc& d) {
  auto f = doc_nframe(d);
  auto v = prop_valuation(d, f.names());
  return NModel(std::move(f), std::move(v));
}

PredKripkeFrame doc_pred_frame(const ModelDoc& d) {
  auto f = doc_frame(d);
  std::vector<Domain> domains;
  for (const auto& w : f.names()) {
    auto it = d.domains.find(w);
    if (it == d.domains.end()) throw InputError("world '" + w + "' has no domain");
    domains.push_back(it->second);
  }
  for (const auto& [w, _] : d.domains)
    if (!f.find(w)) throw InputError("domain for unknown world '" + w + "'");
  return PredKripkeFrame(std::move(f), std::move(domains));
}

PredKripkeModel doc_pred_model(const ModelDoc& d) {
  auto f = doc_pred_frame(d);
  auto v = pred_valuation(d, f.frame().names());
  return PredKripkeModel(std::move(f), std::move(v));
}

PredNFrame doc_pred_nframe(const ModelDoc& d) {
  if (!d.constdomain) throw InputError("constant-domain n-frame needs a constdomain line");
  return PredNFrame(doc_nframe(d), *d.constdomain);
}

PredNModel doc_pred_nmodel(const ModelDoc& d) {
  auto f = doc_pred_nframe(d);
  auto v = pred_valuation(d, f.space().names());
  return PredNModel(std::move(f), std::move(v));
}

PatternValuation doc_pattern_valuation(const ModelDoc& d, const KripkeFrame& f) {
  PatternValuation out;
  for (const auto& [letter, spec] : d.dense_val) {
    if (spec.rfind("finite", 0) == 0) {
      FiniteSet s;
      for (const auto& w : split_on(braced(std::string_view(spec).substr(6), '{', '}', 0), ','))
        s.words.insert(parse_stopword(w, f));
      out.emplace(letter, s);
    } else if (spec.rfind("parity", 0) == 0) {
      const auto args = split_on(braced(std::string_view(spec).substr(6), '(', ')', 0), ',');
      if (args.size() != 2 || (args[1] != "even" && args[1] != "odd"))
        throw ParseError("parity(WORLD, even|odd) expected for " + letter, 0);
      out.emplace(letter, ZeroParity{f.index(args[0]), args[1] == "odd" ? 1 : 0});
    } else {
      PathFactored p;
      for (const auto& item : split_on(braced(std::string_view(spec).substr(7), '{', '}', 0), ',')) {
        std::vector<World> path;
        std::size_t start = 0;
        while (start <= item.size()) {
          auto end = item.find('.', start);
          if (end == std::string::npos) end = item.size();
          path.push_back(f.index(item.substr(start, end - start)));
          start = end + 1;
        }
        p.paths.insert(path);
      }
      out.emplace(letter, p);
    }
  }
  return out;
}

MapDoc parse_map_doc(std::string_view text) {
  MapDoc m;
  std::istringstream is{std::string(text)};
  std::size_t line_no = 0;
  for (std::string raw; std::getline(is, raw);) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const auto words = split_ws(line);
    if (eq == std::string::npos) throw ParseError("line " + std::to_string(line_no) + ": expected '='", 0);
    if (words[0] == "map") {
      m.points[trim(std::string_view(line).substr(3, eq - 3))] = trim(std::string_view(line).substr(eq + 1));
    } else if (words[0] == "elements") {
      ElementMap em;
      for (const auto& pair : split_on(braced(std::string_view(line).substr(eq + 1), '{', '}', line_no), ',')) {
        const auto arrow = pair.find("->");
        if (arrow == std::string::npos) throw ParseError("line " + std::to_string(line_no) + ": d->e expected", 0);
        em[trim(std::string_view(pair).substr(0, arrow))] = trim(std::string_view(pair).substr(arrow + 2));
      }
      m.elements[trim(std::string_view(line).substr(8, eq - 8))] = std::move(em);
    } else {
      throw ParseError("line " + std::to_string(line_no) + ": unknown directive '" + words[0] + "'", 0);
    }
  }
  return m;
}

std::vector<World> doc_point_map(const MapDoc& m, const std::vector<std::string>& source,
                                 const std::vector<std::string>& target) {
  std::vector<World> out;
  for (const auto& s : source) {
    auto it = m.points.find(s);
    if (it == m.points.end()) throw InputError("map has no image for '" + s + "'");
    auto pos = std::find(target.begin(), target.end(), it->second);
    if (pos == target.end()) throw InputError("map sends '" + s + "' to unknown '" + it->second + "'");
    out.push_back(static_cast<World>(pos - target.begin()));
  }
  return out;
}

std::vector<ElementMap> doc_element_maps(const MapDoc& m, const std::vector<std::string>& source) {
  std::vector<ElementMap> out;
  for (const auto& s : source) {
    auto it = m.elements.find(s);
    out.push_back(it == m.elements.end() ? ElementMap{} : it->second);
  }
  return out;
}

std::string frame_text(const KripkeFrame& f, std::string_view name) {
  return "frame " + std::string(name) + "\n" + describe(f);
}

std::string nframe_text(const NFrame& f, std::string_view name) {
  std::ostringstream os;
  os << "nframe " << name << "\npoints";
  for (const auto& n : f.names()) os << ' ' << n;
  os << '\n';
  for (Point x = 0; x < f.size(); ++x) {
    os << "base " << f.name(x) << " =";
    for (const auto& b : f.base(x)) os << ' ' << set_text(f.names(), b);
    os << '\n';
  }
  return os.str();
}

namespace {
std::string domain_text(const Domain& d) {
  std::string out = "{";
  for (const auto& e : d) out += (out.size() > 1 ? "," : "") + e;
  return out + "}";
}
}  // namespace

std::string pred_frame_text(const PredKripkeFrame& f, std::string_view name) {
  std::string out = frame_text(f.frame(), name);
  for (World w = 0; w < f.frame().size(); ++w) out += "domain " + f.frame().name(w) + " = " + domain_text(f.domain(w)) + "\n";
  return out;
}

std::string pred_valuation_text(const PredValuation& v, const std::vector<std::string>& points) {
  std::string out;
  for (const auto& [letter, rels] : v) {
    for (std::size_t p = 0; p < rels.size() && p < points.size(); ++p) {
      if (rels[p].empty()) continue;
      out += "val " + letter + " @ " + points[p] + " = {";
      bool first = true;
      for (const auto& t : rels[p]) {
        if (!first) out += ",";
        first = false;
        out += tuple_text(t);
      }
      out += "}\n";
    }
  }
  return out;
}

std::string map_text(const std::vector<World>& map, const std::vector<std::string>& source,
                     const std::vector<std::string>& target, const std::vector<ElementMap>* elements) {
  std::string out;
  for (std::size_t i = 0; i < map.size(); ++i)
    out += "map " + source[i] + " = " + target[static_cast<std::size_t>(map[i])] + "\n";
  if (elements) {
    for (std::size_t i = 0; i < elements->size(); ++i) {
      out += "elements " + source[i] + " = {";
      bool first = true;
      for (const auto& [a, b] : (*elements)[i]) {
        if (!first) out += ", ";
        first = false;
        out += a + "->" + b;
      }
      out += "}\n";
    }
  }
  return out;
}

}  // namespace mlwb
