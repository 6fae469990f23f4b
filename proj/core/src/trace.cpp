#include "desing/trace.hpp"

#include <json.hpp>
#include <algorithm>
#include <cctype>
#include <random>
#include <sstream>

#include "desing/delta.hpp"
#include "desing/errors.hpp"

namespace desing {

using json = nlohmann::ordered_json;

namespace {

json ideal_json(const Ideal& I) {
  json a = json::array();
  for (const auto& g : I.generators()) a.push_back(to_string(g));
  return a;
}

std::string var_name(const Ring& r, std::size_t v) { return r->name(v); }

json vars_json(const Ring& r, const std::vector<std::size_t>& vars) {
  json a = json::array();
  for (auto v : vars) a.push_back(var_name(r, v));
  return a;
}

json exponents_json(const Exponents& e) {
  json o = json::object();
  for (const auto& [label, exp] : e) o[std::to_string(label)] = exp;
  return o;
}

json chart_json(const Chart& c) {
  const Ring& r = c.ring;
  json j;
  j["id"] = c.id;
  j["parent"] = c.parent ? json(*c.parent) : json(nullptr);
  j["origin"] = to_string(c.origin);
  j["stage"] = c.stage;
  const bool blown = c.origin == ChartOrigin::Blowup || c.origin == ChartOrigin::Hypersurface;
  j["center"] = blown ? vars_json(r, c.center) : json(nullptr);
  j["pivot"] = blown ? json(var_name(r, c.pivot)) : json(nullptr);
  j["changed"] = c.origin == ChartOrigin::CoordinateChange ? json(var_name(r, c.changed_var)) : json(nullptr);
  j["shift"] = c.shift ? json(to_string(*c.shift)) : json(nullptr);
  json map = json::object();
  for (std::size_t i = 0; i < r->size(); ++i) map[var_name(r, i)] = to_string(c.from_parent.images[i]);
  j["map"] = map;
  std::vector<std::pair<DivisorLabel, std::size_t>> divs;
  for (const auto& [v, l] : c.exceptional) divs.emplace_back(l, v);
  std::sort(divs.begin(), divs.end());
  json d = json::array();
  for (const auto& [l, v] : divs) d.push_back({{"label", l}, {"var", var_name(r, v)}});
  j["divisors"] = d;
  return j;
}

json node_json(const ResolutionNode& n, const Ring& r) {
  json j;
  j["chart"] = n.chart;
  j["stage"] = n.stage;
  j["J"] = ideal_json(n.J);
  j["b"] = n.bound;
  j["a"] = exponents_json(n.a);
  j["total"] = exponents_json(n.total);
  j["invariant"] = to_string(n.invariant);
  if (!n.center) {
    j["center"] = nullptr;
    return j;
  }
  json c;
  c["vars"] = vars_json(r, n.center->vars);
  json ch = json::array();
  for (const auto& [v, p] : n.center->change) ch.push_back({{"var", var_name(r, v)}, {"image", to_string(p)}});
  c["change"] = ch;
  c["divisorial"] = n.center->divisorial ? json(to_string(*n.center->divisorial)) : json(nullptr);
  json desc = json::array();
  for (const auto& s : n.center->descent)
    desc.push_back({{"level", s.level}, {"var", var_name(r, s.var)}, {"ideal", ideal_json(s.ideal)}, {"bound", s.bound}});
  c["descent"] = desc;
  j["center"] = c;
  return j;
}

// Field access with a trace-format error instead of a json exception.
const json& at(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw TraceFormatError(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <typename T>
T get(const json& j, const char* key) {
  try {
    return at(j, key).get<T>();
  } catch (const json::exception& e) {
    throw TraceFormatError(std::string("field '") + key + "': " + e.what());
  }
}

std::size_t var_index(const Ring& r, const std::string& name) {
  auto i = r->index_of(name);
  if (!i) throw TraceFormatError("unknown variable '" + name + "'");
  return *i;
}

std::vector<std::size_t> vars_from(const Ring& r, const json& a) {
  std::vector<std::size_t> out;
  for (const auto& v : a) out.push_back(var_index(r, v.get<std::string>()));
  return out;
}

Ideal ideal_from(const Ring& r, const json& a) {
  std::vector<Polynomial> gens;
  for (const auto& g : a) gens.push_back(parse_polynomial(g.get<std::string>(), r));
  return Ideal(r, std::move(gens));
}

Exponents exponents_from(const json& o) {
  Exponents e;
  for (const auto& [k, v] : o.items()) e[std::stoi(k)] = v.get<unsigned>();
  return e;
}

ChartOrigin origin_from(const std::string& s) {
  for (auto o : {ChartOrigin::Root, ChartOrigin::Blowup, ChartOrigin::Hypersurface, ChartOrigin::CoordinateChange})
    if (s == to_string(o)) return o;
  throw TraceFormatError("unknown chart origin '" + s + "'");
}

ChartTree replay_tree(const Ring& r, const json& charts) {
  if (!charts.is_array() || charts.empty()) throw TraceFormatError("trace has no charts");
  const json& root = charts.front();
  if (get<int>(root, "id") != 0 || !at(root, "parent").is_null()) throw TraceFormatError("first chart is not the root");
  std::vector<std::pair<DivisorLabel, std::size_t>> init;
  for (const auto& d : at(root, "divisors")) init.emplace_back(get<int>(d, "label"), var_index(r, get<std::string>(d, "var")));
  std::sort(init.begin(), init.end());
  std::vector<std::size_t> initial;
  for (std::size_t i = 0; i < init.size(); ++i) {
    if (init[i].first != static_cast<int>(i) + 1) throw TraceFormatError("root divisor labels must be 1..m");
    initial.push_back(init[i].second);
  }
  ChartTree tree(r, initial);
  for (std::size_t i = 1; i < charts.size(); ++i) {
    const json& c = charts[i];
    const int id = get<int>(c, "id");
    if (id != static_cast<int>(i)) throw TraceFormatError("chart ids must be 0, 1, 2, ...");
    if (id < static_cast<int>(tree.charts().size())) continue;  // sibling created by an earlier blow-up
    const int parent = get<int>(c, "parent");
    const int stage = get<int>(c, "stage");
    const ChartOrigin o = origin_from(get<std::string>(c, "origin"));
    try {
      if (o == ChartOrigin::CoordinateChange) {
        tree.change_coordinates(parent, var_index(r, get<std::string>(c, "changed")),
                                parse_polynomial(get<std::string>(c, "shift"), r), stage);
      } else if (o == ChartOrigin::Blowup || o == ChartOrigin::Hypersurface) {
        const std::size_t pivot = var_index(r, get<std::string>(c, "pivot"));
        std::optional<DivisorLabel> label;
        for (const auto& d : at(c, "divisors"))
          if (var_index(r, get<std::string>(d, "var")) == pivot) label = get<int>(d, "label");
        if (!label) throw TraceFormatError("chart " + std::to_string(id) + " has no label on its pivot");
        tree.blowup(parent, vars_from(r, at(c, "center")), stage, *label);
      } else {
        throw TraceFormatError("second root chart");
      }
    } catch (const TraceFormatError&) {
      throw;
    } catch (const std::exception& e) {
      throw TraceFormatError("chart " + std::to_string(id) + " cannot be replayed: " + e.what());
    }
  }
  if (tree.charts().size() != charts.size()) throw TraceFormatError("chart list is incomplete");
  for (const auto& c : charts) {
    const Chart& t = tree.chart(get<int>(c, "id"));
    const json& map = at(c, "map");
    for (std::size_t v = 0; v < r->size(); ++v)
      if (parse_polynomial(get<std::string>(map, r->name(v).c_str()), r) != t.from_parent.images[v])
        throw TraceFormatError("chart " + std::to_string(t.id) + ": recorded map of " + r->name(v) +
                               " disagrees with the replayed blow-up");
    std::map<std::size_t, DivisorLabel> exc;
    for (const auto& d : at(c, "divisors")) exc[var_index(r, get<std::string>(d, "var"))] = get<int>(d, "label");
    if (exc != t.exceptional)
      throw TraceFormatError("chart " + std::to_string(t.id) + ": recorded divisors disagree with the replay");
  }
  return tree;
}

// Recursive-descent reader for the printed invariant vectors.
class InvariantReader {
 public:
  explicit InvariantReader(const std::string& s) : s_(s) {}

  InvariantVector read() {
    InvariantVector v;
    expect('[');
    skip();
    if (peek() == ']') {
      ++pos_;
      finish();
      return v;
    }
    for (;;) {
      v.entries.push_back(entry());
      skip();
      if (peek() == ',') {
        ++pos_;
        continue;
      }
      expect(']');
      break;
    }
    finish();
    return v;
  }

  TValue t_value() {
    expect('(');
    TValue t{rational(), 0};
    expect(',');
    t.n = static_cast<unsigned>(integer());
    expect(')');
    return t;
  }

  void finish() {
    skip();
    if (pos_ != s_.size()) fail("trailing characters");
  }

 private:
  InvariantEntry entry() {
    skip();
    if (s_.compare(pos_, 3, "inf") == 0) {
      pos_ += 3;
      return InvariantEntry::infinity();
    }
    if (peek() == '*') {
      ++pos_;
      return InvariantEntry::pending();
    }
    if (peek() == '(') return InvariantEntry::of(t_value());
    static const std::string gamma = "Γ";
    if (s_.compare(pos_, gamma.size(), gamma) == 0) {
      pos_ += gamma.size();
      expect('(');
      GammaValue g;
      g.neg_p = static_cast<int>(integer());
      expect(',');
      g.omega = rational();
      expect(',');
      expect('[');
      skip();
      while (peek() != ']') {
        g.ell.push_back(static_cast<DivisorLabel>(integer()));
        skip();
        if (peek() == ',') ++pos_;
      }
      expect(']');
      expect(')');
      return InvariantEntry::of(g);
    }
    fail("unexpected entry");
  }

  long integer() {
    skip();
    std::size_t start = pos_;
    if (peek() == '-') ++pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == start || (pos_ == start + 1 && s_[start] == '-')) fail("expected an integer");
    return std::stol(s_.substr(start, pos_ - start));
  }

  Rational rational() {
    skip();
    std::size_t start = pos_;
    integer();
    if (peek() == '/') {
      ++pos_;
      integer();
    }
    Rational q(s_.substr(start, pos_ - start));
    q.canonicalize();
    return q;
  }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip() {
    while (pos_ < s_.size() && s_[pos_] == ' ') ++pos_;
  }
  void expect(char c) {
    skip();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw TraceFormatError("invariant '" + s_ + "': " + what + " at position " + std::to_string(pos_));
  }

  std::string s_;
  std::size_t pos_ = 0;
};

std::string join_vars(const Ring& r, const std::vector<std::size_t>& vars) {
  std::string s;
  for (std::size_t i = 0; i < vars.size(); ++i) s += (i ? ", " : "") + r->name(vars[i]);
  return s;
}

std::string labels_text(const Chart& c) {
  std::vector<DivisorLabel> ls;
  for (const auto& [v, l] : c.exceptional) ls.push_back(l);
  std::sort(ls.begin(), ls.end());
  std::string s;
  for (std::size_t i = 0; i < ls.size(); ++i) s += (i ? " " : "") + ("H" + std::to_string(ls[i]));
  return s.empty() ? "-" : s;
}

std::string exponents_text(const Exponents& e) {
  std::string s;
  for (const auto& [l, x] : e) {
    if (!s.empty()) s += " ";
    s += "H" + std::to_string(l) + "^" + std::to_string(x);
  }
  return s.empty() ? "1" : s;
}

bool same_generators(const Ideal& a, const Ideal& b) { return a.generators() == b.generators() || a.equals(b); }

bool has_unit(const Ideal& I) {
  for (const auto& g : I.generators())
    if (g.is_constant() && !g.is_zero()) return true;
  return I.is_trivial();
}

}  // namespace

InvariantVector parse_invariant(const std::string& text) { return InvariantReader(text).read(); }

std::string trace_to_json(const ResolutionTrace& t) {
  const Ring& r = t.input.ring();
  json j;
  json problem;
  problem["vars"] = r->names();
  problem["gens"] = ideal_json(t.input);
  problem["bound"] = t.bound;
  problem["divisors"] = vars_json(r, t.initial_divisors);
  j["problem"] = problem;
  json charts = json::array();
  for (const auto& c : t.tree.charts()) charts.push_back(chart_json(c));
  j["charts"] = charts;
  json nodes = json::array();
  for (const auto& n : t.nodes) nodes.push_back(node_json(n, r));
  j["nodes"] = nodes;
  json stages = json::array();
  for (const auto& s : t.stages)
    stages.push_back({{"stage", s.stage},
                      {"max", to_string(s.max)},
                      {"top_t", s.top_t ? json(to_string(*s.top_t)) : json(nullptr)},
                      {"step", s.step}});
  j["stages"] = stages;
  json result;
  result["status"] = t.status;
  result["error_type"] = t.error_type;
  result["error"] = t.error;
  json principal = json::object(), certs = json::object();
  for (const auto& [c, cert] : t.principal) {
    principal[std::to_string(c)] = exponents_json(cert.exponents);
    json f = json::array();
    for (const auto& [h, e] : cert.factors) f.push_back({{"poly", to_string(h)}, {"exp", e}});
    certs[std::to_string(c)] = {{"factors", f}, {"verified", cert.verified}};
  }
  result["principal"] = principal;
  result["certificates"] = certs;
  if (t.desing) {
    json strict = json::array();
    for (const auto& [c, I] : t.desing->strict) strict.push_back({{"chart", c}, {"ideal", ideal_json(I)}});
    result["desing"] = {{"stage", t.desing->stage},
                        {"strict", strict},
                        {"smooth", t.desing->smooth},
                        {"transversal", t.desing->transversal}};
  } else {
    result["desing"] = nullptr;
  }
  j["result"] = result;
  return j.dump(2) + "\n";
}

ResolutionTrace trace_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw TraceFormatError(std::string("not JSON: ") + e.what());
  }
  if (!j.is_object() || j.empty()) throw TraceFormatError("empty trace");
  try {
    const json& problem = at(j, "problem");
    Ring r = make_ring(get<std::vector<std::string>>(problem, "vars"));
    Ideal input = ideal_from(r, at(problem, "gens"));
    const unsigned bound = get<unsigned>(problem, "bound");
    std::vector<std::size_t> initial = vars_from(r, at(problem, "divisors"));
    ResolutionTrace t{input, bound, initial, replay_tree(r, at(j, "charts")), {}, {}, "", "", "", {}, std::nullopt};

    for (const auto& n : at(j, "nodes")) {
      ResolutionNode node{get<int>(n, "chart"), get<int>(n, "stage"), ideal_from(r, at(n, "J")), get<unsigned>(n, "b"),
                          exponents_from(at(n, "a")), exponents_from(at(n, "total")), parse_invariant(get<std::string>(n, "invariant")), std::nullopt};
      if (node.chart < 0 || node.chart >= static_cast<int>(t.tree.charts().size()))
        throw TraceFormatError("node refers to unknown chart " + std::to_string(node.chart));
      const json& c = at(n, "center");
      if (!c.is_null()) {
        CenterRecord rec;
        rec.vars = vars_from(r, at(c, "vars"));
        for (const auto& ch : at(c, "change"))
          rec.change.emplace_back(var_index(r, get<std::string>(ch, "var")), parse_polynomial(get<std::string>(ch, "image"), r));
        if (!at(c, "divisorial").is_null()) rec.divisorial = parse_polynomial(get<std::string>(c, "divisorial"), r);
        for (const auto& s : at(c, "descent"))
          rec.descent.push_back({get<std::size_t>(s, "level"), var_index(r, get<std::string>(s, "var")),
                                 ideal_from(r, at(s, "ideal")), get<unsigned>(s, "bound")});
        node.center = std::move(rec);
      }
      t.nodes.push_back(std::move(node));
    }
    for (const auto& s : at(j, "stages")) {
      StageSummary st{get<int>(s, "stage"), parse_invariant(get<std::string>(s, "max")), std::nullopt,
                      get<std::string>(s, "step")};
      if (!at(s, "top_t").is_null()) {
        InvariantReader rd(get<std::string>(s, "top_t"));
        st.top_t = rd.t_value();
        rd.finish();
      }
      t.stages.push_back(std::move(st));
    }
    const json& res = at(j, "result");
    t.status = get<std::string>(res, "status");
    t.error_type = get<std::string>(res, "error_type");
    t.error = get<std::string>(res, "error");
    const json& certs = at(res, "certificates");
    for (const auto& [k, e] : at(res, "principal").items()) {
      PrincipalCertificate cert;
      cert.exponents = exponents_from(e);
      const json& c = at(certs, k.c_str());
      for (const auto& f : at(c, "factors"))
        cert.factors.emplace_back(parse_polynomial(get<std::string>(f, "poly"), r), get<unsigned>(f, "exp"));
      cert.verified = get<bool>(c, "verified");
      t.principal.emplace(std::stoi(k), std::move(cert));
    }
    const json& d = at(res, "desing");
    if (!d.is_null()) {
      DesingRecord rec;
      rec.stage = get<int>(d, "stage");
      for (const auto& s : at(d, "strict")) rec.strict.emplace(get<int>(s, "chart"), ideal_from(r, at(s, "ideal")));
      rec.smooth = get<bool>(d, "smooth");
      rec.transversal = get<bool>(d, "transversal");
      t.desing = std::move(rec);
    }
    return t;
  } catch (const ParseError& e) {
    throw TraceFormatError(std::string("bad polynomial: ") + e.what());
  } catch (const UnknownVariable& e) {
    throw TraceFormatError(e.what());
  } catch (const json::exception& e) {
    throw TraceFormatError(e.what());
  }
}

std::string trace_to_text(const ResolutionTrace& t) {
  const Ring& r = t.input.ring();
  std::ostringstream out;
  out << "J = " << to_string(t.input) << ", b = " << t.bound;
  if (!t.initial_divisors.empty()) out << ", E = {" << join_vars(r, t.initial_divisors) << "}";
  out << "\n";
  for (const auto& s : t.stages) {
    out << "stage " << s.stage << ": ";
    if (s.step == "done") {
      out << "done\n";
      continue;
    }
    out << "max " << to_string(s.max) << ", " << s.step << "\n";
    for (const auto* n : t.stage_nodes(s.stage)) {
      if (!n->center) continue;
      out << "  chart " << n->chart << " J = " << to_string(n->J);
      if (n->center->divisorial) out << ", divide by (" << to_string(*n->center->divisorial) << ")^" << t.bound;
      else out << ", center V(" << join_vars(r, n->center->vars) << ")";
      out << "\n";
      for (const auto& [v, p] : n->center->change) out << "    change " << r->name(v) << " -> " << to_string(p) << "\n";
      for (const auto& d : n->center->descent)
        out << "    level " << d.level << ": contact " << r->name(d.var) << ", coefficient ideal ("
            << to_string(d.ideal) << ", " << d.bound << ")\n";
    }
  }
  out << "status: " << t.status;
  if (!t.resolved()) out << " (" << t.error_type << ") " << t.error;
  out << ", " << t.blowups() << " blow-ups\n";
  if (t.desing) {
    out << "embedded desingularization at stage " << t.desing->stage << ": smooth " << (t.desing->smooth ? "yes" : "no")
        << ", normal crossings " << (t.desing->transversal ? "yes" : "no") << "\n";
    for (const auto& [c, I] : t.desing->strict) out << "  chart " << c << " strict transform " << to_string(I) << "\n";
  }
  for (const auto& [c, cert] : t.principal)
    out << "chart " << c << ": total transform = " << exponents_text(cert.exponents)
        << (cert.factors.empty() ? "" : " * divisorial factors") << " * unit"
        << (cert.verified ? "" : " (NOT verified)") << "\n";
  return out.str();
}

std::string trace_to_dot(const ResolutionTrace& t) {
  const Ring& r = t.input.ring();
  std::map<int, const ResolutionNode*> last;
  for (const auto& n : t.nodes) last[n.chart] = &n;
  std::ostringstream out;
  out << "digraph resolution {\n  node [shape=box, fontname=\"monospace\"];\n";
  for (const auto& c : t.tree.charts()) {
    out << "  c" << c.id << " [label=\"chart " << c.id << "\\nE: " << labels_text(c);
    if (auto it = last.find(c.id); it != last.end()) {
      out << "\\nstage " << it->second->stage << " " << to_string(it->second->invariant);
    }
    out << "\"];\n";
  }
  for (const auto& c : t.tree.charts()) {
    if (!c.parent) continue;
    out << "  c" << *c.parent << " -> c" << c.id << " [label=\"";
    if (c.origin == ChartOrigin::CoordinateChange) out << r->name(c.changed_var) << " -> " << to_string(c.from_parent.images[c.changed_var]);
    else out << "V(" << join_vars(r, c.center) << ") / " << r->name(c.pivot);
    out << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

VerifyReport verify_trace(const ResolutionTrace& t, std::size_t cross_samples, std::uint64_t seed) {
  VerifyReport rep;
  auto fail = [&](int stage, int chart, const std::string& what) {
    rep.ok = false;
    rep.failure = "stage " + std::to_string(stage) + ", chart " + std::to_string(chart) + ": " + what;
    return rep;
  };
  const ChartTree& tree = t.tree;
  const unsigned b = t.bound;
  if (t.nodes.empty()) return fail(0, 0, "trace has no nodes");

  std::map<std::pair<int, int>, const ResolutionNode*> at_stage;  // (chart, stage)
  for (const auto& n : t.nodes) at_stage[{n.chart, n.stage}] = &n;

  for (const auto& n : t.nodes) {
    const Chart& chart = tree.chart(n.chart);
    if (n.bound != b) return fail(n.stage, n.chart, "bound differs from the problem");
    ++rep.checks;

    // Nearest earlier record on the path to the root, or the input at the root.
    std::vector<int> path{n.chart};
    Ideal J = t.input;
    const ResolutionNode* from = nullptr;
    for (int cur = n.chart;;) {
      for (int s = n.stage - 1; s >= 0 && !from; --s)
        if (auto it = at_stage.find({cur, s}); it != at_stage.end()) from = it->second;
      if (from || !tree.chart(cur).parent) break;
      cur = *tree.chart(cur).parent;
      path.push_back(cur);
    }
    std::reverse(path.begin(), path.end());
    if (from) {
      J = from->J;
      if (from->center && from->center->divisorial) {
        const Polynomial hb = from->center->divisorial->pow(b);
        std::vector<Polynomial> gens;
        for (const auto& g : J.generators()) {
          auto q = divide_exact(g, hb);
          if (!q) return fail(from->stage, from->chart, "divisorial factor does not divide J exactly");
          gens.push_back(std::move(*q));
        }
        J = Ideal(J.ring(), std::move(gens));
        ++rep.checks;
      }
    } else if (path.front() != 0) {
      return fail(n.stage, n.chart, "chart is not connected to the root");
    }
    for (std::size_t i = 1; i < path.size(); ++i) {
      try {
        J = controlled_transform(J, b, tree.chart(path[i]));
      } catch (const InexactDivision&) {
        return fail(n.stage, path[i], "controlled transform is not an exact division");
      }
      ++rep.checks;
    }
    if (!same_generators(J, n.J)) return fail(n.stage, n.chart, "recorded J is not the transform of its predecessor");
    ++rep.checks;
    if (exceptional_exponents(n.J, chart).exponents != n.a)
      return fail(n.stage, n.chart, "recorded exceptional exponents " + exponents_text(n.a) + " but J gives " +
                                        exponents_text(exceptional_exponents(n.J, chart).exponents));
    ++rep.checks;
    if (exceptional_exponents(total_transform(t.input, tree, n.chart), chart).exponents != n.total)
      return fail(n.stage, n.chart, "recorded total-transform exponents " + exponents_text(n.total) + " are wrong");
    ++rep.checks;
    if (n.center && !n.center->vars.empty()) {
      std::vector<std::size_t> sorted = n.center->vars;
      std::sort(sorted.begin(), sorted.end());
      bool found = false;
      for (const auto& c : tree.charts())
        if (c.parent == n.chart && c.origin != ChartOrigin::CoordinateChange && c.center == sorted) found = true;
      if (!found) return fail(n.stage, n.chart, "center was never blown up");
      ++rep.checks;
    }
  }

  std::optional<InvariantVector> prev;
  for (const auto& s : t.stages) {
    if (s.step == "done") continue;
    if (prev && !(s.max < *prev)) return fail(s.stage, 0, "maximum " + to_string(s.max) + " did not drop");
    prev = s.max;
    for (const auto* n : t.stage_nodes(s.stage))
      if (n->center && n->invariant != s.max) return fail(s.stage, n->chart, "center node below the stage maximum");
    ++rep.checks;
  }

  if (t.resolved()) {
    if (t.stages.empty() || t.stages.back().step != "done") return fail(0, 0, "resolved trace without a final stage");
    for (const auto* n : t.stage_nodes(t.stages.back().stage)) {
      if (!sing_is_empty({n->J, b})) return fail(n->stage, n->chart, "Sing(J, b) is not empty at the end");
      ++rep.checks;
    }
  }

  for (const auto& [c, cert] : t.principal) {
    const int last = t.stages.empty() ? 0 : t.stages.back().stage;
    const Chart& chart = tree.chart(c);
    auto split = exceptional_exponents(total_transform(t.input, tree, c), chart);
    if (split.exponents != cert.exponents)
      return fail(last, c, "certificate exponents " + exponents_text(cert.exponents) + " but the total transform gives " +
                               exponents_text(split.exponents));
    Polynomial prod(chart.ring, 1);
    for (const auto& [h, e] : cert.factors) prod *= h.pow(e);
    std::vector<Polynomial> rest;
    bool exact = true;
    for (const auto& g : split.reduced.generators()) {
      auto q = divide_exact(g, prod);
      if (!q) {
        exact = false;
        break;
      }
      rest.push_back(std::move(*q));
    }
    const bool ok = exact && has_unit(Ideal(chart.ring, rest));
    if (ok != cert.verified) return fail(last, c, "certificate flag does not match the replay");
    if (!ok) return fail(last, c, "total transform is not monomial times the divisorial factors");
    rep.checks += 2;
  }

  if (t.desing) {
    for (const auto& [c, I] : t.desing->strict) {
      if (!strict_transform(t.input, tree, c).equals(I)) return fail(t.desing->stage, c, "strict transform mismatch");
      ++rep.checks;
    }
  }

  if (cross_samples > 0) {
    std::mt19937_64 rng(seed);
    for (const auto& s : t.stages) {
      try {
        check_cross_chart(t, s.stage, cross_samples, rng);
      } catch (const InvariantViolation& e) {
        return fail(s.stage, 0, e.what());
      }
      ++rep.checks;
    }
  }
  return rep;
}

}  // namespace desing
