#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "desing/delta.hpp"
#include "desing/errors.hpp"
#include "desing/trace.hpp"

namespace desing::cli {
namespace {

using nlohmann::json;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Problem {
  Ring ring;
  Ideal ideal;
  unsigned bound = 1;
  std::vector<std::size_t> divisors;
  std::optional<std::size_t> max_steps;
  std::optional<std::size_t> gb_budget;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Problem load_problem(const std::string& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
  try {
    if (!j.is_object() || !j.contains("vars") || !j.contains("gens"))
      throw InputError(path + ": expected an object with \"vars\" and \"gens\"");
    auto vars = j.at("vars").get<std::vector<std::string>>();
    if (vars.empty()) throw InputError(path + ": no variables");
    if (std::set<std::string>(vars.begin(), vars.end()).size() != vars.size())
      throw InputError(path + ": repeated variable name");
    Ring ring = make_ring(vars);
    auto gens = j.at("gens").get<std::vector<std::string>>();
    if (gens.empty()) throw InputError(path + ": no generators");
    Problem p{ring, Ideal::from_strings(ring, gens)};
    if (p.ideal.is_zero()) throw InputError(path + ": the ideal is zero");
    if (j.contains("bound")) {
      int b = j.at("bound").get<int>();
      if (b < 1) throw InputError(path + ": bound must be positive");
      p.bound = static_cast<unsigned>(b);
    }
    if (j.contains("divisors")) {
      std::set<std::size_t> seen;
      for (const auto& name : j.at("divisors").get<std::vector<std::string>>()) {
        auto v = ring->index_of(name);
        if (!v) throw InputError(path + ": divisor '" + name + "' is not a variable");
        if (!seen.insert(*v).second) throw InputError(path + ": divisor '" + name + "' listed twice");
        p.divisors.push_back(*v);
      }
    }
    if (j.contains("budgets")) {
      const auto& b = j.at("budgets");
      if (b.contains("max_steps")) p.max_steps = b.at("max_steps").get<std::size_t>();
      if (b.contains("gb_budget")) p.gb_budget = b.at("gb_budget").get<std::size_t>();
    }
    return p;
  } catch (const json::exception& e) {
    throw InputError(path + ": " + e.what());
  } catch (const ParseError& e) {
    throw InputError(path + ": " + e.what());
  } catch (const UnknownVariable& e) {
    throw InputError(path + ": " + e.what());
  }
}

struct Options {
  std::string spec;
  std::string out;
  std::string format = "text";
  std::optional<std::size_t> max_steps;
  std::optional<std::size_t> gb_budget;
  std::uint64_t seed = 1;
  std::size_t samples = 20;
  std::optional<unsigned> bound;
};

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--out", o.out, "Write the result to this file");
  sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json", "dot"}));
  sub->add_option("--max-steps", o.max_steps, "Maximum number of blow-ups");
  sub->add_option("--gb-budget", o.gb_budget, "Groebner basis step budget");
  sub->add_option("--seed", o.seed, "Seed for sampled checks");
}

void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw InputError("cannot write " + o.out);
  f << text;
}

std::string ideal_json(const Ideal& I) {
  json a = json::array();
  for (const auto& g : I.generators()) a.push_back(to_string(g));
  return a.dump();
}

int cmd_maxord(const Options& o, std::ostream& out) {
  Problem p = load_problem(o.spec);
  const unsigned m = max_order(p.ideal);
  Ideal top = m > 0 ? delta_power(p.ideal, m - 1).canonical() : Ideal::unit(p.ring);
  Ideal s = sing({p.ideal, p.bound}).canonical();
  std::ostringstream t;
  if (o.format == "json") {
    t << "{\"max_order\": " << m << ", \"delta\": " << ideal_json(top) << ", \"bound\": " << p.bound
      << ", \"sing\": " << ideal_json(s) << "}\n";
  } else {
    t << m << "\n";
    t << "Delta^" << (m > 0 ? m - 1 : 0) << "(J) = " << to_string(top) << "\n";
    t << "Sing(J, " << p.bound << ") = " << to_string(s) << "\n";
  }
  emit(o, t.str(), out);
  return kResolved;
}

int cmd_singlocus(const Options& o, std::ostream& out) {
  Problem p = load_problem(o.spec);
  Ideal s = sing({p.ideal, p.bound}).canonical();
  std::ostringstream t;
  if (o.format == "json") {
    t << "{\"bound\": " << p.bound << ", \"sing\": " << ideal_json(s) << ", \"empty\": " << (s.is_trivial() ? "true" : "false")
      << "}\n";
  } else if (s.is_trivial()) {
    t << "Sing(J, " << p.bound << ") is empty\n";
  } else {
    t << "Sing(J, " << p.bound << ") = " << to_string(s) << ", dimension " << s.dimension() << "\n";
  }
  emit(o, t.str(), out);
  return kResolved;
}

std::string render(const ResolutionTrace& t, const std::string& format) {
  if (format == "json") return trace_to_json(t);
  if (format == "dot") return trace_to_dot(t);
  return trace_to_text(t);
}

enum class Mode { Principalize, Desing, Resolve };

int cmd_run(Mode mode, const Options& o, std::ostream& out, std::ostream& err) {
  Problem p = load_problem(o.spec);
  DriverOptions d;
  if (auto n = o.max_steps ? o.max_steps : p.max_steps) d.max_blowups = *n;
  if (auto n = o.gb_budget ? o.gb_budget : p.gb_budget) d.gb_budget = *n;
  unsigned b = 1;
  if (mode == Mode::Resolve) b = o.bound.value_or(p.bound);
  d.certify = b == 1;
  d.track_desing = mode == Mode::Desing;
  ResolutionTrace t = resolve_object(p.ideal, b, p.divisors, d);
  emit(o, render(t, o.format), out);
  if (!o.out.empty()) out << t.status << ", " << t.blowups() << " blow-ups\n";
  if (!t.resolved()) {
    err << "aborted: " << t.error_type << ": " << t.error << "\n";
    return kAborted;
  }
  if (mode == Mode::Desing && !t.desing) err << "no stage reached the smooth value\n";
  return kResolved;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  auto load = [&] {
    try {
      return trace_from_json(read_file(o.spec));
    } catch (const TraceFormatError& e) {
      throw InputError(o.spec + ": " + e.what());
    }
  };
  const ResolutionTrace t = load();
  VerifyReport r = verify_trace(t, o.samples, o.seed);
  if (!r.ok) {
    err << "verify failed: " << r.failure << "\n";
    return kAborted;
  }
  out << "ok, " << r.checks << " checks\n";
  return kResolved;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Constructive resolution of singularities over Q"};
  app.require_subcommand(1);
  Options o;

  auto* maxord = app.add_subcommand("maxord", "Maximal order of J and the top Delta power");
  auto* singlocus = app.add_subcommand("singlocus", "Ideal of Sing(J, b)");
  auto* principalize = app.add_subcommand("principalize", "Principalize J");
  auto* desing = app.add_subcommand("desing", "Embedded desingularization of V(J)");
  auto* resolve = app.add_subcommand("resolve", "Resolve the basic object (J, b)");
  auto* verify = app.add_subcommand("verify", "Check a trace file");
  for (auto* s : {maxord, singlocus, principalize, desing, resolve}) {
    s->add_option("spec", o.spec, "Problem file (JSON)")->required();
    add_common(s, o);
  }
  resolve->add_option("--bound", o.bound, "Bound b (overrides the problem file)")->check(CLI::PositiveNumber);
  verify->add_option("trace", o.spec, "Trace file (JSON)")->required();
  verify->add_option("--seed", o.seed, "Seed for the cross-chart sample");
  verify->add_option("--samples", o.samples, "Cross-chart sample points per chart and stage");

  std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kResolved;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kInputError;
  }

  try {
    if (*maxord) return cmd_maxord(o, out);
    if (*singlocus) return cmd_singlocus(o, out);
    if (*principalize) return cmd_run(Mode::Principalize, o, out, err);
    if (*desing) return cmd_run(Mode::Desing, o, out, err);
    if (*resolve) return cmd_run(Mode::Resolve, o, out, err);
    return cmd_verify(o, out, err);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kAborted;
  }
}

}  // namespace desing::cli
