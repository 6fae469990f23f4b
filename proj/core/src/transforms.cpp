#include "desing/transforms.hpp"

#include <algorithm>

#include "desing/errors.hpp"

namespace desing {

namespace {

std::vector<Polynomial> dedupe(std::vector<Polynomial> gens) {
  std::vector<Polynomial> out;
  for (auto& g : gens) {
    if (g.is_zero()) continue;
    if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(std::move(g));
  }
  return out;
}

Monomial unit_monomial(std::size_t n, std::size_t var, unsigned e) {
  Monomial m(n, 0);
  m[var] = e;
  return m;
}

}  // namespace

ExceptionalSplit exceptional_exponents(const Ideal& I,
                                       const std::vector<std::pair<DivisorLabel, std::size_t>>& divisors) {
  std::vector<Polynomial> gens = I.generators();
  Exponents a;
  for (const auto& [label, var] : divisors) {
    unsigned e = 0;
    if (!gens.empty()) {
      e = ~0u;
      for (const auto& g : gens) e = std::min<unsigned>(e, g.min_degree_in(var));
    }
    a[label] = e;
    if (e == 0) continue;
    Monomial m = unit_monomial(I.ring()->size(), var, e);
    for (auto& g : gens) g = div_monomial(g, m);
  }
  return {a, Ideal(I.ring(), dedupe(std::move(gens)), I.inverted())};
}

ExceptionalSplit exceptional_exponents(const Ideal& I, const Chart& chart) {
  std::vector<std::pair<DivisorLabel, std::size_t>> divs;
  for (const auto& [var, label] : chart.exceptional) divs.emplace_back(label, var);
  std::sort(divs.begin(), divs.end());
  return exceptional_exponents(I, divs);
}

BasicObjectState BasicObjectState::make(const Chart& chart, Ideal ideal, unsigned bound) {
  std::set<DivisorLabel> all;
  for (const auto& [var, label] : chart.exceptional) all.insert(label);
  return make(chart, std::move(ideal), bound, all);
}

BasicObjectState BasicObjectState::make(const Chart& chart, Ideal ideal, unsigned bound,
                                        const std::set<DivisorLabel>& labels) {
  if (bound == 0) throw std::invalid_argument("bound must be positive");
  std::vector<std::pair<DivisorLabel, std::size_t>> divs;
  for (const auto& [var, label] : chart.exceptional)
    if (labels.count(label)) divs.emplace_back(label, var);
  std::sort(divs.begin(), divs.end());
  auto split = exceptional_exponents(ideal, divs);
  return {chart.id, std::move(ideal), bound, std::move(divs), std::move(split.exponents),
          std::move(split.reduced)};
}

Ideal controlled_transform(const Ideal& J, unsigned b, const Chart& child) {
  std::vector<Polynomial> gens;
  const bool divides_out =
      child.origin == ChartOrigin::Blowup || child.origin == ChartOrigin::Hypersurface;
  Monomial m;
  if (divides_out) m = unit_monomial(child.ring->size(), child.pivot, b);
  for (const auto& g : J.generators()) {
    Polynomial t = child.from_parent.apply(g);
    if (divides_out) {
      if (t.min_degree_in(child.pivot) < b)
        throw InexactDivision("controlled transform: generator not divisible by the exceptional "
                              "coordinate to the power " + std::to_string(b) + " in chart " +
                              std::to_string(child.id));
      t = div_monomial(t, m);
    }
    gens.push_back(std::move(t));
  }
  return Ideal(child.ring, dedupe(std::move(gens)), child.from_parent.apply(J.inverted()));
}

BasicObjectState controlled_transform(const BasicObjectState& state, const Chart& child) {
  if (!child.parent || *child.parent != state.chart)
    throw std::invalid_argument("controlled transform into a chart that is not a child");
  Ideal J = controlled_transform(state.ideal, state.bound, child);
  std::set<DivisorLabel> labels;
  for (const auto& [label, var] : state.divisors) labels.insert(label);
  // The new divisor joins whenever the object carried all of its chart's divisors.
  for (const auto& [var, label] : child.exceptional)
    if (!labels.count(label) && (child.origin == ChartOrigin::Blowup ||
                                 child.origin == ChartOrigin::Hypersurface) &&
        var == child.pivot)
      labels.insert(label);
  return BasicObjectState::make(child, std::move(J), state.bound, labels);
}

Ideal total_transform(const Ideal& I, const ChartTree& tree, int chart_id) {
  RingMap m = tree.map_from_root(chart_id);
  std::vector<Polynomial> gens;
  for (const auto& g : I.generators()) gens.push_back(m.apply(g));
  return Ideal(tree.chart(chart_id).ring, dedupe(std::move(gens)));
}

Ideal strict_transform(const Ideal& I, const ChartTree& tree, int chart_id) {
  Ideal total = total_transform(I, tree, chart_id);
  const Chart& c = tree.chart(chart_id);
  // Strip common exceptional factors first; saturation then only has to deal
  // with the embedded part.
  Ideal cur = exceptional_exponents(total, c).reduced;
  for (const auto& [var, label] : c.exceptional)
    cur = cur.saturate(Polynomial::variable(c.ring, var));
  return cur.canonical();
}

BasicObjectState divisorial_blowdown(const BasicObjectState& state, const Chart& chart,
                                     const Polynomial& h) {
  if (h.is_constant()) throw std::invalid_argument("divisorial blow-down along a constant");
  Polynomial hb = h.pow(state.bound);
  std::vector<Polynomial> gens;
  for (const auto& g : state.ideal.generators()) {
    auto q = divide_exact(g, hb);
    if (!q)
      throw InexactDivision("divisorial blow-down: generator not divisible by (" + to_string(h) +
                            ")^" + std::to_string(state.bound));
    gens.push_back(std::move(*q));
  }
  std::set<DivisorLabel> labels;
  for (const auto& [label, var] : state.divisors) labels.insert(label);
  return BasicObjectState::make(chart, Ideal(state.ideal.ring(), dedupe(std::move(gens)),
                                             state.ideal.inverted()),
                                state.bound, labels);
}

}  // namespace desing
