#include "desing/contact.hpp"

#include <algorithm>

#include "desing/errors.hpp"

namespace desing {

namespace {

// g = c*z + rest with c a non-zero constant and rest free of z.
std::optional<Polynomial> unit_linear_rest(const Polynomial& g, std::size_t z) {
  if (g.degree_in(z) != 1) return std::nullopt;
  auto coeffs = coefficients_in(g, z);
  if (!coeffs[1].is_constant()) return std::nullopt;
  Rational c = coeffs[1].constant_term();
  return coeffs[0] * (1 / c);
}

std::vector<Polynomial> dedupe(std::vector<Polynomial> gens) {
  std::vector<Polynomial> out;
  for (auto& g : gens)
    if (!g.is_zero() && std::find(out.begin(), out.end(), g) == out.end()) out.push_back(std::move(g));
  return out;
}

unsigned factorial(unsigned b) {
  unsigned f = 1;
  for (unsigned i = 2; i <= b; ++i) f *= i;
  return f;
}

}  // namespace

MaximalContact find_maximal_contact(const Couple& c, const Chart& chart, const ContactSearch& search) {
  const Ideal D = sing(c);
  if (D.is_trivial()) throw NoMaximalContact("empty singular locus has no hypersurface of maximal contact");
  const std::size_t n = c.ideal.ring()->size();
  const Ring& ring = c.ideal.ring();

  auto usable_exceptional = [&](std::size_t v) {
    auto l = chart.label_of(v);
    return l && !search.forbidden.count(*l) && !search.excluded.count(v);
  };

  if (search.preferred && !search.excluded.count(*search.preferred)) {
    std::size_t v = *search.preferred;
    Polynomial xv = Polynomial::variable(ring, v);
    if ((!chart.is_exceptional(v) || usable_exceptional(v)) && D.contains(xv))
      return {v, xv, std::nullopt, chart.is_exceptional(v)};
  }

  for (std::size_t v = 0; v < n; ++v) {
    if (search.excluded.count(v) || chart.is_exceptional(v)) continue;
    for (const auto* list : {&D.groebner(), &D.generators()}) {
      for (const auto& g : *list) {
        auto rest = unit_linear_rest(g, v);
        if (!rest) continue;
        std::optional<Polynomial> shift;
        if (!rest->is_zero()) shift = *rest;
        return {v, g, shift, false};
      }
    }
  }

  for (std::size_t v = 0; v < n; ++v) {
    if (!usable_exceptional(v)) continue;
    Polynomial xv = Polynomial::variable(ring, v);
    if (D.contains(xv)) return {v, xv, std::nullopt, true};
  }
  throw NoMaximalContact("no order-one element of Delta^" + std::to_string(c.bound - 1) +
                         "(J) is linear with unit coefficient in a usable variable");
}

CoefficientIdeal coefficient_ideal(const Couple& c, std::size_t z, unsigned bound_cap) {
  const unsigned b = c.bound;
  if (b > bound_cap)
    throw FactorialBlowup("coefficient ideal needs bound " + std::to_string(b) +
                          "! beyond the cap " + std::to_string(bound_cap) + "!");
  const unsigned d = factorial(b);
  std::vector<Polynomial> gens;
  for (const auto& f : c.ideal.generators()) {
    auto coeffs = coefficients_in(f, z);
    for (unsigned i = 0; i < b && i < coeffs.size(); ++i)
      if (!coeffs[i].is_zero()) gens.push_back(coeffs[i].pow(d / (b - i)));
  }
  gens = dedupe(std::move(gens));
  if (gens.empty()) throw ZeroCoefficientIdeal("all coefficients below z^" + std::to_string(b) + " vanish");
  return {Ideal(c.ideal.ring(), std::move(gens), c.ideal.inverted()), d, z};
}

Couple intersect_objects(const Couple& a, const Couple& b) {
  if (b.ideal.is_zero()) return a;
  if (a.ideal.is_zero()) return b;
  Ideal sum = a.ideal.power(b.bound) + b.ideal.power(a.bound);
  return {Ideal(sum.ring(), dedupe(sum.generators()), sum.inverted()), a.bound * b.bound};
}

Companion companion_object(const BasicObjectState& state, const MaxT& maxt) {
  if (maxt.word.value == 0) return {true, std::nullopt};
  const unsigned b = state.bound, bp = maxt.word.bprime;
  // (J, b) ∩ (J̄, b') is equivalent to (J̄, b') when b' >= b, since then J^b'
  // lies in J̄^b.
  Couple A = bp >= b ? Couple{state.reduced, bp}
                     : intersect_objects({state.ideal, b}, {state.reduced, bp});
  const Ring& ring = state.ideal.ring();
  Ideal B(ring);
  if (!maxt.subsets.empty()) {
    B = Ideal::unit(ring);
    for (const auto& S : maxt.subsets) {
      std::vector<Polynomial> xs;
      for (auto l : S)
        for (const auto& [label, var] : state.divisors)
          if (label == l) xs.push_back(Polynomial::variable(ring, var));
      B = B * Ideal(ring, xs);
    }
  }
  return {false, intersect_objects(A, {B, 1})};
}

}  // namespace desing
