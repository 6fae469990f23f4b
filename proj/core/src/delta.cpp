#include "desing/delta.hpp"

#include <limits>
#include <string>

namespace desing {

Ideal delta(const Ideal& I) {
  std::vector<Polynomial> gens = I.generators();
  const std::size_t n = I.ring()->size();
  for (const auto& f : I.generators())
    for (std::size_t v = 0; v < n; ++v) {
      Polynomial d = derivative(f, v);
      if (!d.is_zero()) gens.push_back(std::move(d));
    }
  return Ideal(I.ring(), std::move(gens), I.inverted());
}

Ideal delta_power(const Ideal& I, unsigned k) {
  if (k == 0) return I;
  return I.memo("delta^" + std::to_string(k), [&] {
    Ideal prev = delta_power(I, k - 1);
    if (prev.is_trivial()) return prev;
    return delta(prev.canonical());
  });
}

Ideal sing(const Couple& c) { return delta_power(c.ideal, c.bound - 1); }

bool sing_is_empty(const Couple& c) { return sing(c).is_trivial(); }

unsigned max_order(const Ideal& I) {
  if (I.is_zero()) throw std::invalid_argument("max_order of the zero ideal");
  if (I.is_trivial()) return 0;
  unsigned b = 1;
  while (!delta_power(I, b).is_trivial()) ++b;
  return b;
}

unsigned order_at_point(const Polynomial& f, const std::vector<Rational>& point) {
  if (f.is_zero()) return std::numeric_limits<unsigned>::max();
  return static_cast<unsigned>(*taylor_shift(f, point).lowest_degree());
}

unsigned order_at_point(const Ideal& I, const std::vector<Rational>& point) {
  unsigned best = std::numeric_limits<unsigned>::max();
  for (const auto& g : I.generators()) best = std::min(best, order_at_point(g, point));
  return best;
}

}  // namespace desing
