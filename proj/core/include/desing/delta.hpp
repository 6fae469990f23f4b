#pragma once

#include <vector>

#include "desing/ideal.hpp"

namespace desing {

// An ideal together with a positive integer bound.
struct Couple {
  Ideal ideal;
  unsigned bound = 1;
};

// Generators together with all their first partial derivatives.
Ideal delta(const Ideal& I);
// Delta applied k times (k = 0 gives I). Each level is formed from the reduced
// basis of the previous one and memoized on I.
Ideal delta_power(const Ideal& I, unsigned k);

// Delta^(b-1)(J); its zero set is Sing(J, b).
Ideal sing(const Couple& c);
bool sing_is_empty(const Couple& c);

// Largest b with Delta^(b-1)(I) proper; 0 for the unit ideal.
unsigned max_order(const Ideal& I);

// Order of I at a rational point: least order of a generator there.
unsigned order_at_point(const Ideal& I, const std::vector<Rational>& point);
unsigned order_at_point(const Polynomial& f, const std::vector<Rational>& point);

}  // namespace desing
