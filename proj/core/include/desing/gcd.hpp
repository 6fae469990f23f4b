#pragma once

#include <vector>

#include "desing/polynomial.hpp"

namespace desing {

// Monic greatest common divisor over Q. gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& f, const Polynomial& g);
Polynomial gcd(const std::vector<Polynomial>& fs);

// Product of the distinct irreducible factors of f, monic.
Polynomial squarefree_part(const Polynomial& f);

}  // namespace desing
