#pragma once

#include <cstddef>
#include <vector>

#include "desing/polynomial.hpp"

namespace desing {

// Grevlex, or the product order (grevlex on the first `block` variables, then
// grevlex on the rest) used to eliminate those variables.
struct MonomialOrder {
  std::size_t block = 0;

  static MonomialOrder grevlex() { return {}; }
  static MonomialOrder eliminating(std::size_t first_vars) { return {first_vars}; }
  int compare(const Monomial& a, const Monomial& b) const;
};

// Reduction steps allowed per Groebner basis computation unless a caller
// passes its own budget. Exceeding it throws ResourceLimit.
std::size_t default_reduction_budget();
void set_default_reduction_budget(std::size_t steps);

struct GroebnerStats {
  std::size_t reduction_steps = 0;
  std::size_t pairs_considered = 0;
  std::size_t pairs_skipped = 0;
};

// Reduced, monic Groebner basis, sorted by increasing leading monomial.
// The zero ideal yields an empty basis; the unit ideal yields {1}.
std::vector<Polynomial> groebner_basis(const std::vector<Polynomial>& generators,
                                       MonomialOrder order = MonomialOrder::grevlex(),
                                       std::size_t budget = 0, GroebnerStats* stats = nullptr);

// Remainder of f on division by a Groebner basis for the same order.
Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& basis,
                       MonomialOrder order = MonomialOrder::grevlex());

Monomial leading_monomial(const Polynomial& f, MonomialOrder order);

}  // namespace desing
