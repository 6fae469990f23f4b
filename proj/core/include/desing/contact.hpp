#pragma once

#include <optional>
#include <set>
#include <vector>

#include "desing/charts.hpp"
#include "desing/delta.hpp"
#include "desing/invariants.hpp"

namespace desing {

struct MaximalContact {
  std::size_t var = 0;
  Polynomial witness;               // element of Delta^(b-1)(J) defining V(z)
  std::optional<Polynomial> shift;  // z -> z - shift makes the witness c*z
  bool exceptional = false;         // the hypersurface is an exceptional hyperplane
};

struct ContactSearch {
  // Variables already used as contact coordinates at outer levels.
  std::set<std::size_t> excluded;
  // Exceptional hyperplanes that may not serve as contact (the next level's divisors).
  std::set<DivisorLabel> forbidden;
  // Tried first when it still works without a change.
  std::optional<std::size_t> preferred;
};

// Order-one element of Delta^(b-1)(J) linear in a variable with a constant
// coefficient. Non-exceptional variables come first (lowest index, then basis
// elements before raw generators); an exceptional hyperplane outside
// `forbidden` is accepted when its coordinate lies in Delta^(b-1)(J).
MaximalContact find_maximal_contact(const Couple& c, const Chart& chart, const ContactSearch& search = {});

// Same ring; `var` does not occur in the ideal.
struct CoefficientIdeal {
  Ideal ideal;
  unsigned bound = 1;
  std::size_t var = 0;
};

constexpr unsigned kDefaultBoundCap = 6;

// Coefficients of z^i (i < b) of every generator, raised to b!/(b-i), bound b!.
CoefficientIdeal coefficient_ideal(const Couple& c, std::size_t z, unsigned bound_cap = kDefaultBoundCap);

// (J^c + K^b, b*c). A zero ideal imposes no condition and is dropped.
Couple intersect_objects(const Couple& a, const Couple& b);

struct Companion {
  bool monomial = false;
  std::optional<Couple> couple;
};

// Simple couple whose singular locus is Max t (monomial when max w-ord is 0).
Companion companion_object(const BasicObjectState& state, const MaxT& maxt);

}  // namespace desing
