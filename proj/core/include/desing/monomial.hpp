#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "desing/transforms.hpp"

namespace desing {

// h = (-p, omega, ell), compared lexicographically.
struct GammaValue {
  int neg_p = 0;
  Rational omega;
  std::vector<DivisorLabel> ell;  // increasing labels

  std::strong_ordering operator<=>(const GammaValue& o) const;
  bool operator==(const GammaValue& o) const;
};

std::string to_string(const GammaValue& g);

// Value at a point lying exactly on the divisors `through`. nullopt when no
// subset of them reaches the bound (the point is outside Sing).
std::optional<GammaValue> gamma_at(const Exponents& a, unsigned b,
                                   const std::vector<DivisorLabel>& through);

struct MaxH {
  GammaValue value;
  std::vector<DivisorLabel> center;  // the hyperplanes cut out Max h
};

// Maximum of gamma over the intersections of the given divisors. nullopt when
// the monomial object has empty singular locus.
std::optional<MaxH> max_h(const Exponents& a, unsigned b, const std::vector<DivisorLabel>& labels);

// Exponents after blowing up the intersection of `center`: the new divisor
// gets sum a_i - b, the others are unchanged (those whose hyperplane is the
// pivot leave the chart; that is the caller's business).
Exponents exponents_after(const Exponents& a, unsigned b, const std::vector<DivisorLabel>& center,
                          DivisorLabel fresh);

}  // namespace desing
