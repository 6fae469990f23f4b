#pragma once

#include <map>
#include <set>
#include <vector>

#include "desing/charts.hpp"
#include "desing/ideal.hpp"

namespace desing {

using Exponents = std::map<DivisorLabel, unsigned>;

// J = (prod x_i^a_i) * reduced, over the exceptional coordinates considered.
struct ExceptionalSplit {
  Exponents exponents;
  Ideal reduced;
};

// A basic object restricted to one chart.
struct BasicObjectState {
  int chart = 0;
  Ideal ideal;
  unsigned bound = 1;
  std::vector<std::pair<DivisorLabel, std::size_t>> divisors;  // (label, variable)
  Exponents exponents;
  Ideal reduced;

  // Divisors are all exceptional hyperplanes of the chart.
  static BasicObjectState make(const Chart& chart, Ideal ideal, unsigned bound);
  // Divisors restricted to the given labels.
  static BasicObjectState make(const Chart& chart, Ideal ideal, unsigned bound,
                               const std::set<DivisorLabel>& labels);
};

// Split of the divisors into those present at stage k0 and those created later.
struct EMinusSplit {
  int k0 = 0;
  std::set<DivisorLabel> minus;
  std::set<DivisorLabel> plus;
};

ExceptionalSplit exceptional_exponents(const Ideal& I,
                                       const std::vector<std::pair<DivisorLabel, std::size_t>>& divisors);
ExceptionalSplit exceptional_exponents(const Ideal& I, const Chart& chart);

// Transform of (J, b) into `child`: the pulled-back generators divided by the
// new exceptional coordinate to the power b (no division for coordinate
// changes). Throws InexactDivision when the center was not inside Sing(J, b).
BasicObjectState controlled_transform(const BasicObjectState& state, const Chart& child);
// The same on a bare ideal.
Ideal controlled_transform(const Ideal& J, unsigned b, const Chart& child);

// Total transform of the root ideal I saturated by every exceptional coordinate.
Ideal strict_transform(const Ideal& I, const ChartTree& tree, int chart_id);
// Total transform of a root ideal into the chart.
Ideal total_transform(const Ideal& I, const ChartTree& tree, int chart_id);

// J / h^b, same chart. Throws InexactDivision if some generator is not divisible.
BasicObjectState divisorial_blowdown(const BasicObjectState& state, const Chart& chart,
                                     const Polynomial& h);

}  // namespace desing
