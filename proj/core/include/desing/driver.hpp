#pragma once

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "desing/charts.hpp"
#include "desing/contact.hpp"
#include "desing/invariants.hpp"
#include "desing/transforms.hpp"

namespace desing {

struct DriverOptions {
  std::size_t max_blowups = 64;
  std::size_t gb_budget = 0;  // 0 keeps the library default
  unsigned bound_cap = kDefaultBoundCap;
  // Watch for the stage where max f reaches the smooth value.
  bool track_desing = false;
  // Codimension of X for the smooth value; computed from the input when unset.
  std::optional<std::size_t> codim;
  // Check at the end that every leaf total transform is monomial times the
  // recorded divisorial factors (only meaningful for bound 1).
  bool certify = false;
};

// One descent step: contact coordinate chosen at `level` and the coefficient
// ideal it produced one level down.
struct DescentStep {
  std::size_t level = 0;
  std::size_t var = 0;
  Ideal ideal;
  unsigned bound = 1;
};

struct CenterRecord {
  std::vector<std::size_t> vars;           // coordinate center, empty for a divisorial step
  std::optional<Polynomial> divisorial;    // hypersurface divided out without a label
  std::vector<std::pair<std::size_t, Polynomial>> change;  // coordinate changes made this stage
  std::vector<DescentStep> descent;
};

struct ResolutionNode {
  int chart = 0;
  int stage = 0;
  Ideal J;
  unsigned bound = 1;
  Exponents a;
  // Exceptional exponents of the total transform of the input ideal.
  Exponents total;
  // Global maximum when the chart meets the center; otherwise the chart's own
  // values down to the level where it fell below the maximum ("*" after that).
  // Empty when Sing(J, b) is empty in the chart.
  InvariantVector invariant;
  std::optional<CenterRecord> center;
};

struct StageSummary {
  int stage = 0;
  InvariantVector max;
  std::optional<TValue> top_t;  // max t at the outermost level
  std::string step;             // "blowup", "divisorial" or "done"
};

// Total transform = prod x_L^c_L * prod h^e * (unit ideal) in one chart.
struct PrincipalCertificate {
  Exponents exponents;
  std::vector<std::pair<Polynomial, unsigned>> factors;
  bool verified = false;
};

struct DesingRecord {
  int stage = 0;
  std::map<int, Ideal> strict;  // frontier chart -> strict transform
  bool smooth = false;
  bool transversal = false;
};

struct ResolutionTrace {
  Ideal input;
  unsigned bound = 1;
  std::vector<std::size_t> initial_divisors;
  ChartTree tree;
  std::vector<ResolutionNode> nodes;
  std::vector<StageSummary> stages;
  std::string status;      // "resolved" or "aborted"
  std::string error_type;  // exception class name on abort
  std::string error;       // message on abort
  std::map<int, PrincipalCertificate> principal;
  std::optional<DesingRecord> desing;

  bool resolved() const { return status == "resolved"; }
  std::size_t blowups() const;
  // Nodes of one stage, in chart order.
  std::vector<const ResolutionNode*> stage_nodes(int stage) const;
};

// Resolve (J, b) with E given by the listed coordinate hyperplanes. Typed
// failures (CenterNotCoordinate, FactorialBlowup, ResourceLimit, ...) end the
// run with status "aborted" and the partial trace; other exceptions propagate.
ResolutionTrace resolve_object(const Ideal& J, unsigned b, const std::vector<std::size_t>& initial_divisors = {},
                               const DriverOptions& options = {});

// Resolution of (I, 1) with a principalization certificate per leaf chart.
ResolutionTrace principalize(const Ideal& I, const DriverOptions& options = {});

// Principalization watched for the first stage where max f is the smooth value.
ResolutionTrace embedded_desing(const Ideal& I, DriverOptions options = {});

// Samples points of every frontier chart of `stage`, maps them to the other
// charts of that stage through the transition maps and compares ord J, ord of
// the reduced ideal and the set of divisors through the point. Returns the
// number of compared pairs; throws InvariantViolation on a mismatch.
std::size_t check_cross_chart(const ResolutionTrace& trace, int stage, std::size_t samples, std::mt19937_64& rng);

// Jacobian criterion: V(I) smooth of codimension r.
bool is_smooth(const Ideal& I, std::size_t r);

}  // namespace desing
