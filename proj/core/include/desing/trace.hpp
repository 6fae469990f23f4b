#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "desing/driver.hpp"

namespace desing {

// Malformed or inconsistent trace file.
class TraceFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Stable field order; the same trace always gives the same bytes.
std::string trace_to_json(const ResolutionTrace& trace);
// Rebuilds the chart tree by replaying the recorded blow-ups and coordinate
// changes; a chart whose map disagrees with the replay is rejected.
ResolutionTrace trace_from_json(const std::string& text);

std::string trace_to_text(const ResolutionTrace& trace);
// One node per chart labelled with its divisors and last invariant.
std::string trace_to_dot(const ResolutionTrace& trace);

InvariantVector parse_invariant(const std::string& text);

struct VerifyReport {
  bool ok = true;
  std::size_t checks = 0;
  std::string failure;  // first failing check, naming chart and stage
};

// Replays the exact divisions, exponent extractions and certificates recorded
// in the trace, then samples `cross_samples` points per chart and stage for
// the cross-chart agreement check (0 skips it).
VerifyReport verify_trace(const ResolutionTrace& trace, std::size_t cross_samples = 0, std::uint64_t seed = 1);

}  // namespace desing
