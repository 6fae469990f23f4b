#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace desing {

// Malformed polynomial text. position is a 0-based byte offset.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class UnknownVariable : public std::runtime_error {
 public:
  explicit UnknownVariable(const std::string& name)
      : std::runtime_error("unknown variable '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

// Operands live in different variable contexts.
class ContextMismatch : public std::logic_error {
 public:
  ContextMismatch() : std::logic_error("polynomials belong to different variable contexts") {}
};

class InexactDivision : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configured budget (reduction steps, blow-ups, colon iterations) ran out.
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A requested center is not a coordinate subspace of the chart.
class CenterNotCoordinate : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A coefficient ideal would need a bound b! beyond the configured cap.
class FactorialBlowup : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The coefficient ideal of a couple vanished identically.
class ZeroCoefficientIdeal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// No order-one element linear in a usable variable was found.
class NoMaximalContact : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A property the algorithm guarantees (monotonicity, exact division, agreement
// of two computations) failed on a concrete run.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace desing
