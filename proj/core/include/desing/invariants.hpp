#pragma once

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "desing/delta.hpp"
#include "desing/monomial.hpp"
#include "desing/transforms.hpp"

namespace desing {

// t = (w-ord, n), lexicographic.
struct TValue {
  Rational word;
  unsigned n = 0;

  std::strong_ordering operator<=>(const TValue& o) const;
  bool operator==(const TValue& o) const { return word == o.word && n == o.n; }
};

std::string to_string(const TValue& t);

struct InvariantEntry {
  // Pending marks a level that was not evaluated (printed as "*"); it only
  // appears in chart-local vectors and sorts below everything else.
  enum class Kind { Pending, Gamma, T, Infinity };
  Kind kind = Kind::Infinity;
  TValue t;
  GammaValue gamma;

  static InvariantEntry infinity() { return {}; }
  static InvariantEntry of(const TValue& t) { return {Kind::T, t, {}}; }
  static InvariantEntry of(const GammaValue& g) { return {Kind::Gamma, {}, g}; }
  static InvariantEntry pending() { return {Kind::Pending, {}, {}}; }

  std::strong_ordering operator<=>(const InvariantEntry& o) const;
  bool operator==(const InvariantEntry& o) const { return (*this <=> o) == 0; }
};

struct InvariantVector {
  std::vector<InvariantEntry> entries;

  // r copies of (1,0) followed by infinity, length d + 1.
  static InvariantVector smooth(std::size_t r, std::size_t d);

  std::strong_ordering operator<=>(const InvariantVector& o) const;
  bool operator==(const InvariantVector& o) const { return (*this <=> o) == 0; }
};

std::string to_string(const InvariantEntry& e);
std::string to_string(const InvariantVector& v);

// ord of the reduced ideal at p, over b. Requires p in Sing(J, b).
Rational word_at(const BasicObjectState& state, const std::vector<Rational>& p);

struct MaxWord {
  Rational value;
  unsigned bprime = 0;  // ord of the reduced ideal along Max w-ord
  Ideal locus;          // Delta^(b'-1)(reduced) + Delta^(b-1)(J)
};

// Requires Sing(J, b) non-empty.
MaxWord max_word(const BasicObjectState& state);

// Divisors of `minus` through p when w-ord(p) equals `max_word`, otherwise all
// divisors through p.
unsigned n_at(const BasicObjectState& state, const std::set<DivisorLabel>& minus,
              const std::vector<Rational>& p, const Rational& max_word);

struct MaxT {
  TValue value;
  MaxWord word;
  Ideal locus;
  // Maximal sets S of divisors from `minus` meeting Max w-ord.
  std::vector<std::vector<DivisorLabel>> subsets;
};

MaxT max_t(const BasicObjectState& state, const std::set<DivisorLabel>& minus);
MaxT max_t(const BasicObjectState& state, const std::set<DivisorLabel>& minus, const MaxWord& word);

// Squarefree h with V(h) the union of the codimension-one components of
// Sing(J, b); nullopt when there are none.
std::optional<Polynomial> codim_one_part(const BasicObjectState& state);
std::optional<Polynomial> codim_one_part(const Couple& c);

}  // namespace desing
