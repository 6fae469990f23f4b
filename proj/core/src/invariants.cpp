#include "desing/invariants.hpp"

#include <algorithm>
#include <stdexcept>

#include "desing/delta.hpp"

namespace desing {

namespace {

std::strong_ordering order_of(int c) {
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::vector<std::size_t> vars_of(const BasicObjectState& s, const std::vector<DivisorLabel>& labels) {
  std::vector<std::size_t> out;
  for (auto l : labels)
    for (const auto& [label, var] : s.divisors)
      if (label == l) out.push_back(var);
  return out;
}

}  // namespace

std::strong_ordering TValue::operator<=>(const TValue& o) const {
  if (int c = cmp(word, o.word); c != 0) return order_of(c);
  return n <=> o.n;
}

std::string to_string(const TValue& t) {
  return "(" + to_string(t.word) + "," + std::to_string(t.n) + ")";
}

std::strong_ordering InvariantEntry::operator<=>(const InvariantEntry& o) const {
  if (kind != o.kind) return static_cast<int>(kind) <=> static_cast<int>(o.kind);
  switch (kind) {
    case Kind::T: return t <=> o.t;
    case Kind::Gamma: return gamma <=> o.gamma;
    default: return std::strong_ordering::equal;
  }
}

InvariantVector InvariantVector::smooth(std::size_t r, std::size_t d) {
  InvariantVector v;
  for (std::size_t i = 0; i <= d; ++i)
    v.entries.push_back(i < r ? InvariantEntry::of(TValue{1, 0}) : InvariantEntry::infinity());
  return v;
}

std::strong_ordering InvariantVector::operator<=>(const InvariantVector& o) const {
  const std::size_t n = std::max(entries.size(), o.entries.size());
  for (std::size_t i = 0; i < n; ++i) {
    InvariantEntry a = i < entries.size() ? entries[i] : InvariantEntry::infinity();
    InvariantEntry b = i < o.entries.size() ? o.entries[i] : InvariantEntry::infinity();
    if (auto c = a <=> b; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::string to_string(const InvariantEntry& e) {
  switch (e.kind) {
    case InvariantEntry::Kind::T: return to_string(e.t);
    case InvariantEntry::Kind::Gamma: return to_string(e.gamma);
    case InvariantEntry::Kind::Infinity: return "inf";
    case InvariantEntry::Kind::Pending: return "*";
  }
  return "?";
}

std::string to_string(const InvariantVector& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.entries.size(); ++i) {
    if (i) s += ", ";
    s += to_string(v.entries[i]);
  }
  return s + "]";
}

Rational word_at(const BasicObjectState& state, const std::vector<Rational>& p) {
  if (order_at_point(state.ideal, p) < state.bound)
    throw std::invalid_argument("w-ord requested at a point outside Sing(J, b)");
  Rational w(order_at_point(state.reduced, p));
  w /= state.bound;
  return w;
}

MaxWord max_word(const BasicObjectState& state) {
  const Ideal sing_ideal = sing({state.ideal, state.bound});
  if (sing_ideal.is_trivial()) throw std::invalid_argument("max w-ord on an empty singular locus");
  if (!state.reduced.is_zero() && !state.reduced.is_trivial()) {
    for (unsigned bp = max_order(state.reduced); bp >= 1; --bp) {
      Ideal locus = delta_power(state.reduced, bp - 1) + sing_ideal;
      if (!locus.is_trivial()) {
        Rational w(bp);
        w /= state.bound;
        return {w, bp, locus};
      }
    }
  }
  return {Rational(0), 0, sing_ideal};
}

unsigned n_at(const BasicObjectState& state, const std::set<DivisorLabel>& minus,
              const std::vector<Rational>& p, const Rational& max_word_value) {
  const bool at_max = word_at(state, p) == max_word_value;
  unsigned n = 0;
  for (const auto& [label, var] : state.divisors)
    if (p[var] == 0 && (!at_max || minus.count(label))) ++n;
  return n;
}

MaxT max_t(const BasicObjectState& state, const std::set<DivisorLabel>& minus) {
  return max_t(state, minus, max_word(state));
}

MaxT max_t(const BasicObjectState& state, const std::set<DivisorLabel>& minus, const MaxWord& word) {
  std::vector<DivisorLabel> cand;
  for (const auto& [label, var] : state.divisors)
    if (minus.count(label)) cand.push_back(label);
  const Ring& ring = state.ideal.ring();
  const std::size_t n = cand.size();
  if (n > 20) throw std::invalid_argument("too many divisors");
  for (std::size_t m = n; m >= 1; --m) {
    std::vector<std::vector<DivisorLabel>> hits;
    std::vector<Ideal> parts;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      if (static_cast<std::size_t>(__builtin_popcount(mask)) != m) continue;
      std::vector<DivisorLabel> S;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (1u << i)) S.push_back(cand[i]);
      std::vector<Polynomial> xs;
      for (auto v : vars_of(state, S)) xs.push_back(Polynomial::variable(ring, v));
      Ideal part = word.locus + Ideal(ring, xs, word.locus.inverted());
      if (!part.is_trivial()) {
        hits.push_back(S);
        parts.push_back(part);
      }
    }
    if (!hits.empty()) {
      Ideal locus = parts.front();
      for (std::size_t i = 1; i < parts.size(); ++i) locus = (locus * parts[i]).canonical();
      return {TValue{word.value, static_cast<unsigned>(m)}, word, locus, hits};
    }
  }
  return {TValue{word.value, 0}, word, word.locus, {}};
}

std::optional<Polynomial> codim_one_part(const Couple& c) {
  Polynomial h = sing(c).codim_one_part();
  if (h.is_zero()) throw std::invalid_argument("codimension-one part of the zero ideal");
  if (h.is_constant()) return std::nullopt;
  return h;
}

std::optional<Polynomial> codim_one_part(const BasicObjectState& state) {
  return codim_one_part(Couple{state.ideal, state.bound});
}

}  // namespace desing
