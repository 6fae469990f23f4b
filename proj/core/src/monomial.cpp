#include "desing/monomial.hpp"

#include <algorithm>
#include <stdexcept>

namespace desing {

std::strong_ordering GammaValue::operator<=>(const GammaValue& o) const {
  if (auto c = neg_p <=> o.neg_p; c != 0) return c;
  int oc = cmp(omega, o.omega);
  if (oc != 0) return oc < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  return ell <=> o.ell;
}

bool GammaValue::operator==(const GammaValue& o) const {
  return neg_p == o.neg_p && omega == o.omega && ell == o.ell;
}

std::string to_string(const GammaValue& g) {
  std::string s = "Γ(" + std::to_string(g.neg_p) + ", " + to_string(g.omega) + ", [";
  for (std::size_t i = 0; i < g.ell.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(g.ell[i]);
  }
  return s + "])";
}

std::optional<GammaValue> gamma_at(const Exponents& a, unsigned b,
                                   const std::vector<DivisorLabel>& through) {
  if (b == 0) throw std::invalid_argument("bound must be positive");
  std::vector<DivisorLabel> labels = through;
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  const std::size_t n = labels.size();
  if (n > 20) throw std::invalid_argument("too many divisors through a point");
  auto exp_of = [&](DivisorLabel l) -> unsigned {
    auto it = a.find(l);
    return it == a.end() ? 0 : it->second;
  };
  for (std::size_t q = 1; q <= n; ++q) {
    std::optional<GammaValue> best;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      if (static_cast<std::size_t>(__builtin_popcount(mask)) != q) continue;
      unsigned long sum = 0;
      std::vector<DivisorLabel> tuple;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (1u << i)) {
          sum += exp_of(labels[i]);
          tuple.push_back(labels[i]);
        }
      if (sum < b) continue;
      Rational omega(static_cast<long>(sum));
      omega /= b;
      GammaValue g{-static_cast<int>(q), omega, tuple};
      if (!best || g > *best) best = g;
    }
    if (best) return best;
  }
  return std::nullopt;
}

std::optional<MaxH> max_h(const Exponents& a, unsigned b, const std::vector<DivisorLabel>& labels) {
  // The value on the intersection of a set T of divisors only depends on T,
  // and gamma_at(T) already picks the best sub-tuple, so the maximum is the
  // best value over all of `labels`.
  auto g = gamma_at(a, b, labels);
  if (!g) return std::nullopt;
  return MaxH{*g, g->ell};
}

Exponents exponents_after(const Exponents& a, unsigned b, const std::vector<DivisorLabel>& center,
                          DivisorLabel fresh) {
  long sum = 0;
  for (auto l : center) {
    auto it = a.find(l);
    if (it == a.end()) throw std::invalid_argument("center divisor without an exponent");
    sum += it->second;
  }
  if (sum < static_cast<long>(b)) throw std::invalid_argument("center not inside the singular locus");
  Exponents out = a;
  out[fresh] = static_cast<unsigned>(sum - static_cast<long>(b));
  return out;
}

}  // namespace desing
