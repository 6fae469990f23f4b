#include "desing/groebner.hpp"

#include <algorithm>
#include <optional>

#include "desing/errors.hpp"

namespace desing {

namespace {

std::size_t g_default_budget = 10000;

int grevlex_range(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
  std::uint64_t da = 0, db = 0;
  for (std::size_t i = lo; i < hi; ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da > db ? 1 : -1;
  for (std::size_t i = hi; i-- > lo;)
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  return 0;
}

using Terms = std::vector<Term>;

struct Budget {
  std::size_t remaining;
  GroebnerStats* stats;
  void spend() {
    if (remaining == 0) throw ResourceLimit("Groebner basis reduction budget exhausted");
    --remaining;
    if (stats) ++stats->reduction_steps;
  }
};

class Engine {
 public:
  explicit Engine(MonomialOrder order) : order_(order) {}

  Terms sorted(const Polynomial& f) const {
    Terms t = f.terms();
    if (order_.block != 0)
      std::sort(t.begin(), t.end(), [this](const Term& a, const Term& b) {
        return order_.compare(a.exponents, b.exponents) > 0;
      });
    return t;
  }

  static void make_monic(Terms& t) {
    if (t.empty()) return;
    Rational inv = 1 / t.front().coeff;
    for (auto& x : t) x.coeff *= inv;
  }

  // h - c * m * g
  Terms sub_scaled(const Terms& h, const Terms& g, const Monomial& m, const Rational& c) const {
    Terms out;
    out.reserve(h.size() + g.size());
    std::size_t i = 0, j = 0;
    Monomial mg;
    while (i < h.size() || j < g.size()) {
      if (j < g.size()) mg = g[j].exponents * m;
      int cmp;
      if (i == h.size()) cmp = -1;
      else if (j == g.size()) cmp = 1;
      else cmp = order_.compare(h[i].exponents, mg);
      if (cmp > 0) {
        out.push_back(h[i++]);
      } else if (cmp < 0) {
        out.push_back({mg, -c * g[j].coeff});
        ++j;
      } else {
        Rational s = h[i].coeff - c * g[j].coeff;
        if (s != 0) out.push_back({mg, s});
        ++i;
        ++j;
      }
    }
    return out;
  }

  std::optional<std::size_t> find_divisor(const Monomial& m, const std::vector<Terms>& basis,
                                          const std::vector<bool>* alive) const {
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if (alive && !(*alive)[k]) continue;
      if (divides(basis[k].front().exponents, m)) return k;
    }
    return std::nullopt;
  }

  // Full reduction: every term of the result is irreducible.
  Terms reduce(Terms h, const std::vector<Terms>& basis, const std::vector<bool>* alive,
               Budget* budget, bool top_only = false) const {
    Terms rem;
    while (!h.empty()) {
      const Term& lt = h.front();
      auto k = find_divisor(lt.exponents, basis, alive);
      if (k) {
        if (budget) budget->spend();
        const Terms& g = basis[*k];
        Monomial m = quotient(lt.exponents, g.front().exponents);
        Rational c = lt.coeff / g.front().coeff;
        h = sub_scaled(h, g, m, c);
      } else {
        if (top_only) {
          rem.insert(rem.end(), h.begin(), h.end());
          break;
        }
        rem.push_back(lt);
        h.erase(h.begin());
      }
    }
    return rem;
  }

  MonomialOrder order_;
};

}  // namespace

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  if (block == 0 || block >= a.size()) return grevlex_compare(a, b);
  int c = grevlex_range(a, b, 0, block);
  if (c != 0) return c;
  return grevlex_range(a, b, block, a.size());
}

std::size_t default_reduction_budget() { return g_default_budget; }
void set_default_reduction_budget(std::size_t steps) { g_default_budget = steps; }

Monomial leading_monomial(const Polynomial& f, MonomialOrder order) {
  if (f.is_zero()) throw std::invalid_argument("leading monomial of zero");
  if (order.block == 0) return f.leading_term().exponents;
  const Monomial* best = &f.terms().front().exponents;
  for (const auto& t : f.terms())
    if (order.compare(t.exponents, *best) > 0) best = &t.exponents;
  return *best;
}

std::vector<Polynomial> groebner_basis(const std::vector<Polynomial>& generators, MonomialOrder order,
                                       std::size_t budget_steps, GroebnerStats* stats) {
  if (generators.empty()) return {};
  const Ring ring = generators.front().ring();
  Engine eng(order);
  Budget budget{budget_steps ? budget_steps : g_default_budget, stats};

  std::vector<Terms> basis;
  std::vector<bool> alive;
  struct Pair {
    std::size_t i, j;
    Monomial lcm;
  };
  std::vector<Pair> pairs;
  // pending[j][i] for i < j: the pair has not been treated yet.
  std::vector<std::vector<bool>> pending;

  auto add = [&](Terms h) {
    Engine::make_monic(h);
    const std::size_t n = basis.size();
    pending.emplace_back(n, false);
    for (std::size_t k = 0; k < n; ++k) {
      if (!alive[k]) continue;
      Monomial l = lcm(basis[k].front().exponents, h.front().exponents);
      pairs.push_back({k, n, std::move(l)});
      pending[n][k] = true;
    }
    basis.push_back(std::move(h));
    alive.push_back(true);
  };

  for (const auto& g : generators) {
    if (!same_ring(g.ring(), ring)) throw ContextMismatch();
    Terms h = eng.reduce(eng.sorted(g), basis, &alive, &budget, true);
    if (h.empty()) continue;
    if (degree(h.front().exponents) == 0) return {Polynomial(ring, 1)};
    add(std::move(h));
  }

  auto is_pending = [&](std::size_t a, std::size_t b) -> bool {
    if (a == b) return false;
    return a < b ? pending[b][a] : pending[a][b];
  };

  while (!pairs.empty()) {
    // Normal selection: smallest lcm first, earliest pair on ties.
    std::size_t best = 0;
    for (std::size_t p = 1; p < pairs.size(); ++p)
      if (order.compare(pairs[p].lcm, pairs[best].lcm) < 0) best = p;
    Pair pr = std::move(pairs[best]);
    pairs.erase(pairs.begin() + static_cast<std::ptrdiff_t>(best));
    pending[pr.j][pr.i] = false;
    if (stats) ++stats->pairs_considered;

    const Monomial& li = basis[pr.i].front().exponents;
    const Monomial& lj = basis[pr.j].front().exponents;
    bool coprime = true;
    for (std::size_t v = 0; v < li.size(); ++v)
      if (li[v] && lj[v]) {
        coprime = false;
        break;
      }
    bool chain = false;
    if (!coprime) {
      for (std::size_t k = 0; k < basis.size() && !chain; ++k) {
        if (k == pr.i || k == pr.j) continue;
        if (divides(basis[k].front().exponents, pr.lcm) && !is_pending(pr.i, k) &&
            !is_pending(pr.j, k))
          chain = true;
      }
    }
    if (coprime || chain) {
      if (stats) ++stats->pairs_skipped;
      continue;
    }

    Terms s = eng.sub_scaled({}, basis[pr.i], quotient(pr.lcm, li), -1);
    s = eng.sub_scaled(s, basis[pr.j], quotient(pr.lcm, lj), 1);
    Terms h = eng.reduce(std::move(s), basis, &alive, &budget, true);
    if (h.empty()) continue;
    if (degree(h.front().exponents) == 0) return {Polynomial(ring, 1)};
    add(std::move(h));
  }

  // Minimal basis, then reduce each element by the others.
  const std::size_t n = basis.size();
  std::vector<bool> keep(n, true);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n && keep[a]; ++b) {
      if (a == b || !keep[b]) continue;
      if (divides(basis[b].front().exponents, basis[a].front().exponents)) keep[a] = false;
    }
  }
  std::vector<Terms> minimal;
  for (std::size_t a = 0; a < n; ++a)
    if (keep[a]) minimal.push_back(basis[a]);
  std::vector<Terms> reduced;
  for (std::size_t a = 0; a < minimal.size(); ++a) {
    std::vector<bool> others(minimal.size(), true);
    others[a] = false;
    Terms head{minimal[a].front()};
    Terms tail(minimal[a].begin() + 1, minimal[a].end());
    Terms r = eng.reduce(std::move(tail), minimal, &others, &budget);
    head.insert(head.end(), r.begin(), r.end());
    Engine::make_monic(head);
    reduced.push_back(std::move(head));
  }
  std::sort(reduced.begin(), reduced.end(), [&](const Terms& a, const Terms& b) {
    return order.compare(a.front().exponents, b.front().exponents) < 0;
  });
  std::vector<Polynomial> out;
  out.reserve(reduced.size());
  for (auto& t : reduced) out.push_back(Polynomial::from_terms(ring, std::move(t)));
  return out;
}

Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& basis, MonomialOrder order) {
  Engine eng(order);
  std::vector<Terms> b;
  b.reserve(basis.size());
  for (const auto& g : basis) b.push_back(eng.sorted(g));
  Terms r = eng.reduce(eng.sorted(f), b, nullptr, nullptr);
  return Polynomial::from_terms(f.ring(), std::move(r));
}

}  // namespace desing
