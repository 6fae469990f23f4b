#include "desing/gcd.hpp"

#include "desing/errors.hpp"

namespace desing {

namespace {

Polynomial exact(const Polynomial& f, const Polynomial& g) {
  auto q = divide_exact(f, g);
  if (!q) throw InexactDivision("gcd: expected exact division");
  return *q;
}

std::optional<std::size_t> main_variable(const Polynomial& f, const Polynomial& g) {
  for (std::size_t v = f.nvars(); v-- > 0;)
    if (f.involves(v) || g.involves(v)) return v;
  return std::nullopt;
}

Polynomial leading_coeff_in(const Polynomial& f, std::size_t v) {
  return coefficients_in(f, v).back();
}

Polynomial content_in(const Polynomial& f, std::size_t v) {
  return gcd(coefficients_in(f, v));
}

// lc(b)^(deg a - deg b + 1) * a mod b, both viewed as univariate in v.
Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, std::size_t v) {
  const Exponent db = b.degree_in(v);
  const Polynomial lb = leading_coeff_in(b, v);
  Polynomial r = a;
  int e = static_cast<int>(a.degree_in(v)) - static_cast<int>(db) + 1;
  while (!r.is_zero() && r.degree_in(v) >= db) {
    Monomial shift(r.nvars(), 0);
    shift[v] = r.degree_in(v) - db;
    Polynomial lr = leading_coeff_in(r, v);
    r = lb * r - mul_monomial(lr * b, shift);
    --e;
  }
  if (e > 0) r *= lb.pow(static_cast<unsigned>(e));
  return r;
}

}  // namespace

Polynomial gcd(const Polynomial& f, const Polynomial& g) {
  if (f.is_zero()) return g.monic();
  if (g.is_zero()) return f.monic();
  auto mv = main_variable(f, g);
  if (!mv) return Polynomial(f.ring(), 1);
  const std::size_t v = *mv;
  if (!f.involves(v)) return gcd(f, content_in(g, v));
  if (!g.involves(v)) return gcd(content_in(f, v), g);

  Polynomial cf = content_in(f, v), cg = content_in(g, v);
  Polynomial c = gcd(cf, cg);
  Polynomial a = exact(f, cf), b = exact(g, cg);
  if (a.degree_in(v) < b.degree_in(v)) std::swap(a, b);

  // Subresultant remainder sequence.
  Polynomial gg(f.ring(), 1), h(f.ring(), 1);
  for (;;) {
    const Exponent delta = a.degree_in(v) - b.degree_in(v);
    Polynomial r = pseudo_remainder(a, b, v);
    if (r.is_zero()) break;
    if (r.degree_in(v) == 0) return c.monic();
    a = b;
    b = exact(r, gg * h.pow(delta));
    gg = leading_coeff_in(a, v);
    if (delta == 1) {
      h = gg;
    } else if (delta > 1) {
      h = exact(gg.pow(delta), h.pow(delta - 1));
    }
  }
  Polynomial pb = exact(b, content_in(b, v));
  return (c * pb).monic();
}

Polynomial gcd(const std::vector<Polynomial>& fs) {
  if (fs.empty()) throw std::invalid_argument("gcd of an empty list");
  Polynomial acc(fs.front().ring());
  for (const auto& f : fs) {
    acc = gcd(acc, f);
    if (acc.is_constant() && !acc.is_zero()) break;
  }
  return acc;
}

Polynomial squarefree_part(const Polynomial& f) {
  if (f.is_zero() || f.is_constant()) return f.monic();
  std::vector<Polynomial> parts{f};
  for (std::size_t v = 0; v < f.nvars(); ++v)
    if (f.involves(v)) parts.push_back(derivative(f, v));
  return exact(f, gcd(parts)).monic();
}

}  // namespace desing
