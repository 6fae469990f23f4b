#include "desing/charts.hpp"

#include <algorithm>
#include <stdexcept>

#include "desing/errors.hpp"
#include "desing/gcd.hpp"

namespace desing {

RationalFunction RationalFunction::from(const Polynomial& p) {
  return {p, Polynomial(p.ring(), 1)};
}

RationalFunction RationalFunction::normalized() const {
  if (den.is_zero()) throw std::domain_error("rational function with zero denominator");
  if (num.is_zero()) return {num, Polynomial(num.ring(), 1)};
  RationalFunction r{num, den};
  if (!den.is_constant()) {
    Polynomial g = gcd(num, den);
    if (!g.is_constant()) {
      r.num = *divide_exact(num, g);
      r.den = *divide_exact(den, g);
    }
  }
  Rational lc = r.den.leading_coefficient();
  if (lc != 1) {
    Rational inv = 1 / lc;
    r.num *= inv;
    r.den *= inv;
  }
  return r;
}

std::optional<Rational> RationalFunction::evaluate(const std::vector<Rational>& point) const {
  Rational d = den.evaluate(point);
  if (d == 0) return std::nullopt;
  return num.evaluate(point) / d;
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  if (a.den == b.den) return RationalFunction{a.num + b.num, a.den}.normalized();
  return RationalFunction{a.num * b.den + b.num * a.den, a.den * b.den}.normalized();
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction{a.num * b.num, a.den * b.den}.normalized();
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  if (b.num.is_zero()) throw std::domain_error("division by zero rational function");
  return RationalFunction{a.num * b.den, a.den * b.num}.normalized();
}

RationalFunction substitute(const Polynomial& f, const std::vector<RationalFunction>& values) {
  if (values.size() != f.nvars()) throw std::invalid_argument("substitute: wrong number of values");
  const Ring& target = values.empty() ? f.ring() : values.front().num.ring();
  RationalFunction sum{Polynomial(target), Polynomial(target, 1)};
  std::vector<std::vector<RationalFunction>> powers(values.size());
  for (const auto& t : f.terms()) {
    RationalFunction prod{Polynomial(target, t.coeff), Polynomial(target, 1)};
    for (std::size_t i = 0; i < t.exponents.size(); ++i) {
      Exponent e = t.exponents[i];
      if (e == 0) continue;
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(RationalFunction::from(Polynomial(target, 1)));
      while (pw.size() <= e) pw.push_back(pw.back() * values[i]);
      prod = prod * pw[e];
    }
    sum = sum + prod;
  }
  return sum;
}

std::optional<DivisorLabel> Chart::label_of(std::size_t var) const {
  auto it = exceptional.find(var);
  if (it == exceptional.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Chart::var_of(DivisorLabel label) const {
  for (const auto& [v, l] : exceptional)
    if (l == label) return v;
  return std::nullopt;
}

const char* to_string(ChartOrigin o) {
  switch (o) {
    case ChartOrigin::Root: return "root";
    case ChartOrigin::Blowup: return "blowup";
    case ChartOrigin::Hypersurface: return "hypersurface";
    case ChartOrigin::CoordinateChange: return "change";
  }
  return "?";
}

ChartTree::ChartTree(Ring ring, const std::vector<std::size_t>& initial) {
  Chart root;
  root.id = 0;
  root.ring = ring;
  root.from_parent = RingMap::identity(ring);
  for (std::size_t i = 0; i < ring->size(); ++i)
    root.to_parent_inverse.push_back(RationalFunction::from(Polynomial::variable(ring, i)));
  for (auto v : initial) {
    if (v >= ring->size()) throw std::invalid_argument("initial divisor variable out of range");
    if (root.exceptional.count(v)) throw std::invalid_argument("initial divisors must be distinct");
    root.exceptional[v] = next_label_;
    label_stage_[next_label_] = 0;
    ++next_label_;
  }
  charts_.push_back(std::move(root));
  frontier_.push_back(0);
}

int ChartTree::add_chart(Chart c, int replaces) {
  c.id = static_cast<int>(charts_.size());
  charts_.push_back(std::move(c));
  auto it = std::find(frontier_.begin(), frontier_.end(), replaces);
  if (it != frontier_.end()) frontier_.erase(it);
  frontier_.push_back(charts_.back().id);
  std::sort(frontier_.begin(), frontier_.end());
  return charts_.back().id;
}

DivisorLabel ChartTree::new_label(int stage) {
  label_stage_[next_label_] = stage;
  return next_label_++;
}

std::vector<int> ChartTree::blowup(int chart_id, const std::vector<std::size_t>& vars, int stage) {
  return blowup(chart_id, vars, stage, next_label_);
}

std::vector<int> ChartTree::blowup(int chart_id, const std::vector<std::size_t>& vars, int stage,
                                   DivisorLabel label) {
  if (std::find(frontier_.begin(), frontier_.end(), chart_id) == frontier_.end())
    throw std::invalid_argument("blow-up of a chart that is not on the frontier");
  if (vars.empty()) throw CenterNotCoordinate("empty blow-up center");
  std::vector<std::size_t> center = vars;
  std::sort(center.begin(), center.end());
  if (std::adjacent_find(center.begin(), center.end()) != center.end())
    throw CenterNotCoordinate("repeated variable in blow-up center");
  const Chart parent = chart(chart_id);
  if (center.back() >= parent.ring->size()) throw CenterNotCoordinate("center variable out of range");

  if (label == next_label_) {
    new_label(stage);
  } else if (label > next_label_ || label < 1 || label_stage_.at(label) != stage) {
    throw std::invalid_argument("blow-up label " + std::to_string(label) + " was not reserved for stage " +
                                std::to_string(stage));
  }
  const Ring& ring = parent.ring;
  std::vector<int> children;
  for (std::size_t pivot : center) {
    Chart c;
    c.ring = ring;
    c.parent = chart_id;
    c.origin = center.size() == 1 ? ChartOrigin::Hypersurface : ChartOrigin::Blowup;
    c.center = center;
    c.pivot = pivot;
    c.stage = stage;
    c.from_parent = RingMap::identity(ring);
    Polynomial xp = Polynomial::variable(ring, pivot);
    for (std::size_t i = 0; i < ring->size(); ++i) {
      Polynomial xi = Polynomial::variable(ring, i);
      bool moved = i != pivot && std::binary_search(center.begin(), center.end(), i);
      if (moved) c.from_parent.images[i] = xi * xp;
      c.to_parent_inverse.push_back(moved ? RationalFunction{xi, xp}
                                          : RationalFunction::from(xi));
    }
    c.exceptional = parent.exceptional;
    c.exceptional[pivot] = label;
    children.push_back(add_chart(std::move(c), chart_id));
  }
  return children;
}

int ChartTree::change_coordinates(int chart_id, std::size_t var, const Polynomial& shift, int stage) {
  if (std::find(frontier_.begin(), frontier_.end(), chart_id) == frontier_.end())
    throw std::invalid_argument("coordinate change on a chart that is not on the frontier");
  const Chart parent = chart(chart_id);
  if (var >= parent.ring->size()) throw std::invalid_argument("variable out of range");
  if (!same_ring(shift.ring(), parent.ring)) throw ContextMismatch();
  if (shift.involves(var)) throw std::invalid_argument("shift involves the moved variable");
  if (shift.is_zero()) return chart_id;
  if (parent.is_exceptional(var))
    throw std::invalid_argument("cannot move an exceptional coordinate");

  Chart c;
  c.ring = parent.ring;
  c.parent = chart_id;
  c.origin = ChartOrigin::CoordinateChange;
  c.changed_var = var;
  c.shift = shift;
  c.stage = stage;
  c.exceptional = parent.exceptional;
  c.from_parent = RingMap::identity(c.ring);
  c.from_parent.images[var] -= shift;
  for (std::size_t i = 0; i < c.ring->size(); ++i) {
    Polynomial xi = Polynomial::variable(c.ring, i);
    c.to_parent_inverse.push_back(RationalFunction::from(i == var ? xi + shift : xi));
  }
  return add_chart(std::move(c), chart_id);
}

std::vector<int> ChartTree::path_to_root(int id) const {
  std::vector<int> path;
  for (std::optional<int> cur = id; cur; cur = chart(*cur).parent) path.push_back(*cur);
  return path;
}

RingMap ChartTree::map_from_root(int chart_id) const {
  auto path = path_to_root(chart_id);
  RingMap m = RingMap::identity(chart(path.back()).ring);
  for (auto it = path.rbegin() + 1; it != path.rend(); ++it) m = chart(*it).from_parent.after(m);
  return m;
}

std::vector<RationalFunction> ChartTree::transition(int from, int to) const {
  auto up = path_to_root(from);
  auto down = path_to_root(to);
  // Strip the common part above the lowest common ancestor.
  while (up.size() > 1 && down.size() > 1 && up[up.size() - 2] == down[down.size() - 2]) {
    up.pop_back();
    down.pop_back();
  }
  // Ancestor coordinates in chart `from`: compose the polynomial maps.
  std::vector<RationalFunction> cur;
  {
    RingMap m = RingMap::identity(chart(up.back()).ring);
    for (auto it = up.rbegin() + 1; it != up.rend(); ++it) m = chart(*it).from_parent.after(m);
    for (const auto& img : m.images) cur.push_back(RationalFunction::from(img));
  }
  for (auto it = down.rbegin() + 1; it != down.rend(); ++it) {
    const Chart& c = chart(*it);
    std::vector<RationalFunction> next;
    next.reserve(c.to_parent_inverse.size());
    for (const auto& r : c.to_parent_inverse)
      next.push_back(substitute(r.num, cur) / substitute(r.den, cur));
    cur = std::move(next);
  }
  return cur;
}

std::vector<ChartTree::Located> ChartTree::locate(int chart_id, const std::vector<Rational>& point) const {
  return locate(chart_id, point, frontier_);
}

std::vector<ChartTree::Located> ChartTree::locate(int chart_id, const std::vector<Rational>& point,
                                                  const std::vector<int>& among) const {
  const Chart& a = chart(chart_id);
  if (point.size() != a.ring->size()) throw std::invalid_argument("point has the wrong dimension");
  std::vector<Located> out;
  for (int b : among) {
    auto tr = transition(chart_id, b);
    Located loc{b, {}};
    bool inside = true;
    for (const auto& r : tr) {
      auto v = r.evaluate(point);
      if (!v) {
        inside = false;
        break;
      }
      loc.point.push_back(*v);
    }
    if (inside) out.push_back(std::move(loc));
  }
  return out;
}

}  // namespace desing
