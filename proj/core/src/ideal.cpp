#include "desing/ideal.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "desing/errors.hpp"
#include "desing/gcd.hpp"
#include "desing/groebner.hpp"

namespace desing {

struct Ideal::Cache {
  std::once_flag gb_once;
  std::vector<Polynomial> gb;
  std::mutex memo_mutex;
  std::map<std::string, Ideal> memo;
};

namespace {

// Ring with one extra leading variable, used for elimination.
Ring extend_ring(const Ring& ring) {
  std::string name = "t_";
  while (ring->index_of(name)) name += "_";
  std::vector<std::string> names{name};
  names.insert(names.end(), ring->names().begin(), ring->names().end());
  return make_ring(std::move(names));
}

Polynomial embed(const Polynomial& f, const Ring& ext) {
  std::vector<Term> out;
  out.reserve(f.terms().size());
  for (const auto& t : f.terms()) {
    Monomial m(ext->size(), 0);
    std::copy(t.exponents.begin(), t.exponents.end(), m.begin() + 1);
    out.push_back({std::move(m), t.coeff});
  }
  return Polynomial::from_terms(ext, std::move(out));
}

std::vector<Polynomial> eliminate_first(const std::vector<Polynomial>& gens, const Ring& ring) {
  if (gens.empty()) return {};
  auto gb = groebner_basis(gens, MonomialOrder::eliminating(1));
  std::vector<std::size_t> back(ring->size());
  for (std::size_t i = 0; i < back.size(); ++i) back[i] = i + 1;
  std::vector<Polynomial> out;
  for (const auto& g : gb)
    if (!g.involves(0)) out.push_back(restrict_to(g, ring, back));
  return out;
}

Polynomial pick_inverted(const Polynomial& a, const Polynomial& b) {
  if (a.is_constant()) return b;
  if (b.is_constant() || a == b) return a;
  throw std::invalid_argument("ideals localized at different elements");
}

}  // namespace

Ideal::Ideal(Ring ring) : Ideal(ring, {}) {}

Ideal::Ideal(Ring ring, std::vector<Polynomial> generators)
    : Ideal(ring, std::move(generators), Polynomial(ring, 1)) {}

Ideal::Ideal(Ring ring, std::vector<Polynomial> generators, Polynomial inverted)
    : ring_(std::move(ring)), inverted_(std::move(inverted)), cache_(std::make_shared<Cache>()) {
  if (!same_ring(inverted_.ring(), ring_)) throw ContextMismatch();
  if (inverted_.is_zero()) throw std::invalid_argument("cannot invert zero");
  if (inverted_.is_constant()) inverted_ = Polynomial(ring_, 1);
  else inverted_ = inverted_.monic();
  for (auto& g : generators) {
    if (!same_ring(g.ring(), ring_)) throw ContextMismatch();
    if (!g.is_zero()) gens_.push_back(std::move(g));
  }
}

Ideal Ideal::unit(Ring ring) {
  Polynomial one(ring, 1);
  return Ideal(std::move(ring), {one});
}

Ideal Ideal::from_strings(const Ring& ring, const std::vector<std::string>& gens) {
  std::vector<Polynomial> ps;
  for (const auto& s : gens) ps.push_back(parse_polynomial(s, ring));
  return Ideal(ring, std::move(ps));
}

const std::vector<Polynomial>& Ideal::groebner() const {
  std::call_once(cache_->gb_once, [this] {
    if (!localized()) {
      cache_->gb = groebner_basis(gens_);
    } else if (!gens_.empty()) {
      // Rabinowitsch: I + <1 - t*g>, then eliminate t.
      Ring ext = extend_ring(ring_);
      std::vector<Polynomial> g;
      for (const auto& f : gens_) g.push_back(embed(f, ext));
      g.push_back(Polynomial(ext, 1) - Polynomial::variable(ext, 0) * embed(inverted_, ext));
      cache_->gb = eliminate_first(g, ring_);
    }
  });
  return cache_->gb;
}

bool Ideal::is_zero() const { return gens_.empty(); }

bool Ideal::is_trivial() const {
  const auto& gb = groebner();
  return gb.size() == 1 && gb.front().is_constant() && !gb.front().is_zero();
}

Polynomial Ideal::normal_form(const Polynomial& f) const { return desing::normal_form(f, groebner()); }

bool Ideal::contains(const Polynomial& f) const {
  if (f.is_zero()) return true;
  return normal_form(f).is_zero();
}

bool Ideal::contains(const Ideal& other) const {
  for (const auto& g : other.groebner())
    if (!contains(g)) return false;
  return true;
}

bool Ideal::equals(const Ideal& other) const {
  const auto& a = groebner();
  const auto& b = other.groebner();
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

int Ideal::dimension() const {
  const std::size_t n = ring_->size();
  if (is_trivial()) return -1;
  const auto& gb = groebner();
  std::vector<std::uint64_t> supports;
  for (const auto& g : gb) {
    std::uint64_t s = 0;
    const auto& m = g.leading_term().exponents;
    for (std::size_t i = 0; i < n; ++i)
      if (m[i]) s |= (std::uint64_t{1} << i);
    supports.push_back(s);
  }
  int best = 0;
  for (std::uint64_t set = 0; set < (std::uint64_t{1} << n); ++set) {
    int size = __builtin_popcountll(set);
    if (size <= best) continue;
    bool independent = std::none_of(supports.begin(), supports.end(),
                                    [&](std::uint64_t s) { return (s & ~set) == 0; });
    if (independent) best = size;
  }
  return best;
}

Ideal Ideal::operator+(const Ideal& other) const {
  if (!same_ring(ring_, other.ring_)) throw ContextMismatch();
  std::vector<Polynomial> g = gens_;
  g.insert(g.end(), other.gens_.begin(), other.gens_.end());
  return Ideal(ring_, std::move(g), pick_inverted(inverted_, other.inverted_));
}

Ideal Ideal::operator*(const Ideal& other) const {
  if (!same_ring(ring_, other.ring_)) throw ContextMismatch();
  std::vector<Polynomial> g;
  for (const auto& a : gens_)
    for (const auto& b : other.gens_) {
      Polynomial p = a * b;
      if (std::find(g.begin(), g.end(), p) == g.end()) g.push_back(std::move(p));
    }
  return Ideal(ring_, std::move(g), pick_inverted(inverted_, other.inverted_));
}

Ideal Ideal::power(unsigned k) const {
  Ideal acc = Ideal(ring_, {Polynomial(ring_, 1)}, inverted_);
  for (unsigned i = 0; i < k; ++i) acc = acc * *this;
  return acc;
}

Ideal Ideal::with_generator(const Polynomial& f) const {
  std::vector<Polynomial> g = gens_;
  g.push_back(f);
  return Ideal(ring_, std::move(g), inverted_);
}

Ideal Ideal::intersect(const Ideal& other) const {
  if (!same_ring(ring_, other.ring_)) throw ContextMismatch();
  Polynomial inv = pick_inverted(inverted_, other.inverted_);
  const auto& a = localized() ? groebner() : gens_;
  const auto& b = other.localized() ? other.groebner() : other.gens_;
  if (a.empty() || b.empty()) return Ideal(ring_, {}, inv);
  Ring ext = extend_ring(ring_);
  Polynomial t = Polynomial::variable(ext, 0);
  Polynomial one_minus_t = Polynomial(ext, 1) - t;
  std::vector<Polynomial> g;
  for (const auto& f : a) g.push_back(t * embed(f, ext));
  for (const auto& f : b) g.push_back(one_minus_t * embed(f, ext));
  return Ideal(ring_, eliminate_first(g, ring_), inv);
}

Ideal Ideal::colon(const Polynomial& f) const {
  if (f.is_zero()) return Ideal(ring_, {Polynomial(ring_, 1)}, inverted_);
  if (f.is_constant()) return *this;
  Ideal both = intersect(Ideal(ring_, {f}, inverted_));
  std::vector<Polynomial> q;
  for (const auto& g : both.gens_) {
    auto d = divide_exact(g, f);
    if (!d) throw InvariantViolation("colon: element of I ∩ <f> not divisible by f");
    q.push_back(std::move(*d));
  }
  return Ideal(ring_, std::move(q), inverted_);
}

Ideal Ideal::saturate(const Polynomial& f) const {
  Ideal cur = *this;
  for (unsigned i = 0; i < kSaturationCap; ++i) {
    Ideal next = cur.colon(f);
    if (next.equals(cur)) return next;
    cur = std::move(next);
  }
  throw ResourceLimit("saturation did not stabilize within the iteration cap");
}

Ideal Ideal::canonical() const { return Ideal(ring_, groebner(), inverted_); }

Ideal Ideal::localize(const Polynomial& g) const {
  if (g.is_constant()) return *this;
  Polynomial inv = inverted_.is_constant() ? g : inverted_ * g;
  return Ideal(ring_, gens_, squarefree_part(inv));
}

Polynomial Ideal::codim_one_part() const {
  const auto& gb = groebner();
  if (gb.empty()) return Polynomial(ring_);
  Polynomial g = gcd(gb);
  if (localized()) {
    for (;;) {
      Polynomial d = gcd(g, inverted_);
      if (d.is_constant()) break;
      g = *divide_exact(g, d);
    }
  }
  return squarefree_part(g);
}

Ideal Ideal::memo(const std::string& key, const std::function<Ideal()>& compute) const {
  {
    std::lock_guard<std::mutex> lock(cache_->memo_mutex);
    auto it = cache_->memo.find(key);
    if (it != cache_->memo.end()) return it->second;
  }
  Ideal value = compute();
  // The ideal itself: storing it would make the cache own itself.
  if (value.cache_ == cache_) return value;
  std::lock_guard<std::mutex> lock(cache_->memo_mutex);
  return cache_->memo.emplace(key, value).first->second;
}

std::string to_string(const Ideal& I) {
  std::string s = "<";
  for (std::size_t i = 0; i < I.generators().size(); ++i) {
    if (i) s += ", ";
    s += to_string(I.generators()[i]);
  }
  return s + ">";
}

}  // namespace desing
