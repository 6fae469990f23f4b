#include "desing/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

#include "desing/errors.hpp"

namespace desing {

std::string to_string(const Rational& q) { return q.get_str(); }

namespace {

bool valid_identifier(const std::string& s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

void check_same(const Ring& a, const Ring& b) {
  if (!same_ring(a, b)) throw ContextMismatch();
}

// Merge two descending term lists, scaling the second by `scale`.
std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b,
                              const Rational& scale) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int c;
    if (i == a.size()) c = -1;
    else if (j == b.size()) c = 1;
    else c = grevlex_compare(a[i].exponents, b[j].exponents);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back({b[j].exponents, b[j].coeff * scale});
      ++j;
    } else {
      Rational s = a[i].coeff + b[j].coeff * scale;
      if (s != 0) out.push_back({a[i].exponents, s});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

VariableContext::VariableContext(std::vector<std::string> names) : names_(std::move(names)) {
  std::unordered_set<std::string> seen;
  for (const auto& n : names_) {
    if (!valid_identifier(n)) throw std::invalid_argument("invalid variable name '" + n + "'");
    if (!seen.insert(n).second) throw std::invalid_argument("duplicate variable name '" + n + "'");
  }
}

std::optional<std::size_t> VariableContext::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

Ring make_ring(std::vector<std::string> names) {
  return std::make_shared<const VariableContext>(std::move(names));
}

bool same_ring(const Ring& a, const Ring& b) {
  return a == b || (a && b && a->names() == b->names());
}

std::uint64_t degree(const Monomial& m) {
  std::uint64_t d = 0;
  for (auto e : m) d += e;
  return d;
}

bool divides(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Monomial quotient(const Monomial& a, const Monomial& b) {
  Monomial r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

int grevlex_compare(const Monomial& a, const Monomial& b) {
  auto da = degree(a), db = degree(b);
  if (da != db) return da > db ? 1 : -1;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  }
  return 0;
}

Polynomial::Polynomial(Ring ring) : ring_(std::move(ring)) {}

Polynomial::Polynomial(Ring ring, const Rational& c) : ring_(std::move(ring)) {
  if (c != 0) terms_.push_back({Monomial(ring_->size(), 0), c});
}

Polynomial Polynomial::variable(Ring ring, std::size_t index) {
  Monomial m(ring->size(), 0);
  m.at(index) = 1;
  return monomial(std::move(ring), std::move(m));
}

Polynomial Polynomial::monomial(Ring ring, Monomial m, const Rational& c) {
  Polynomial p(std::move(ring));
  if (c != 0) p.terms_.push_back({std::move(m), c});
  return p;
}

Polynomial Polynomial::from_terms(Ring ring, std::vector<Term> terms) {
  Polynomial p(std::move(ring));
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
    return grevlex_compare(a.exponents, b.exponents) > 0;
  });
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().exponents == t.exponents) {
      p.terms_.back().coeff += t.coeff;
      if (p.terms_.back().coeff == 0) p.terms_.pop_back();
    } else if (t.coeff != 0) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && degree(terms_[0].exponents) == 0);
}

Rational Polynomial::constant_term() const {
  if (!terms_.empty() && degree(terms_.back().exponents) == 0) return terms_.back().coeff;
  return 0;
}

std::uint64_t Polynomial::total_degree() const {
  return terms_.empty() ? 0 : degree(terms_.front().exponents);
}

std::optional<std::uint64_t> Polynomial::lowest_degree() const {
  if (terms_.empty()) return std::nullopt;
  return degree(terms_.back().exponents);
}

Exponent Polynomial::degree_in(std::size_t var) const {
  Exponent d = 0;
  for (const auto& t : terms_) d = std::max(d, t.exponents[var]);
  return d;
}

Exponent Polynomial::min_degree_in(std::size_t var) const {
  if (terms_.empty()) return 0;
  Exponent d = terms_.front().exponents[var];
  for (const auto& t : terms_) d = std::min(d, t.exponents[var]);
  return d;
}

bool Polynomial::involves(std::size_t var) const { return degree_in(var) > 0; }

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  check_same(ring_, o.ring_);
  terms_ = merge_terms(terms_, o.terms_, 1);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  check_same(ring_, o.ring_);
  terms_ = merge_terms(terms_, o.terms_, -1);
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  check_same(ring_, o.ring_);
  if (terms_.empty() || o.terms_.empty()) {
    terms_.clear();
    return *this;
  }
  std::vector<Term> prod;
  prod.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) prod.push_back({a.exponents * b.exponents, a.coeff * b.coeff});
  *this = from_terms(ring_, std::move(prod));
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result(ring_, 1);
  Polynomial base = *this;
  while (e) {
    if (e & 1u) result *= base;
    e >>= 1u;
    if (e) base *= base;
  }
  return result;
}

Polynomial Polynomial::monic() const {
  if (terms_.empty()) return *this;
  Rational inv = 1 / terms_.front().coeff;
  return *this * inv;
}

Rational Polynomial::evaluate(const std::vector<Rational>& point) const {
  Rational sum = 0;
  for (const auto& t : terms_) {
    Rational v = t.coeff;
    for (std::size_t i = 0; i < t.exponents.size(); ++i) {
      if (t.exponents[i] == 0) continue;
      mpq_class p;
      mpz_pow_ui(p.get_num_mpz_t(), point[i].get_num_mpz_t(), t.exponents[i]);
      mpz_pow_ui(p.get_den_mpz_t(), point[i].get_den_mpz_t(), t.exponents[i]);
      v *= p;
    }
    sum += v;
  }
  return sum;
}

bool Polynomial::operator==(const Polynomial& o) const {
  if (!same_ring(ring_, o.ring_) || terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].exponents != o.terms_[i].exponents || terms_[i].coeff != o.terms_[i].coeff)
      return false;
  return true;
}

Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial r = a;
  r *= b;
  return r;
}
Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }

Polynomial derivative(const Polynomial& f, std::size_t var) {
  std::vector<Term> out;
  for (const auto& t : f.terms()) {
    if (t.exponents[var] == 0) continue;
    Term d = t;
    d.coeff *= t.exponents[var];
    d.exponents[var] -= 1;
    out.push_back(std::move(d));
  }
  // Differentiation can reorder terms under grevlex; from_terms re-sorts.
  return Polynomial::from_terms(f.ring(), std::move(out));
}

Polynomial taylor_shift(const Polynomial& f, const std::vector<Rational>& point) {
  RingMap shift = RingMap::identity(f.ring());
  for (std::size_t i = 0; i < point.size(); ++i)
    if (point[i] != 0) shift.images[i] += Polynomial(f.ring(), point[i]);
  return shift.apply(f);
}

Polynomial mul_monomial(const Polynomial& f, const Monomial& m) {
  std::vector<Term> out = f.terms();
  for (auto& t : out) t.exponents = t.exponents * m;
  return Polynomial::from_terms(f.ring(), std::move(out));
}

Polynomial div_monomial(const Polynomial& f, const Monomial& m) {
  std::vector<Term> out = f.terms();
  for (auto& t : out) {
    if (!divides(m, t.exponents)) throw InexactDivision("monomial does not divide " + to_string(f));
    t.exponents = quotient(t.exponents, m);
  }
  return Polynomial::from_terms(f.ring(), std::move(out));
}

std::optional<Polynomial> divide_exact(const Polynomial& f, const Polynomial& g) {
  check_same(f.ring(), g.ring());
  if (g.is_zero()) throw std::domain_error("division by zero polynomial");
  Polynomial r = f;
  std::vector<Term> q;
  const Term& lg = g.leading_term();
  while (!r.is_zero()) {
    const Term& lr = r.leading_term();
    if (!divides(lg.exponents, lr.exponents)) return std::nullopt;
    Term t{quotient(lr.exponents, lg.exponents), lr.coeff / lg.coeff};
    r -= Polynomial::monomial(f.ring(), t.exponents, t.coeff) * g;
    q.push_back(std::move(t));
  }
  return Polynomial::from_terms(f.ring(), std::move(q));
}

std::vector<Polynomial> coefficients_in(const Polynomial& f, std::size_t var) {
  std::vector<std::vector<Term>> buckets(f.degree_in(var) + 1);
  for (const auto& t : f.terms()) {
    Term c = t;
    c.exponents[var] = 0;
    buckets[t.exponents[var]].push_back(std::move(c));
  }
  std::vector<Polynomial> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(Polynomial::from_terms(f.ring(), std::move(b)));
  if (f.is_zero()) out.assign(1, Polynomial(f.ring()));
  return out;
}

Polynomial substitute(const Polynomial& f, std::size_t var, const Polynomial& value) {
  RingMap m = RingMap::identity(f.ring());
  m.images[var] = value;
  return m.apply(f);
}

Polynomial restrict_to(const Polynomial& f, const Ring& target, const std::vector<std::size_t>& map) {
  std::vector<bool> kept(f.nvars(), false);
  for (auto v : map) kept[v] = true;
  std::vector<Term> out;
  out.reserve(f.terms().size());
  for (const auto& t : f.terms()) {
    for (std::size_t i = 0; i < t.exponents.size(); ++i)
      if (!kept[i] && t.exponents[i] != 0)
        throw std::invalid_argument("restrict_to: polynomial involves a dropped variable");
    Monomial m(map.size());
    for (std::size_t i = 0; i < map.size(); ++i) m[i] = t.exponents[map[i]];
    out.push_back({std::move(m), t.coeff});
  }
  return Polynomial::from_terms(target, std::move(out));
}

RingMap RingMap::identity(Ring ring) {
  RingMap m{ring, ring, {}};
  for (std::size_t i = 0; i < ring->size(); ++i) m.images.push_back(Polynomial::variable(ring, i));
  return m;
}

Polynomial RingMap::apply(const Polynomial& f) const {
  check_same(f.ring(), source);
  std::vector<std::vector<Polynomial>> powers(images.size());
  Polynomial sum(target);
  for (const auto& t : f.terms()) {
    Polynomial prod(target, t.coeff);
    for (std::size_t i = 0; i < t.exponents.size(); ++i) {
      Exponent e = t.exponents[i];
      if (e == 0) continue;
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(Polynomial(target, 1));
      while (pw.size() <= e) pw.push_back(pw.back() * images[i]);
      prod *= pw[e];
    }
    sum += prod;
  }
  return sum;
}

RingMap RingMap::after(const RingMap& inner) const {
  check_same(inner.target, source);
  RingMap out{inner.source, target, {}};
  for (const auto& img : inner.images) out.images.push_back(apply(img));
  return out;
}

bool RingMap::is_identity() const {
  if (!same_ring(source, target)) return false;
  for (std::size_t i = 0; i < images.size(); ++i)
    if (images[i] != Polynomial::variable(target, i)) return false;
  return true;
}

std::string to_string(const Polynomial& f) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : f.terms()) {
    Rational c = t.coeff;
    bool negative = c < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < t.exponents.size(); ++i) {
      if (t.exponents[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += f.ring()->name(i);
      if (t.exponents[i] > 1) mono += "^" + std::to_string(t.exponents[i]);
    }
    if (mono.empty()) {
      out += to_string(c);
    } else if (c == 1) {
      out += mono;
    } else {
      out += to_string(c) + "*" + mono;
    }
  }
  return out;
}

namespace {

class Parser {
 public:
  Parser(const std::string& text, const Ring& ring) : s_(text), ring_(ring) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip();
    if (pos_ < s_.size()) throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
    return p;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    Polynomial acc = term();
    for (;;) {
      if (accept('+')) acc += term();
      else if (accept('-')) acc -= term();
      else return acc;
    }
  }

  Polynomial term() {
    Polynomial acc = unary();
    for (;;) {
      if (accept('*')) {
        acc *= unary();
      } else if (accept('/')) {
        std::size_t at = pos_;
        Polynomial d = unary();
        if (!d.is_constant() || d.is_zero())
          throw ParseError("division only by a nonzero constant", at);
        acc *= Rational(1) / d.constant_term();
      } else {
        return acc;
      }
    }
  }

  Polynomial unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Polynomial power() {
    Polynomial base = atom();
    if (accept('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) throw ParseError("expected exponent", start);
      if (pos_ - start > 6) throw ParseError("exponent too large", start);
      return base.pow(static_cast<unsigned>(std::stoul(s_.substr(start, pos_ - start))));
    }
    return base;
  }

  Polynomial atom() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial p = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return Polynomial(ring_, Rational(s_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      auto idx = ring_->index_of(name);
      if (!idx) throw UnknownVariable(name);
      return Polynomial::variable(ring_, *idx);
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  const std::string& s_;
  const Ring& ring_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(const std::string& text, const Ring& ring) {
  return Parser(text, ring).parse();
}

}  // namespace desing
