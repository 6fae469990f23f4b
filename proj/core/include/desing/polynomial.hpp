#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace desing {

using Rational = mpq_class;

std::string to_string(const Rational& q);

// Ordered list of variable names. Polynomials refer to it by pointer; two
// contexts with the same names are considered compatible.
class VariableContext {
 public:
  explicit VariableContext(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> index_of(const std::string& name) const;

 private:
  std::vector<std::string> names_;
};

using Ring = std::shared_ptr<const VariableContext>;

Ring make_ring(std::vector<std::string> names);
bool same_ring(const Ring& a, const Ring& b);

using Exponent = std::uint32_t;
using Monomial = std::vector<Exponent>;

std::uint64_t degree(const Monomial& m);
bool divides(const Monomial& a, const Monomial& b);
Monomial lcm(const Monomial& a, const Monomial& b);
Monomial operator*(const Monomial& a, const Monomial& b);
// a / b, assuming b divides a.
Monomial quotient(const Monomial& a, const Monomial& b);

// Graded reverse lexicographic comparison: negative, zero or positive.
int grevlex_compare(const Monomial& a, const Monomial& b);

struct GrevlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return grevlex_compare(a, b) > 0; }
};

struct Term {
  Monomial exponents;
  Rational coeff;
};

class Polynomial {
 public:
  explicit Polynomial(Ring ring);
  Polynomial(Ring ring, const Rational& c);

  static Polynomial variable(Ring ring, std::size_t index);
  static Polynomial monomial(Ring ring, Monomial m, const Rational& c = 1);
  // Terms are summed and sorted; zero coefficients are dropped.
  static Polynomial from_terms(Ring ring, std::vector<Term> terms);

  const Ring& ring() const { return ring_; }
  std::size_t nvars() const { return ring_->size(); }
  // Descending grevlex order.
  const std::vector<Term>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  const Term& leading_term() const { return terms_.front(); }
  Rational leading_coefficient() const { return terms_.front().coeff; }

  std::uint64_t total_degree() const;
  // Smallest total degree of a term: the order at the origin. Zero polynomial
  // has no order; returns nullopt.
  std::optional<std::uint64_t> lowest_degree() const;
  Exponent degree_in(std::size_t var) const;
  Exponent min_degree_in(std::size_t var) const;
  bool involves(std::size_t var) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);

  Polynomial pow(unsigned e) const;
  Polynomial monic() const;
  Rational evaluate(const std::vector<Rational>& point) const;

  bool operator==(const Polynomial& o) const;
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

 private:
  Ring ring_;
  std::vector<Term> terms_;
};

Polynomial operator+(Polynomial a, const Polynomial& b);
Polynomial operator-(Polynomial a, const Polynomial& b);
Polynomial operator*(const Polynomial& a, const Polynomial& b);
Polynomial operator*(Polynomial a, const Rational& c);
Polynomial operator*(const Rational& c, Polynomial a);

Polynomial derivative(const Polynomial& f, std::size_t var);
// f(x + p): re-expands f around the point p.
Polynomial taylor_shift(const Polynomial& f, const std::vector<Rational>& point);

// Multiply by / divide by a monomial. Division throws InexactDivision.
Polynomial mul_monomial(const Polynomial& f, const Monomial& m);
Polynomial div_monomial(const Polynomial& f, const Monomial& m);

// Exact quotient f / g when g divides f, otherwise nullopt.
std::optional<Polynomial> divide_exact(const Polynomial& f, const Polynomial& g);

// Coefficients of f as a polynomial in var: result[i] is the coefficient of
// var^i (a polynomial free of var, in the same ring).
std::vector<Polynomial> coefficients_in(const Polynomial& f, std::size_t var);

// Substitute var := value (a polynomial of the same ring).
Polynomial substitute(const Polynomial& f, std::size_t var, const Polynomial& value);

// Move f into a ring whose i-th variable is variable map[i] of f's ring.
// Variables of f absent from map must not occur in f.
Polynomial restrict_to(const Polynomial& f, const Ring& target, const std::vector<std::size_t>& map);

// Polynomial map source -> target given by the images of the source variables.
struct RingMap {
  Ring source;
  Ring target;
  std::vector<Polynomial> images;

  static RingMap identity(Ring ring);
  Polynomial apply(const Polynomial& f) const;
  // (this after inner): first inner, then this.
  RingMap after(const RingMap& inner) const;
  bool is_identity() const;
};

std::string to_string(const Polynomial& f);
Polynomial parse_polynomial(const std::string& text, const Ring& ring);

}  // namespace desing
