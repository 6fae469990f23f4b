#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "desing/polynomial.hpp"

namespace desing {

// Ideal of Q[x] localized at one polynomial g (g = 1 for the plain ring).
// Generators are kept as given; the Groebner basis is computed once and shared
// between copies. In the localized ring the basis is that of the saturation
// I : g^infinity, which represents I·Q[x]_g faithfully.
class Ideal {
 public:
  explicit Ideal(Ring ring);
  Ideal(Ring ring, std::vector<Polynomial> generators);
  Ideal(Ring ring, std::vector<Polynomial> generators, Polynomial inverted);

  static Ideal unit(Ring ring);
  static Ideal from_strings(const Ring& ring, const std::vector<std::string>& gens);

  const Ring& ring() const { return ring_; }
  const std::vector<Polynomial>& generators() const { return gens_; }
  const Polynomial& inverted() const { return inverted_; }
  bool localized() const { return !inverted_.is_constant(); }

  // Reduced monic grevlex basis (of the saturation when localized).
  const std::vector<Polynomial>& groebner() const;

  bool is_zero() const;
  bool is_trivial() const;
  bool contains(const Polynomial& f) const;
  bool contains(const Ideal& other) const;
  // Same ideal (mutual containment).
  bool equals(const Ideal& other) const;
  Polynomial normal_form(const Polynomial& f) const;

  // Krull dimension of the quotient; -1 for the unit ideal.
  int dimension() const;

  Ideal operator+(const Ideal& other) const;
  Ideal operator*(const Ideal& other) const;
  Ideal power(unsigned k) const;
  Ideal with_generator(const Polynomial& f) const;

  Ideal intersect(const Ideal& other) const;
  Ideal colon(const Polynomial& f) const;
  // Iterated colon I : f^k until it stabilizes.
  Ideal saturate(const Polynomial& f) const;

  // Same ideal, generated by its Groebner basis.
  Ideal canonical() const;
  // The same generators read in a ring where `g` is also inverted.
  Ideal localize(const Polynomial& g) const;

  // Squarefree polynomial whose zero set is the union of the codimension-one
  // components of V(I). Constant 1 when there are none; 0 for the zero ideal.
  Polynomial codim_one_part() const;

  // Memoized derived ideal keyed by `key`, shared by copies of this ideal.
  Ideal memo(const std::string& key, const std::function<Ideal()>& compute) const;

 private:
  struct Cache;
  Ring ring_;
  std::vector<Polynomial> gens_;
  Polynomial inverted_;
  std::shared_ptr<Cache> cache_;
};

std::string to_string(const Ideal& I);

// Maximum number of colon iterations in Ideal::saturate.
constexpr unsigned kSaturationCap = 64;

}  // namespace desing
