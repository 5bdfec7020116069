#pragma once

#include <string>
#include <vector>

#include "weil/errors.hpp"

namespace weil {

/// Monomial in k variables, stored as an exponent vector.
using Monomial = std::vector<int>;

int degree(const Monomial& m);
bool divides(const Monomial& divisor, const Monomial& m);
Monomial mul(const Monomial& a, const Monomial& b);
std::string to_string(const Monomial& m);

/// Basis order used everywhere: ascending total degree, then descending
/// lexicographic on the exponent vector, so x1 sorts before x2.
bool basis_less(const Monomial& a, const Monomial& b);

/// A monomial-presented infinitesimal object: k nilpotent generators and a
/// monomial ideal of relations. Validated so that the quotient algebra has
/// a finite monomial basis containing 1.
class InfinitesimalObject {
 public:
  InfinitesimalObject(std::string name, int generators, std::vector<Monomial> ideal_gens);

  const std::string& name() const { return name_; }
  int generators() const { return k_; }
  const std::vector<Monomial>& ideal() const { return ideal_; }

  /// Least e with x_i^e = 0; exponents of basis monomials satisfy exp < bound.
  int exponent_bound(int var) const { return bounds_[var]; }

  bool in_ideal(const Monomial& m) const;

  // The objects the calculus actually runs on.
  static InfinitesimalObject cube(int n);              // D^n: all x_i^2
  static InfinitesimalObject axes(int n);              // D(n): x_i^2 and x_i x_j
  static InfinitesimalObject line(int order);          // D_k: x^{k+1}
  static InfinitesimalObject square_oplus_line();      // D^2 (+) D: x_i^2, x_i x_3

 private:
  std::string name_;
  int k_;
  std::vector<Monomial> ideal_;
  std::vector<int> bounds_;
};

inline InfinitesimalObject make_infinitesimal_object(std::string name, int generators,
                                                     std::vector<Monomial> ideal_gens) {
  return InfinitesimalObject(std::move(name), generators, std::move(ideal_gens));
}

}  // namespace weil
