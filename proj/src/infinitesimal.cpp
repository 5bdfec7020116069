#include "weil/infinitesimal.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace weil {

int degree(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0); }

bool divides(const Monomial& divisor, const Monomial& m) {
  for (std::size_t i = 0; i < divisor.size(); ++i)
    if (divisor[i] > m[i]) return false;
  return true;
}

Monomial mul(const Monomial& a, const Monomial& b) {
  Monomial r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

std::string to_string(const Monomial& m) {
  std::ostringstream os;
  bool any = false;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (any) os << "*";
    os << "x" << (i + 1);
    if (m[i] > 1) os << "^" << m[i];
    any = true;
  }
  return any ? os.str() : "1";
}

bool basis_less(const Monomial& a, const Monomial& b) {
  int da = degree(a), db = degree(b);
  if (da != db) return da < db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

InfinitesimalObject::InfinitesimalObject(std::string name, int generators,
                                         std::vector<Monomial> ideal_gens)
    : name_(std::move(name)), k_(generators), ideal_(std::move(ideal_gens)) {
  if (k_ < 0) throw InvalidIdeal("generator count must be nonnegative");
  bounds_.assign(k_, 0);
  for (const Monomial& g : ideal_) {
    if (static_cast<int>(g.size()) != k_)
      throw InvalidIdeal("ideal generator arity does not match generator count");
    if (degree(g) < 2)
      throw InvalidIdeal("ideal generator " + to_string(g) + " has total degree < 2");
    // Pure powers bound the exponents; record the tightest one per variable.
    int support = 0, var = -1;
    for (int i = 0; i < k_; ++i)
      if (g[i] > 0) {
        ++support;
        var = i;
      }
    if (support == 1 && (bounds_[var] == 0 || g[var] < bounds_[var])) bounds_[var] = g[var];
  }
  for (int i = 0; i < k_; ++i)
    if (bounds_[i] == 0)
      throw InvalidIdeal("generator x" + std::to_string(i + 1) +
                         " is not nilpotent under the given ideal");
}

bool InfinitesimalObject::in_ideal(const Monomial& m) const {
  for (const Monomial& g : ideal_)
    if (divides(g, m)) return true;
  return false;
}

InfinitesimalObject InfinitesimalObject::cube(int n) {
  std::vector<Monomial> gens;
  for (int i = 0; i < n; ++i) {
    Monomial g(n, 0);
    g[i] = 2;
    gens.push_back(g);
  }
  return InfinitesimalObject("D^" + std::to_string(n), n, std::move(gens));
}

InfinitesimalObject InfinitesimalObject::axes(int n) {
  std::vector<Monomial> gens;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Monomial g(n, 0);
      g[i] += 1;
      g[j] += 1;
      gens.push_back(g);
    }
  return InfinitesimalObject("D(" + std::to_string(n) + ")", n, std::move(gens));
}

InfinitesimalObject InfinitesimalObject::line(int order) {
  if (order < 1) throw InvalidIdeal("line order must be >= 1");
  Monomial g{order + 1};
  return InfinitesimalObject("D_" + std::to_string(order), 1, {g});
}

InfinitesimalObject InfinitesimalObject::square_oplus_line() {
  std::vector<Monomial> gens = {{2, 0, 0}, {0, 2, 0}, {0, 0, 2}, {1, 0, 1}, {0, 1, 1}};
  return InfinitesimalObject("D^2+D", 3, std::move(gens));
}

}  // namespace weil
