#pragma once

#include <random>

#include "weil/scalar.hpp"

namespace weil {

/// Seeded randomness for property trials and the verification suites.
/// The generator is std::mt19937_64 with explicit seeding; rationals are
/// drawn with small numerators and denominators, floats from [-2, 2], so
/// nested products stay well conditioned.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}

  std::mt19937_64& engine() { return g_; }

  int uniform_int(int lo, int hi) {  // inclusive bounds
    return std::uniform_int_distribution<int>(lo, hi)(g_);
  }

  Rational rational() {
    int num = uniform_int(-9, 9);
    int den = uniform_int(1, 9);
    return Rational(num) / den;
  }

  Rational nonzero_rational() {
    Rational q = rational();
    while (q == 0) q = rational();
    return q;
  }

  double real() { return std::uniform_real_distribution<double>(-2.0, 2.0)(g_); }

  template <class S>
  S scalar() {
    if constexpr (ScalarTraits<S>::exact)
      return rational();
    else
      return real();
  }

  template <class S>
  S nonzero_scalar() {
    S s = scalar<S>();
    while (s == S(0)) s = scalar<S>();
    return s;
  }

  /// Uniform permutation of {1..n} as a 1-based image vector.
  std::vector<int> permutation(int n) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i + 1;
    std::shuffle(p.begin(), p.end(), g_);
    return p;
  }

 private:
  std::mt19937_64 g_;
};

}  // namespace weil
