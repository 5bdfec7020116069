#pragma once

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <Eigen/Core>
#include <cmath>
#include <cstdint>

namespace weil {

/// Exact coefficient scalar. Expression templates are switched off so the
/// type behaves like a plain value in Eigen matrices and std::function
/// closures.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;
template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

using RationalVec = Vec<Rational>;
using RationalMat = Mat<Rational>;

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static constexpr const char* name = "float";
  static double from_rational(const Rational& q) { return q.convert_to<double>(); }
  static double abs(double x) { return std::fabs(x); }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr const char* name = "rational";
  static Rational from_rational(const Rational& q) { return q; }
  static Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }
};

/// |a - b| <= tol * max(1, |a|, |b|); exact scalars compare exactly.
template <class S>
bool approx_equal(const S& a, const S& b, double tol) {
  if constexpr (ScalarTraits<S>::exact) {
    (void)tol;
    return a == b;
  } else {
    double scale = std::max({1.0, ScalarTraits<S>::abs(a), ScalarTraits<S>::abs(b)});
    return ScalarTraits<S>::abs(a - b) <= tol * scale;
  }
}

/// Residual magnitude as a double, for report aggregation.
template <class S>
double residual_of(const S& x) {
  if constexpr (ScalarTraits<S>::exact) {
    return x == 0 ? 0.0 : ScalarTraits<Rational>::abs(x).template convert_to<double>();
  } else {
    return std::fabs(x);
  }
}

inline Rational factorial(int n) {
  Rational r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace weil
