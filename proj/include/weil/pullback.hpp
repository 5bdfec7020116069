#pragma once

#include "weil/algebra.hpp"

namespace weil {

/// Exact Gaussian elimination; returns the rank and leaves m in row echelon
/// form. Rationals only, no pivoting concerns.
Eigen::Index row_echelon(RationalMat& m);
Eigen::Index rank_of(RationalMat m);

/// Basis of the null space of m, as columns.
RationalMat null_space(const RationalMat& m);

struct PullbackReport {
  bool commutes = false;       // f . c1 == g . c2
  bool product_closed = false; // fibered product closed under multiplication
  bool is_limit = false;       // canonical map is an isomorphism onto it
  Eigen::Index pullback_dim = 0;
  Eigen::Index canonical_rank = 0;
};

/// Checks that the apex with cone legs c1 : W -> A1, c2 : W -> A2 is the
/// pullback of f : A1 -> B <- A2 : g. The fibered product is computed as
/// the null space of [f | -g] on A1 x A2; the canonical map w -> (c1 w, c2 w)
/// must be a linear isomorphism onto it, and the product of any two of its
/// members must stay inside it.
///
/// Exact coefficients only; `exact` is the caller's scalar mode and anything
/// other than rational is refused.
PullbackReport check_pullback_square(const AlgebraHom& f, const AlgebraHom& g,
                                     const AlgebraPtr& apex, const AlgebraHom& c1,
                                     const AlgebraHom& c2, bool exact = true);

}  // namespace weil
