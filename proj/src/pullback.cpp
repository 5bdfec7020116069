#include "weil/pullback.hpp"

#include "weil/errors.hpp"

namespace weil {

Eigen::Index row_echelon(RationalMat& m) {
  const Eigen::Index rows = m.rows(), cols = m.cols();
  Eigen::Index rank = 0;
  for (Eigen::Index col = 0; col < cols && rank < rows; ++col) {
    Eigen::Index pivot = -1;
    for (Eigen::Index r = rank; r < rows; ++r)
      if (m(r, col) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    m.row(pivot).swap(m.row(rank));
    m.row(rank) /= m(rank, col);
    for (Eigen::Index r = 0; r < rows; ++r)
      if (r != rank && m(r, col) != 0) m.row(r) -= m(r, col) * m.row(rank);
    ++rank;
  }
  return rank;
}

Eigen::Index rank_of(RationalMat m) { return row_echelon(m); }

RationalMat null_space(const RationalMat& m) {
  RationalMat e = m;
  Eigen::Index rank = row_echelon(e);
  const Eigen::Index cols = m.cols();

  std::vector<Eigen::Index> pivot_col(rank);
  std::vector<bool> is_pivot(cols, false);
  for (Eigen::Index r = 0; r < rank; ++r) {
    Eigen::Index c = 0;
    while (c < cols && e(r, c) == 0) ++c;
    pivot_col[r] = c;
    is_pivot[c] = true;
  }

  RationalMat basis = RationalMat::Zero(cols, cols - rank);
  Eigen::Index out = 0;
  for (Eigen::Index free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    basis(free, out) = 1;
    for (Eigen::Index r = 0; r < rank; ++r) basis(pivot_col[r], out) = -e(r, free);
    ++out;
  }
  return basis;
}

namespace {

// True when v lies in the column span of basis.
bool in_span(const RationalMat& basis, const RationalVec& v) {
  RationalMat aug(basis.rows(), basis.cols() + 1);
  aug.leftCols(basis.cols()) = basis;
  aug.col(basis.cols()) = v;
  return rank_of(aug) == rank_of(basis);
}

}  // namespace

PullbackReport check_pullback_square(const AlgebraHom& f, const AlgebraHom& g,
                                     const AlgebraPtr& apex, const AlgebraHom& c1,
                                     const AlgebraHom& c2, bool exact) {
  if (!exact) throw FloatContextRejected("pullback verification requires exact rationals");
  if (f.target()->basis() != g.target()->basis())
    throw DimensionMismatch("base algebras of the two legs differ");
  if (c1.source() != apex || c2.source() != apex)
    throw DimensionMismatch("cone legs must start at the apex");
  if (c1.target() != f.source() || c2.target() != g.source())
    throw DimensionMismatch("cone legs must land in the sources of the legs");

  PullbackReport report;

  const RationalMat fm = f.matrix(), gm = g.matrix();
  RationalMat square = compose(f, c1).matrix() - compose(g, c2).matrix();
  report.commutes = square.isZero();
  if (!report.commutes) throw NonCommutingSquare("f . c1 != g . c2");

  const Eigen::Index da = f.source()->dim(), db = g.source()->dim();
  RationalMat constraint(fm.rows(), da + db);
  constraint.leftCols(da) = fm;
  constraint.rightCols(db) = -gm;
  RationalMat fibered = null_space(constraint);  // columns span {(u,v) : f u = g v}
  report.pullback_dim = fibered.cols();

  // The fibered product must be closed under componentwise multiplication.
  report.product_closed = true;
  for (Eigen::Index i = 0; i < fibered.cols() && report.product_closed; ++i)
    for (Eigen::Index j = i; j < fibered.cols() && report.product_closed; ++j) {
      RationalVec u = f.source()->mul_elems(fibered.col(i).head(da), fibered.col(j).head(da));
      RationalVec v = g.source()->mul_elems(fibered.col(i).tail(db), fibered.col(j).tail(db));
      RationalVec prod(da + db);
      prod.head(da) = u;
      prod.tail(db) = v;
      if (!in_span(fibered, prod)) report.product_closed = false;
    }

  // Canonical map w -> (c1 w, c2 w); image is inside the fibered product
  // because the square commutes, so bijectivity is a rank condition.
  RationalMat canonical(da + db, apex->dim());
  canonical.topRows(da) = c1.matrix();
  canonical.bottomRows(db) = c2.matrix();
  report.canonical_rank = rank_of(canonical);
  report.is_limit = report.product_closed && report.canonical_rank == apex->dim() &&
                    report.canonical_rank == report.pullback_dim;
  return report;
}

}  // namespace weil
