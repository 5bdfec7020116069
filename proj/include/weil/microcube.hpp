#pragma once

#include <vector>

#include "weil/context.hpp"

namespace weil {

/// A point of R^m over a coefficient context: one element per coordinate.
template <class S>
using Point = std::vector<Element<S>>;

template <class S>
Point<S> point_from_scalars(const std::vector<S>& xs, const ContextPtr& ctx) {
  Point<S> p;
  p.reserve(xs.size());
  for (const S& x : xs) p.push_back(Element<S>::constant(ctx, x));
  return p;
}

/// An element of R^m tensored with the top algebra of its coordinates'
/// context; degree n microcubes carry W_{D^n} on top. The same type also
/// holds the D^2+D variant used by the strong difference.
template <class S>
class Microcube {
 public:
  explicit Microcube(Point<S> coords) : coords_(std::move(coords)) {
    if (coords_.empty()) throw DimensionMismatch("microcube needs at least one coordinate");
    for (std::size_t i = 1; i < coords_.size(); ++i)
      require_same(coords_[0].context(), coords_[i].context());
    if (coords_[0].context()->depth() == 0)
      throw ContextMismatch("microcube coordinates need a prolongation level on top");
  }

  static Microcube from_point(const Point<S>& p, const AlgebraPtr& top) {
    Point<S> coords;
    coords.reserve(p.size());
    for (const Element<S>& c : p) coords.push_back(lifted(c, top));
    return Microcube(std::move(coords));
  }

  int model_dim() const { return static_cast<int>(coords_.size()); }
  int degree() const { return top()->generators(); }
  const AlgebraPtr& top() const { return coords_[0].context()->top(); }
  ContextPtr base_context() const { return coords_[0].context()->pop(); }
  const ContextPtr& context() const { return coords_[0].context(); }

  const Point<S>& coords() const { return coords_; }
  const Element<S>& coord(int i) const { return coords_[i]; }

  /// Taylor coefficient block for one top basis monomial.
  Point<S> coefficient(Eigen::Index basis_index) const {
    Point<S> b;
    b.reserve(coords_.size());
    for (const Element<S>& c : coords_) b.push_back(top_coefficient(c, basis_index));
    return b;
  }

  Point<S> base_point() const { return coefficient(0); }

  template <class F>
  Microcube map_coords(F&& f) const {
    Point<S> out;
    out.reserve(coords_.size());
    for (const Element<S>& c : coords_) out.push_back(f(c));
    return Microcube(std::move(out));
  }

 private:
  Point<S> coords_;
};

template <class S>
using TangentVector = Microcube<S>;  // degree 1 by convention

// ---- Taylor correspondence --------------------------------------------------

/// The coefficient table of a microcube: one m-vector over the remaining
/// context per basis monomial of the top algebra. For W_{D^n} tops the keys
/// are exactly the subsets of {1..n}.
template <class S>
struct TaylorTable {
  ContextPtr base;
  AlgebraPtr top;
  std::vector<Point<S>> entries;  // indexed like top->basis()

  int model_dim() const { return static_cast<int>(entries.at(0).size()); }

  Point<S>& by_mask(unsigned mask) { return entries.at(top->index_of_mask(mask)); }
  const Point<S>& by_mask(unsigned mask) const { return entries.at(top->index_of_mask(mask)); }
};

template <class S>
TaylorTable<S> to_taylor(const Microcube<S>& cube) {
  if (!cube.top()->square_free())
    throw ContextMismatch("Taylor tables need a square-free prolongation level");
  TaylorTable<S> t;
  t.base = cube.base_context();
  t.top = cube.top();
  for (Eigen::Index j = 0; j < cube.top()->dim(); ++j) t.entries.push_back(cube.coefficient(j));
  return t;
}

template <class S>
Microcube<S> from_taylor(const TaylorTable<S>& t) {
  if (t.entries.size() != static_cast<std::size_t>(t.top->dim()))
    throw DimensionMismatch("table entry count != top algebra dimension");
  const int m = t.model_dim();
  Point<S> coords;
  for (int i = 0; i < m; ++i) {
    std::vector<Element<S>> blocks;
    blocks.reserve(t.entries.size());
    for (const Point<S>& entry : t.entries) {
      if (static_cast<int>(entry.size()) != m)
        throw DimensionMismatch("table entries have inconsistent lengths");
      blocks.push_back(entry[i]);
    }
    coords.push_back(from_top_coefficients(t.base, t.top, blocks));
  }
  return Microcube<S>(std::move(coords));
}

// ---- reparametrization ------------------------------------------------------

template <class S>
Microcube<S> restrict_along(const Microcube<S>& cube, const AlgebraHom& h) {
  return cube.map_coords([&](const Element<S>& c) { return apply_hom_top(c, h); });
}

template <class S>
Microcube<S> reparametrize(const Microcube<S>& cube, const std::vector<int>& perm) {
  return cube.map_coords([&](const Element<S>& c) { return reparametrize_top(c, perm); });
}

template <class S>
Microcube<S> scale_slot(const Microcube<S>& cube, int slot, const S& alpha) {
  return cube.map_coords([&](const Element<S>& c) { return scale_slot_top(c, slot, alpha); });
}

template <class S>
Microcube<S> face(const Microcube<S>& cube, const std::vector<int>& kept_slots) {
  return cube.map_coords([&](const Element<S>& c) { return face_top(c, kept_slots); });
}

// ---- tangent extraction -----------------------------------------------------

/// Direction of a tangent (degree-1 microcube).
template <class S>
Point<S> extract_d(const Microcube<S>& tangent) {
  if (tangent.degree() != 1) throw DimensionMismatch("extract_d needs a degree-1 microcube");
  return tangent.coefficient(1);
}

/// Slot-i derivative: rotate slot i last, regard the last slot as the W_D
/// factor, and take its coefficient. Returns a degree n-1 microcube whose
/// slots are the remaining ones in order.
template <class S>
Microcube<S> extract_d_slot(int slot, const Microcube<S>& cube) {
  const int n = cube.degree();
  if (n < 1 || slot < 1 || slot > n) throw DimensionMismatch("bad slot for extract_d_slot");
  std::vector<int> rotate(n);  // x_j -> x_{rho(j)}: slot `slot` becomes last
  for (int j = 1; j <= n; ++j)
    rotate[j - 1] = j < slot ? j : j == slot ? n : j - 1;
  return cube.map_coords([&](const Element<S>& c) {
    Element<S> r = reparametrize_top(c, rotate);
    r = split_top(r, n - 1, 1);
    return top_coefficient(r, 1);
  });
}

// ---- strong differences -----------------------------------------------------

template <class S>
bool approx_equal(const Point<S>& a, const Point<S>& b, double tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!approx_equal(a[i], b[i], tol)) return false;
  return true;
}

template <class S>
bool approx_equal(const Microcube<S>& a, const Microcube<S>& b, double tol) {
  if (a.model_dim() != b.model_dim()) return false;
  for (int i = 0; i < a.model_dim(); ++i)
    if (!approx_equal(a.coord(i), b.coord(i), tol)) return false;
  return true;
}

/// Strong difference of two microsquares that agree away from the top
/// coefficient. Built by gluing the unique D^2+D element whose two
/// square-shaped restrictions are the operands, then restricting along
/// d -> (0,0,d); the closed-form direction (difference of the top
/// coefficients) is cross-checked against it.
template <class S>
TangentVector<S> strong_diff(const Microcube<S>& g1, const Microcube<S>& g2, double tol = 1e-9) {
  if (g1.degree() != 2 || g2.degree() != 2)
    throw DimensionMismatch("strong_diff needs two microsquares");
  if (g1.model_dim() != g2.model_dim()) throw DimensionMismatch("model dimensions differ");
  TaylorTable<S> t1 = to_taylor(g1), t2 = to_taylor(g2);

  const AlgebraPtr glue = square_oplus_line_algebra();
  const ContextPtr base = t1.base;
  const int m = t1.model_dim();
  Point<S> delta;
  for (int i = 0; i < m; ++i) delta.push_back(t1.by_mask(3)[i] - t2.by_mask(3)[i]);

  Point<S> coords;
  for (int i = 0; i < m; ++i) {
    // basis of D^2+D: 1, x1, x2, x3, x1x2
    std::vector<Element<S>> blocks = {t1.by_mask(0)[i], t1.by_mask(1)[i], t1.by_mask(2)[i],
                                      delta[i], t2.by_mask(3)[i]};
    coords.push_back(from_top_coefficients(base, glue, blocks));
  }
  Microcube<S> glued(std::move(coords));

  static const AlgebraHom phi = phi_hom();
  static const AlgebraHom psi = psi_hom();
  static const AlgebraHom third = third_slot_hom();
  if (!approx_equal(restrict_along(glued, phi), g2, tol) ||
      !approx_equal(restrict_along(glued, psi), g1, tol))
    throw AgreementViolation("microsquares do not agree on D(2)");

  TangentVector<S> result = restrict_along(glued, third);
  if (!approx_equal(extract_d(result), delta, tol))
    throw Error("strong difference: construction and closed form disagree");
  return result;
}

/// Subscripted strong difference on degree-3 microcubes: slot i is kept as a
/// parameter, the difference happens across the other two slots, and the new
/// direction is appended last. Implemented literally as the strong difference
/// over the Euclidean space R^m tensor W_D of the parameter slot.
template <class S>
Microcube<S> strong_diff_slot(int slot, const Microcube<S>& g1, const Microcube<S>& g2,
                              double tol = 1e-9) {
  if (g1.degree() != 3 || g2.degree() != 3)
    throw DimensionMismatch("strong_diff_slot needs degree-3 microcubes");
  std::vector<int> to_front(3);  // slot -> 1, others keep order
  for (int j = 1; j <= 3; ++j)
    to_front[j - 1] = j < slot ? j + 1 : j == slot ? 1 : j;
  auto over_parameter = [&](const Microcube<S>& g) {
    return g.map_coords([&](const Element<S>& c) {
      return split_top(reparametrize_top(c, to_front), 1, 2);
    });
  };
  TangentVector<S> diff = strong_diff(over_parameter(g1), over_parameter(g2), tol);
  return diff.map_coords([](const Element<S>& c) { return merge_top2(c); });
}

// ---- general Jacobi identity ------------------------------------------------

template <class S>
struct JacobiResult {
  TangentVector<S> e1, e2, e3;
  Point<S> residual;  // direction sum; zero by the general Jacobi identity
};

/// The three strong-difference expressions of the general Jacobi identity for
/// six degree-3 microcubes, plus the sum of their directions.
template <class S>
JacobiResult<S> general_jacobi_residual(const Microcube<S>& g123, const Microcube<S>& g132,
                                        const Microcube<S>& g213, const Microcube<S>& g231,
                                        const Microcube<S>& g312, const Microcube<S>& g321,
                                        double tol = 1e-9) {
  auto expr = [&](int slot, const Microcube<S>& a, const Microcube<S>& b, const Microcube<S>& c,
                  const Microcube<S>& d, const char* label) {
    try {
      return strong_diff(strong_diff_slot(slot, a, b, tol), strong_diff_slot(slot, c, d, tol),
                         tol);
    } catch (const AgreementViolation& e) {
      throw AgreementViolation(std::string(label) + ": " + e.what());
    }
  };
  JacobiResult<S> r{expr(1, g123, g132, g231, g321, "expression 1"),
                    expr(2, g231, g213, g312, g132, "expression 2"),
                    expr(3, g312, g321, g123, g213, "expression 3"),
                    {}};
  Point<S> d1 = extract_d(r.e1), d2 = extract_d(r.e2), d3 = extract_d(r.e3);
  for (std::size_t i = 0; i < d1.size(); ++i) r.residual.push_back(d1[i] + d2[i] + d3[i]);
  return r;
}

template <class S>
double residual(const Point<S>& p) {
  double r = 0;
  for (const Element<S>& e : p) r = std::max(r, residual(e));
  return r;
}

}  // namespace weil
