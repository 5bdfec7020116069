#pragma once

#include <array>

#include "weil/forms.hpp"
#include "weil/microcube.hpp"
#include "weil/random.hpp"
#include "weil/smooth_map.hpp"

namespace weil {

/// Random polynomial map R^m -> R^k with small rational coefficients:
/// constant + linear + a few higher monomials up to max_degree.
inline SmoothMap random_polynomial_map(Rng& rng, int m, int k, int max_degree) {
  std::vector<ExprPtr> outs;
  for (int out = 0; out < k; ++out) {
    ExprPtr e = dag::constant(rng.rational());
    for (int i = 0; i < m; ++i) e = dag::add(e, dag::scale(rng.rational(), dag::var(i)));
    const int extra_terms = rng.uniform_int(1, 3);
    for (int t = 0; t < extra_terms; ++t) {
      int deg = rng.uniform_int(2, std::max(2, max_degree));
      ExprPtr term = dag::constant(rng.rational());
      for (int d = 0; d < deg; ++d) term = dag::mul(term, dag::var(rng.uniform_int(0, m - 1)));
      e = dag::add(e, term);
    }
    outs.push_back(e);
  }
  return SmoothMap(m, std::move(outs));
}

/// Random scalar semiform with full polynomial component tables.
template <class S>
Semiform<S> random_component_semiform(Rng& rng, int m, int q, int poly_degree = 2) {
  std::size_t count = 1;
  for (int i = 0; i < q; ++i) count *= m;
  std::vector<SmoothMap> comps;
  for (std::size_t t = 0; t < count; ++t)
    comps.push_back(random_polynomial_map(rng, m, 1, poly_degree));
  return make_component_semiform<S>(q, m, std::move(comps));
}

template <class S>
Point<S> random_point(Rng& rng, int m, const ContextPtr& ctx = Context::base()) {
  Point<S> p;
  for (int i = 0; i < m; ++i) p.push_back(Element<S>::constant(ctx, rng.scalar<S>()));
  return p;
}

template <class S>
TaylorTable<S> random_taylor_table(Rng& rng, int m, int n,
                                   const ContextPtr& base = Context::base()) {
  TaylorTable<S> t;
  t.base = base;
  t.top = cube_algebra(n);
  for (Eigen::Index j = 0; j < t.top->dim(); ++j) t.entries.push_back(random_point<S>(rng, m, base));
  return t;
}

template <class S>
Microcube<S> random_microcube(Rng& rng, int m, int n,
                              const ContextPtr& base = Context::base()) {
  return from_taylor(random_taylor_table<S>(rng, m, n, base));
}

/// A random six-tuple of degree-3 microcubes on which all three expressions
/// of the general Jacobi identity are defined. The admissible families are
/// exactly: shared base and first-order coefficients; each two-slot
/// coefficient constant on the two triples that the slot's expression does
/// not difference across; top coefficients free.
/// Order: 123, 132, 213, 231, 312, 321.
template <class S>
std::array<Microcube<S>, 6> random_admissible_six(Rng& rng, int m,
                                                  const ContextPtr& base = Context::base()) {
  auto pt = [&] { return random_point<S>(rng, m, base); };
  Point<S> b0 = pt(), b1 = pt(), b2 = pt(), b3 = pt();
  Point<S> b12_a = pt(), b12_b = pt();  // {123,132,312} / {213,231,321}
  Point<S> b13_a = pt(), b13_b = pt();  // {123,132,213} / {231,312,321}
  Point<S> b23_a = pt(), b23_b = pt();  // {123,213,231} / {132,312,321}

  auto build = [&](const Point<S>& b12, const Point<S>& b13, const Point<S>& b23) {
    TaylorTable<S> t;
    t.base = base;
    t.top = cube_algebra(3);
    t.entries.resize(t.top->dim());
    t.by_mask(0b000) = b0;
    t.by_mask(0b001) = b1;
    t.by_mask(0b010) = b2;
    t.by_mask(0b100) = b3;
    t.by_mask(0b011) = b12;
    t.by_mask(0b101) = b13;
    t.by_mask(0b110) = b23;
    t.by_mask(0b111) = pt();
    return from_taylor(t);
  };

  return {build(b12_a, b13_a, b23_a),   // 123
          build(b12_a, b13_a, b23_b),   // 132
          build(b12_b, b13_a, b23_a),   // 213
          build(b12_b, b13_b, b23_a),   // 231
          build(b12_a, b13_b, b23_b),   // 312
          build(b12_b, b13_b, b23_b)};  // 321
}

}  // namespace weil
