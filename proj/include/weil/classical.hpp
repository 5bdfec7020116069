#pragma once

#include "weil/icons.hpp"

namespace weil {

/// Classical-calculus side of the oracle: scalar s-forms represented by
/// component closures over index tuples, with derivatives taken by evaluating
/// the closure over a context extended by one dual slot. Everything here is
/// built from the original algebraic description of the bracket (insertion
/// operators and the exterior derivative) and never touches the convolution
/// machinery, so it can arbitrate it.
namespace classical {

template <class S>
struct ScalarForm {
  int degree;
  int model_dim;
  std::function<Element<S>(const std::vector<int>&, const Point<S>&)> comp;
};

/// Partial derivative of a component closure in coordinate j, at a point over
/// an arbitrary context: evaluate over one extra dual slot and read the dual
/// coefficient.
template <class S, class F>
Element<S> partial(const F& f, int j, const Point<S>& at) {
  AlgebraPtr d = cube_algebra(1);
  Point<S> lifted_at;
  for (std::size_t i = 0; i < at.size(); ++i) {
    Element<S> e = lifted(at[i], d);
    if (static_cast<int>(i) == j) e += Element<S>::top_generator(e.context(), 0);
    lifted_at.push_back(e);
  }
  return top_coefficient(f(lifted_at), 1);
}

template <class S>
ScalarForm<S> coordinate_function(int m, int i) {
  return {0, m, [i](const std::vector<int>&, const Point<S>& at) { return at[i]; }};
}

/// Exterior derivative: (d w)_{n0..ns} = sum_j (-1)^j d_{nj} w_{n0..^nj..ns}.
template <class S>
ScalarForm<S> exterior_derivative(const ScalarForm<S>& w) {
  return {w.degree + 1, w.model_dim,
          [w](const std::vector<int>& idx, const Point<S>& at) {
            Element<S> acc = Element<S>::zero(at[0].context());
            for (int j = 0; j <= w.degree; ++j) {
              std::vector<int> rest;
              for (int t = 0; t <= w.degree; ++t)
                if (t != j) rest.push_back(idx[t]);
              auto slice = [&](const Point<S>& p) { return w.comp(rest, p); };
              Element<S> term = partial<S>(slice, idx[j], at);
              acc += j % 2 == 0 ? term : -term;
            }
            return acc;
          }};
}

/// Insertion of a component-built tangent-vector-valued k-form into a scalar
/// s-form: (i_K w)(X_1..X_{k+s-1}) =
///   1/(k!(s-1)!) sum_sigma sign(sigma)
///     w(K(X_{sigma(1..k)}), X_{sigma(k+1..k+s-1)}).
template <class S>
ScalarForm<S> insert(const VVForm<S>& k_form, const ScalarForm<S>& w) {
  if (!k_form.has_components())
    throw DimensionMismatch("the classical oracle needs component-built forms");
  const int k = k_form.degree(), s = w.degree, m = w.model_dim;
  if (s == 0) throw DimensionMismatch("insertion into a function vanishes identically");
  auto comps = std::make_shared<std::vector<SmoothMap>>(k_form.components());
  Rational norm = Rational(1) / (factorial(k) * factorial(s - 1));
  return {k + s - 1, m,
          [k, s, m, comps, w, norm](const std::vector<int>& idx, const Point<S>& at) {
            Element<S> acc = Element<S>::zero(at[0].context());
            for (const Permutation& sigma : all_permutations(k + s - 1)) {
              std::vector<int> head(k), tail;
              for (int t = 0; t < k; ++t) head[t] = idx[sigma(t + 1) - 1];
              for (int t = k; t < k + s - 1; ++t) tail.push_back(idx[sigma(t + 1) - 1]);
              for (int mid = 0; mid < m; ++mid) {
                Element<S> kval =
                    eval_map((*comps)[component_index(m, k, mid, head)], at)[0];
                std::vector<int> widx = {mid};
                widx.insert(widx.end(), tail.begin(), tail.end());
                Element<S> term = kval * w.comp(widx, at);
                acc += sigma.sign() > 0 ? term : -term;
              }
            }
            return acc * ScalarTraits<S>::from_rational(norm);
          }};
}

/// The Lie derivation attached to a vector-valued k-form:
/// L_K = i_K d - (-1)^{k-1} d i_K.
template <class S>
ScalarForm<S> lie_operator(const VVForm<S>& k_form, const ScalarForm<S>& w) {
  ScalarForm<S> first = insert(k_form, exterior_derivative(w));
  if (w.degree == 0) return first;  // i_K on functions is zero, so d i_K w = 0
  ScalarForm<S> second = exterior_derivative(insert(k_form, w));
  int sign = (k_form.degree() - 1) % 2 == 0 ? 1 : -1;
  return {first.degree, first.model_dim,
          [first, second, sign](const std::vector<int>& idx, const Point<S>& at) {
            Element<S> a = first.comp(idx, at);
            Element<S> b = second.comp(idx, at);
            return sign > 0 ? a - b : a + b;
          }};
}

}  // namespace classical

/// Evaluation components of the classical bracket of two component-built
/// forms at a scalar point: the unique vector-valued (p+q)-form Z with
/// L_Z = L_K L_L - (-1)^{pq} L_L L_K has components Z^i_idx = (L_Z x^i)_idx,
/// and the right-hand side is computable without knowing Z.
template <class S>
S classical_fn_oracle(const VVForm<S>& k, const VVForm<S>& l, const std::vector<S>& at,
                      int i, const std::vector<int>& idx) {
  const int m = k.model_dim();
  const int p = k.degree(), q = l.degree();
  classical::ScalarForm<S> xi = classical::coordinate_function<S>(m, i);
  classical::ScalarForm<S> kl = classical::lie_operator(k, classical::lie_operator(l, xi));
  classical::ScalarForm<S> lk = classical::lie_operator(l, classical::lie_operator(k, xi));
  Point<S> at_elems = point_from_scalars(at, Context::base());
  Element<S> a = kl.comp(idx, at_elems);
  Element<S> b = lk.comp(idx, at_elems);
  S value = ((p * q) % 2 == 0 ? a - b : a + b).scalar_part();
  return value * S(kClassicalBracketSign);
}

}  // namespace weil
