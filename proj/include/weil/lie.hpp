#pragma once

#include "weil/classical.hpp"
#include "weil/icons.hpp"

namespace weil {

/// (eta ~conv theta): eta consumes the first p slots with the last q as
/// outer parameters, theta evaluates the remainder. For an (n,p)-icon the n
/// output directions are threaded into the scalar's context, so the result
/// lives over C + W_{D^n}.
template <class S>
Element<S> icon_form_convolve_eval(const Icon<S>& x, const Semiform<S>& theta,
                                   const Microcube<S>& g) {
  const int p = x.in_degree(), q = theta.degree();
  if (g.degree() != p + q) throw DimensionMismatch("cube degree != p + q");
  Microcube<S> inner =
      g.map_coords([&](const Element<S>& c) { return swap_top2(split_top(c, p, q)); });
  Microcube<S> mid = x(inner);  // over C + W_{D^q}: coords in C + W_q + W_n
  Microcube<S> flipped = mid.map_coords([](const Element<S>& c) { return swap_top2(c); });
  return theta(flipped);  // element of C + W_{D^n}
}

template <class S>
Semiform<S> convolve_with_form(const Distribution<S>& eta, const Semiform<S>& theta) {
  if (eta.model_dim() != theta.model_dim()) throw DimensionMismatch("model dimensions differ");
  Icon<S> icon = eta.as_icon();
  return Semiform<S>(eta.in_degree() + theta.degree(), eta.model_dim(),
                     [icon, theta](const Microcube<S>& g) {
                       return top_coefficient(icon_form_convolve_eval(icon, theta, g), 0);
                     })
      .with_flags(false, false);
}

/// Lie derivation of the first type: the tangent coefficient of the threaded
/// convolution with a (1,p)-icon.
template <class S>
Semiform<S> lie_hat(const Icon<S>& xi, const Semiform<S>& theta) {
  if (xi.out_degree() != 1) throw DimensionMismatch("lie_hat needs a (1,p)-icon");
  if (xi.model_dim() != theta.model_dim()) throw DimensionMismatch("model dimensions differ");
  const int p = xi.in_degree(), q = theta.degree();
  return Semiform<S>(p + q, xi.model_dim(),
                     [xi, theta](const Microcube<S>& g) {
                       return top_coefficient(icon_form_convolve_eval(xi, theta, g), 1);
                     })
      .with_flags(theta.homogeneous_checked(), p + q <= 1);
}

template <class S>
Semiform<S> lie_hat(const VVForm<S>& xi, const Semiform<S>& theta) {
  return lie_hat(xi.icon(), theta);
}

/// Lie derivation of the second type: the normalized alternation of the
/// first type. Both arguments must be alternating.
template <class S>
Semiform<S> lie_derivative(const VVForm<S>& xi, const Semiform<S>& theta) {
  if (!xi.alternating()) throw DimensionMismatch("lie_derivative needs an alternating form");
  if (!theta.alternating_checked())
    throw DimensionMismatch("lie_derivative needs an alternating scalar form");
  Semiform<S> hat = lie_hat(xi.icon(), theta);
  return antisymmetrize_form(hat, {xi.degree(), theta.degree()})
      .with_flags(hat.homogeneous_checked(), true);
}

}  // namespace weil
