#pragma once

#include <functional>

#include "weil/forms.hpp"
#include "weil/sampling.hpp"

namespace weil {

enum class ConvOrder { Star, Tilde };

/// An (n,p)-icon on R^m: a context-generic evaluator from degree-p microcubes
/// to degree-n microcubes over the same base context, projecting onto the
/// Dirac distribution (collapsing the n output directions returns the input's
/// base point).
template <class S>
class Icon {
 public:
  using Eval = std::function<Microcube<S>(const Microcube<S>&)>;

  Icon(int out_degree, int in_degree, int model_dim, Eval eval)
      : n_(out_degree), p_(in_degree), m_(model_dim), eval_(std::move(eval)) {
    if (n_ < 0 || p_ < 0 || m_ < 1) throw DimensionMismatch("bad icon signature");
  }

  int out_degree() const { return n_; }
  int in_degree() const { return p_; }
  int model_dim() const { return m_; }

  Microcube<S> operator()(const Microcube<S>& g) const {
    if (g.degree() != p_ || g.model_dim() != m_)
      throw DimensionMismatch("icon applied to a cube of the wrong shape");
    return eval_(g);
  }

 private:
  int n_, p_, m_;
  Eval eval_;
};

/// A distribution: a context-generic evaluator from degree-p microcubes to
/// points, i.e. a (0,p)-icon with the trivial output level stripped.
template <class S>
class Distribution {
 public:
  using Eval = std::function<Point<S>(const Microcube<S>&)>;

  Distribution(int in_degree, int model_dim, Eval eval)
      : p_(in_degree), m_(model_dim), eval_(std::move(eval)) {}

  int in_degree() const { return p_; }
  int model_dim() const { return m_; }

  Point<S> operator()(const Microcube<S>& g) const {
    if (g.degree() != p_ || g.model_dim() != m_)
      throw DimensionMismatch("distribution applied to a cube of the wrong shape");
    return eval_(g);
  }

  Icon<S> as_icon() const {
    Eval e = eval_;
    return Icon<S>(0, p_, m_, [e](const Microcube<S>& g) {
      return Microcube<S>::from_point(e(g), cube_algebra(0));
    });
  }

  static Distribution from_icon(const Icon<S>& icon) {
    if (icon.out_degree() != 0) throw DimensionMismatch("not a (0,p)-icon");
    return Distribution(icon.in_degree(), icon.model_dim(),
                        [icon](const Microcube<S>& g) { return icon(g).base_point(); });
  }

 private:
  int p_, m_;
  Eval eval_;
};

/// The p-dimensional Dirac distribution: the canonical projection onto the
/// base point.
template <class S>
Distribution<S> dirac(int p, int m) {
  return Distribution<S>(p, m, [](const Microcube<S>& g) { return g.base_point(); });
}

/// A point map f : R^m -> R^m as a 0-input distribution.
template <class S>
Distribution<S> distribution_from_map(const SmoothMap& f) {
  if (f.input_dim() != f.output_dim()) throw DimensionMismatch("point map must be endogenous");
  return Distribution<S>(0, f.input_dim(),
                         [f](const Microcube<S>& g) { return eval_map(f, g.base_point()); });
}

// ---- the two prolonged convolutions -----------------------------------------
//
// Star: the second factor consumes the last q input slots (with the first p
// as outer parameters), then the first factor consumes the rest. Tilde: the
// first factor consumes the first p slots (with the last q as parameters),
// then the second. In both, the first factor's output directions come first.

template <class S>
Microcube<S> icon_convolve_eval(const Icon<S>& x1, const Icon<S>& x2, ConvOrder order,
                                const Microcube<S>& g) {
  const int p = x1.in_degree(), q = x2.in_degree();
  if (g.degree() != p + q) throw DimensionMismatch("cube degree != p + q");
  if (order == ConvOrder::Star) {
    Microcube<S> inner =
        g.map_coords([&](const Element<S>& c) { return split_top(c, p, q); });
    Microcube<S> mid = x2(inner);  // over C + W_{D^p}
    Microcube<S> flipped = mid.map_coords([](const Element<S>& c) { return swap_top2(c); });
    Microcube<S> out = x1(flipped);  // over C + W_{D^{n2}}
    return out.map_coords([](const Element<S>& c) { return merge_top2(swap_top2(c)); });
  }
  Microcube<S> inner =
      g.map_coords([&](const Element<S>& c) { return swap_top2(split_top(c, p, q)); });
  Microcube<S> mid = x1(inner);  // over C + W_{D^q}
  Microcube<S> flipped = mid.map_coords([](const Element<S>& c) { return swap_top2(c); });
  Microcube<S> out = x2(flipped);  // over C + W_{D^{m1}}
  return out.map_coords([](const Element<S>& c) { return merge_top2(c); });
}

template <class S>
Icon<S> icon_convolve(const Icon<S>& x1, const Icon<S>& x2, ConvOrder order) {
  if (x1.model_dim() != x2.model_dim()) throw DimensionMismatch("model dimensions differ");
  return Icon<S>(x1.out_degree() + x2.out_degree(), x1.in_degree() + x2.in_degree(),
                 x1.model_dim(), [x1, x2, order](const Microcube<S>& g) {
                   return icon_convolve_eval(x1, x2, order, g);
                 });
}

template <class S>
Distribution<S> convolve(const Distribution<S>& d1, const Distribution<S>& d2, ConvOrder order) {
  return Distribution<S>::from_icon(icon_convolve(d1.as_icon(), d2.as_icon(), order));
}

/// Precomposition with a permutation of the input slots.
template <class S>
Icon<S> icon_reparametrize(const Icon<S>& x, const Permutation& sigma) {
  if (sigma.size() != x.in_degree()) throw DimensionMismatch("permutation size != input degree");
  std::vector<int> img = sigma.image();
  return Icon<S>(x.out_degree(), x.in_degree(), x.model_dim(),
                 [x, img](const Microcube<S>& g) { return x(reparametrize(g, img)); });
}

template <class S>
Distribution<S> reparametrize(const Distribution<S>& d, const Permutation& sigma) {
  return Distribution<S>::from_icon(icon_reparametrize(d.as_icon(), sigma));
}

// ---- fiberwise structure on (1,p)-icons --------------------------------------

template <class S>
TangentVector<S> tangent_at(const Point<S>& base, const Point<S>& direction) {
  Point<S> coords;
  for (std::size_t i = 0; i < base.size(); ++i) {
    std::vector<Element<S>> blocks = {base[i], direction[i]};
    coords.push_back(from_top_coefficients(base[i].context(), cube_algebra(1), blocks));
  }
  return TangentVector<S>(std::move(coords));
}

template <class S>
Icon<S> icon_add(const Icon<S>& a, const Icon<S>& b) {
  if (a.out_degree() != 1 || b.out_degree() != 1 || a.in_degree() != b.in_degree())
    throw DimensionMismatch("fiberwise addition needs two (1,p)-icons");
  return Icon<S>(1, a.in_degree(), a.model_dim(), [a, b](const Microcube<S>& g) {
    TangentVector<S> ta = a(g), tb = b(g);
    Point<S> dir;
    Point<S> da = extract_d(ta), db = extract_d(tb);
    for (std::size_t i = 0; i < da.size(); ++i) dir.push_back(da[i] + db[i]);
    return tangent_at(ta.base_point(), dir);
  });
}

template <class S>
Icon<S> icon_scale(const Icon<S>& a, const S& alpha) {
  if (a.out_degree() != 1) throw DimensionMismatch("fiberwise scaling needs a (1,p)-icon");
  return Icon<S>(1, a.in_degree(), a.model_dim(), [a, alpha](const Microcube<S>& g) {
    return scale_slot(a(g), 1, alpha);
  });
}

/// Signed sum of input reparametrizations, fiberwise; `parts` works as for
/// semiforms (empty = raw, otherwise scales by 1/(p1! p2! ...)).
template <class S>
Icon<S> antisymmetrize_icon(const Icon<S>& x, const std::vector<int>& parts = {}) {
  if (x.out_degree() != 1) throw DimensionMismatch("alternation needs a (1,p)-icon");
  S scale(1);
  if (!parts.empty()) {
    int sum = 0;
    Rational denom = 1;
    for (int p : parts) {
      sum += p;
      denom *= factorial(p);
    }
    if (sum != x.in_degree())
      throw DimensionMismatch("normalization parts must sum to the input degree");
    scale = ScalarTraits<S>::from_rational(Rational(1) / denom);
  }
  auto perms = std::make_shared<std::vector<Permutation>>(all_permutations(x.in_degree()));
  return Icon<S>(1, x.in_degree(), x.model_dim(), [x, perms, scale](const Microcube<S>& g) {
    Point<S> base = g.base_point();
    Point<S> dir;
    for (std::size_t i = 0; i < base.size(); ++i)
      dir.push_back(Element<S>::zero(base[i].context()));
    for (const Permutation& sigma : *perms) {
      Point<S> d = extract_d(x(reparametrize(g, sigma.image())));
      for (std::size_t i = 0; i < dir.size(); ++i)
        if (sigma.sign() > 0)
          dir[i] += d[i];
        else
          dir[i] -= d[i];
    }
    for (std::size_t i = 0; i < dir.size(); ++i) dir[i] *= scale;
    return tangent_at(base, dir);
  });
}

// ---- the Lie bracket ----------------------------------------------------------

/// [x1, x2]_L = x1 (~conv) x2 - x1 (conv) x2, the strong difference taken
/// pointwise. The two composites agree away from their top coefficient
/// whenever the arguments are honest icons; a violation signals a broken
/// evaluator.
template <class S>
Icon<S> lie_bracket_L(const Icon<S>& x1, const Icon<S>& x2, double tol = 1e-9) {
  if (x1.out_degree() != 1 || x2.out_degree() != 1)
    throw DimensionMismatch("the Lie bracket needs (1,p)-icons");
  Icon<S> tilde = icon_convolve(x1, x2, ConvOrder::Tilde);
  Icon<S> star = icon_convolve(x1, x2, ConvOrder::Star);
  return Icon<S>(1, x1.in_degree() + x2.in_degree(), x1.model_dim(),
                 [tilde, star, tol](const Microcube<S>& g) {
                   return strong_diff(tilde(g), star(g), tol);
                 });
}

// ---- tangent-vector-valued forms ---------------------------------------------

/// A tangent-vector-valued p-(semi)form: a (1,p)-icon that is slot-homogeneous,
/// optionally alternating, and optionally backed by component maps
/// K^i_{j1..jp} (needed by the classical oracle).
template <class S>
class VVForm {
 public:
  VVForm(int degree, int model_dim, Icon<S> icon, bool alternating,
         std::shared_ptr<const std::vector<SmoothMap>> components = nullptr)
      : p_(degree), m_(model_dim), icon_(std::move(icon)), alternating_(alternating),
        components_(std::move(components)) {}

  int degree() const { return p_; }
  int model_dim() const { return m_; }
  const Icon<S>& icon() const { return icon_; }
  bool alternating() const { return alternating_; }
  bool has_components() const { return components_ != nullptr; }
  const std::vector<SmoothMap>& components() const { return *components_; }

  TangentVector<S> operator()(const Microcube<S>& g) const { return icon_(g); }

 private:
  int p_, m_;
  Icon<S> icon_;
  bool alternating_;
  std::shared_ptr<const std::vector<SmoothMap>> components_;
};

inline std::size_t tuple_count(int m, int p) {
  std::size_t c = 1;
  for (int i = 0; i < p; ++i) c *= m;
  return c;
}

/// Flat index of K^i_{j1..jp} in a component table.
inline std::size_t component_index(int m, int p, int i, const std::vector<int>& tuple) {
  std::size_t flat = i;
  (void)p;
  for (int j : tuple) flat = flat * m + j;
  return flat;
}

namespace detail {

template <class S>
Point<S> component_direction(const std::vector<SmoothMap>& comps, int m, int p,
                             const Microcube<S>& g) {
  Point<S> base = g.base_point();
  std::vector<Point<S>> first_order;
  for (int k = 1; k <= p; ++k)
    first_order.push_back(g.coefficient(g.top()->index_of_mask(1u << (k - 1))));
  Point<S> dir;
  std::vector<int> tuple(p, 0);
  for (int i = 0; i < m; ++i) {
    Element<S> acc = Element<S>::zero(base[0].context());
    const std::size_t tuples = tuple_count(m, p);
    for (std::size_t t = 0; t < tuples; ++t) {
      std::size_t rest = t;
      for (int k = p - 1; k >= 0; --k) {
        tuple[k] = static_cast<int>(rest % m);
        rest /= m;
      }
      Element<S> term = eval_map(comps[component_index(m, p, i, tuple)], base)[0];
      for (int k = 0; k < p; ++k) term = term * first_order[k][tuple[k]];
      acc += term;
    }
    dir.push_back(acc);
  }
  return dir;
}

}  // namespace detail

/// Compile component maps into evaluator form without any alternation
/// requirement: a tangent-vector-valued p-semiform. The alternating flag is
/// set only for the degrees where alternation is vacuous.
template <class S>
VVForm<S> compile_vvsemiform(int p, int m, std::vector<SmoothMap> components) {
  if (components.size() != tuple_count(m, p) * m)
    throw DimensionMismatch("need m^(p+1) component maps");
  for (const SmoothMap& f : components)
    if (f.input_dim() != m || f.output_dim() != 1)
      throw DimensionMismatch("components must be scalar maps on R^m");
  auto comps = std::make_shared<std::vector<SmoothMap>>(std::move(components));
  Icon<S> icon(1, p, m, [comps, m, p](const Microcube<S>& g) {
    return tangent_at(g.base_point(), detail::component_direction(*comps, m, p, g));
  });
  return VVForm<S>(p, m, std::move(icon), p <= 1, comps);
}

/// Compile component maps into the evaluator form. Components must be
/// alternating in the lower indices; this is verified on sampled points.
template <class S>
VVForm<S> compile_vvform(int p, int m, std::vector<SmoothMap> components) {
  if (components.size() != tuple_count(m, p) * m)
    throw DimensionMismatch("need m^(p+1) component maps");
  for (const SmoothMap& f : components)
    if (f.input_dim() != m || f.output_dim() != 1)
      throw DimensionMismatch("components must be scalar maps on R^m");

  auto comps = std::make_shared<std::vector<SmoothMap>>(std::move(components));

  if (p >= 2) {
    // sampled alternation check: swapping two lower indices flips the sign
    Rng check_rng(0x5eedu);
    for (int trial = 0; trial < 8; ++trial) {
      std::vector<S> at;
      for (int i = 0; i < m; ++i) at.push_back(check_rng.template scalar<S>());
      std::vector<int> tuple(p);
      for (int& j : tuple) j = check_rng.uniform_int(0, m - 1);
      int a = check_rng.uniform_int(0, p - 1), b = check_rng.uniform_int(0, p - 1);
      while (b == a) b = check_rng.uniform_int(0, p - 1);
      std::vector<int> swapped = tuple;
      std::swap(swapped[a], swapped[b]);
      for (int i = 0; i < m; ++i) {
        S lhs = eval_map_at((*comps)[component_index(m, p, i, tuple)], at)[0];
        S rhs = eval_map_at((*comps)[component_index(m, p, i, swapped)], at)[0];
        if (!approx_equal(lhs, S(-rhs), 1e-9))
          throw DimensionMismatch("components are not alternating in the lower indices");
      }
    }
  }

  Icon<S> icon(1, p, m, [comps, m, p](const Microcube<S>& g) {
    return tangent_at(g.base_point(), detail::component_direction(*comps, m, p, g));
  });
  return VVForm<S>(p, m, std::move(icon), true, comps);
}

/// A vector field X : R^m -> R^m as a tangent-vector-valued 0-form.
template <class S>
VVForm<S> vector_field(const SmoothMap& f) {
  const int m = f.input_dim();
  if (f.output_dim() != m) throw DimensionMismatch("vector field must be endogenous");
  std::vector<SmoothMap> comps;
  for (int i = 0; i < m; ++i) comps.push_back(SmoothMap(m, {f.outputs()[i]}));
  return compile_vvform<S>(0, m, std::move(comps));
}

/// Calibration constant: the p = q = 0 bracket reproduces the classical
/// Jacobian-formula bracket of vector fields with this sign.
inline constexpr int kClassicalBracketSign = 1;

/// The Froelicher-Nijenhuis bracket of tangent-vector-valued forms:
/// the (1/p!q!)-normalized alternation of the Lie bracket.
template <class S>
VVForm<S> fn_bracket(const VVForm<S>& k, const VVForm<S>& l, double tol = 1e-9) {
  if (!k.alternating() || !l.alternating())
    throw DimensionMismatch("the FN bracket needs alternating forms");
  Icon<S> bracket = lie_bracket_L(k.icon(), l.icon(), tol);
  Icon<S> alt = antisymmetrize_icon(bracket, {k.degree(), l.degree()});
  return VVForm<S>(k.degree() + l.degree(), k.model_dim(), std::move(alt), true);
}

/// Evaluation components of a (1,p)-icon at a scalar point: the value on the
/// frame cube with first-order coefficients e_{j1}..e_{jp} and vanishing
/// higher coefficients.
template <class S>
Point<S> icon_components_at(const Icon<S>& x, const std::vector<S>& at,
                            const std::vector<int>& tuple) {
  const int m = x.model_dim(), p = x.in_degree();
  if (static_cast<int>(at.size()) != m || static_cast<int>(tuple.size()) != p)
    throw DimensionMismatch("bad probe shape");
  TaylorTable<S> t;
  t.base = Context::base();
  t.top = cube_algebra(p);
  t.entries.resize(t.top->dim());
  for (Eigen::Index j = 0; j < t.top->dim(); ++j) {
    Point<S> entry;
    for (int i = 0; i < m; ++i) entry.push_back(Element<S>::constant(t.base, S(0)));
    t.entries[j] = std::move(entry);
  }
  for (int i = 0; i < m; ++i) t.by_mask(0)[i] = Element<S>::constant(t.base, at[i]);
  for (int k = 0; k < p; ++k)
    t.by_mask(1u << k)[tuple[k]] += Element<S>::constant(t.base, S(1));
  return extract_d(x(from_taylor(t)));
}

// ---- sampled icon generators and invariants ----------------------------------

/// A generic (1,p)-icon that is not of component type: its direction mixes
/// the base point with first-order and higher Taylor coefficients. Natural in
/// the context because it is plain element arithmetic.
template <class S>
Icon<S> random_icon(Rng& rng, int m, int p) {
  struct Term {
    SmoothMap weight;
    std::vector<std::pair<unsigned, int>> factors;  // (mask, coordinate)
  };
  auto terms = std::make_shared<std::vector<std::vector<Term>>>();
  AlgebraPtr top = cube_algebra(p);
  for (int i = 0; i < m; ++i) {
    std::vector<Term> row;
    const int nterms = rng.uniform_int(1, 2);
    for (int t = 0; t < nterms; ++t) {
      Term term{random_polynomial_map(rng, m, 1, 2), {}};
      const int nfac = rng.uniform_int(0, 2);
      for (int f = 0; f < nfac && top->dim() > 1; ++f) {
        unsigned mask = static_cast<unsigned>(
            top->mask_of_index(rng.uniform_int(1, static_cast<int>(top->dim()) - 1)));
        term.factors.emplace_back(mask, rng.uniform_int(0, m - 1));
      }
      row.push_back(std::move(term));
    }
    terms->push_back(std::move(row));
  }
  return Icon<S>(1, p, m, [terms, m](const Microcube<S>& g) {
    Point<S> base = g.base_point();
    Point<S> dir;
    for (int i = 0; i < m; ++i) {
      Element<S> acc = Element<S>::zero(base[0].context());
      for (const auto& term : (*terms)[i]) {
        Element<S> v = eval_map(term.weight, base)[0];
        for (const auto& [mask, coord] : term.factors)
          v = v * g.coefficient(g.top()->index_of_mask(mask))[coord];
        acc += v;
      }
      dir.push_back(acc);
    }
    return tangent_at(base, dir);
  });
}

/// Sampled projection law: collapsing the output directions returns the
/// input's base point.
template <class S>
bool check_projection_law(const Icon<S>& x, Rng& rng, int trials, double tol) {
  for (int trial = 0; trial < trials; ++trial) {
    Microcube<S> g = random_microcube<S>(rng, x.model_dim(), x.in_degree());
    if (!approx_equal(x(g).base_point(), g.base_point(), tol)) return false;
  }
  return true;
}

template <class S>
VVForm<S> zero_vvform(int p, int m) {
  std::vector<SmoothMap> comps(tuple_count(m, p) * m, SmoothMap::constant_map(m, {Rational(0)}));
  return compile_vvform<S>(p, m, std::move(comps));
}

/// The identity (1,1)-tensor: K^i_j = delta^i_j.
template <class S>
VVForm<S> identity_vvform(int m) {
  std::vector<SmoothMap> comps;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      comps.push_back(SmoothMap::constant_map(m, {Rational(i == j ? 1 : 0)}));
  return compile_vvform<S>(1, m, std::move(comps));
}

/// Random component-built form of degree p <= 2; for alternating == true the
/// lower indices are antisymmetrized, which is what the FN bracket needs.
template <class S>
VVForm<S> random_vvform(Rng& rng, int m, int p, bool alternating, int poly_degree = 2) {
  std::vector<SmoothMap> comps(tuple_count(m, p) * m, SmoothMap::constant_map(m, {Rational(0)}));
  if (!alternating) {
    for (SmoothMap& f : comps) f = random_polynomial_map(rng, m, 1, poly_degree);
    return compile_vvsemiform<S>(p, m, std::move(comps));
  }
  if (p <= 1) {
    for (SmoothMap& f : comps) f = random_polynomial_map(rng, m, 1, poly_degree);
  } else if (p == 2) {
    for (int i = 0; i < m; ++i)
      for (int j1 = 0; j1 < m; ++j1)
        for (int j2 = j1 + 1; j2 < m; ++j2) {
          SmoothMap f = random_polynomial_map(rng, m, 1, poly_degree);
          comps[component_index(m, p, i, {j1, j2})] = f;
          comps[component_index(m, p, i, {j2, j1})] = SmoothMap(m, {dag::neg(f.outputs()[0])});
        }
  } else {
    throw DimensionMismatch("random alternating forms only up to degree 2");
  }
  VVForm<S> form = compile_vvform<S>(p, m, std::move(comps));
  return VVForm<S>(p, m, form.icon(), alternating,
                   std::make_shared<const std::vector<SmoothMap>>(form.components()));
}

}  // namespace weil
