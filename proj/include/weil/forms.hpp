#pragma once

#include <functional>

#include "weil/microcube.hpp"
#include "weil/random.hpp"
#include "weil/smooth_map.hpp"

namespace weil {

/// Permutation of {1..n} as a 1-based image sequence, with the sign computed
/// from the inversion count.
class Permutation {
 public:
  explicit Permutation(std::vector<int> image) : img_(std::move(image)) {
    std::vector<bool> seen(img_.size(), false);
    for (int v : img_) {
      if (v < 1 || v > static_cast<int>(img_.size()) || seen[v - 1])
        throw DimensionMismatch("not a permutation");
      seen[v - 1] = true;
    }
  }

  static Permutation identity(int n) {
    std::vector<int> img(n);
    for (int i = 0; i < n; ++i) img[i] = i + 1;
    return Permutation(std::move(img));
  }

  /// The block swap sending slots 1..p behind slots p+1..p+q; its sign is
  /// (-1)^{pq}.
  static Permutation block_swap(int p, int q) {
    std::vector<int> img(p + q);
    for (int i = 1; i <= p; ++i) img[i - 1] = q + i;
    for (int j = 1; j <= q; ++j) img[p + j - 1] = j;
    return Permutation(std::move(img));
  }

  /// block_swap(p, q) extended by r fixed slots.
  static Permutation block_swap_fixing_tail(int p, int q, int r) {
    std::vector<int> img = block_swap(p, q).image();
    for (int t = 1; t <= r; ++t) img.push_back(p + q + t);
    return Permutation(std::move(img));
  }

  int size() const { return static_cast<int>(img_.size()); }
  int operator()(int i) const { return img_[i - 1]; }
  const std::vector<int>& image() const { return img_; }

  int sign() const {
    int inversions = 0;
    for (std::size_t i = 0; i < img_.size(); ++i)
      for (std::size_t j = i + 1; j < img_.size(); ++j)
        if (img_[i] > img_[j]) ++inversions;
    return inversions % 2 == 0 ? 1 : -1;
  }

  /// (a.then_after(b))(i) = a(b(i)).
  Permutation after(const Permutation& b) const {
    std::vector<int> img(size());
    for (int i = 1; i <= size(); ++i) img[i - 1] = (*this)(b(i));
    return Permutation(std::move(img));
  }

  Permutation inverse() const {
    std::vector<int> img(size());
    for (int i = 1; i <= size(); ++i) img[(*this)(i)-1] = i;
    return Permutation(std::move(img));
  }

 private:
  std::vector<int> img_;
};

/// All of S_n in a deterministic order.
std::vector<Permutation> all_permutations(int n);

/// A differential semiform of degree q on R^m: a context-generic evaluator
/// from degree-q microcubes to context scalars. Component-built semiforms
/// evaluate through their covector components; arbitrary evaluators are
/// admitted too.
template <class S>
class Semiform {
 public:
  using Eval = std::function<Element<S>(const Microcube<S>&)>;

  Semiform(int degree, int model_dim, Eval eval)
      : degree_(degree), m_(model_dim), eval_(std::move(eval)) {
    if (degree_ < 0 || m_ < 1) throw DimensionMismatch("bad semiform signature");
    alternating_checked_ = degree_ <= 1;
  }

  int degree() const { return degree_; }
  int model_dim() const { return m_; }

  // Flags recording which laws are known to hold by construction.
  bool homogeneous_checked() const { return homogeneous_checked_; }
  bool alternating_checked() const { return alternating_checked_; }
  Semiform with_flags(bool homogeneous, bool alternating) const {
    Semiform s = *this;
    s.homogeneous_checked_ = homogeneous;
    s.alternating_checked_ = alternating || degree_ <= 1;
    return s;
  }

  Element<S> operator()(const Microcube<S>& cube) const {
    if (cube.degree() != degree_ || cube.model_dim() != m_)
      throw DimensionMismatch("semiform applied to a cube of the wrong shape");
    return eval_(cube);
  }

  Semiform operator+(const Semiform& o) const {
    if (degree_ != o.degree_ || m_ != o.m_) throw DimensionMismatch("semiform degree mismatch");
    Eval a = eval_, b = o.eval_;
    return Semiform(degree_, m_, [a, b](const Microcube<S>& g) { return a(g) + b(g); })
        .with_flags(homogeneous_checked_ && o.homogeneous_checked_,
                    alternating_checked_ && o.alternating_checked_);
  }
  Semiform operator*(const S& s) const {
    Eval a = eval_;
    return Semiform(degree_, m_, [a, s](const Microcube<S>& g) { return a(g) * s; })
        .with_flags(homogeneous_checked_, alternating_checked_);
  }

 private:
  int degree_;
  int m_;
  Eval eval_;
  bool homogeneous_checked_ = false;
  bool alternating_checked_ = false;
};

/// Component table for a degree-q semiform: one scalar map per full index
/// tuple (j1..jq), row-major over [0,m)^q.
template <class S>
Semiform<S> make_component_semiform(int q, int m, std::vector<SmoothMap> components) {
  std::size_t expected = 1;
  for (int i = 0; i < q; ++i) expected *= m;
  if (components.size() != expected)
    throw DimensionMismatch("need one component per index tuple");
  for (const SmoothMap& f : components)
    if (f.input_dim() != m || f.output_dim() != 1)
      throw DimensionMismatch("components must be scalar maps on R^m");
  auto comps = std::make_shared<std::vector<SmoothMap>>(std::move(components));
  return Semiform<S>(q, m, [q, m, comps](const Microcube<S>& cube) {
    Point<S> base = cube.base_point();
    std::vector<Point<S>> first_order;
    for (int k = 1; k <= q; ++k)
      first_order.push_back(cube.coefficient(cube.top()->index_of_mask(1u << (k - 1))));
    Element<S> acc = Element<S>::zero(base[0].context());
    std::vector<int> tuple(q, 0);
    for (std::size_t flat = 0; flat < comps->size(); ++flat) {
      std::size_t rest = flat;
      for (int k = q - 1; k >= 0; --k) {
        tuple[k] = static_cast<int>(rest % m);
        rest /= m;
      }
      Element<S> term = eval_map((*comps)[flat], base)[0];
      for (int k = 0; k < q; ++k) term = term * first_order[k][tuple[k]];
      acc += term;
    }
    return acc;
  }).with_flags(true, q <= 1);
}

/// dx^{j+1} on R^m.
template <class S>
Semiform<S> coordinate_covector(int m, int j) {
  std::vector<SmoothMap> comps;
  for (int t = 0; t < m; ++t)
    comps.push_back(SmoothMap::constant_map(m, {Rational(t == j ? 1 : 0)}));
  return make_component_semiform<S>(1, m, std::move(comps));
}

template <class S>
Semiform<S> constant_semiform(int m, const S& value) {
  return Semiform<S>(0, m, [value](const Microcube<S>& cube) {
    return Element<S>::constant(cube.base_context(), value);
  });
}

/// (theta1 (x) theta2)(gamma): theta1 on the first-p face times theta2 on the
/// last-q face.
template <class S>
Semiform<S> tensor_semiforms(const Semiform<S>& t1, const Semiform<S>& t2) {
  if (t1.model_dim() != t2.model_dim()) throw DimensionMismatch("model dimensions differ");
  const int p = t1.degree(), q = t2.degree();
  std::vector<int> first(p), last(q);
  for (int i = 0; i < p; ++i) first[i] = i + 1;
  for (int i = 0; i < q; ++i) last[i] = p + i + 1;
  return Semiform<S>(p + q, t1.model_dim(), [t1, t2, first, last](const Microcube<S>& g) {
    return t1(face(g, first)) * t2(face(g, last));
  }).with_flags(t1.homogeneous_checked() && t2.homogeneous_checked(), p + q <= 1);
}

template <class S>
Semiform<S> reparametrize(const Semiform<S>& t, const Permutation& sigma) {
  if (sigma.size() != t.degree()) throw DimensionMismatch("permutation size != degree");
  std::vector<int> img = sigma.image();
  return Semiform<S>(t.degree(), t.model_dim(),
                     [t, img](const Microcube<S>& g) { return t(reparametrize(g, img)); })
      .with_flags(t.homogeneous_checked(), t.alternating_checked());
}

/// Raw alternation sum_sigma sign(sigma) theta^sigma; `parts` scales by
/// 1/(p1! p2! ...) and must sum to the degree (empty = raw).
template <class S>
Semiform<S> antisymmetrize_form(const Semiform<S>& t, const std::vector<int>& parts = {}) {
  S scale(1);
  if (!parts.empty()) {
    int sum = 0;
    Rational denom = 1;
    for (int p : parts) {
      sum += p;
      denom *= factorial(p);
    }
    if (sum != t.degree()) throw DimensionMismatch("normalization parts must sum to the degree");
    scale = ScalarTraits<S>::from_rational(Rational(1) / denom);
  }
  auto perms = std::make_shared<std::vector<Permutation>>(all_permutations(t.degree()));
  return Semiform<S>(t.degree(), t.model_dim(), [t, perms, scale](const Microcube<S>& g) {
    Element<S> acc = Element<S>::zero(g.base_context());
    for (const Permutation& sigma : *perms) {
      Element<S> v = t(reparametrize(g, sigma.image()));
      acc += sigma.sign() > 0 ? v : -v;
    }
    return acc * scale;
  }).with_flags(t.homogeneous_checked(), true);
}

template <class S>
Semiform<S> wedge(const Semiform<S>& t1, const Semiform<S>& t2) {
  return antisymmetrize_form(tensor_semiforms(t1, t2), {t1.degree(), t2.degree()});
}

struct FormProperties {
  bool homogeneous = true;
  bool alternating = true;
};

/// Sampled homogeneity / alternation check on random microcubes.
template <class S>
FormProperties check_form_properties(const Semiform<S>& t, Rng& rng, int trials, double tol) {
  FormProperties props;
  const int q = t.degree(), m = t.model_dim();
  for (int trial = 0; trial < trials; ++trial) {
    TaylorTable<S> table;
    table.base = Context::base();
    table.top = cube_algebra(q);
    for (Eigen::Index j = 0; j < table.top->dim(); ++j) {
      Point<S> entry;
      for (int i = 0; i < m; ++i)
        entry.push_back(Element<S>::constant(table.base, rng.template scalar<S>()));
      table.entries.push_back(std::move(entry));
    }
    Microcube<S> g = from_taylor(table);
    Element<S> value = t(g);
    if (q >= 1) {
      int slot = rng.uniform_int(1, q);
      S alpha = rng.template scalar<S>();
      if (!approx_equal(t(scale_slot(g, slot, alpha)), value * alpha, tol))
        props.homogeneous = false;
      Permutation sigma(rng.permutation(q));
      Element<S> signed_value = sigma.sign() > 0 ? value : -value;
      if (!approx_equal(t(reparametrize(g, sigma.image())), signed_value, tol))
        props.alternating = false;
    }
    if (!props.homogeneous && !props.alternating) break;
  }
  return props;
}

}  // namespace weil
