#pragma once

#include <memory>
#include <vector>

#include "weil/algebra.hpp"
#include "weil/errors.hpp"
#include "weil/scalar.hpp"

namespace weil {

class Context;
using ContextPtr = std::shared_ptr<const Context>;

/// A coefficient context: an ordered tower of Weil algebras stacked as
/// nested coefficient rings. The base scalar kind lives in the element type
/// (Element<Rational> or Element<double>), the tower is pure structure.
///
/// Flat layout: an element over the tower is a coefficient vector of length
/// prod(dims); the top level varies slowest, so the coefficient of a top
/// basis monomial is one contiguous block.
class Context {
 public:
  Context() = default;

  static ContextPtr base() {
    static ContextPtr b = std::make_shared<Context>();
    return b;
  }

  int depth() const { return static_cast<int>(tower_.size()); }
  const AlgebraPtr& level(int l) const { return tower_[l]; }
  const AlgebraPtr& top() const { return tower_.back(); }
  Eigen::Index dim() const { return dim_; }
  Eigen::Index stride(int l) const { return strides_[l]; }
  Eigen::Index top_stride() const { return strides_.back(); }

  /// n^bound = 0 for every element n with zero scalar part.
  int nilpotent_bound() const { return nilpotent_bound_; }

  ContextPtr push(const AlgebraPtr& w) const {
    auto c = std::make_shared<Context>();
    c->tower_ = tower_;
    c->tower_.push_back(w);
    c->init();
    return c;
  }

  ContextPtr pop() const {
    if (tower_.empty()) throw ContextMismatch("pop on the base context");
    auto c = std::make_shared<Context>();
    c->tower_.assign(tower_.begin(), tower_.end() - 1);
    c->init();
    return c;
  }

  /// Replace the top level by the given algebras (used by split/merge/swap).
  ContextPtr replace_top(int drop, const std::vector<AlgebraPtr>& push_levels) const {
    auto c = std::make_shared<Context>();
    c->tower_.assign(tower_.begin(), tower_.end() - drop);
    for (const AlgebraPtr& w : push_levels) c->tower_.push_back(w);
    c->init();
    return c;
  }

  bool same_as(const Context& other) const {
    if (tower_.size() != other.tower_.size()) return false;
    for (std::size_t l = 0; l < tower_.size(); ++l) {
      if (tower_[l] == other.tower_[l]) continue;
      if (tower_[l]->basis() != other.tower_[l]->basis()) return false;
      if (tower_[l]->source().ideal() != other.tower_[l]->source().ideal()) return false;
    }
    return true;
  }

  /// Index of the product monomial, or -1 when it dies in some level.
  Eigen::Index mul_index(Eigen::Index i, Eigen::Index j) const {
    Eigen::Index k = 0;
    for (int l = depth() - 1; l >= 0; --l) {
      const Eigen::Index s = strides_[l];
      const Eigen::Index il = i / s, jl = j / s;
      i -= il * s;
      j -= jl * s;
      const int kl = tower_[l]->mult(il, jl);
      if (kl < 0) return -1;
      k += kl * s;
    }
    return k;
  }

 private:
  void init() {
    strides_.resize(tower_.size());
    dim_ = 1;
    nilpotent_bound_ = 1;
    for (std::size_t l = 0; l < tower_.size(); ++l) {
      strides_[l] = dim_;
      dim_ *= tower_[l]->dim();
      nilpotent_bound_ += tower_[l]->max_degree();
    }
  }

  std::vector<AlgebraPtr> tower_;
  std::vector<Eigen::Index> strides_{};
  Eigen::Index dim_ = 1;
  int nilpotent_bound_ = 1;
};

inline void require_same(const ContextPtr& a, const ContextPtr& b) {
  if (a == b) return;
  if (!a || !b || !a->same_as(*b)) throw ContextMismatch("values live over different contexts");
}

/// One element of the coefficient tower: a flat vector of base scalars.
template <class S>
class Element {
 public:
  Element() : ctx_(Context::base()), c_(Vec<S>::Zero(1)) {}
  Element(ContextPtr ctx, Vec<S> coeffs) : ctx_(std::move(ctx)), c_(std::move(coeffs)) {
    if (c_.size() != ctx_->dim()) throw DimensionMismatch("coefficient length != context dim");
  }

  static Element zero(const ContextPtr& ctx) { return Element(ctx, Vec<S>::Zero(ctx->dim())); }
  static Element constant(const ContextPtr& ctx, const S& value) {
    Vec<S> v = Vec<S>::Zero(ctx->dim());
    v[0] = value;
    return Element(ctx, std::move(v));
  }
  /// The generator x_{var+1} of the top level.
  static Element top_generator(const ContextPtr& ctx, int var) {
    Monomial m(ctx->top()->generators(), 0);
    m[var] = 1;
    int idx = ctx->top()->basis_index(m);
    Vec<S> v = Vec<S>::Zero(ctx->dim());
    v[idx * ctx->top_stride()] = S(1);
    return Element(ctx, std::move(v));
  }

  const ContextPtr& context() const { return ctx_; }
  const Vec<S>& coeffs() const { return c_; }
  Vec<S>& coeffs() { return c_; }

  S scalar_part() const { return c_[0]; }

  Element operator+(const Element& o) const {
    require_same(ctx_, o.ctx_);
    return Element(ctx_, c_ + o.c_);
  }
  Element operator-(const Element& o) const {
    require_same(ctx_, o.ctx_);
    return Element(ctx_, c_ - o.c_);
  }
  Element operator-() const { return Element(ctx_, -c_); }
  Element& operator+=(const Element& o) {
    require_same(ctx_, o.ctx_);
    c_ += o.c_;
    return *this;
  }
  Element& operator-=(const Element& o) {
    require_same(ctx_, o.ctx_);
    c_ -= o.c_;
    return *this;
  }
  Element operator*(const S& s) const { return Element(ctx_, c_ * s); }
  Element& operator*=(const S& s) {
    c_ *= s;
    return *this;
  }

  Element operator*(const Element& o) const {
    require_same(ctx_, o.ctx_);
    Vec<S> r = Vec<S>::Zero(ctx_->dim());
    for (Eigen::Index i = 0; i < c_.size(); ++i) {
      if (c_[i] == S(0)) continue;
      for (Eigen::Index j = 0; j < o.c_.size(); ++j) {
        if (o.c_[j] == S(0)) continue;
        Eigen::Index k = ctx_->mul_index(i, j);
        if (k >= 0) r[k] += c_[i] * o.c_[j];
      }
    }
    return Element(ctx_, std::move(r));
  }

  bool is_zero() const {
    for (Eigen::Index i = 0; i < c_.size(); ++i)
      if (c_[i] != S(0)) return false;
    return true;
  }

 private:
  ContextPtr ctx_;
  Vec<S> c_;
};

template <class S>
Element<S> operator*(const S& s, const Element<S>& e) {
  return e * s;
}

template <class S>
Element<S> pow(Element<S> a, int e) {
  Element<S> r = Element<S>::constant(a.context(), S(1));
  while (e > 0) {
    if (e & 1) r = r * a;
    if ((e >>= 1) != 0) a = a * a;
  }
  return r;
}

template <class S>
bool approx_equal(const Element<S>& a, const Element<S>& b, double tol) {
  require_same(a.context(), b.context());
  for (Eigen::Index i = 0; i < a.coeffs().size(); ++i)
    if (!approx_equal(a.coeffs()[i], b.coeffs()[i], tol)) return false;
  return true;
}

template <class S>
double residual(const Element<S>& e) {
  double r = 0;
  for (Eigen::Index i = 0; i < e.coeffs().size(); ++i)
    r = std::max(r, residual_of(e.coeffs()[i]));
  return r;
}

// ---- context surgery -------------------------------------------------------
//
// Everything below reinterprets the flat coefficient vector along a canonical
// identification of contexts; no arithmetic happens, only index bookkeeping.

/// C -> C + [w], coefficients land in the unit block of the new top level.
template <class S>
Element<S> lifted(const Element<S>& e, const AlgebraPtr& w) {
  ContextPtr up = e.context()->push(w);
  Vec<S> v = Vec<S>::Zero(up->dim());
  v.head(e.coeffs().size()) = e.coeffs();
  return Element<S>(up, std::move(v));
}

/// Coefficient block of top basis monomial j, an element over the popped
/// context.
template <class S>
Element<S> top_coefficient(const Element<S>& e, Eigen::Index j) {
  const Eigen::Index s = e.context()->top_stride();
  return Element<S>(e.context()->pop(), e.coeffs().segment(j * s, s));
}

/// Inverse of per-block extraction: assemble an element of ctx + [w] from one
/// block per basis monomial of w.
template <class S>
Element<S> from_top_coefficients(const ContextPtr& ctx, const AlgebraPtr& w,
                                 const std::vector<Element<S>>& blocks) {
  if (static_cast<Eigen::Index>(blocks.size()) != w->dim())
    throw DimensionMismatch("need one block per basis monomial");
  ContextPtr up = ctx->push(w);
  Vec<S> v(up->dim());
  const Eigen::Index s = ctx->dim();
  for (Eigen::Index j = 0; j < w->dim(); ++j) {
    require_same(blocks[j].context(), ctx);
    v.segment(j * s, s) = blocks[j].coeffs();
  }
  return Element<S>(up, std::move(v));
}

/// Top level W_{D^{p+q}} -> two levels W_{D^p}, W_{D^q}; slots 1..p go to the
/// lower new level, slots p+1..p+q to the new top.
template <class S>
Element<S> split_top(const Element<S>& e, int p, int q) {
  const AlgebraPtr& t = e.context()->top();
  if (!t->square_free() || t->generators() != p + q)
    throw ContextMismatch("split_top needs a D^{p+q} top level");
  AlgebraPtr wp = cube_algebra(p), wq = cube_algebra(q);
  ContextPtr nc = e.context()->replace_top(1, {wp, wq});
  const Eigen::Index s = e.context()->top_stride();
  Vec<S> v = Vec<S>::Zero(nc->dim());
  const unsigned lowbits = (1u << p) - 1u;
  for (Eigen::Index b = 0; b < t->dim(); ++b) {
    const unsigned m = t->mask_of_index(b);
    const Eigen::Index ip = wp->index_of_mask(m & lowbits);
    const Eigen::Index iq = wq->index_of_mask(m >> p);
    v.segment((ip + iq * wp->dim()) * s, s) = e.coeffs().segment(b * s, s);
  }
  return Element<S>(nc, std::move(v));
}

/// Two top levels W_{D^a} (lower), W_{D^b} (top) -> one W_{D^{a+b}}; the lower
/// level's slots become 1..a.
template <class S>
Element<S> merge_top2(const Element<S>& e) {
  const Context& c = *e.context();
  if (c.depth() < 2) throw ContextMismatch("merge_top2 needs two stacked levels");
  const AlgebraPtr& wa = c.level(c.depth() - 2);
  const AlgebraPtr& wb = c.level(c.depth() - 1);
  if (!wa->square_free() || !wb->square_free())
    throw ContextMismatch("merge_top2 needs D^a, D^b levels");
  const int a = wa->generators(), b = wb->generators();
  AlgebraPtr wab = cube_algebra(a + b);
  ContextPtr nc = e.context()->replace_top(2, {wab});
  const Eigen::Index s = c.stride(c.depth() - 2);
  Vec<S> v = Vec<S>::Zero(nc->dim());
  for (Eigen::Index ja = 0; ja < wa->dim(); ++ja)
    for (Eigen::Index jb = 0; jb < wb->dim(); ++jb) {
      const unsigned m = wa->mask_of_index(ja) | (wb->mask_of_index(jb) << a);
      v.segment(wab->index_of_mask(m) * s, s) =
          e.coeffs().segment((ja + jb * wa->dim()) * s, s);
    }
  return Element<S>(nc, std::move(v));
}

/// Swap the two top levels (any algebras).
template <class S>
Element<S> swap_top2(const Element<S>& e) {
  const Context& c = *e.context();
  if (c.depth() < 2) throw ContextMismatch("swap_top2 needs two stacked levels");
  const AlgebraPtr& wa = c.level(c.depth() - 2);
  const AlgebraPtr& wb = c.level(c.depth() - 1);
  ContextPtr nc = e.context()->replace_top(2, {wb, wa});
  const Eigen::Index s = c.stride(c.depth() - 2);
  Vec<S> v(e.coeffs().size());
  for (Eigen::Index ja = 0; ja < wa->dim(); ++ja)
    for (Eigen::Index jb = 0; jb < wb->dim(); ++jb)
      v.segment((jb + ja * wb->dim()) * s, s) =
          e.coeffs().segment((ja + jb * wa->dim()) * s, s);
  return Element<S>(nc, std::move(v));
}

/// Apply an algebra hom to the top level; coefficients below stay untouched.
template <class S>
Element<S> apply_hom_top(const Element<S>& e, const AlgebraHom& h) {
  const Context& c = *e.context();
  if (c.depth() == 0 || c.top()->basis() != h.source()->basis())
    throw ContextMismatch("hom source does not match the top level");
  ContextPtr nc = e.context()->replace_top(1, {h.target()});
  const Eigen::Index s = c.top_stride();
  Vec<S> v = Vec<S>::Zero(nc->dim());
  for (Eigen::Index i = 0; i < h.source()->dim(); ++i) {
    auto block = e.coeffs().segment(i * s, s);
    bool zero = true;
    for (Eigen::Index t = 0; t < s && zero; ++t) zero = block[t] == S(0);
    if (zero) continue;
    for (Eigen::Index j = 0; j < h.target()->dim(); ++j) {
      S w;
      if constexpr (ScalarTraits<S>::exact)
        w = h.matrix()(j, i);
      else
        w = static_cast<S>(h.matrix_d()(j, i));
      if (w != S(0)) v.segment(j * s, s) += w * block;
    }
  }
  return Element<S>(nc, std::move(v));
}

/// Precomposition with a slot permutation of the top D^n level:
/// the coefficient of x_T moves to x_{perm(T)}.
template <class S>
Element<S> reparametrize_top(const Element<S>& e, const std::vector<int>& perm) {
  const AlgebraPtr& t = e.context()->top();
  const int n = t->generators();
  if (!t->square_free() || static_cast<int>(perm.size()) != n)
    throw DimensionMismatch("permutation length does not match the top level");
  const Eigen::Index s = e.context()->top_stride();
  Vec<S> v(e.coeffs().size());
  for (Eigen::Index b = 0; b < t->dim(); ++b) {
    const unsigned m = t->mask_of_index(b);
    unsigned pm = 0;
    for (int i = 0; i < n; ++i)
      if (m & (1u << i)) pm |= 1u << (perm[i] - 1);
    v.segment(t->index_of_mask(pm) * s, s) = e.coeffs().segment(b * s, s);
  }
  return Element<S>(e.context(), std::move(v));
}

/// Scale slot i (1-based) of the top D^n level by alpha: coefficients whose
/// monomial contains x_i pick up one factor of alpha.
template <class S>
Element<S> scale_slot_top(const Element<S>& e, int slot, const S& alpha) {
  const AlgebraPtr& t = e.context()->top();
  if (!t->square_free()) throw ContextMismatch("scale_slot_top needs a square-free top level");
  const Eigen::Index s = e.context()->top_stride();
  Vec<S> v = e.coeffs();
  for (Eigen::Index b = 0; b < t->dim(); ++b)
    if (t->mask_of_index(b) & (1u << (slot - 1))) v.segment(b * s, s) *= alpha;
  return Element<S>(e.context(), std::move(v));
}

/// Face restriction of the top D^n level: keep the listed slots (1-based,
/// increasing), pin every other slot to zero.
template <class S>
Element<S> face_top(const Element<S>& e, const std::vector<int>& kept_slots) {
  const AlgebraPtr& t = e.context()->top();
  if (!t->square_free()) throw ContextMismatch("face_top needs a square-free top level");
  AlgebraPtr w = cube_algebra(static_cast<int>(kept_slots.size()));
  ContextPtr nc = e.context()->replace_top(1, {w});
  unsigned keep = 0;
  for (int slot : kept_slots) keep |= 1u << (slot - 1);
  const Eigen::Index s = e.context()->top_stride();
  Vec<S> v = Vec<S>::Zero(nc->dim());
  for (Eigen::Index b = 0; b < t->dim(); ++b) {
    const unsigned m = t->mask_of_index(b);
    if (m & ~keep) continue;
    unsigned compressed = 0;
    for (std::size_t j = 0; j < kept_slots.size(); ++j)
      if (m & (1u << (kept_slots[j] - 1))) compressed |= 1u << j;
    v.segment(w->index_of_mask(compressed) * s, s) = e.coeffs().segment(b * s, s);
  }
  return Element<S>(nc, std::move(v));
}

}  // namespace weil
