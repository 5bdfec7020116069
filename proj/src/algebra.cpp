#include "weil/algebra.hpp"

#include <algorithm>
#include <mutex>

namespace weil {

WeilAlgebra::WeilAlgebra(InfinitesimalObject source) : source_(std::move(source)) {
  const int k = source_.generators();
  // Enumerate all exponent tuples below the pure-power bounds and keep the
  // ones outside the ideal.
  Monomial cur(k, 0);
  std::vector<Monomial> all;
  while (true) {
    if (!source_.in_ideal(cur)) all.push_back(cur);
    int i = 0;
    for (; i < k; ++i) {
      if (++cur[i] < source_.exponent_bound(i)) break;
      cur[i] = 0;
    }
    if (i == k) break;
  }
  std::sort(all.begin(), all.end(), basis_less);
  basis_ = std::move(all);
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    index_[basis_[i]] = static_cast<int>(i);
    max_degree_ = std::max(max_degree_, degree(basis_[i]));
  }

  const Eigen::Index d = dim();
  mult_.resize(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j <= i; ++j) {
      int r = reduce(mul(basis_[i], basis_[j]));
      mult_(i, j) = r;
      mult_(j, i) = r;
    }

  square_free_ = true;
  for (const Monomial& m : basis_)
    for (int e : m)
      if (e > 1) square_free_ = false;
  if (square_free_ && k <= 24) {
    mask_to_index_.assign(1u << k, -1);
    index_to_mask_.resize(basis_.size());
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      unsigned mask = 0;
      for (int v = 0; v < k; ++v)
        if (basis_[i][v]) mask |= 1u << v;
      mask_to_index_[mask] = static_cast<int>(i);
      index_to_mask_[i] = mask;
    }
  } else {
    square_free_ = false;
  }
}

int WeilAlgebra::reduce(const Monomial& m) const {
  if (source_.in_ideal(m)) return -1;
  auto it = index_.find(m);
  return it == index_.end() ? -1 : it->second;
}

int WeilAlgebra::basis_index(const Monomial& m) const {
  auto it = index_.find(m);
  return it == index_.end() ? -1 : it->second;
}

int WeilAlgebra::index_of_mask(unsigned mask) const {
  if (!square_free_ || mask >= mask_to_index_.size()) return -1;
  return mask_to_index_[mask];
}

unsigned WeilAlgebra::mask_of_index(Eigen::Index i) const { return index_to_mask_[i]; }

RationalVec WeilAlgebra::unit() const {
  RationalVec u = zero();
  u[0] = 1;
  return u;
}

RationalVec WeilAlgebra::generator(int var) const {
  Monomial m(generators(), 0);
  m[var] = 1;
  int idx = basis_index(m);
  if (idx < 0) throw InvalidIdeal("generator x" + std::to_string(var + 1) + " is not in the basis");
  RationalVec g = zero();
  g[idx] = 1;
  return g;
}

RationalVec WeilAlgebra::mul_elems(const RationalVec& a, const RationalVec& b) const {
  RationalVec r = zero();
  for (Eigen::Index i = 0; i < dim(); ++i) {
    if (a[i] == 0) continue;
    for (Eigen::Index j = 0; j < dim(); ++j) {
      if (b[j] == 0) continue;
      int k = mult_(i, j);
      if (k >= 0) r[k] += a[i] * b[j];
    }
  }
  return r;
}

RationalVec WeilAlgebra::pow_elem(RationalVec a, int e) const {
  RationalVec r = unit();
  while (e > 0) {
    if (e & 1) r = mul_elems(r, a);
    a = mul_elems(a, a);
    e >>= 1;
  }
  return r;
}

AlgebraPtr build_algebra(const InfinitesimalObject& obj) {
  return std::make_shared<WeilAlgebra>(obj);
}

AlgebraPtr tensor(const AlgebraPtr& a, const AlgebraPtr& b) {
  const int ka = a->generators(), kb = b->generators();
  std::vector<Monomial> gens;
  for (const Monomial& g : a->source().ideal()) {
    Monomial m(ka + kb, 0);
    std::copy(g.begin(), g.end(), m.begin());
    gens.push_back(m);
  }
  for (const Monomial& g : b->source().ideal()) {
    Monomial m(ka + kb, 0);
    std::copy(g.begin(), g.end(), m.begin() + ka);
    gens.push_back(m);
  }
  return build_algebra(InfinitesimalObject(a->source().name() + "(x)" + b->source().name(),
                                           ka + kb, std::move(gens)));
}

namespace {
std::mutex cache_mutex;
}

AlgebraPtr cube_algebra(int n) {
  static std::map<int, AlgebraPtr> cache;
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  AlgebraPtr w = build_algebra(InfinitesimalObject::cube(n));
  cache[n] = w;
  return w;
}

AlgebraPtr axes_algebra(int n) {
  static std::map<int, AlgebraPtr> cache;
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  AlgebraPtr w = build_algebra(InfinitesimalObject::axes(n));
  cache[n] = w;
  return w;
}

AlgebraPtr line_algebra(int order) {
  static std::map<int, AlgebraPtr> cache;
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto it = cache.find(order);
  if (it != cache.end()) return it->second;
  AlgebraPtr w = build_algebra(InfinitesimalObject::line(order));
  cache[order] = w;
  return w;
}

AlgebraPtr square_oplus_line_algebra() {
  static AlgebraPtr w = build_algebra(InfinitesimalObject::square_oplus_line());
  return w;
}

AlgebraHom::AlgebraHom(AlgebraPtr src, AlgebraPtr tgt, std::vector<RationalVec> gen_images)
    : src_(std::move(src)), tgt_(std::move(tgt)) {
  if (static_cast<int>(gen_images.size()) != src_->generators())
    throw DimensionMismatch("need one image per source generator");
  for (const RationalVec& img : gen_images) {
    if (img.size() != tgt_->dim())
      throw DimensionMismatch("generator image has the wrong coefficient length");
    if (img[0] != 0) throw IllDefinedHom("generator image has a nonzero constant term");
  }

  // Substitute into every source ideal generator; all must vanish.
  for (const Monomial& g : src_->source().ideal()) {
    RationalVec v = tgt_->unit();
    for (std::size_t i = 0; i < gen_images.size(); ++i)
      if (g[i] > 0) v = tgt_->mul_elems(v, tgt_->pow_elem(gen_images[i], g[i]));
    if (!v.isZero())
      throw IllDefinedHom("ideal generator " + to_string(g) + " does not map to zero");
  }

  m_ = RationalMat::Zero(tgt_->dim(), src_->dim());
  for (Eigen::Index i = 0; i < src_->dim(); ++i) {
    const Monomial& b = src_->basis_monomial(i);
    RationalVec v = tgt_->unit();
    for (std::size_t j = 0; j < gen_images.size(); ++j)
      if (b[j] > 0) v = tgt_->mul_elems(v, tgt_->pow_elem(gen_images[j], b[j]));
    m_.col(i) = v;
  }
  md_.resize(m_.rows(), m_.cols());
  for (Eigen::Index r = 0; r < m_.rows(); ++r)
    for (Eigen::Index c = 0; c < m_.cols(); ++c)
      md_(r, c) = ScalarTraits<double>::from_rational(m_(r, c));
}

AlgebraHom make_hom(const AlgebraPtr& src, const AlgebraPtr& tgt,
                    std::vector<RationalVec> gen_images) {
  return AlgebraHom(src, tgt, std::move(gen_images));
}

AlgebraHom compose(const AlgebraHom& g, const AlgebraHom& f) {
  if (f.target() != g.source() &&
      f.target()->basis() != g.source()->basis())
    throw DimensionMismatch("hom composition: inner target differs from outer source");
  std::vector<RationalVec> images;
  for (int v = 0; v < f.source()->generators(); ++v)
    images.push_back(g.apply(f.apply(f.source()->generator(v))));
  return AlgebraHom(f.source(), g.target(), std::move(images));
}

AlgebraHom identity_hom(const AlgebraPtr& a) {
  std::vector<RationalVec> images;
  for (int v = 0; v < a->generators(); ++v) images.push_back(a->generator(v));
  return AlgebraHom(a, a, std::move(images));
}

AlgebraHom cube_face_hom(int n, const std::vector<int>& kept_slots) {
  AlgebraPtr src = cube_algebra(n);
  AlgebraPtr tgt = cube_algebra(static_cast<int>(kept_slots.size()));
  std::vector<RationalVec> images(n, tgt->zero());
  for (std::size_t j = 0; j < kept_slots.size(); ++j)
    images[kept_slots[j] - 1] = tgt->generator(static_cast<int>(j));
  return AlgebraHom(src, tgt, std::move(images));
}

AlgebraHom cube_perm_hom(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  AlgebraPtr w = cube_algebra(n);
  std::vector<RationalVec> images;
  for (int j = 0; j < n; ++j) images.push_back(w->generator(perm[j] - 1));
  return AlgebraHom(w, w, std::move(images));
}

AlgebraHom cube_scale_hom(int n, int slot, const Rational& alpha) {
  AlgebraPtr w = cube_algebra(n);
  std::vector<RationalVec> images;
  for (int j = 0; j < n; ++j) {
    RationalVec g = w->generator(j);
    if (j == slot - 1) g *= alpha;
    images.push_back(g);
  }
  return AlgebraHom(w, w, std::move(images));
}

AlgebraHom axes_inclusion_hom(int n) {
  AlgebraPtr src = cube_algebra(n);
  AlgebraPtr tgt = axes_algebra(n);
  std::vector<RationalVec> images;
  for (int j = 0; j < n; ++j) images.push_back(tgt->generator(j));
  return AlgebraHom(src, tgt, std::move(images));
}

AlgebraHom phi_hom() {
  AlgebraPtr src = square_oplus_line_algebra();
  AlgebraPtr tgt = cube_algebra(2);
  return AlgebraHom(src, tgt, {tgt->generator(0), tgt->generator(1), tgt->zero()});
}

AlgebraHom psi_hom() {
  AlgebraPtr src = square_oplus_line_algebra();
  AlgebraPtr tgt = cube_algebra(2);
  return AlgebraHom(src, tgt,
                    {tgt->generator(0), tgt->generator(1),
                     tgt->mul_elems(tgt->generator(0), tgt->generator(1))});
}

AlgebraHom third_slot_hom() {
  AlgebraPtr src = square_oplus_line_algebra();
  AlgebraPtr tgt = cube_algebra(1);
  return AlgebraHom(src, tgt, {tgt->zero(), tgt->zero(), tgt->generator(0)});
}

AlgebraHom square_substitution_hom() {
  AlgebraPtr src = cube_algebra(1);
  AlgebraPtr tgt = line_algebra(2);
  RationalVec img = tgt->mul_elems(tgt->generator(0), tgt->generator(0));
  return AlgebraHom(src, tgt, {img});
}

}  // namespace weil
