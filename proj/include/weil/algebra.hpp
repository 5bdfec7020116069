#pragma once

#include <Eigen/Core>
#include <map>
#include <memory>
#include <vector>

#include "weil/infinitesimal.hpp"
#include "weil/scalar.hpp"

namespace weil {

class WeilAlgebra;
using AlgebraPtr = std::shared_ptr<const WeilAlgebra>;

/// Finite-dimensional quotient of a polynomial ring by a monomial ideal with
/// nilpotent augmentation ideal. Immutable after construction and always
/// shared through AlgebraPtr.
class WeilAlgebra {
 public:
  explicit WeilAlgebra(InfinitesimalObject source);

  const InfinitesimalObject& source() const { return source_; }
  int generators() const { return source_.generators(); }
  Eigen::Index dim() const { return static_cast<Eigen::Index>(basis_.size()); }
  const std::vector<Monomial>& basis() const { return basis_; }
  const Monomial& basis_monomial(Eigen::Index i) const { return basis_[i]; }

  /// basis index of a monomial, or -1 when it reduces to zero.
  int reduce(const Monomial& m) const;
  int basis_index(const Monomial& m) const;

  /// mult(i, j) = basis index of basis[i]*basis[j], or -1 for zero.
  int mult(Eigen::Index i, Eigen::Index j) const { return mult_(i, j); }

  /// Largest total degree of a basis monomial; (augmentation ideal)^{d+1} = 0.
  int max_degree() const { return max_degree_; }

  /// Square-free basis whose monomials are exactly the subsets of the
  /// generators (true for D^n, D(n), D^2+D). Enables mask-indexed tables.
  bool square_free() const { return square_free_; }
  int index_of_mask(unsigned mask) const;  // -1 if the mask is not a basis monomial
  unsigned mask_of_index(Eigen::Index i) const;

  // Element arithmetic over exact coefficients, used by hom construction
  // and the structural checks.
  RationalVec unit() const;
  RationalVec zero() const { return RationalVec::Zero(dim()); }
  RationalVec generator(int var) const;
  RationalVec mul_elems(const RationalVec& a, const RationalVec& b) const;
  RationalVec pow_elem(RationalVec a, int e) const;

 private:
  InfinitesimalObject source_;
  std::vector<Monomial> basis_;
  std::map<Monomial, int> index_;
  Eigen::MatrixXi mult_;
  int max_degree_ = 0;
  bool square_free_ = false;
  std::vector<int> mask_to_index_;
  std::vector<unsigned> index_to_mask_;
};

AlgebraPtr build_algebra(const InfinitesimalObject& obj);

/// Tensor product: generators concatenated, relations on disjoint variables.
AlgebraPtr tensor(const AlgebraPtr& a, const AlgebraPtr& b);

/// Shared, memoized W_{D^n}; these are created constantly by the
/// convolution machinery.
AlgebraPtr cube_algebra(int n);
AlgebraPtr axes_algebra(int n);
AlgebraPtr line_algebra(int order);
AlgebraPtr square_oplus_line_algebra();

/// Algebra homomorphism presented by generator images (zero constant term),
/// stored as the induced linear map on bases. Validation is eager: the
/// source ideal must map to zero.
class AlgebraHom {
 public:
  AlgebraHom(AlgebraPtr src, AlgebraPtr tgt, std::vector<RationalVec> gen_images);

  const AlgebraPtr& source() const { return src_; }
  const AlgebraPtr& target() const { return tgt_; }
  const RationalMat& matrix() const { return m_; }
  const Eigen::MatrixXd& matrix_d() const { return md_; }

  RationalVec apply(const RationalVec& a) const { return m_ * a; }

 private:
  AlgebraPtr src_, tgt_;
  RationalMat m_;    // dim(tgt) x dim(src)
  Eigen::MatrixXd md_;
};

AlgebraHom make_hom(const AlgebraPtr& src, const AlgebraPtr& tgt,
                    std::vector<RationalVec> gen_images);
AlgebraHom compose(const AlgebraHom& g, const AlgebraHom& f);  // g after f

AlgebraHom identity_hom(const AlgebraPtr& a);
/// W_{D^n} -> W_{D^k} induced by the face D^k -> D^n that keeps the listed
/// slots (1-based, increasing) and pins the others to 0.
AlgebraHom cube_face_hom(int n, const std::vector<int>& kept_slots);
/// W_{D^n} -> W_{D^n} induced by slot permutation; x_j -> x_{perm[j]}.
AlgebraHom cube_perm_hom(const std::vector<int>& perm);
/// W_{D^n} -> W_{D^n} induced by scaling slot i (1-based) by alpha.
AlgebraHom cube_scale_hom(int n, int slot, const Rational& alpha);
/// W_{D^n} -> W_{D(n)} induced by the canonical injection D(n) -> D^n.
AlgebraHom axes_inclusion_hom(int n);
/// W_{D^2+D} -> W_{D^2}: x3 -> 0 resp. x3 -> x1*x2.
AlgebraHom phi_hom();
AlgebraHom psi_hom();
/// W_{D^2+D} -> W_D induced by d -> (0,0,d).
AlgebraHom third_slot_hom();
/// W_D -> W_{D_2} induced by X -> X^2.
AlgebraHom square_substitution_hom();

}  // namespace weil
