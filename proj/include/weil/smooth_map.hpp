#pragma once

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "weil/context.hpp"

namespace weil {

/// Expression DAG for smooth maps R^m -> R^k. Bodies are built from ring
/// nodes plus a small set of primitives that carry all-order derivative
/// rules, so one definition evaluates over every coefficient context.
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class Prim { Exp, Sin, Cos, PowInt };

struct Expr {
  enum class Kind { Constant, Var, Add, Neg, Mul, Scale, Primitive };
  Kind kind;
  Rational value;  // Constant payload, Scale factor
  int var = 0;     // Var index
  ExprPtr a, b;
  Prim prim = Prim::Exp;
  int exponent = 0;  // PowInt payload
};

namespace dag {
ExprPtr constant(const Rational& q);
ExprPtr var(int i);
ExprPtr add(ExprPtr a, ExprPtr b);
ExprPtr sub(ExprPtr a, ExprPtr b);
ExprPtr neg(ExprPtr a);
ExprPtr mul(ExprPtr a, ExprPtr b);
ExprPtr scale(const Rational& q, ExprPtr a);
ExprPtr exp(ExprPtr a);
ExprPtr sin(ExprPtr a);
ExprPtr cos(ExprPtr a);
ExprPtr powi(ExprPtr a, int n);
}  // namespace dag

class SmoothMap {
 public:
  SmoothMap(int input_dim, std::vector<ExprPtr> outputs);

  int input_dim() const { return m_; }
  int output_dim() const { return static_cast<int>(out_.size()); }
  const std::vector<ExprPtr>& outputs() const { return out_; }

  static SmoothMap identity(int m);
  static SmoothMap constant_map(int m, const std::vector<Rational>& values);

  /// g(f(x)); inner outputs are substituted for the outer variables.
  SmoothMap compose_after(const SmoothMap& inner) const;

 private:
  int m_;
  std::vector<ExprPtr> out_;
};

inline SmoothMap make_smooth_map(int input_dim, std::vector<ExprPtr> outputs) {
  return SmoothMap(input_dim, std::move(outputs));
}

/// Text form used by fixtures, e.g. "(vec (mul (var 0) (var 0)))".
/// Accepted nodes: const, var, add, sub, neg, mul, scale, exp, sin, cos, pow.
SmoothMap parse_smooth_map(const std::string& text, int input_dim);
std::string to_text(const SmoothMap& map);

// ---- evaluation (Taylor lift) ----------------------------------------------

namespace detail {

/// j-th derivative of the primitive at scalar a. Transcendentals are
/// refused over exact rationals.
template <class S>
S prim_derivative(Prim p, int exponent, const S& a, int j) {
  if constexpr (ScalarTraits<S>::exact) {
    if (p != Prim::PowInt)
      throw MalformedMap("transcendental primitive evaluated over exact rationals");
  }
  if (p == Prim::PowInt) {
    if (j > exponent) return S(0);
    S coeff(1);
    for (int t = 0; t < j; ++t) coeff *= S(exponent - t);
    S r = coeff;
    for (int t = 0; t < exponent - j; ++t) r *= a;
    return r;
  }
  if constexpr (!ScalarTraits<S>::exact) {
    switch (p) {
      case Prim::Exp:
        return std::exp(a);
      case Prim::Sin: {
        const int phase = j % 4;
        return phase == 0 ? std::sin(a) : phase == 1 ? std::cos(a)
                          : phase == 2 ? -std::sin(a)
                                       : -std::cos(a);
      }
      case Prim::Cos: {
        const int phase = j % 4;
        return phase == 0 ? std::cos(a) : phase == 1 ? -std::sin(a)
                          : phase == 2 ? -std::cos(a)
                                       : std::sin(a);
      }
      default:
        break;
    }
  }
  throw MalformedMap("unknown primitive");
}

/// g(a + n) = sum_j g^(j)(a)/j! n^j, truncated by the context's nilpotency.
template <class S>
Element<S> lift_primitive(Prim p, int exponent, const Element<S>& x) {
  const S a = x.scalar_part();
  Element<S> nil = x - Element<S>::constant(x.context(), a);
  Element<S> acc = Element<S>::constant(x.context(), prim_derivative(p, exponent, a, 0));
  Element<S> nil_pow = Element<S>::constant(x.context(), S(1));
  const int bound = x.context()->nilpotent_bound();
  for (int j = 1; j < bound; ++j) {
    nil_pow = nil_pow * nil;
    if (nil_pow.is_zero()) break;
    S c = prim_derivative(p, exponent, a, j);
    if constexpr (ScalarTraits<S>::exact)
      c /= factorial(j);
    else
      c /= ScalarTraits<double>::from_rational(factorial(j));
    if (c != S(0)) acc += nil_pow * c;
  }
  return acc;
}

template <class S>
Element<S> eval_expr(const Expr* e, const std::vector<Element<S>>& at,
                     std::unordered_map<const Expr*, Element<S>>& memo) {
  auto it = memo.find(e);
  if (it != memo.end()) return it->second;
  Element<S> r;
  const ContextPtr& ctx = at.empty() ? Context::base() : at[0].context();
  switch (e->kind) {
    case Expr::Kind::Constant:
      r = Element<S>::constant(ctx, ScalarTraits<S>::from_rational(e->value));
      break;
    case Expr::Kind::Var:
      r = at[e->var];
      break;
    case Expr::Kind::Add:
      r = eval_expr(e->a.get(), at, memo) + eval_expr(e->b.get(), at, memo);
      break;
    case Expr::Kind::Neg:
      r = -eval_expr(e->a.get(), at, memo);
      break;
    case Expr::Kind::Mul:
      r = eval_expr(e->a.get(), at, memo) * eval_expr(e->b.get(), at, memo);
      break;
    case Expr::Kind::Scale:
      r = eval_expr(e->a.get(), at, memo) * ScalarTraits<S>::from_rational(e->value);
      break;
    case Expr::Kind::Primitive:
      r = lift_primitive(e->prim, e->exponent, eval_expr(e->a.get(), at, memo));
      break;
  }
  memo.emplace(e, r);
  return r;
}

}  // namespace detail

/// Evaluate every output of f at a point whose coordinates are elements of
/// one shared context.
template <class S>
std::vector<Element<S>> eval_map(const SmoothMap& f, const std::vector<Element<S>>& at) {
  if (static_cast<int>(at.size()) != f.input_dim())
    throw DimensionMismatch("point arity does not match the map");
  for (std::size_t i = 1; i < at.size(); ++i) require_same(at[0].context(), at[i].context());
  std::unordered_map<const Expr*, Element<S>> memo;
  std::vector<Element<S>> r;
  r.reserve(f.output_dim());
  for (const ExprPtr& out : f.outputs()) r.push_back(detail::eval_expr(out.get(), at, memo));
  return r;
}

/// Scalar-point convenience.
template <class S>
std::vector<S> eval_map_at(const SmoothMap& f, const std::vector<S>& at) {
  std::vector<Element<S>> lifted;
  lifted.reserve(at.size());
  for (const S& x : at) lifted.push_back(Element<S>::constant(Context::base(), x));
  std::vector<S> r;
  for (const Element<S>& e : eval_map(f, lifted)) r.push_back(e.scalar_part());
  return r;
}

}  // namespace weil
