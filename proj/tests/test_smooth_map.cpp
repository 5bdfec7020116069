#include <cmath>

#include "doctest.h"
#include "weil/microcube.hpp"
#include "weil/sampling.hpp"
#include "weil/smooth_map.hpp"

using namespace weil;

namespace {

// Second-order Taylor oracle for a one-variable primitive g at a + n over a
// degree-2 context: g(a) + g'(a) n + g''(a) n^2 / 2, with hand-coded
// derivatives independent of the library's lift.
double sin_oracle_coeff(double a, unsigned mask) {
  switch (mask) {
    case 0b00:
      return std::sin(a);
    case 0b01:
    case 0b10:
      return std::cos(a);
    default:  // coefficient of x1 x2 in sin(a + x1 + x2): g''(a) * (x1+x2)^2/2
      return -std::sin(a);
  }
}

}  // namespace

TEST_CASE("map construction validates arity") {
  CHECK_THROWS_AS(SmoothMap(1, {dag::var(1)}), MalformedMap);
  CHECK_THROWS_AS(SmoothMap(0, {}), MalformedMap);
  SmoothMap ok(2, {dag::mul(dag::var(0), dag::var(1))});
  CHECK(ok.input_dim() == 2);
  CHECK(ok.output_dim() == 1);
}

TEST_CASE("identity and constants") {
  SmoothMap id = SmoothMap::identity(2);
  std::vector<Rational> out = eval_map_at<Rational>(id, {Rational(3), Rational(-5)});
  CHECK(out[0] == 3);
  CHECK(out[1] == -5);

  SmoothMap c = SmoothMap::constant_map(1, {Rational(7) / 2});
  CHECK(eval_map_at<Rational>(c, {Rational(100)})[0] == Rational(7) / 2);
}

TEST_CASE("square map over first-order infinitesimals") {
  SmoothMap sq(1, {dag::mul(dag::var(0), dag::var(0))});
  ContextPtr d = Context::base()->push(cube_algebra(1));
  // (a + b x)^2 = a^2 + 2ab x
  Element<Rational> x = Element<Rational>::top_generator(d, 0);
  Element<Rational> p = Element<Rational>::constant(d, 3) + x * Rational(5);
  Element<Rational> v = eval_map(sq, std::vector<Element<Rational>>{p})[0];
  CHECK(v.coeffs()[0] == 9);
  CHECK(v.coeffs()[1] == 30);
}

TEST_CASE("square map over the full square context") {
  SmoothMap sq(1, {dag::powi(dag::var(0), 2)});
  ContextPtr d2 = Context::base()->push(cube_algebra(2));
  Element<Rational> p = Element<Rational>::constant(d2, 4) +
                        Element<Rational>::top_generator(d2, 0) +
                        Element<Rational>::top_generator(d2, 1);
  Element<Rational> v = eval_map(sq, std::vector<Element<Rational>>{p})[0];
  // a^2 + 2a x1 + 2a x2 + 2 x1 x2
  CHECK(v.coeffs()[0] == 16);
  CHECK(v.coeffs()[1] == 8);
  CHECK(v.coeffs()[2] == 8);
  CHECK(v.coeffs()[3] == 2);
}

TEST_CASE("exponential lift truncates at the square") {
  SmoothMap f(1, {dag::exp(dag::var(0))});
  ContextPtr d = Context::base()->push(cube_algebra(1));
  double a = 0.3, b = 1.7;
  Element<double> p = Element<double>::constant(d, a) +
                      Element<double>::top_generator(d, 0) * b;
  Element<double> v = eval_map(f, std::vector<Element<double>>{p})[0];
  CHECK(v.coeffs()[0] == doctest::Approx(std::exp(a)).epsilon(1e-14));
  CHECK(v.coeffs()[1] == doctest::Approx(std::exp(a) * b).epsilon(1e-14));
}

TEST_CASE("sine over a microsquare matches the symbolic second-order expansion") {
  SmoothMap f(1, {dag::sin(dag::var(0))});
  ContextPtr d2 = Context::base()->push(cube_algebra(2));
  double a = 0.7;
  Element<double> p = Element<double>::constant(d2, a) +
                      Element<double>::top_generator(d2, 0) +
                      Element<double>::top_generator(d2, 1);
  Element<double> v = eval_map(f, std::vector<Element<double>>{p})[0];
  AlgebraPtr w = cube_algebra(2);
  for (unsigned mask = 0; mask < 4; ++mask)
    CHECK(v.coeffs()[w->index_of_mask(mask)] ==
          doctest::Approx(sin_oracle_coeff(a, mask)).epsilon(1e-14));
}

TEST_CASE("transcendentals are refused over exact rationals") {
  SmoothMap f(1, {dag::sin(dag::var(0))});
  CHECK_THROWS_AS(eval_map_at<Rational>(f, {Rational(1)}), MalformedMap);
  // polynomial primitives stay exact
  SmoothMap g(1, {dag::powi(dag::var(0), 3)});
  CHECK(eval_map_at<Rational>(g, {Rational(2) / 3})[0] == Rational(8) / 27);
}

TEST_CASE("chain rule: composition evaluates exactly over rationals") {
  Rng rng(211);
  SmoothMap inner(2, {dag::add(dag::mul(dag::var(0), dag::var(1)), dag::var(1)),
                      dag::powi(dag::var(0), 2)});
  SmoothMap outer(2, {dag::mul(dag::var(0), dag::var(0)),
                      dag::sub(dag::var(1), dag::var(0))});
  SmoothMap composed = outer.compose_after(inner);
  ContextPtr c = Context::base()->push(cube_algebra(2));
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<Element<Rational>> at;
    for (int i = 0; i < 2; ++i) {
      Vec<Rational> v(c->dim());
      for (Eigen::Index j = 0; j < v.size(); ++j) v[j] = rng.rational();
      at.emplace_back(c, std::move(v));
    }
    auto direct = eval_map(composed, at);
    auto nested = eval_map(outer, eval_map(inner, at));
    for (int i = 0; i < 2; ++i) REQUIRE(direct[i].coeffs() == nested[i].coeffs());
  }
}

TEST_CASE("chain rule with transcendentals within 1e-12 relative") {
  Rng rng(223);
  SmoothMap inner(1, {dag::sin(dag::var(0))});
  SmoothMap outer(1, {dag::exp(dag::mul(dag::var(0), dag::var(0)))});
  SmoothMap composed = outer.compose_after(inner);
  ContextPtr c = Context::base()->push(cube_algebra(2));
  for (int trial = 0; trial < 25; ++trial) {
    Vec<double> v(c->dim());
    for (Eigen::Index j = 0; j < v.size(); ++j) v[j] = rng.real();
    std::vector<Element<double>> at = {Element<double>(c, v)};
    Element<double> direct = eval_map(composed, at)[0];
    Element<double> nested = eval_map(outer, eval_map(inner, at))[0];
    REQUIRE(approx_equal(direct, nested, 1e-12));
  }
}

TEST_CASE("scalar part commutes with evaluation") {
  Rng rng(227);
  SmoothMap f(2, {dag::mul(dag::sin(dag::var(0)), dag::var(1)),
                  dag::exp(dag::add(dag::var(0), dag::var(1)))});
  ContextPtr c = Context::base()->push(cube_algebra(2))->push(cube_algebra(1));
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Element<double>> at;
    std::vector<double> scalars;
    for (int i = 0; i < 2; ++i) {
      Vec<double> v(c->dim());
      for (Eigen::Index j = 0; j < v.size(); ++j) v[j] = rng.real();
      at.emplace_back(c, std::move(v));
      scalars.push_back(at.back().scalar_part());
    }
    auto lifted_out = eval_map(f, at);
    auto scalar_out = eval_map_at(f, scalars);
    for (int i = 0; i < 2; ++i)
      REQUIRE(lifted_out[i].scalar_part() == doctest::Approx(scalar_out[i]).epsilon(1e-13));
  }
}

TEST_CASE("first-order coefficient agrees with central finite differences") {
  Rng rng(229);
  std::vector<SmoothMap> maps;
  maps.push_back(SmoothMap(1, {dag::add(dag::powi(dag::var(0), 3),
                                        dag::scale(Rational(1) / 2, dag::var(0)))}));
  maps.push_back(SmoothMap(1, {dag::exp(dag::var(0))}));
  maps.push_back(SmoothMap(1, {dag::mul(dag::sin(dag::var(0)), dag::var(0))}));
  ContextPtr d = Context::base()->push(cube_algebra(1));
  const double h = 1e-4;
  for (const SmoothMap& f : maps)
    for (int trial = 0; trial < 20; ++trial) {
      double a = rng.real();
      Element<double> p = Element<double>::constant(d, a) +
                          Element<double>::top_generator(d, 0);
      double lifted_deriv = eval_map(f, std::vector<Element<double>>{p})[0].coeffs()[1];
      double fd = (eval_map_at<double>(f, {a + h})[0] - eval_map_at<double>(f, {a - h})[0]) /
                  (2 * h);
      REQUIRE(std::fabs(lifted_deriv - fd) < 1e-6);
    }
}

TEST_CASE("text form round-trips") {
  SmoothMap f = parse_smooth_map("(vec (mul (var 0) (var 0)))", 1);
  CHECK(eval_map_at<Rational>(f, {Rational(4)})[0] == 16);

  SmoothMap g = parse_smooth_map(
      "(vec (add (scale 1/2 (pow (var 0) 2)) (neg (var 1))) (sin (var 1)))", 2);
  CHECK(g.output_dim() == 2);
  SmoothMap back = parse_smooth_map(to_text(g), 2);
  CHECK(to_text(back) == to_text(g));

  CHECK_THROWS_AS(parse_smooth_map("(vec (frob 1))", 1), ParseError);
  try {
    parse_smooth_map("(vec\n  (mul (var 0) (bad)))", 1);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
  }
}
