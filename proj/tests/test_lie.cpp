#include "doctest.h"
#include "weil/lie.hpp"

using namespace weil;

namespace {

using Q = Rational;

Semiform<Q> random_alternating_form(Rng& rng, int m, int q) {
  if (q <= 1) return random_component_semiform<Q>(rng, m, q);
  return antisymmetrize_form(random_component_semiform<Q>(rng, m, q), {q, 0});
}

Q eval_on(const Semiform<Q>& theta, const Microcube<Q>& g) { return theta(g).scalar_part(); }

}  // namespace

TEST_CASE("convolving a Dirac distribution with a form restricts to the tail face") {
  Rng rng(701);
  const int p = 1, q = 2;
  Semiform<Q> theta = random_component_semiform<Q>(rng, 2, q);
  Semiform<Q> conv = convolve_with_form(dirac<Q>(p, 2), theta);
  CHECK(conv.degree() == p + q);
  for (int trial = 0; trial < 20; ++trial) {
    Microcube<Q> g = random_microcube<Q>(rng, 2, p + q);
    CHECK(eval_on(conv, g) == eval_on(theta, face(g, {2, 3})));
  }
}

TEST_CASE("a point map convolves by prolonged precomposition") {
  Rng rng(709);
  SmoothMap f = random_polynomial_map(rng, 2, 2, 2);
  Semiform<Q> theta = random_component_semiform<Q>(rng, 2, 2);
  Semiform<Q> conv = convolve_with_form(distribution_from_map<Q>(f), theta);
  for (int trial = 0; trial < 20; ++trial) {
    Microcube<Q> g = random_microcube<Q>(rng, 2, 2);
    Microcube<Q> pushed(eval_map(f, g.coords()));
    CHECK(eval_on(conv, g) == eval_on(theta, pushed));
  }
}

TEST_CASE("convolving with a 0-form composes functions") {
  Rng rng(719);
  SmoothMap fm = random_polynomial_map(rng, 2, 1, 2);
  Semiform<Q> f(0, 2, [fm](const Microcube<Q>& g) { return eval_map(fm, g.base_point())[0]; });
  Icon<Q> x = random_icon<Q>(rng, 2, 2);
  Distribution<Q> eta(2, 2, [x](const Microcube<Q>& g) { return extract_d(x(g)); });
  Semiform<Q> conv = convolve_with_form(eta, f);
  for (int trial = 0; trial < 20; ++trial) {
    Microcube<Q> g = random_microcube<Q>(rng, 2, 2);
    CHECK(eval_on(conv, g) == eval_map(fm, eta(g))[0].scalar_part());
  }
}

TEST_CASE("first-type derivation along a coordinate field differentiates") {
  // xi = d/dx, theta = x^2: value 2a at the point a
  SmoothMap one(1, {dag::constant(1)});
  VVForm<Q> xi = vector_field<Q>(one);
  SmoothMap sq(1, {dag::powi(dag::var(0), 2)});
  Semiform<Q> theta(0, 1,
                    [sq](const Microcube<Q>& g) { return eval_map(sq, g.base_point())[0]; });
  Semiform<Q> lt = lie_hat(xi, theta);
  Point<Q> at = {Element<Q>::constant(Context::base(), 3)};
  CHECK(eval_on(lt, Microcube<Q>::from_point(at, cube_algebra(0))) == 6);
}

TEST_CASE("first-type derivation of a constant form vanishes") {
  Rng rng(727);
  VVForm<Q> xi = random_vvform<Q>(rng, 2, 1, false);
  Semiform<Q> theta = constant_semiform<Q>(2, Q(5));
  Semiform<Q> lt = lie_hat(xi, theta);
  for (int trial = 0; trial < 10; ++trial)
    CHECK(eval_on(lt, random_microcube<Q>(rng, 2, 1)) == 0);
}

TEST_CASE("product rule for the first-type derivation") {
  Rng rng(733);
  for (auto [p, q, r] : std::vector<std::array<int, 3>>{{1, 1, 0}, {1, 1, 1}, {0, 1, 1}, {2, 1, 1}}) {
    VVForm<Q> xi = random_vvform<Q>(rng, 2, p, false);
    Semiform<Q> t1 = random_component_semiform<Q>(rng, 2, q);
    Semiform<Q> t2 = random_component_semiform<Q>(rng, 2, r);
    Semiform<Q> lhs = lie_hat(xi, tensor_semiforms(t1, t2));
    Semiform<Q> rhs = tensor_semiforms(lie_hat(xi, t1), t2) +
                      reparametrize(tensor_semiforms(t1, lie_hat(xi, t2)),
                                    Permutation::block_swap_fixing_tail(p, q, r));
    for (int trial = 0; trial < 5; ++trial) {
      Microcube<Q> g = random_microcube<Q>(rng, 2, p + q + r);
      REQUIRE(eval_on(lhs, g) == eval_on(rhs, g));
    }
  }
}

TEST_CASE("the first-type derivation is linear in both arguments") {
  Rng rng(739);
  const int p = 1, q = 1;
  VVForm<Q> xi1 = random_vvform<Q>(rng, 2, p, false);
  VVForm<Q> xi2 = random_vvform<Q>(rng, 2, p, false);
  Semiform<Q> t1 = random_component_semiform<Q>(rng, 2, q);
  Semiform<Q> t2 = random_component_semiform<Q>(rng, 2, q);
  Q alpha = Q(7) / 5;

  Semiform<Q> sum_arg = lie_hat(icon_add(xi1.icon(), xi2.icon()), t1);
  Semiform<Q> sum_split = lie_hat(xi1, t1) + lie_hat(xi2, t1);
  Semiform<Q> scaled_arg = lie_hat(icon_scale(xi1.icon(), alpha), t1);
  Semiform<Q> scaled_split = lie_hat(xi1, t1) * alpha;
  Semiform<Q> form_sum = lie_hat(xi1, t1 + t2);
  Semiform<Q> form_split = lie_hat(xi1, t1) + lie_hat(xi1, t2);
  Semiform<Q> form_scaled = lie_hat(xi1, t1 * alpha);
  Semiform<Q> form_scaled_split = lie_hat(xi1, t1) * alpha;

  for (int trial = 0; trial < 10; ++trial) {
    Microcube<Q> g = random_microcube<Q>(rng, 2, p + q);
    REQUIRE(eval_on(sum_arg, g) == eval_on(sum_split, g));
    REQUIRE(eval_on(scaled_arg, g) == eval_on(scaled_split, g));
    REQUIRE(eval_on(form_sum, g) == eval_on(form_split, g));
    REQUIRE(eval_on(form_scaled, g) == eval_on(form_scaled_split, g));
  }
}

TEST_CASE("second-type derivation reduces to the first type for vector fields") {
  Rng rng(743);
  VVForm<Q> x = random_vvform<Q>(rng, 2, 0, true);
  Semiform<Q> theta = random_alternating_form(rng, 2, 2);
  Semiform<Q> second = lie_derivative(x, theta);
  Semiform<Q> first = lie_hat(x, theta);
  for (int trial = 0; trial < 10; ++trial) {
    Microcube<Q> g = random_microcube<Q>(rng, 2, 2);
    CHECK(eval_on(second, g) == eval_on(first, g));
  }
}

TEST_CASE("the Euler field fixes the coordinate covector") {
  // X = x d/dx, theta = dx: the derivative evaluates a tangent (a, b) to b
  SmoothMap euler(1, {dag::var(0)});
  VVForm<Q> x = vector_field<Q>(euler);
  Semiform<Q> dx = coordinate_covector<Q>(1, 0);
  Semiform<Q> lx = lie_derivative(x, dx);
  Rng rng(751);
  for (int trial = 0; trial < 10; ++trial) {
    TaylorTable<Q> t;
    t.base = Context::base();
    t.top = cube_algebra(1);
    t.entries = {{Element<Q>::constant(t.base, rng.rational())},
                 {Element<Q>::constant(t.base, rng.rational())}};
    Microcube<Q> g = from_taylor(t);
    CHECK(eval_on(lx, g) == t.entries[1][0].scalar_part());
  }
}

TEST_CASE("wedge rule for the second-type derivation") {
  Rng rng(757);
  for (auto [p, q, r] : std::vector<std::array<int, 3>>{{1, 1, 1}, {0, 1, 1}, {1, 2, 0}, {2, 1, 1}}) {
    VVForm<Q> xi = random_vvform<Q>(rng, 2, p, true);
    Semiform<Q> t1 = random_alternating_form(rng, 2, q);
    Semiform<Q> t2 = random_alternating_form(rng, 2, r);
    Semiform<Q> lhs = lie_derivative(xi, wedge(t1, t2));
    Q sign = (p * q) % 2 == 0 ? 1 : -1;
    Semiform<Q> rhs =
        wedge(lie_derivative(xi, t1), t2) + wedge(t1, lie_derivative(xi, t2)) * sign;
    for (int trial = 0; trial < 3; ++trial) {
      Microcube<Q> g = random_microcube<Q>(rng, 2, p + q + r);
      REQUIRE(eval_on(lhs, g) == eval_on(rhs, g));
    }
  }
}

TEST_CASE("shuffle identities for mixed alternations") {
  Rng rng(761);
  const int p = 1, q = 1, r = 1;
  VVForm<Q> xi = random_vvform<Q>(rng, 2, p, false);
  Semiform<Q> t1 = random_component_semiform<Q>(rng, 2, q);
  Semiform<Q> t2 = random_component_semiform<Q>(rng, 2, r);

  Semiform<Q> first_lhs = antisymmetrize_form(tensor_semiforms(lie_hat(xi, t1), t2),
                                              std::vector<int>{p, q, r});
  Semiform<Q> first_rhs = antisymmetrize_form(
      tensor_semiforms(antisymmetrize_form(lie_hat(xi, t1), std::vector<int>{p, q}), t2),
      std::vector<int>{p + q, r});
  Semiform<Q> second_lhs = antisymmetrize_form(tensor_semiforms(t1, lie_hat(xi, t2)),
                                               std::vector<int>{p, q, r});
  Semiform<Q> second_rhs = antisymmetrize_form(
      tensor_semiforms(t1, antisymmetrize_form(lie_hat(xi, t2), std::vector<int>{p, r})),
      std::vector<int>{q, p + r});
  for (int trial = 0; trial < 5; ++trial) {
    Microcube<Q> g = random_microcube<Q>(rng, 2, p + q + r);
    REQUIRE(eval_on(first_lhs, g) == eval_on(first_rhs, g));
    REQUIRE(eval_on(second_lhs, g) == eval_on(second_rhs, g));
  }
}

TEST_CASE("alternation shuffles for iterated derivations") {
  Rng rng(769);
  const int p = 1, q = 1, r = 1;
  VVForm<Q> xi = random_vvform<Q>(rng, 2, p + q, false);
  VVForm<Q> xi1 = random_vvform<Q>(rng, 2, p, false);
  VVForm<Q> xi2 = random_vvform<Q>(rng, 2, q, false);
  Semiform<Q> theta = random_component_semiform<Q>(rng, 2, r);

  // collapsing the alternation of the acting form
  Semiform<Q> one_lhs = antisymmetrize_form(lie_hat(xi, theta), std::vector<int>{p, q, r});
  Semiform<Q> one_rhs = antisymmetrize_form(
      lie_hat(antisymmetrize_icon(xi.icon(), {p, q}), theta), std::vector<int>{p + q, r});

  // collapsing the inner alternation of an iterated derivation
  Semiform<Q> two_lhs = antisymmetrize_form(lie_hat(xi1, lie_hat(xi2, theta)),
                                            std::vector<int>{p, q, r});
  Semiform<Q> two_rhs = antisymmetrize_form(
      lie_hat(xi1, antisymmetrize_form(lie_hat(xi2, theta), std::vector<int>{q, r})),
      std::vector<int>{p, q + r});
  Semiform<Q> three_lhs = antisymmetrize_form(lie_hat(xi2, lie_hat(xi1, theta)),
                                              std::vector<int>{p, q, r});
  Semiform<Q> three_rhs = antisymmetrize_form(
      lie_hat(xi2, antisymmetrize_form(lie_hat(xi1, theta), std::vector<int>{p, r})),
      std::vector<int>{q, p + r});

  for (int trial = 0; trial < 4; ++trial) {
    Microcube<Q> g = random_microcube<Q>(rng, 2, p + q + r);
    REQUIRE(eval_on(one_lhs, g) == eval_on(one_rhs, g));
    REQUIRE(eval_on(two_lhs, g) == eval_on(two_rhs, g));
    REQUIRE(eval_on(three_lhs, g) == eval_on(three_rhs, g));
  }
}

TEST_CASE("the first-type derivation turns brackets into graded commutators") {
  Rng rng(773);
  for (auto [p, q, r] : std::vector<std::array<int, 3>>{{0, 0, 1}, {1, 1, 1}, {1, 2, 0}}) {
    VVForm<Q> xi1 = random_vvform<Q>(rng, 2, p, false);
    VVForm<Q> xi2 = random_vvform<Q>(rng, 2, q, false);
    Semiform<Q> theta = random_component_semiform<Q>(rng, 2, r);
    Semiform<Q> lhs = lie_hat(lie_bracket_L(xi1.icon(), xi2.icon()), theta);
    Q sign = (p * q) % 2 == 0 ? 1 : -1;
    Semiform<Q> rhs =
        lie_hat(xi1, lie_hat(xi2, theta)) + lie_hat(xi2, lie_hat(xi1, theta)) * (-sign);
    for (int trial = 0; trial < 4; ++trial) {
      Microcube<Q> g = random_microcube<Q>(rng, 2, p + q + r);
      REQUIRE(eval_on(lhs, g) == eval_on(rhs, g));
    }
  }
}

TEST_CASE("the second-type derivation turns the FN bracket into graded commutators") {
  Rng rng(787);
  for (auto [p, q, r] : std::vector<std::array<int, 3>>{{1, 1, 1}, {1, 0, 2}}) {
    VVForm<Q> xi1 = random_vvform<Q>(rng, 2, p, true);
    VVForm<Q> xi2 = random_vvform<Q>(rng, 2, q, true);
    Semiform<Q> theta = random_alternating_form(rng, 2, r);
    Semiform<Q> lhs = lie_derivative(fn_bracket(xi1, xi2), theta);
    Q sign = (p * q) % 2 == 0 ? 1 : -1;
    Semiform<Q> rhs = lie_derivative(xi1, lie_derivative(xi2, theta)) +
                      lie_derivative(xi2, lie_derivative(xi1, theta)) * (-sign);
    for (int trial = 0; trial < 3; ++trial) {
      Microcube<Q> g = random_microcube<Q>(rng, 2, p + q + r);
      REQUIRE(eval_on(lhs, g) == eval_on(rhs, g));
    }
  }
}

TEST_CASE("the second-type derivation rejects non-alternating inputs") {
  Rng rng(797);
  VVForm<Q> semi = random_vvform<Q>(rng, 2, 2, false);
  Semiform<Q> theta = random_alternating_form(rng, 2, 1);
  CHECK_THROWS_AS(lie_derivative(semi, theta), DimensionMismatch);
  VVForm<Q> form = random_vvform<Q>(rng, 2, 1, true);
  Semiform<Q> tensor_form =
      tensor_semiforms(random_component_semiform<Q>(rng, 2, 1),
                       random_component_semiform<Q>(rng, 2, 1));
  CHECK_THROWS_AS(lie_derivative(form, tensor_form), DimensionMismatch);
}
