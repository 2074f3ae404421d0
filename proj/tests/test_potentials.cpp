#include <cmath>

#include "doctest.h"
#include "oracle_helpers.hpp"
#include "potentials.hpp"
#include "rng.hpp"

using namespace mixlab;

TEST_CASE("component gradients") {
  CHECK(PotentialComponent::zero().gradient(Vec{1.0, -2.0}) == Vec{0.0, 0.0});

  const auto iso = PotentialComponent::isotropic_quadratic(2.0, {0.0});
  CHECK(iso.gradient(Vec{3.0})[0] == 6.0);

  const auto diag = PotentialComponent::diagonal_quadratic({1.0, 4.0}, {0.0, 0.0});
  const Vec g = diag.gradient(Vec{1.0, 1.0});
  CHECK(g[0] == doctest::Approx(1.0));
  CHECK(g[1] == doctest::Approx(4.0));
}

TEST_CASE("gradients agree with central finite differences") {
  RngStream rng(11, 0);
  for (int t = 0; t < 50; ++t) {
    Vec center = {rng.uniform01(), -rng.uniform01(), rng.uniform01()};
    Vec curv = {rng.uniform01(), 1.0 + rng.uniform01(), 3.0 * rng.uniform01()};
    const auto comp = PotentialComponent::diagonal_quadratic(curv, center);
    std::vector<double> x = {2.0 * rng.uniform01() - 1.0, 2.0 * rng.uniform01() - 1.0,
                             2.0 * rng.uniform01() - 1.0};
    const auto fd = oracle::fd_gradient(
        [&](const std::vector<double>& p) { return comp.value(p); }, x, 1e-6);
    const Vec g = comp.gradient(x);
    for (std::size_t i = 0; i < 3; ++i) CHECK(g[i] == doctest::Approx(fd[i]).epsilon(1e-6));
  }
}

TEST_CASE("minibatch gradient averages component gradients") {
  const FiniteSumPotential f({PotentialComponent::isotropic_quadratic(1.0, {0.0}),
                              PotentialComponent::isotropic_quadratic(2.0, {0.0}),
                              PotentialComponent::isotropic_quadratic(3.0, {0.0})});
  const Vec x = {1.0};

  SUBCASE("full batch equals the mean of all components") {
    const std::vector<std::size_t> all = {0, 1, 2};
    CHECK(f.minibatch_gradient(all, x)[0] == doctest::Approx(2.0));
    CHECK(f.gradient_sum(x)[0] == doctest::Approx(6.0));
  }
  SUBCASE("hand-computed two-element batch") {
    const std::vector<std::size_t> batch = {0, 2};  // curvatures 1 and 3
    CHECK(f.minibatch_gradient(batch, x)[0] == doctest::Approx(2.0));
  }
  SUBCASE("identical components make every batch equivalent") {
    const FiniteSumPotential g({PotentialComponent::isotropic_quadratic(2.0, {0.5}),
                                PotentialComponent::isotropic_quadratic(2.0, {0.5}),
                                PotentialComponent::isotropic_quadratic(2.0, {0.5})});
    const std::vector<std::size_t> one = {1};
    const std::vector<std::size_t> all = {0, 1, 2};
    CHECK(g.minibatch_gradient(one, x) == g.minibatch_gradient(all, x));
  }
  SUBCASE("errors") {
    const std::vector<std::size_t> empty;
    CHECK_THROWS_AS((void)f.minibatch_gradient(empty, x), Error);
    const std::vector<std::size_t> oob = {3};
    CHECK_THROWS_AS((void)f.minibatch_gradient(oob, x), Error);
  }
}

TEST_CASE("aggregate regularity of a finite sum") {
  const FiniteSumPotential f({PotentialComponent::isotropic_quadratic(2.0, {0.0, 0.0}),
                              PotentialComponent::diagonal_quadratic({0.5, 3.0}, {0.0, 0.0}),
                              PotentialComponent::zero()});
  CHECK(f.strong_convexity() == 0.0);  // zero component
  CHECK(f.smoothness() == 3.0);
  CHECK(f.component_count() == 3);
}

TEST_CASE("contraction coefficient") {
  CHECK(contraction_coefficient(0.0, 1.0, 1.0) == 1.0);
  CHECK(contraction_coefficient(1.0, 3.0, 0.5) == doctest::Approx(0.5));
  CHECK(contraction_coefficient(0.0, 0.0, 123.0) == 1.0);  // zero potential, any eta

  SUBCASE("kappa form at the balanced stepsize") {
    for (double m : {0.5, 1.0}) {
      for (double M : {2.0, 5.0}) {
        const double kappa = M / m;
        const double c = contraction_coefficient(m, M, 2.0 / (M + m));
        CHECK(c == doctest::Approx((kappa - 1.0) / (kappa + 1.0)).epsilon(1e-14));
      }
    }
  }
  SUBCASE("stepsize guard") {
    CHECK_THROWS_AS((void)contraction_coefficient(0.5, 2.0, 1.01), Error);
    try {
      (void)contraction_coefficient(0.5, 2.0, 1.01);
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::StepsizeTooLarge);
    }
  }
}

TEST_CASE("gradient step") {
  const Vec x = {4.0};
  const std::vector<std::size_t> batch = {0};
  SUBCASE("zero potential is the identity") {
    const FiniteSumPotential f({PotentialComponent::zero()});
    CHECK(gradient_step(f, batch, 0.7, x) == x);
  }
  SUBCASE("isotropic quadratic is the linear contraction") {
    const FiniteSumPotential f({PotentialComponent::isotropic_quadratic(2.0, {0.0})});
    CHECK(gradient_step(f, batch, 0.25, x)[0] == doctest::Approx(2.0));
    const FiniteSumPotential g({PotentialComponent::isotropic_quadratic(1.5, {0.0})});
    for (double eta : {0.1, 0.5, 1.0})
      CHECK(gradient_step(g, batch, eta, x)[0] ==
            doctest::Approx((1.0 - eta * 1.5) * 4.0).epsilon(1e-14));
  }
}

TEST_CASE("gradient steps contract at rate c with tight isotropic witnesses") {
  RngStream rng(13, 0);
  double worst = 0.0;
  for (int t = 0; t < 10000; ++t) {
    const double m = rng.uniform01();
    const double M = m + rng.uniform01() + 1e-3;
    const double eta = (0.05 + 1.9 * rng.uniform01()) / M;
    std::vector<PotentialComponent> comps = {
        PotentialComponent::isotropic_quadratic(m, {rng.uniform01(), 0.0}),
        PotentialComponent::isotropic_quadratic(M, {0.0, rng.uniform01()})};
    const FiniteSumPotential f(std::move(comps));
    const double c = contraction_coefficient(m, M, eta);
    std::vector<std::size_t> batch = rng.uniform01() < 0.5
                                         ? std::vector<std::size_t>{0, 1}
                                         : std::vector<std::size_t>{1};
    const Vec x = {4.0 * rng.uniform01() - 2.0, 4.0 * rng.uniform01() - 2.0};
    const Vec y = {4.0 * rng.uniform01() - 2.0, 4.0 * rng.uniform01() - 2.0};
    worst = std::max(worst, dist(gradient_step(f, batch, eta, x),
                                 gradient_step(f, batch, eta, y)) -
                                c * dist(x, y));
  }
  CHECK(worst <= 1e-12);

  // the max over {m, M} is attained by an isotropic witness at the arg max
  const double m = 1.0, M = 3.0, eta = 0.5;
  const double c = contraction_coefficient(m, M, eta);
  const double lam = std::abs(1 - eta * m) >= std::abs(1 - eta * M) ? m : M;
  const FiniteSumPotential f({PotentialComponent::isotropic_quadratic(lam, {0.0})});
  const std::vector<std::size_t> batch = {0};
  const Vec x = {1.25}, y = {-0.75};
  const double ratio =
      dist(gradient_step(f, batch, eta, x), gradient_step(f, batch, eta, y)) / dist(x, y);
  CHECK(std::abs(ratio - c) <= 1e-12);
}

TEST_CASE("regularity inequalities hold for all component variants") {
  RngStream rng(17, 0);
  double worst = 0.0;
  for (int t = 0; t < 10000; ++t) {
    const double a = rng.uniform01(), b = a + rng.uniform01();
    const PotentialComponent comps[] = {
        PotentialComponent::zero(),
        PotentialComponent::isotropic_quadratic(b, {rng.uniform01()}),
        PotentialComponent::diagonal_quadratic({a, b}, {0.0, rng.uniform01()})};
    for (const auto& comp : comps) {
      const std::size_t d = comp.dim() == 0 ? 1 : comp.dim();
      Vec x(d), y(d);
      for (auto& v : x) v = 4.0 * rng.uniform01() - 2.0;
      for (auto& v : y) v = 4.0 * rng.uniform01() - 2.0;
      const double fx = comp.value(x), fy = comp.value(y);
      const Vec gy = comp.gradient(y);
      double lin = fy;
      for (std::size_t i = 0; i < d; ++i) lin += gy[i] * (x[i] - y[i]);
      const double q = 0.5 * squared_dist(x, y);
      worst = std::max(worst, lin + comp.strong_convexity() * q - fx);
      worst = std::max(worst, fx - lin - comp.smoothness() * q);
    }
  }
  CHECK(worst <= 1e-10);
}
