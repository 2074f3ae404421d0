#include <cmath>

#include "doctest.h"
#include "geometry.hpp"
#include "rng.hpp"

using namespace mixlab;

TEST_CASE("interval projection clamps") {
  const auto k = ConvexBody::interval(-1.0, 1.0);
  CHECK(k.project(Vec{2.0})[0] == 1.0);
  CHECK(k.project(Vec{-3.5})[0] == -1.0);
  CHECK(k.project(Vec{0.25})[0] == 0.25);
}

TEST_CASE("ball projection matches the radial closed form and the boundary argmin") {
  const auto k = ConvexBody::ball({0.0, 0.0}, 1.0);
  const Vec p = k.project(Vec{3.0, 4.0});
  CHECK(p[0] == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(p[1] == doctest::Approx(0.8).epsilon(1e-12));

  // dense argmin over the boundary circle
  double best = 1e300, bx = 0, by = 0;
  for (int i = 0; i < 2000000; ++i) {
    const double th = 2.0 * 3.14159265358979323846 * i / 2000000.0;
    const double dx = std::cos(th) - 3.0, dy = std::sin(th) - 4.0;
    const double d2 = dx * dx + dy * dy;
    if (d2 < best) {
      best = d2;
      bx = std::cos(th);
      by = std::sin(th);
    }
  }
  CHECK(p[0] == doctest::Approx(bx).epsilon(1e-5));
  CHECK(p[1] == doctest::Approx(by).epsilon(1e-5));
}

TEST_CASE("projection is the identity on members") {
  RngStream rng(42, 0);
  const auto ball = ConvexBody::ball({0.5, -0.25, 0.0}, 2.0);
  const auto box = ConvexBody::box({-1.0, 0.0}, {1.0, 3.0});
  for (int t = 0; t < 200; ++t) {
    Vec x = {0.5 + rng.uniform01() - 0.5, -0.25 + rng.uniform01() - 0.5,
             rng.uniform01() - 0.5};
    REQUIRE(ball.contains(x));
    CHECK(ball.project(x) == x);
    Vec y = {2.0 * rng.uniform01() - 1.0, 3.0 * rng.uniform01()};
    REQUIRE(box.contains(y));
    CHECK(box.project(y) == y);
  }
}

TEST_CASE("diameters") {
  CHECK(*ConvexBody::interval(-2.5, 2.5).diameter() == 5.0);
  CHECK(*ConvexBody::ball({1.0, 1.0}, 0.75).diameter() == 1.5);
  CHECK(*ConvexBody::box({0.0, 0.0}, {3.0, 4.0}).diameter() == doctest::Approx(5.0));
  CHECK_FALSE(ConvexBody::whole_space(2).diameter().has_value());
}

TEST_CASE("box diameter dominates random pair distances and is approached") {
  const auto k = ConvexBody::box({0.0, 0.0}, {3.0, 4.0});
  const double diam = *k.diameter();
  RngStream rng(7, 0);
  double sup = 0.0;
  for (int t = 0; t < 20000; ++t) {
    const Vec a = {3.0 * rng.uniform01(), 4.0 * rng.uniform01()};
    const Vec b = {3.0 * rng.uniform01(), 4.0 * rng.uniform01()};
    sup = std::max(sup, dist(a, b));
  }
  CHECK(sup <= diam + 1e-12);
  CHECK(sup > 0.9 * diam);
}

TEST_CASE("projection non-expansiveness and idempotence") {
  RngStream rng(3, 0);
  const ConvexBody bodies[] = {
      ConvexBody::interval(-0.5, 0.5), ConvexBody::box({-1.0, -1.0}, {1.0, 2.0}),
      ConvexBody::ball({0.0, 0.0, 0.0}, 1.25), ConvexBody::whole_space(2)};
  for (const auto& k : bodies) {
    double worst = 0.0;
    bool idem = true;
    for (int t = 0; t < 10000; ++t) {
      Vec x(k.dim()), y(k.dim());
      for (auto& v : x) v = 6.0 * rng.uniform01() - 3.0;
      for (auto& v : y) v = 6.0 * rng.uniform01() - 3.0;
      const Vec px = k.project(x), py = k.project(y);
      worst = std::max(worst, dist(px, py) - dist(x, y));
      if (k.project(px) != px) idem = false;
    }
    CHECK(worst <= 1e-12);
    CHECK(idem);
  }
}

TEST_CASE("geometry errors and accessors") {
  CHECK_THROWS_AS((void)ConvexBody::interval(1.0, -1.0), Error);
  CHECK_THROWS_AS((void)ConvexBody::ball({0.0}, -0.1), Error);
  const auto k = ConvexBody::interval(-0.5, 0.5);
  CHECK_THROWS_AS((void)k.project(Vec{0.0, 0.0}), Error);
  try {
    (void)k.project(Vec{0.0, 0.0});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DimensionMismatch);
  }
  CHECK(k.corner() == Vec{-0.5});
  CHECK(k.center() == Vec{0.0});
  CHECK(ConvexBody::ball({2.0, 0.0}, 1.0).corner() == Vec{1.0, 0.0});
  CHECK_THROWS_AS((void)ConvexBody::whole_space(1).corner(), Error);
}
