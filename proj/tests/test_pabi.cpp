#include <cmath>

#include "doctest.h"
#include "oracle_helpers.hpp"
#include "pabi.hpp"
#include "rng.hpp"

using namespace mixlab;

TEST_CASE("divergence bound, piecewise mode") {
  // alpha D^2 / (2 sigma^2) = 2 * 1 / (2*0.02) = 50
  const BoundInputs base{2.0, 1.0, 0.02, 1.0, 10};
  CHECK(pabi_divergence_bound(base, PabiMode::Piecewise) == doctest::Approx(5.0));
  BoundInputs contr = base;
  contr.contraction = 0.5;
  CHECK(pabi_divergence_bound(contr, PabiMode::Piecewise) ==
        doctest::Approx(50.0 * std::pow(0.5, 20.0)).epsilon(1e-14));
}

TEST_CASE("continuous mode is continuous at c = 1 and below piecewise") {
  BoundInputs in{1.0, 1.0, 0.02, 1.0, 7};
  const double at_one = pabi_divergence_bound(in, PabiMode::Continuous);
  in.contraction = 1.0 - 1e-13;
  const double near_one = pabi_divergence_bound(in, PabiMode::Continuous);
  CHECK(std::abs(near_one - at_one) <= 1e-9 * at_one);

  for (double c : {0.0, 0.3, 0.7, 0.95, 0.999, 1.0})
    for (std::uint64_t T : {1ull, 3ull, 10ull, 50ull}) {
      BoundInputs g{1.5, 2.0, 0.1, c, T};
      CHECK(pabi_divergence_bound(g, PabiMode::Continuous) <=
            pabi_divergence_bound(g, PabiMode::Piecewise) + 1e-12);
    }
}

TEST_CASE("optimal shift allocation") {
  SUBCASE("c = 1 splits the diameter evenly") {
    const auto a = optimal_shift_allocation(1.0, 1.0, 4);
    CHECK(a.shifts == Vec{0.25, 0.25, 0.25, 0.25});
    CHECK(a.objective == doctest::Approx(0.25));
    CHECK(a.beta == doctest::Approx(0.25));
  }
  SUBCASE("hand-solved two-step case") {
    // constraint 2 a1 + 4 a2 = D with D = 1; minimizer (0.1, 0.2)
    const auto a = optimal_shift_allocation(0.5, 1.0, 2);
    CHECK(a.shifts[0] == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(a.shifts[1] == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(a.objective == doctest::Approx(0.05).epsilon(1e-12));
  }
  SUBCASE("matches the projected-gradient QP oracle") {
    RngStream rng(31, 0);
    for (int t = 0; t < 50; ++t) {
      const double c = 0.35 + 0.65 * rng.uniform01();
      const double D = 0.25 + 2.0 * rng.uniform01();
      const std::uint64_t T = 1 + rng.uniform_index(12);
      const auto closed = optimal_shift_allocation(c, D, T);
      std::vector<double> w(T);
      for (std::uint64_t k = 1; k <= T; ++k)
        w[k - 1] = std::pow(c, -static_cast<double>(k));
      const auto qp = oracle::qp_min_norm_allocation(w, D);
      double qp_obj = 0.0;
      for (double v : qp) qp_obj += v * v;
      CHECK(closed.objective == doctest::Approx(qp_obj).epsilon(1e-8));
      for (std::uint64_t k = 0; k < T; ++k)
        CHECK(closed.shifts[k] == doctest::Approx(qp[k]).epsilon(1e-6));
    }
  }
  SUBCASE("feasibility identity") {
    for (double c : {0.4, 0.9, 1.0})
      for (std::uint64_t T : {1ull, 5ull, 25ull}) {
        const auto a = optimal_shift_allocation(c, 1.5, T);
        double sum = 0.0;
        for (std::uint64_t k = 1; k <= T; ++k)
          sum += std::pow(c, -static_cast<double>(k)) * a.shifts[k - 1];
        CHECK(sum == doctest::Approx(1.5).epsilon(1e-10));
      }
  }
  SUBCASE("objective reproduces the continuous bound") {
    for (double c : {0.5, 0.9, 1.0})
      for (std::uint64_t T : {2ull, 10ull}) {
        const auto a = optimal_shift_allocation(c, 1.0, T);
        const BoundInputs in{1.0, 1.0, 2.0 * 0.05, c, T};
        CHECK(1.0 / (2.0 * in.sigma2) * a.objective ==
              doctest::Approx(pabi_divergence_bound(in, PabiMode::Continuous))
                  .epsilon(1e-10));
      }
  }
}

TEST_CASE("convex mixing-time upper bounds") {
  SUBCASE("tv at the base error") {
    CHECK(mixing_time_upper_convex(1.0, 0.01, 0.25, Metric::TV) == 200);
  }
  SUBCASE("tv boosting blocks") {
    CHECK(mixing_time_upper_convex(1.0, 0.01, 1.0 / 16.0, Metric::TV) == 400);
    CHECK(mixing_time_upper_convex(1.0, 0.01, 1.0 / 64.0, Metric::TV) == 600);
  }
  SUBCASE("kl two-phase schedule") {
    CHECK(mixing_time_upper_convex(1.0, 0.01, 0.1, Metric::KL) == 1025);
  }
  SUBCASE("renyi grows with alpha through phase one") {
    const auto t2 = mixing_time_upper_convex(1.0, 0.01, 0.1, Metric::Renyi, 2.0);
    const auto t4 = mixing_time_upper_convex(1.0, 0.01, 0.1, Metric::Renyi, 4.0);
    CHECK(t2 > 1025);
    CHECK(t4 > t2);
  }
  SUBCASE("rejects eps outside (0,1)") {
    CHECK_THROWS_AS((void)mixing_time_upper_convex(1.0, 0.01, 1.0, Metric::TV), Error);
    CHECK_THROWS_AS((void)mixing_time_upper_convex(1.0, 0.01, 0.0, Metric::TV), Error);
  }
}

TEST_CASE("strongly convex mixing-time upper bound") {
  SUBCASE("worked example") {
    const auto r =
        mixing_time_upper_strongly_convex(1.0, 0.1, 1.0, 1.0, 1e-3, Metric::Renyi, 1.0);
    CHECK(r.iterations == 38);
    CHECK(r.contraction == doctest::Approx(0.9));
  }
  SUBCASE("scan oracle agrees: first T with the bound under threshold") {
    for (double eps : {1e-2, 1e-4})
      for (double alpha : {1.0, 2.0}) {
        const auto r =
            mixing_time_upper_strongly_convex(1.0, 0.1, 0.5, 1.5, eps, Metric::Renyi, alpha);
        std::uint64_t scan = 1;
        const double start = alpha * 1.0 / (4.0 * 0.1);
        while (start * std::pow(r.contraction, 2.0 * static_cast<double>(scan)) > eps)
          ++scan;
        CHECK(r.iterations == scan);
      }
  }
  SUBCASE("already mixed at one step") {
    const auto r =
        mixing_time_upper_strongly_convex(1.0, 0.1, 1.0, 1.0, 5.0, Metric::Renyi, 1.0);
    CHECK(r.iterations == 1);
  }
  SUBCASE("c = 0 mixes in one step") {
    const auto r =
        mixing_time_upper_strongly_convex(1.0, 0.1, 10.0, 10.0, 1e-6, Metric::Renyi, 1.0);
    CHECK(r.contraction == 0.0);
    CHECK(r.iterations == 1);
  }
  SUBCASE("m = 0 delegates to the convex calculator") {
    const auto r = mixing_time_upper_strongly_convex(1.0, 0.01, 0.0, 0.0, 0.25, Metric::TV);
    CHECK(r.iterations == 200);
    CHECK(r.contraction == 1.0);
  }
  SUBCASE("stepsize guard is strict") {
    CHECK_THROWS_AS(
        (void)mixing_time_upper_strongly_convex(1.0, 2.0, 1.0, 1.0, 0.1, Metric::KL), Error);
  }
}

TEST_CASE("convex mixing-time lower bound") {
  CHECK(mixing_time_lower_convex(1.0, 0.01) == 1);
  CHECK(mixing_time_lower_convex(10.0, 0.01) == 100);
  SUBCASE("doubling the diameter quadruples the count") {
    for (double D : {2.0, 5.0}) {
      const auto t1 = mixing_time_lower_convex(D, 1e-4);
      const auto t2 = mixing_time_lower_convex(2.0 * D, 1e-4);
      CHECK(t2 >= 4 * t1 - 1);
      CHECK(t2 <= 4 * t1 + 4);
    }
  }
}

TEST_CASE("strongly convex mixing-time lower bound") {
  CHECK(mixing_time_lower_strongly_convex(1.0, 0.9, 1e-3) == 13);
  CHECK(mixing_time_lower_strongly_convex(1.0, 0.9, 0.25) == 0);
  SUBCASE("the returned T still violates the target and T+1 may not") {
    for (double alpha : {1.0, 2.0, 4.0})
      for (double c : {0.5, 0.9})
        for (double eps : {1e-2, 1e-5}) {
          const auto T = mixing_time_lower_strongly_convex(alpha, c, eps);
          if (T > 0)
            CHECK(alpha * std::pow(c, 4.0 * static_cast<double>(T)) / 4.0 > eps);
          CHECK(alpha * std::pow(c, 4.0 * static_cast<double>(T + 1)) / 4.0 <= eps);
        }
  }
  SUBCASE("doubling alpha shifts the count by about log2/(4 log(1/c))") {
    const double c = 0.9;
    const auto t1 = mixing_time_lower_strongly_convex(1.0, c, 1e-4);
    const auto t2 = mixing_time_lower_strongly_convex(2.0, c, 1e-4);
    const auto shift = static_cast<std::uint64_t>(
        std::floor(std::log(2.0) / (4.0 * std::log(1.0 / c))));
    CHECK(t2 >= t1 + shift - 1);
    CHECK(t2 <= t1 + shift + 1);
  }
}

TEST_CASE("unconstrained diameter adapter") {
  SUBCASE("bounded bodies pass through unchanged") {
    const auto p =
        unconstrained_diameter_adapter(ConvexBody::interval(-0.5, 0.5), std::nullopt, 0.1);
    CHECK(p.effective_diameter == 1.0);
    CHECK(p.tv_target == 0.1);
    CHECK_FALSE(p.via_proxy);
  }
  SUBCASE("unbounded bodies substitute the proxy and degrade the tv target") {
    const auto p =
        unconstrained_diameter_adapter(ConvexBody::whole_space(1), 5.0, 0.01);
    CHECK(p.effective_diameter == 5.0);
    CHECK(p.tv_target == doctest::Approx(0.03));
    CHECK(p.via_proxy);
    // composition with the TV calculator at the requested eps
    const auto T = mixing_time_upper_convex(p.effective_diameter, 0.01, 0.01, Metric::TV);
    CHECK(T == mixing_time_upper_convex(5.0, 0.01, 0.01, Metric::TV));
  }
  SUBCASE("missing proxy on an unbounded body") {
    try {
      (void)unconstrained_diameter_adapter(ConvexBody::whole_space(2), std::nullopt, 0.1);
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::UnboundedBody);
    }
  }
}

TEST_CASE("upper bounds dominate lower bounds with the advertised ratio") {
  for (double D : {0.5, 1.0, 2.0, 8.0})
    for (double eta : {1e-4, 1e-3, 1e-2}) {
      const auto up = mixing_time_upper_convex(D, eta, 0.25, Metric::TV);
      const auto lo = mixing_time_lower_convex(D, eta);
      CHECK(up >= lo);
      CHECK(static_cast<double>(up) / static_cast<double>(lo) <= 200.0 + 1e-9);
    }
}
