#include <cmath>
#include <limits>

#include "divergences.hpp"
#include "doctest.h"
#include "oracle_helpers.hpp"
#include "rng.hpp"
#include "transport.hpp"

using namespace mixlab;

TEST_CASE("zero shift reproduces the unshifted divergence") {
  RngStream rng(21, 0);
  for (int t = 0; t < 30; ++t) {
    Vec s = {0.0, 0.4, 1.0, 1.7};
    Vec w1(4), w2(4);
    for (auto& v : w1) v = 0.1 + rng.uniform01();
    for (auto& v : w2) v = 0.1 + rng.uniform01();
    const auto mu = DiscreteDist::normalized(s, w1);
    const auto nu = DiscreteDist::normalized(s, w2);
    for (double alpha : {1.0, 2.0})
      CHECK(shifted_renyi_discrete(alpha, mu, nu, 0.0) ==
            doctest::Approx(renyi_discrete(alpha, mu, nu)).epsilon(1e-8));
  }
}

TEST_CASE("dirac pair with a covering shift") {
  const auto mu = DiscreteDist::dirac(1.0);
  const auto nu = DiscreteDist::dirac(1.0 + 0.3);
  for (double alpha : {1.0, 2.0}) {
    CHECK(shifted_renyi_discrete(alpha, mu, nu, 0.3) == doctest::Approx(0.0));
    CHECK(shifted_renyi_discrete(alpha, mu, nu, 0.5) == doctest::Approx(0.0));
    CHECK(shifted_renyi_discrete(alpha, mu, nu, 0.29) ==
          std::numeric_limits<double>::infinity());
  }
}

TEST_CASE("a shift covering span plus distance reaches the global optimum") {
  // With every row able to reach every reference point, the feasible set is
  // the whole simplex on nu's support and the optimum is nu itself.
  const DiscreteDist mu({0.0, 0.1}, {0.7, 0.3});
  const DiscreteDist nu({1.0, 1.05, 1.2}, {0.3, 0.45, 0.25});
  const double z = 0.1 + 1.2;  // span of mu + distance to the far end of nu
  for (double alpha : {1.0, 2.0}) {
    const double v = shifted_renyi_discrete(alpha, mu, nu, z);
    CHECK(v <= 1e-8);
    // exhaustive grid search over the one-row polytope (free marginal)
    oracle::GridProblem prob;
    prob.row_mass = {1.0};
    prob.col_ref = nu.weights();
    prob.allowed = {{0, 1, 2}};
    const double grid = oracle::grid_search_shifted(prob, alpha, 1000);
    CHECK(v <= grid + 1e-8);
    CHECK(grid <= 1e-5);
  }
}

TEST_CASE("solver matches exhaustive grid search when the constraint binds") {
  // Two rows, each with two reachable columns: the grid walks all couplings.
  const DiscreteDist mu({0.0, 1.0}, {0.6, 0.4});
  const DiscreteDist nu({0.4, 0.6, 1.4}, {0.25, 0.5, 0.25});
  const double z = 0.61;  // row 0 reaches {0.4, 0.6}; row 1 reaches {0.6, 1.4}
  oracle::GridProblem prob;
  prob.row_mass = mu.weights();
  prob.col_ref = nu.weights();
  prob.allowed = {{0, 1}, {1, 2}};
  for (double alpha : {1.0, 2.0}) {
    const double solver = shifted_renyi_discrete(alpha, mu, nu, z);
    const double grid = oracle::grid_search_shifted(prob, alpha, 1000);
    CHECK(solver == doctest::Approx(grid).epsilon(2e-5));
    CHECK(solver <= grid + 1e-8);  // grid is feasible, solver must not exceed it
  }
}

TEST_CASE("shifted divergence never exceeds the unshifted one and decreases in z") {
  RngStream rng(22, 0);
  for (int t = 0; t < 20; ++t) {
    Vec s(5);
    double x = 0.0;
    for (auto& v : s) {
      v = x;
      x += 0.1 + 0.4 * rng.uniform01();
    }
    Vec w1(5), w2(5);
    for (auto& v : w1) v = 0.05 + rng.uniform01();
    for (auto& v : w2) v = 0.05 + rng.uniform01();
    const auto mu = DiscreteDist::normalized(s, w1);
    const auto nu = DiscreteDist::normalized(Vec(s), w2);
    for (double alpha : {1.0, 2.0}) {
      const double plain = renyi_discrete(alpha, mu, nu);
      double prev = plain;
      for (double z : {0.05, 0.15, 0.4, 2.0}) {
        const double v = shifted_renyi_discrete(alpha, mu, nu, z);
        CHECK(v <= plain + 1e-8);
        CHECK(v <= prev + 1e-8);
        prev = v;
      }
    }
  }
}

TEST_CASE("translation witness upper-bounds the exact shifted value") {
  const DiscreteDist mu({0.0, 0.2}, {0.5, 0.5});
  const DiscreteDist nu({0.5, 0.7}, {0.5, 0.5});
  for (double alpha : {1.0, 2.0})
    for (double z : {0.5, 0.6}) {
      const double exact = shifted_renyi_discrete(alpha, mu, nu, z);
      const double witness = shifted_renyi_translation_bound(alpha, mu, nu, z);
      CHECK(exact <= witness + 1e-8);
    }
}

TEST_CASE("oracle preconditions") {
  const auto mu = DiscreteDist::dirac(0.0);
  const auto nu = DiscreteDist::dirac(0.0);
  CHECK_THROWS_AS((void)shifted_renyi_discrete(1.5, mu, nu, 0.1), Error);
  CHECK_THROWS_AS((void)shifted_renyi_discrete(1.0, mu, nu, -0.1), Error);

  Vec s(17), w(17, 1.0 / 17.0);
  for (int i = 0; i < 17; ++i) s[i] = i;
  const DiscreteDist big = DiscreteDist::normalized(std::move(s), std::move(w));
  try {
    (void)shifted_renyi_discrete(1.0, big, nu, 0.1);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OracleScaleExceeded);
  }
}

TEST_CASE("transport problem construction marks stranded rows infeasible") {
  const DiscreteDist mu({0.0, 5.0}, {0.5, 0.5});
  const DiscreteDist nu({0.1}, {1.0});
  const auto prob = TransportProblem::build(mu, nu, 0.2);
  CHECK_FALSE(prob.feasible);
  CHECK(shifted_renyi_discrete(1.0, mu, nu, 0.2) ==
        std::numeric_limits<double>::infinity());
}
