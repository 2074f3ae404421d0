#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "experiments.hpp"
#include "verify.hpp"

using namespace mixlab;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  REQUIRE(is.good());
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::string tmp_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "mixlab_tests" / name;
  std::filesystem::remove_all(dir);
  return dir.string();
}

const char* kSimulateConfig = R"({
  "kind": "simulate",
  "body": {"kind": "interval", "lo": -0.5, "hi": 0.5},
  "potential": {"components": [{"kind": "zero"}]},
  "eta": 0.05,
  "batch_size": 1,
  "t_grid": [0, 10, 40, 80],
  "chains": 4000,
  "init": "corner",
  "master_seed": 13
})";

}  // namespace

TEST_CASE("config round trip is exact") {
  const auto cfg = ExperimentConfig::from_json_text(kSimulateConfig);
  const std::string once = cfg.to_json_text();
  const auto reparsed = ExperimentConfig::from_json_text(once);
  CHECK(reparsed.to_json_text() == once);
  CHECK(reparsed.eta == cfg.eta);
  CHECK(reparsed.t_grid == cfg.t_grid);
  CHECK(reparsed.body->kind() == ConvexBody::Kind::Interval);
}

TEST_CASE("config validation produces field-level issues") {
  auto cfg = ExperimentConfig::from_json_text(kSimulateConfig);
  cfg.chains = 0;
  const auto issues = cfg.validate();
  REQUIRE_FALSE(issues.empty());
  bool found = false;
  for (const auto& i : issues) found = found || i.field == "chains";
  CHECK(found);

  SUBCASE("invalid configs write an error report and throw") {
    const auto dir = tmp_dir("invalid");
    CHECK_THROWS_AS((void)run_experiment(cfg, dir, 1), Error);
    CHECK(std::filesystem::exists(dir + "/error_report.json"));
  }
}

TEST_CASE("parse failures carry the parse error code") {
  try {
    (void)ExperimentConfig::from_json_text("{nope");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
  }
  try {
    (void)ExperimentConfig::from_json_text(R"({"kind": "???"})");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
  }
}

TEST_CASE("default grid is log-spaced, unique and spans the range") {
  const auto g = default_t_grid(4, 3200);
  CHECK(g.front() == 4);
  CHECK(g.back() == 3200);
  CHECK(g.size() <= 12);
  CHECK(std::is_sorted(g.begin(), g.end()));
  for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);
}

TEST_CASE("bound experiment reproduces the reference mixing time") {
  const char* config = R"({
    "kind": "bound",
    "body": {"kind": "interval", "lo": -0.5, "hi": 0.5},
    "eta": 0.01,
    "eps": 0.25,
    "alphas": [1.0, 2.0],
    "metrics": ["tv", "kl"]
  })";
  const auto dir = tmp_dir("bound");
  const auto out = run_experiment(ExperimentConfig::from_json_text(config), dir, 1);
  CHECK(out.all_passed);

  bool found_200 = false;
  for (const auto& r : out.rows)
    if (r.metric == "tv" && r.experiment == "bound" && r.theoretical == 200.0)
      found_200 = true;
  CHECK(found_200);

  const std::string bounds = slurp(dir + "/bounds.csv");
  CHECK(bounds.rfind("formula_id,metric,alpha,D,eta,m,M,eps,value", 0) == 0);
  CHECK(bounds.find("upper-convex.proof-instantiated,tv,1,1,0.01,0,0,0.25,200") !=
        std::string::npos);
  CHECK(bounds.find("lower-convex-reachability,tv,1,1,0.01,0,0,0.25,1") != std::string::npos);
  CHECK(slurp(dir + "/results.csv").rfind(
            "experiment,params,metric,alpha,theoretical,empirical,std_error,status", 0) == 0);
  CHECK(std::filesystem::exists(dir + "/results.json"));
}

TEST_CASE("bound experiment through the diameter proxy") {
  const char* config = R"({
    "kind": "bound",
    "body": {"kind": "whole_space", "dim": 1},
    "eta": 0.01,
    "eps": 0.01,
    "d_proxy": 5.0,
    "alphas": [1.0],
    "metrics": ["tv"]
  })";
  const auto dir = tmp_dir("bound_proxy");
  const auto out = run_experiment(ExperimentConfig::from_json_text(config), dir, 1);
  CHECK(out.all_passed);
  const std::string bounds = slurp(dir + "/bounds.csv");
  // effective diameter 5, tv target reported as 3*eps (float bits of 3*0.01)
  CHECK(bounds.find("upper-convex.proof-instantiated+diameter-proxy,tv,1,5,0.01,0,0,0.0299") !=
        std::string::npos);
  // composed with the same calculator bounded bodies use
  CHECK(bounds.find(",20000\n") != std::string::npos);
}

TEST_CASE("simulate experiment: curve decays, assertions pass, bytes reproducible") {
  const auto cfg = ExperimentConfig::from_json_text(kSimulateConfig);
  const auto dir1 = tmp_dir("sim1");
  const auto out = run_experiment(cfg, dir1, 1);
  CHECK(out.all_passed);

  // T = 0 row: corner point mass against the stationary proxy. At this large
  // eta the stationary law piles noticeable mass against the walls, so the
  // point-mass TV sits below 1 but stays far from mixed.
  const auto& rows = out.rows;
  REQUIRE(rows.size() >= 4);
  double tv_at_0 = -1.0, tv_at_40 = -1.0, tv_at_80 = -1.0;
  for (const auto& r : rows) {
    if (r.params.find("\"T\":0") != std::string::npos) tv_at_0 = r.empirical;
    if (r.params.find("\"T\":40") != std::string::npos) tv_at_40 = r.empirical;
    if (r.params.find("\"T\":80") != std::string::npos) tv_at_80 = r.empirical;
  }
  CHECK(tv_at_0 >= 0.6);
  CHECK(tv_at_40 <= 0.25 + 0.05);   // T = ceil(2 D^2/eta) = 40
  CHECK(tv_at_80 <= 1.0 / 16.0 + 0.05);

  // the curve is non-increasing in T up to two standard errors
  const auto curve = estimate_mixing_curve(cfg, 2);
  for (std::size_t k = 1; k < curve.size(); ++k)
    CHECK(curve[k].tv <= curve[k - 1].tv +
                             2.0 * (curve[k].std_error + curve[k - 1].std_error));

  const auto dir2 = tmp_dir("sim2");
  (void)run_experiment(cfg, dir2, 3);
  CHECK(slurp(dir1 + "/results.csv") == slurp(dir2 + "/results.csv"));
  CHECK(slurp(dir1 + "/curve.csv") == slurp(dir2 + "/curve.csv"));
}

TEST_CASE("corner point mass is nearly singular to the proxy at the reference stepsize") {
  // At eta = 1/400 the wall pile-up is thin, so the T = 0 ensemble from the
  // corner is nearly singular to the stationary proxy.
  const char* config = R"({
    "kind": "simulate",
    "body": {"kind": "interval", "lo": -0.5, "hi": 0.5},
    "potential": {"components": [{"kind": "zero"}]},
    "eta": 0.0025,
    "t_grid": [0, 800],
    "chains": 1500,
    "init": "corner",
    "master_seed": 2
  })";
  const auto dir = tmp_dir("sim_corner");
  const auto out = run_experiment(ExperimentConfig::from_json_text(config), dir, 2);
  CHECK(out.all_passed);
  double tv0 = -1.0, tv800 = -1.0;
  for (const auto& r : out.rows) {
    if (r.params.find("\"T\":0,") != std::string::npos) tv0 = r.empirical;
    if (r.params.find("\"T\":800") != std::string::npos) tv800 = r.empirical;
  }
  CHECK(tv0 >= 0.9);
  CHECK(tv800 <= 0.25 + 0.05);
}

TEST_CASE("simulate can export sample trajectories") {
  auto cfg = ExperimentConfig::from_json_text(kSimulateConfig);
  cfg.trajectory_sample = 2;
  cfg.chains = 500;
  const auto dir = tmp_dir("sim_traj");
  (void)run_experiment(cfg, dir, 1);
  const std::string traj = slurp(dir + "/trajectories.csv");
  CHECK(traj.rfind("chain_id,t,x_0\n", 0) == 0);
  CHECK(traj.find("\n1,0,") != std::string::npos);
}

TEST_CASE("mixing curve falls back to the default grid and handles 2-D-free configs") {
  auto cfg = ExperimentConfig::from_json_text(kSimulateConfig);
  cfg.t_grid.clear();  // default: 12 log-spaced points in [lower, 4*upper]
  cfg.chains = 300;
  const auto curve = estimate_mixing_curve(cfg, 2);
  REQUIRE_FALSE(curve.empty());
  CHECK(curve.size() <= 12);
  CHECK(curve.front().horizon >= 1);
  CHECK(curve.back().horizon == 4 * 40);  // 4x ceil(2 D^2/eta)
}

TEST_CASE("lower experiment covers strongly convex constructions") {
  const char* config = R"({
    "kind": "lower",
    "body": {"kind": "interval", "lo": -1.0, "hi": 1.0},
    "potential": {"components": [{"kind": "quadratic", "lambda": 1.0, "center": [0.0]}]},
    "eta": 0.1,
    "trials": 10000,
    "alphas": [1.0, 2.0],
    "t_grid": [3],
    "master_seed": 9
  })";
  const auto dir = tmp_dir("lower_sc");
  const auto out = run_experiment(ExperimentConfig::from_json_text(config), dir, 1);
  CHECK(out.all_passed);
  bool var_row = false, gap_row = false;
  for (const auto& r : out.rows) {
    if (r.experiment == "quadratic_iterate_variance") {
      var_row = true;
      CHECK(r.pass == 1);
      CHECK(r.theoretical == doctest::Approx(0.4932200000000001));
    }
    if (r.experiment == "quadratic_renyi_gap" && r.alpha == 1.0) {
      gap_row = true;
      CHECK(r.empirical >= r.theoretical);  // nominal value holds at alpha = 1
    }
  }
  CHECK(var_row);
  CHECK(gap_row);
}

TEST_CASE("lower experiment emits walk rows with their ceilings") {
  const char* config = R"({
    "kind": "lower",
    "body": {"kind": "interval", "lo": -0.5, "hi": 0.5},
    "eta": 0.0025,
    "trials": 20000,
    "t_grid": [4, 10],
    "master_seed": 5
  })";
  const auto dir = tmp_dir("lower");
  const auto out = run_experiment(ExperimentConfig::from_json_text(config), dir, 1);
  CHECK(out.all_passed);
  const std::string lower = slurp(dir + "/lower.csv");
  CHECK(lower.rfind("construction,param_json,T,analytic,empirical,stderr", 0) == 0);
  CHECK(lower.find("zero_potential_walk") != std::string::npos);
  CHECK(lower.find("sup_walk_concentration") != std::string::npos);

  // T = 4 = ceil(D^2/(100 eta)) carries the quarter-threshold assertion
  bool quarter_found = false;
  for (const auto& r : out.rows)
    if (r.experiment == "zero_potential_walk_quarter") {
      quarter_found = true;
      CHECK(r.pass == 1);
      CHECK(r.empirical < 0.25);
    }
  CHECK(quarter_found);
}

TEST_CASE("verify experiment runs the invariant suite") {
  const char* config = R"({"kind": "verify", "master_seed": 20260810})";
  const auto dir = tmp_dir("verify");
  const auto out = run_experiment(ExperimentConfig::from_json_text(config), dir, 2);
  CHECK(out.all_passed);
  const std::string csv = slurp(dir + "/verify.csv");
  CHECK(csv.rfind("check,status,detail", 0) == 0);
  CHECK(csv.find("geometry.projection_nonexpansive,pass") != std::string::npos);
  CHECK(csv.find("divergences.shift_reduction,pass") != std::string::npos);
}
