// Copyright 2026 The mixlab Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mixlab.h"

#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "chain.hpp"
#include "divergences.hpp"
#include "experiments.hpp"
#include "geometry.hpp"
#include "oracles.hpp"
#include "pabi.hpp"
#include "potentials.hpp"

namespace {

thread_local std::string g_last_error;

mixlab_status status_of(mixlab::ErrorCode code) {
  using mixlab::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return MIXLAB_ERR_INVALID_ARGUMENT;
    case ErrorCode::DimensionMismatch: return MIXLAB_ERR_DIMENSION_MISMATCH;
    case ErrorCode::StepsizeTooLarge: return MIXLAB_ERR_STEPSIZE_TOO_LARGE;
    case ErrorCode::OrderTooLargeForVariancePair:
      return MIXLAB_ERR_ORDER_TOO_LARGE_FOR_VARIANCE_PAIR;
    case ErrorCode::DegenerateReference: return MIXLAB_ERR_DEGENERATE_REFERENCE;
    case ErrorCode::OracleScaleExceeded: return MIXLAB_ERR_ORACLE_SCALE_EXCEEDED;
    case ErrorCode::UnboundedBody: return MIXLAB_ERR_UNBOUNDED_BODY;
    case ErrorCode::ParseError: return MIXLAB_ERR_PARSE;
    case ErrorCode::IoError: return MIXLAB_ERR_IO;
  }
  return MIXLAB_ERR_INTERNAL;
}

template <typename Fn>
mixlab_status guarded(Fn&& fn) {
  try {
    fn();
    return MIXLAB_OK;
  } catch (const mixlab::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return MIXLAB_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return MIXLAB_ERR_INTERNAL;
  }
}

mixlab_status invalid(const char* msg) {
  g_last_error = msg;
  return MIXLAB_ERR_INVALID_ARGUMENT;
}

mixlab::Metric metric_of(mixlab_metric m) {
  switch (m) {
    case MIXLAB_METRIC_RENYI: return mixlab::Metric::Renyi;
    case MIXLAB_METRIC_KL: return mixlab::Metric::KL;
    case MIXLAB_METRIC_TV: return mixlab::Metric::TV;
    case MIXLAB_METRIC_CHI2: return mixlab::Metric::ChiSq;
    case MIXLAB_METRIC_HELLINGER: return mixlab::Metric::Hellinger;
  }
  mixlab::fail(mixlab::ErrorCode::InvalidArgument, "unknown metric enum value");
}

}  // namespace

struct mixlab_body {
  mixlab::ConvexBody body;
};

struct mixlab_potential {
  std::vector<mixlab::PotentialComponent> components;

  mixlab::FiniteSumPotential build() const {
    return mixlab::FiniteSumPotential(components);
  }
};

struct mixlab_discrete {
  mixlab::DiscreteDist dist;
};

struct mixlab_chain {
  mixlab::ChainConfig cfg;
};

extern "C" {

const char* mixlab_version(void) { return "0.1.0"; }

const char* mixlab_status_name(mixlab_status status) {
  switch (status) {
    case MIXLAB_OK: return "ok";
    case MIXLAB_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case MIXLAB_ERR_DIMENSION_MISMATCH: return "dimension_mismatch";
    case MIXLAB_ERR_STEPSIZE_TOO_LARGE: return "stepsize_too_large";
    case MIXLAB_ERR_ORDER_TOO_LARGE_FOR_VARIANCE_PAIR:
      return "order_too_large_for_variance_pair";
    case MIXLAB_ERR_DEGENERATE_REFERENCE: return "degenerate_reference";
    case MIXLAB_ERR_ORACLE_SCALE_EXCEEDED: return "oracle_scale_exceeded";
    case MIXLAB_ERR_UNBOUNDED_BODY: return "unbounded_body";
    case MIXLAB_ERR_PARSE: return "parse_error";
    case MIXLAB_ERR_IO: return "io_error";
    case MIXLAB_ERR_INTERNAL: return "internal_error";
  }
  return "unknown";
}

const char* mixlab_last_error(void) { return g_last_error.c_str(); }

/* ---- bodies ---- */

mixlab_status mixlab_body_whole_space(size_t dim, mixlab_body** out) {
  if (!out) return invalid("out must not be NULL");
  return guarded([&] { *out = new mixlab_body{mixlab::ConvexBody::whole_space(dim)}; });
}

mixlab_status mixlab_body_interval(double lo, double hi, mixlab_body** out) {
  if (!out) return invalid("out must not be NULL");
  return guarded([&] { *out = new mixlab_body{mixlab::ConvexBody::interval(lo, hi)}; });
}

mixlab_status mixlab_body_box(const double* lo, const double* hi, size_t dim,
                              mixlab_body** out) {
  if (!out || !lo || !hi) return invalid("box arguments must not be NULL");
  return guarded([&] {
    *out = new mixlab_body{mixlab::ConvexBody::box(mixlab::Vec(lo, lo + dim),
                                                   mixlab::Vec(hi, hi + dim))};
  });
}

mixlab_status mixlab_body_ball(const double* center, size_t dim, double radius,
                               mixlab_body** out) {
  if (!out || !center) return invalid("ball arguments must not be NULL");
  return guarded([&] {
    *out = new mixlab_body{mixlab::ConvexBody::ball(mixlab::Vec(center, center + dim), radius)};
  });
}

void mixlab_body_free(mixlab_body* body) { delete body; }

size_t mixlab_body_dim(const mixlab_body* body) { return body ? body->body.dim() : 0; }

mixlab_status mixlab_body_project(const mixlab_body* body, const double* x, size_t dim,
                                  double* out) {
  if (!body || !x || !out) return invalid("project arguments must not be NULL");
  return guarded([&] {
    const mixlab::Vec p = body->body.project(std::span<const double>(x, dim));
    std::memcpy(out, p.data(), p.size() * sizeof(double));
  });
}

mixlab_status mixlab_body_diameter(const mixlab_body* body, int* finite, double* diameter) {
  if (!body || !finite || !diameter) return invalid("diameter arguments must not be NULL");
  return guarded([&] {
    const auto d = body->body.diameter();
    *finite = d.has_value() ? 1 : 0;
    if (d) *diameter = *d;
  });
}

mixlab_status mixlab_body_contains(const mixlab_body* body, const double* x, size_t dim,
                                   double tol, int* inside) {
  if (!body || !x || !inside) return invalid("contains arguments must not be NULL");
  return guarded([&] {
    *inside = body->body.contains(std::span<const double>(x, dim), tol) ? 1 : 0;
  });
}

/* ---- potentials ---- */

mixlab_status mixlab_potential_new(mixlab_potential** out) {
  if (!out) return invalid("out must not be NULL");
  *out = new mixlab_potential{};
  return MIXLAB_OK;
}

void mixlab_potential_free(mixlab_potential* pot) { delete pot; }

mixlab_status mixlab_potential_add_zero(mixlab_potential* pot) {
  if (!pot) return invalid("pot must not be NULL");
  return guarded([&] { pot->components.push_back(mixlab::PotentialComponent::zero()); });
}

mixlab_status mixlab_potential_add_quadratic(mixlab_potential* pot, double lambda,
                                             const double* center, size_t dim) {
  if (!pot || !center) return invalid("quadratic arguments must not be NULL");
  return guarded([&] {
    pot->components.push_back(mixlab::PotentialComponent::isotropic_quadratic(
        lambda, mixlab::Vec(center, center + dim)));
  });
}

mixlab_status mixlab_potential_add_diagonal_quadratic(mixlab_potential* pot,
                                                      const double* curvatures,
                                                      const double* center, size_t dim) {
  if (!pot || !curvatures || !center)
    return invalid("diagonal quadratic arguments must not be NULL");
  return guarded([&] {
    pot->components.push_back(mixlab::PotentialComponent::diagonal_quadratic(
        mixlab::Vec(curvatures, curvatures + dim), mixlab::Vec(center, center + dim)));
  });
}

size_t mixlab_potential_component_count(const mixlab_potential* pot) {
  return pot ? pot->components.size() : 0;
}

mixlab_status mixlab_potential_regularity(const mixlab_potential* pot, double* m, double* M) {
  if (!pot || !m || !M) return invalid("regularity arguments must not be NULL");
  return guarded([&] {
    const auto f = pot->build();
    *m = f.strong_convexity();
    *M = f.smoothness();
  });
}

mixlab_status mixlab_potential_minibatch_gradient(const mixlab_potential* pot,
                                                  const size_t* batch, size_t batch_size,
                                                  const double* x, size_t dim, double* out) {
  if (!pot || !batch || !x || !out) return invalid("gradient arguments must not be NULL");
  return guarded([&] {
    const auto f = pot->build();
    const mixlab::Vec g = f.minibatch_gradient(std::span<const size_t>(batch, batch_size),
                                               std::span<const double>(x, dim));
    std::memcpy(out, g.data(), g.size() * sizeof(double));
  });
}

mixlab_status mixlab_potential_gradient_step(const mixlab_potential* pot, const size_t* batch,
                                             size_t batch_size, double eta, const double* x,
                                             size_t dim, double* out) {
  if (!pot || !batch || !x || !out) return invalid("gradient arguments must not be NULL");
  return guarded([&] {
    const auto f = pot->build();
    const mixlab::Vec y = mixlab::gradient_step(
        f, std::span<const size_t>(batch, batch_size), eta, std::span<const double>(x, dim));
    std::memcpy(out, y.data(), y.size() * sizeof(double));
  });
}

mixlab_status mixlab_contraction_coefficient(double m, double M, double eta, double* c) {
  if (!c) return invalid("c must not be NULL");
  return guarded([&] { *c = mixlab::contraction_coefficient(m, M, eta); });
}

/* ---- chains ---- */

mixlab_status mixlab_chain_new(const mixlab_body* body, const mixlab_potential* pot,
                               double eta, size_t batch_size, const double* init, size_t dim,
                               uint64_t master_seed, mixlab_chain** out) {
  if (!body || !pot || !out) return invalid("chain arguments must not be NULL");
  return guarded([&] {
    mixlab::ChainConfig cfg{body->body, pot->build(), eta, batch_size, 0,
                            mixlab::StationaryProxyInit{}, master_seed};
    if (init) cfg.init = mixlab::Vec(init, init + dim);
    cfg.validate();
    *out = new mixlab_chain{std::move(cfg)};
  });
}

void mixlab_chain_free(mixlab_chain* chain) { delete chain; }

mixlab_status mixlab_chain_run(const mixlab_chain* chain, uint64_t horizon,
                               uint64_t chain_index, double* states) {
  if (!chain || !states) return invalid("run arguments must not be NULL");
  return guarded([&] {
    mixlab::ChainConfig cfg = chain->cfg;
    cfg.horizon = static_cast<std::size_t>(horizon);
    const mixlab::Trajectory t = mixlab::run_chain(cfg, chain_index);
    const std::size_t d = cfg.body.dim();
    for (std::size_t s = 0; s < t.states.size(); ++s)
      std::memcpy(states + s * d, t.states[s].data(), d * sizeof(double));
  });
}

mixlab_status mixlab_chain_run_coupled(const mixlab_chain* chain, const double* init_a,
                                       const double* init_b, uint64_t horizon,
                                       uint64_t chain_index, double* states_a,
                                       double* states_b) {
  if (!chain || !init_a || !init_b || !states_a || !states_b)
    return invalid("coupled run arguments must not be NULL");
  return guarded([&] {
    mixlab::ChainConfig cfg = chain->cfg;
    cfg.horizon = static_cast<std::size_t>(horizon);
    const std::size_t d = cfg.body.dim();
    const auto [ta, tb] = mixlab::run_coupled_pair(cfg, mixlab::Vec(init_a, init_a + d),
                                                   mixlab::Vec(init_b, init_b + d),
                                                   chain_index);
    for (std::size_t s = 0; s < ta.states.size(); ++s) {
      std::memcpy(states_a + s * d, ta.states[s].data(), d * sizeof(double));
      std::memcpy(states_b + s * d, tb.states[s].data(), d * sizeof(double));
    }
  });
}

mixlab_status mixlab_chain_run_auxiliary(const mixlab_chain* chain, const double* init,
                                         uint64_t horizon, uint64_t chain_index,
                                         double* states, double* lifted) {
  if (!chain || !init || !states || !lifted)
    return invalid("auxiliary run arguments must not be NULL");
  return guarded([&] {
    mixlab::ChainConfig cfg = chain->cfg;
    cfg.horizon = static_cast<std::size_t>(horizon);
    const std::size_t d = cfg.body.dim();
    const mixlab::Trajectory t =
        mixlab::run_auxiliary_cni(cfg, mixlab::Vec(init, init + d), chain_index);
    for (std::size_t s = 0; s < t.states.size(); ++s) {
      std::memcpy(states + s * d, t.states[s].data(), d * sizeof(double));
      std::memcpy(lifted + s * d, t.auxiliary[s].data(), d * sizeof(double));
    }
  });
}

/* ---- divergences ---- */

mixlab_status mixlab_renyi_gaussian(double alpha, double mean0, double var0, double mean1,
                                    double var1, double* out) {
  if (!out) return invalid("out must not be NULL");
  return guarded([&] {
    *out = mixlab::renyi_gaussian(alpha, {mean0, var0}, {mean1, var1});
  });
}

mixlab_status mixlab_discrete_new(const double* support, const double* weights, size_t n,
                                  mixlab_discrete** out) {
  if (!support || !weights || !out) return invalid("discrete arguments must not be NULL");
  return guarded([&] {
    *out = new mixlab_discrete{mixlab::DiscreteDist(mixlab::Vec(support, support + n),
                                                    mixlab::Vec(weights, weights + n))};
  });
}

void mixlab_discrete_free(mixlab_discrete* dist) { delete dist; }

mixlab_status mixlab_renyi_discrete(double alpha, const mixlab_discrete* mu,
                                    const mixlab_discrete* nu, double* out) {
  if (!mu || !nu || !out) return invalid("renyi arguments must not be NULL");
  return guarded([&] { *out = mixlab::renyi_discrete(alpha, mu->dist, nu->dist); });
}

mixlab_status mixlab_shifted_renyi_discrete(double alpha, const mixlab_discrete* mu,
                                            const mixlab_discrete* nu, double shift,
                                            double* out) {
  if (!mu || !nu || !out) return invalid("shifted renyi arguments must not be NULL");
  return guarded([&] {
    *out = mixlab::shifted_renyi_discrete(alpha, mu->dist, nu->dist, shift);
  });
}

mixlab_status mixlab_comparison_bounds(double kl, double d2, double* tv_bound,
                                       double* hellinger_bound, double* chi2) {
  return guarded([&] {
    const auto b = mixlab::comparison_bounds(kl, d2);
    if (tv_bound) *tv_bound = b.tv_bound;
    if (hellinger_bound) *hellinger_bound = b.hellinger_bound;
    if (chi2) *chi2 = b.chi2;
  });
}

mixlab_status mixlab_hellinger_alpha_from_renyi(double alpha, double d, double* out) {
  if (!out) return invalid("out must not be NULL");
  return guarded([&] { *out = mixlab::hellinger_alpha_from_renyi(alpha, d); });
}

mixlab_status mixlab_renyi_from_hellinger_alpha(double alpha, double h, double* out) {
  if (!out) return invalid("out must not be NULL");
  return guarded([&] { *out = mixlab::renyi_from_hellinger_alpha(alpha, h); });
}

mixlab_status mixlab_empirical_tv(const double* a, size_t na, const double* b, size_t nb,
                                  size_t bins, double* out) {
  if (!a || !b || !out) return invalid("empirical tv arguments must not be NULL");
  return guarded([&] {
    *out = mixlab::empirical_tv(std::span<const double>(a, na),
                                std::span<const double>(b, nb), bins);
  });
}

/* ---- bounds ---- */

mixlab_status mixlab_pabi_divergence_bound(double alpha, double diameter, double sigma2,
                                           double c, uint64_t horizon, mixlab_pabi_mode mode,
                                           double* out) {
  if (!out) return invalid("out must not be NULL");
  return guarded([&] {
    const mixlab::BoundInputs in{alpha, diameter, sigma2, c, horizon};
    *out = mixlab::pabi_divergence_bound(in, mode == MIXLAB_PABI_PIECEWISE
                                                 ? mixlab::PabiMode::Piecewise
                                                 : mixlab::PabiMode::Continuous);
  });
}

mixlab_status mixlab_optimal_shift_allocation(double c, double diameter, uint64_t horizon,
                                              double* shifts, double* beta_out) {
  if (!shifts) return invalid("shifts must not be NULL");
  return guarded([&] {
    const auto alloc = mixlab::optimal_shift_allocation(c, diameter, horizon);
    std::memcpy(shifts, alloc.shifts.data(), alloc.shifts.size() * sizeof(double));
    if (beta_out) *beta_out = alloc.beta;
  });
}

mixlab_status mixlab_mixing_time_upper_convex(double diameter, double eta, double eps,
                                              mixlab_metric metric, double alpha,
                                              uint64_t* iterations) {
  if (!iterations) return invalid("iterations must not be NULL");
  return guarded([&] {
    *iterations = mixlab::mixing_time_upper_convex(diameter, eta, eps, metric_of(metric),
                                                   alpha);
  });
}

mixlab_status mixlab_mixing_time_upper_strongly_convex(double diameter, double eta, double m,
                                                       double M, double eps,
                                                       mixlab_metric metric, double alpha,
                                                       uint64_t* iterations, double* c_used) {
  if (!iterations) return invalid("iterations must not be NULL");
  return guarded([&] {
    const auto r = mixlab::mixing_time_upper_strongly_convex(diameter, eta, m, M, eps,
                                                             metric_of(metric), alpha);
    *iterations = r.iterations;
    if (c_used) *c_used = r.contraction;
  });
}

mixlab_status mixlab_mixing_time_lower_convex(double diameter, double eta,
                                              uint64_t* iterations) {
  if (!iterations) return invalid("iterations must not be NULL");
  return guarded([&] { *iterations = mixlab::mixing_time_lower_convex(diameter, eta); });
}

mixlab_status mixlab_mixing_time_lower_strongly_convex(double alpha, double c, double eps,
                                                       uint64_t* iterations) {
  if (!iterations) return invalid("iterations must not be NULL");
  return guarded([&] {
    *iterations = mixlab::mixing_time_lower_strongly_convex(alpha, c, eps);
  });
}

mixlab_status mixlab_unconstrained_diameter_adapter(const mixlab_body* body, double d_proxy,
                                                    int has_proxy, double eps,
                                                    double* effective_diameter,
                                                    double* tv_target) {
  if (!body || !effective_diameter || !tv_target)
    return invalid("adapter arguments must not be NULL");
  return guarded([&] {
    const auto patch = mixlab::unconstrained_diameter_adapter(
        body->body, has_proxy ? std::optional<double>(d_proxy) : std::nullopt, eps);
    *effective_diameter = patch.effective_diameter;
    *tv_target = patch.tv_target;
  });
}

/* ---- oracles ---- */

mixlab_status mixlab_exact_iterate_law(double lambda, double eta, uint64_t horizon,
                                       double* mean, double* variance) {
  if (!mean || !variance) return invalid("iterate law arguments must not be NULL");
  return guarded([&] {
    const mixlab::QuadraticChainLaw q{lambda, eta, horizon};
    const auto g = mixlab::exact_iterate_law(q);
    *mean = g.mean;
    *variance = g.variance;
  });
}

mixlab_status mixlab_exact_renyi_gap(double alpha, double c, uint64_t horizon, double* out) {
  if (!out) return invalid("out must not be NULL");
  return guarded([&] { *out = mixlab::exact_renyi_gap(alpha, c, horizon); });
}

mixlab_status mixlab_sc_lower_bound_value(double alpha, double c, uint64_t horizon,
                                          double* out) {
  if (!out) return invalid("out must not be NULL");
  return guarded([&] { *out = mixlab::sc_lower_bound_value(alpha, c, horizon); });
}

mixlab_status mixlab_random_walk_escape(double diameter, double eta, uint64_t horizon,
                                        uint64_t trials, uint64_t seed, double* estimate,
                                        double* std_error, double* ceiling,
                                        int* within_bound) {
  return guarded([&] {
    const auto r = mixlab::random_walk_escape(diameter, eta, horizon, trials, seed);
    if (estimate) *estimate = r.estimate;
    if (std_error) *std_error = r.std_error;
    if (ceiling) *ceiling = r.ceiling;
    if (within_bound) *within_bound = r.within_bound ? 1 : 0;
  });
}

/* ---- experiments ---- */

mixlab_status mixlab_run_experiment_json(const char* config_json, uint64_t seed,
                                         const char* out_dir, int workers, int* all_passed) {
  if (!config_json || !out_dir) return invalid("experiment arguments must not be NULL");
  return guarded([&] {
    auto cfg = mixlab::ExperimentConfig::from_json_text(config_json);
    cfg.master_seed = seed;
    const auto out = mixlab::run_experiment(cfg, out_dir, workers);
    if (all_passed) *all_passed = out.all_passed ? 1 : 0;
  });
}

mixlab_status mixlab_run_experiment_file(const char* config_path, uint64_t seed,
                                         const char* out_dir, int workers, int* all_passed) {
  if (!config_path || !out_dir) return invalid("experiment arguments must not be NULL");
  return guarded([&] {
    std::ifstream is(config_path, std::ios::binary);
    mixlab::require(is.good(), mixlab::ErrorCode::IoError,
                    std::string("cannot open config file ") + config_path);
    std::ostringstream ss;
    ss << is.rdbuf();
    auto cfg = mixlab::ExperimentConfig::from_json_text(ss.str());
    cfg.master_seed = seed;
    const auto out = mixlab::run_experiment(cfg, out_dir, workers);
    if (all_passed) *all_passed = out.all_passed ? 1 : 0;
  });
}

} /* extern "C" */
