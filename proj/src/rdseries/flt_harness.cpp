// Copyright 2026 The rdseries Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "rdseries/flt_harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "rdseries/errors.hpp"
#include "rdseries/parallel.hpp"
#include "rdseries/special.hpp"

namespace rds::flt {
namespace {

void require_ascending_positive(const std::vector<double>& t) {
  if (t.empty()) throw DomainError("t_grid must be nonempty");
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(t[i] > 0.0) || !std::isfinite(t[i])) {
      throw DomainError("t_grid entries must be positive");
    }
    if (i > 0 && !(t[i] > t[i - 1])) {
      throw InvalidArgument("t_grid must be strictly increasing (no duplicates)");
    }
  }
}

bool feasible(double exponent, double rel_tol, std::uint64_t n_max) {
  try {
    series::plan_truncation(-0.5, exponent, rel_tol,
                            series::default_variance_scale(-0.5, exponent), n_max);
    return true;
  } catch (const FeasibilityError&) {
    return false;
  }
}

// Cell-0 variance int_0^d y^(2a) e^(-2ty) dy.
double first_cell_variance(double alpha, double t, double d) {
  const double a = 1.0 + 2.0 * alpha;
  return special::lower_gamma(a, 2.0 * t * d) * std::pow(2.0 * t, -a);
}

}  // namespace

double max_feasible_s_big(double t_max, double rel_tol, std::uint64_t n_max) {
  double lo = 0.0;
  double hi = 1.0;
  while (feasible(std::exp(-t_max * hi), rel_tol, n_max)) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e6) return hi;
  }
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (feasible(std::exp(-t_max * mid), rel_tol, n_max) ? lo : hi) = mid;
  }
  return lo;
}

PathEnsemble simulate_flt_boundary(double s_big, const std::vector<double>& t_grid,
                                   std::size_t n_rep, const InnovationSpec& spec,
                                   const SeedContext& ctx, double rel_tol,
                                   std::uint64_t n_max, unsigned workers) {
  if (!(s_big > 0.0)) throw DomainError("s_big must be positive");
  require_ascending_positive(t_grid);
  if (n_rep < 1) throw DomainError("n_rep must be >= 1");
  const auto start = std::chrono::steady_clock::now();

  std::vector<double> exps;
  for (double t : t_grid) exps.push_back(std::exp(-t * s_big));
  series::PathPlan plan;
  try {
    plan = series::plan_path(-0.5, exps, rel_tol, n_max);
  } catch (const FeasibilityError& e) {
    const double usable = max_feasible_s_big(t_grid.back(), rel_tol, n_max);
    std::ostringstream msg;
    msg << e.what() << "; largest usable s_big for this t_grid is " << usable;
    throw FeasibilityError(msg.str(), e.min_log_n(), usable);
  }

  PathEnsemble ens;
  ens.t_grid = t_grid;
  ens.n_rep = n_rep;
  ens.values.resize(n_rep * t_grid.size());
  ens.normalization = "s_big^-1/2 X(exp(-t s_big))";
  ens.meta.master_seed = ctx.master_seed;
  ens.meta.stream_id = ctx.stream_id;
  ens.meta.rel_tol = rel_tol;
  for (const auto& p : plan.plans) ens.meta.cutoffs.push_back(p.cutoff_n);

  const double norm = 1.0 / std::sqrt(s_big);
  parallel_for(n_rep, workers, [&](std::size_t r) {
    const std::vector<double> v =
        series::evaluate_planned(plan, spec, ctx.replicate(r), workers);
    for (std::size_t i = 0; i < v.size(); ++i) ens.at(r, i) = v[i] * norm;
  });
  ens.meta.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return ens;
}

std::vector<double> truncated_covariance(double s_big, const std::vector<double>& t_grid,
                                         const std::vector<std::uint64_t>& cutoffs,
                                         double sigma, unsigned workers) {
  if (!(s_big > 0.0)) throw DomainError("s_big must be positive");
  require_ascending_positive(t_grid);
  if (cutoffs.size() != t_grid.size()) throw InvalidArgument("one cutoff per grid point");
  const std::size_t p = t_grid.size();
  std::vector<double> out(p * p);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = i; j < p; ++j) {
      const std::uint64_t n = std::min(cutoffs[i], cutoffs[j]);
      const double u = std::exp(-t_grid[i] * s_big) + std::exp(-t_grid[j] * s_big);
      const double v =
          n < 2 ? 0.0
                : blocked_sum(2, n,
                              [u](std::uint64_t k) {
                                const double lk = std::log(static_cast<double>(k));
                                return std::exp(-(1.0 + u) * lk) / lk;
                              },
                              workers)
                      .value;
      out[i * p + j] = out[j * p + i] = sigma * sigma * v / s_big;
    }
  }
  return out;
}

PathEnsemble simulate_limit_alpha(double alpha, const std::vector<double>& t_grid,
                                  std::size_t n_rep, double y_max, int n_steps,
                                  double sigma, const SeedContext& ctx,
                                  unsigned workers) {
  if (!(alpha > -0.5)) throw DomainError("limit process requires alpha > -1/2");
  require_ascending_positive(t_grid);
  if (!(y_max * t_grid.front() >= 20.0)) {
    throw DomainError("y_max * min(t) must be >= 20");
  }
  if (n_steps < 1000) throw DomainError("n_steps must be >= 1000");
  if (!(sigma >= 0.0)) throw DomainError("sigma must be nonnegative");
  if (n_rep < 1) throw DomainError("n_rep must be >= 1");
  const auto start = std::chrono::steady_clock::now();

  const std::size_t p = t_grid.size();
  const std::size_t cells = static_cast<std::size_t>(n_steps);
  const double d = y_max / n_steps;
  // weights[c * p + i]: coefficient of the c-th normal increment at t_i.
  std::vector<double> weights(cells * p);
  for (std::size_t i = 0; i < p; ++i) {
    weights[i] = sigma * std::sqrt(first_cell_variance(alpha, t_grid[i], d));
    for (std::size_t c = 1; c < cells; ++c) {
      const double y = static_cast<double>(c) * d;
      weights[c * p + i] =
          sigma * std::pow(y, alpha) * std::exp(-t_grid[i] * y) * std::sqrt(d);
    }
  }

  PathEnsemble ens;
  ens.t_grid = t_grid;
  ens.n_rep = n_rep;
  ens.values.assign(n_rep * p, 0.0);
  ens.normalization = "limit process, unnormalized";
  ens.meta.master_seed = ctx.master_seed;
  ens.meta.stream_id = ctx.stream_id;
  parallel_for(n_rep, workers, [&](std::size_t r) {
    const SeedContext rc = ctx.replicate(r);
    std::vector<CompensatedSum> acc(p);
    for (std::size_t c = 0; c < cells; ++c) {
      const double z = innovations::standard_normal(rc, c + 2);
      for (std::size_t i = 0; i < p; ++i) acc[i].add(weights[c * p + i] * z);
    }
    for (std::size_t i = 0; i < p; ++i) ens.at(r, i) = acc[i].value();
  });
  ens.meta.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return ens;
}

double discretized_limit_cov(double alpha, double t1, double t2, double y_max,
                             int n_steps, double sigma) {
  if (!(alpha > -0.5)) throw DomainError("limit process requires alpha > -1/2");
  if (!(t1 > 0.0) || !(t2 > 0.0)) throw DomainError("times must be positive");
  if (n_steps < 1) throw DomainError("n_steps must be >= 1");
  const double d = y_max / n_steps;
  CompensatedSum acc;
  acc.add(std::sqrt(first_cell_variance(alpha, t1, d) *
                    first_cell_variance(alpha, t2, d)));
  for (int c = 1; c < n_steps; ++c) {
    const double y = c * d;
    acc.add(std::pow(y, 2.0 * alpha) * std::exp(-(t1 + t2) * y) * d);
  }
  return sigma * sigma * acc.value();
}

}  // namespace rds::flt
