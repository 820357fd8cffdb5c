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


#include "rdseries/series_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "rdseries/analytics.hpp"
#include "rdseries/errors.hpp"
#include "rdseries/parallel.hpp"
#include "rdseries/special.hpp"
#include "rdseries/types.hpp"

namespace rds::series {
namespace {

void check_alpha_s(double alpha, double s) {
  if (!(alpha >= -0.5) || !std::isfinite(alpha)) {
    throw DomainError("alpha must be >= -1/2");
  }
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw DomainError("series exponent s must be a finite positive real");
  }
}

double weight(double alpha, double lk) {
  if (alpha == -0.5) return 1.0 / std::sqrt(lk);
  if (alpha == 0.0) return 1.0;
  return std::pow(lk, alpha);
}

// One pass over k = 2..max(cutoffs); log k and eta_k are shared by all
// grid points. Block sums are reduced per point with the fixed tree.
std::vector<double> sum_kernel(double alpha, const std::vector<double>& grid,
                               const std::vector<std::uint64_t>& cutoffs,
                               const InnovationSpec& spec,
                               const SeedContext& ctx, double eta_scale,
                               unsigned workers) {
  const std::size_t points = grid.size();
  const std::uint64_t top = *std::max_element(cutoffs.begin(), cutoffs.end());
  const std::size_t n_blocks = static_cast<std::size_t>(top / kBlockSize) + 1;
  std::vector<CompensatedSum> block_sums(n_blocks * points);
  std::vector<double> decay(points);
  for (std::size_t i = 0; i < points; ++i) decay[i] = -(0.5 + grid[i]);

  parallel_for(n_blocks, workers, [&](std::size_t b) {
    const std::uint64_t lo = std::max<std::uint64_t>(2, b * kBlockSize);
    const std::uint64_t hi = std::min<std::uint64_t>(top, (b + 1) * kBlockSize - 1);
    CompensatedSum* acc = &block_sums[b * points];
    for (std::uint64_t k = lo; k <= hi; ++k) {
      const double lk = std::log(static_cast<double>(k));
      const double eta = innovations::detail::draw_any(spec, ctx, k) * eta_scale;
      const double w = weight(alpha, lk) * eta;
      for (std::size_t i = 0; i < points; ++i) {
        if (k <= cutoffs[i]) acc[i].add(w * std::exp(decay[i] * lk));
      }
    }
  });

  std::vector<double> out(points);
  for (std::size_t i = 0; i < points; ++i) {
    const std::size_t used = static_cast<std::size_t>(cutoffs[i] / kBlockSize) + 1;
    std::vector<CompensatedSum> parts(used);
    for (std::size_t b = 0; b < used; ++b) parts[b] = block_sums[b * points + i];
    out[i] = tree_reduce(std::move(parts)).value();
  }
  return out;
}

double c_weight(double s, double x) {
  return std::exp(-(0.5 + s) * std::log(x)) / std::sqrt(std::log(x));
}

}  // namespace

double default_variance_scale(double alpha, double s) {
  check_alpha_s(alpha, s);
  return analytics::kernel_sum(alpha, Exponent::of(2.0 * s), kBlockSize).mid();
}

TruncationPlan plan_truncation(double alpha, double s, double rel_tol,
                               double variance_scale, std::uint64_t n_max) {
  check_alpha_s(alpha, s);
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) {
    throw DomainError("rel_tol must lie in (0, 1)");
  }
  if (!(variance_scale > 0.0) || !std::isfinite(variance_scale)) {
    throw DomainError("variance_scale must be a finite positive real");
  }
  if (n_max < 2) throw DomainError("n_max must be >= 2");

  const Exponent u = Exponent::of(2.0 * s);
  const double target = rel_tol * variance_scale;
  // The integral comparison needs a decreasing summand beyond N.
  const double mono = std::max(0.0, 2.0 * alpha / (1.0 + 2.0 * s));
  auto bound_at = [&](double log_n) {
    return analytics::tail_integral_log(alpha, u, log_n).hi;
  };

  std::ostringstream what;
  what << "tail variance <= " << rel_tol << " * " << variance_scale;
  for (int p = 1; p < 63; ++p) {
    const std::uint64_t n = std::uint64_t{1} << p;
    if (n > n_max) break;
    const double log_n = p * std::log(2.0);
    if (log_n <= mono) continue;
    const double b = bound_at(log_n);
    if (b <= target) return {n, b, rel_tol, variance_scale, what.str()};
  }

  double lo = std::max(mono, 1e-300);
  double hi = std::max(2.0 * lo, 1.0);
  while (bound_at(hi) > target && hi < 1e300) {
    lo = hi;
    hi *= 2.0;
  }
  double min_log_n = std::numeric_limits<double>::infinity();
  if (bound_at(hi) <= target) {
    for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      (bound_at(mid) <= target ? hi : lo) = mid;
    }
    min_log_n = hi;
  }
  std::ostringstream msg;
  msg << "truncation infeasible for alpha=" << alpha << ", s=" << s
      << ": need log N >= " << min_log_n << " but n_max=" << n_max;
  throw FeasibilityError(msg.str(), min_log_n,
                         std::numeric_limits<double>::quiet_NaN());
}

double partial_sum(const SeriesParams& params, std::uint64_t n,
                   const SeedContext& ctx, unsigned workers) {
  return detail::partial_sum_scaled(params, n, ctx, 1.0, workers);
}

double detail::partial_sum_scaled(const SeriesParams& params, std::uint64_t n,
                                  const SeedContext& ctx, double eta_scale,
                                  unsigned workers) {
  check_alpha_s(params.alpha, params.s);
  if (n < 2) throw DomainError("partial_sum requires n >= 2");
  if (n > kMaxTerms) throw ResourceError("term count exceeds 2^53");
  return sum_kernel(params.alpha, {params.s}, {n}, params.spec, ctx, eta_scale,
                    workers)
      .front();
}

PathPlan plan_path(double alpha, const std::vector<double>& s_grid,
                   double rel_tol, std::uint64_t n_max) {
  if (s_grid.empty()) throw DomainError("s_grid must be nonempty");
  PathPlan plan;
  plan.alpha = alpha;
  plan.grid = s_grid;
  for (std::size_t i = 0; i < s_grid.size(); ++i) {
    const double s = s_grid[i];
    try {
      check_alpha_s(alpha, s);
      plan.plans.push_back(plan_truncation(
          alpha, s, rel_tol, default_variance_scale(alpha, s), n_max));
    } catch (const FeasibilityError& e) {
      std::ostringstream msg;
      msg << "grid point " << i << " (s=" << s << "): " << e.what();
      throw FeasibilityError(msg.str(), e.min_log_n(), e.max_usable());
    }
  }
  return plan;
}

std::vector<double> evaluate_planned(const PathPlan& plan,
                                     const InnovationSpec& spec,
                                     const SeedContext& ctx, unsigned workers) {
  std::vector<std::uint64_t> cutoffs;
  cutoffs.reserve(plan.plans.size());
  for (const auto& p : plan.plans) cutoffs.push_back(p.cutoff_n);
  return sum_kernel(plan.alpha, plan.grid, cutoffs, spec, ctx, 1.0, workers);
}

std::vector<double> evaluate_fixed(double alpha, const std::vector<double>& s_grid,
                                   std::uint64_t cutoff, const InnovationSpec& spec,
                                   const SeedContext& ctx, unsigned workers) {
  if (s_grid.empty()) throw DomainError("s_grid must be nonempty");
  for (double s : s_grid) check_alpha_s(alpha, s);
  if (cutoff < 2) throw DomainError("cutoff must be >= 2");
  if (cutoff > kMaxTerms) throw ResourceError("term count exceeds 2^53");
  return sum_kernel(alpha, s_grid, std::vector<std::uint64_t>(s_grid.size(), cutoff),
                    spec, ctx, 1.0, workers);
}

PathEvaluation evaluate_path(double alpha, const std::vector<double>& s_grid,
                             const InnovationSpec& spec, const SeedContext& ctx,
                             double rel_tol, std::uint64_t n_max,
                             unsigned workers) {
  PathPlan plan = plan_path(alpha, s_grid, rel_tol, n_max);
  PathEvaluation out;
  out.values = evaluate_planned(plan, spec, ctx, workers);
  out.grid = std::move(plan.grid);
  out.plans = std::move(plan.plans);
  out.ctx = ctx;
  return out;
}

double parts_identity_residual(double s, std::uint64_t m,
                               const InnovationSpec& spec,
                               const SeedContext& ctx, double quad_tol) {
  return detail::parts_identity_residual_scaled(s, m, spec, ctx, quad_tol, 1.0);
}

double detail::parts_identity_residual_scaled(double s, std::uint64_t m,
                                              const InnovationSpec& spec,
                                              const SeedContext& ctx,
                                              double quad_tol,
                                              double eta_scale) {
  check_alpha_s(-0.5, s);
  if (m < 3) throw DomainError("parts identity requires m >= 3");
  if (!(quad_tol > 0.0)) throw DomainError("quad_tol must be positive");
  if (m > kMaxTerms) throw ResourceError("term count exceeds 2^53");

  // -d/dx of (log x)^-1/2 x^-(1/2+s)
  auto w = [s](double x) {
    const double lx = std::log(x);
    return (0.5 / (lx * std::sqrt(lx)) + (0.5 + s) / std::sqrt(lx)) *
           std::exp(-(1.5 + s) * lx);
  };

  CompensatedSum direct;
  CompensatedSum walk;
  CompensatedSum parts;
  const double eta1 = innovations::detail::draw_any(spec, ctx, 1) * eta_scale;
  walk.add(eta1);
  for (std::uint64_t j = 1; j < m; ++j) {
    if (j >= 2) {
      const double eta = innovations::detail::draw_any(spec, ctx, j) * eta_scale;
      walk.add(eta);
      direct.add(c_weight(s, static_cast<double>(j)) * eta);
    }
    const double a = j == 1 ? 1.5 : static_cast<double>(j);
    const double b = static_cast<double>(j) + 1.0;
    parts.add(walk.value() * special::integrate(w, a, b, quad_tol));
  }
  const double eta_m = innovations::detail::draw_any(spec, ctx, m) * eta_scale;
  walk.add(eta_m);
  direct.add(c_weight(s, static_cast<double>(m)) * eta_m);

  const double rhs = c_weight(s, static_cast<double>(m)) * walk.value() -
                     c_weight(s, 1.5) * eta1 + parts.value();
  return std::fabs(direct.value() - rhs);
}

}  // namespace rds::series
