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


// Partial sums of sum_k (log k)^alpha k^-(1/2+s) eta_k on one fixed
// eta-path, with certified truncation planning.

#ifndef RDSERIES_SERIES_ENGINE_HPP_
#define RDSERIES_SERIES_ENGINE_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "rdseries/innovations.hpp"

namespace rds::series {

inline constexpr std::uint64_t kDefaultNMax = std::uint64_t{1} << 33;
/// Largest index the engine will sum to (k must stay exact in a double).
inline constexpr std::uint64_t kMaxTerms = std::uint64_t{1} << 53;

struct SeriesParams {
  double alpha = -0.5;
  double s = 0.5;
  InnovationSpec spec = InnovationSpec::rademacher();
};

struct TruncationPlan {
  std::uint64_t cutoff_n = 0;
  double tail_variance_bound = 0.0;
  double rel_tol = 0.0;
  double variance_scale = 0.0;
  std::string target;
};

/// Default variance scale: midpoint of sum_k (log k)^(2 alpha) k^-(1+2s).
double default_variance_scale(double alpha, double s);

/// Smallest power of two N whose tail variance bound is at most
/// rel_tol * variance_scale. Throws FeasibilityError if N > n_max.
TruncationPlan plan_truncation(double alpha, double s, double rel_tol,
                               double variance_scale,
                               std::uint64_t n_max = kDefaultNMax);

/// S_n = sum_{k=2}^n (log k)^alpha k^-(1/2+s) eta_k.
double partial_sum(const SeriesParams& params, std::uint64_t n,
                   const SeedContext& ctx, unsigned workers = 0);

/// Per-point cutoffs for a grid of exponents, computed once and reused for
/// every replicate.
struct PathPlan {
  double alpha = -0.5;
  std::vector<double> grid;
  std::vector<TruncationPlan> plans;
};

PathPlan plan_path(double alpha, const std::vector<double>& s_grid,
                   double rel_tol, std::uint64_t n_max = kDefaultNMax);

/// Values S_{cutoff_i}(alpha, s_i) on the shared path of `ctx`.
std::vector<double> evaluate_planned(const PathPlan& plan,
                                     const InnovationSpec& spec,
                                     const SeedContext& ctx,
                                     unsigned workers = 0);

/// Values S_cutoff(alpha, s_i) with one cutoff shared by every point.
std::vector<double> evaluate_fixed(double alpha, const std::vector<double>& s_grid,
                                   std::uint64_t cutoff, const InnovationSpec& spec,
                                   const SeedContext& ctx, unsigned workers = 0);

struct PathEvaluation {
  std::vector<double> grid;
  std::vector<double> values;
  std::vector<TruncationPlan> plans;
  SeedContext ctx;
};

PathEvaluation evaluate_path(double alpha, const std::vector<double>& s_grid,
                             const InnovationSpec& spec, const SeedContext& ctx,
                             double rel_tol, std::uint64_t n_max = kDefaultNMax,
                             unsigned workers = 0);

/// |direct sum - summation-by-parts form| for alpha = -1/2 up to index m.
double parts_identity_residual(double s, std::uint64_t m,
                               const InnovationSpec& spec,
                               const SeedContext& ctx, double quad_tol);

namespace detail {
/// Test hook: every eta_k is multiplied by eta_scale (0 gives the zero path).
double partial_sum_scaled(const SeriesParams& params, std::uint64_t n,
                          const SeedContext& ctx, double eta_scale,
                          unsigned workers = 0);
double parts_identity_residual_scaled(double s, std::uint64_t m,
                                      const InnovationSpec& spec,
                                      const SeedContext& ctx, double quad_tol,
                                      double eta_scale);
}  // namespace detail

}  // namespace rds::series

#endif  // RDSERIES_SERIES_ENGINE_HPP_
