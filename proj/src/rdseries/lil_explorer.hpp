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


// Iterated-logarithm experiments: normalized trajectories, limit-set
// coverage, truncation events and fragment diagnostics.

#ifndef RDSERIES_LIL_EXPLORER_HPP_
#define RDSERIES_LIL_EXPLORER_HPP_

#include <cstdint>
#include <vector>

#include "rdseries/analytics.hpp"
#include "rdseries/innovations.hpp"
#include "rdseries/series_engine.hpp"
#include "rdseries/types.hpp"

namespace rds::lil {

enum class Route { kAuto = 0, kSummation = 1, kGaussianExact = 2 };

struct EnginePolicy {
  Route route = Route::kAuto;
  double rel_tol = 0.05;
  std::uint64_t n_max = series::kDefaultNMax;
  std::uint64_t direct_terms = analytics::kDefaultDirectTerms;
};

struct Trajectory {
  std::vector<double> log_s;  // descending s
  std::vector<double> raw;
  std::vector<double> normalized;
  std::vector<double> running_sup;
  std::vector<double> running_inf;
  Route route_used = Route::kAuto;
};

/// One path across all points, normalized by f(s) (which carries 1/sigma).
/// Summation when every point is feasible, otherwise the exact gaussian
/// joint law; non-gaussian innovations with an infeasible point raise
/// FeasibilityError.
Trajectory normalized_trajectory(const std::vector<Exponent>& s_points,
                                 const InnovationSpec& spec, const SeedContext& ctx,
                                 const EnginePolicy& policy = {});

/// Replicate r uses ctx.replicate(r); the route is decided once.
std::vector<Trajectory> trajectory_ensemble(const std::vector<Exponent>& s_points,
                                            const InnovationSpec& spec,
                                            const SeedContext& ctx, std::size_t n_rep,
                                            const EnginePolicy& policy = {},
                                            unsigned workers = 0);

/// Marginal SD of f(s) X(s): (2 logloglog(1/s))^-1/2 (g(s)/log(1/s))^1/2.
double normalized_sd(Exponent s,
                     std::uint64_t direct_terms = analytics::kDefaultDirectTerms);

struct Coverage {
  double lo = -1.5;
  double hi = 1.5;
  std::vector<std::size_t> counts;
  std::size_t total = 0;
  double fraction_inside = 0.0;  // share of values in [-1, 1]
  std::size_t above_one = 0;
  std::size_t below_minus_one = 0;
  std::size_t out_of_range = 0;  // outside [lo, hi]
  double max_abs = 0.0;
};

/// Histogram of all normalized values over [-1.5, 1.5]. Needs >= 100 paths.
Coverage limit_set_coverage(const std::vector<Trajectory>& paths, int bins);

struct TruncationEvent {
  std::uint64_t k = 0;
  double log_s = 0.0;
  double rho = 0.0;
  double threshold = 0.0;
  bool fired = false;
};

/// (rho / loglog(1/s)) (k^(1+2s) log k g(s) / logloglog(1/s))^1/2.
double event_threshold(Exponent s, double rho, std::uint64_t k, double g_mid);

TruncationEvent truncation_event(Exponent s, double rho, std::uint64_t k,
                                 const InnovationSpec& spec, const SeedContext& ctx);

struct TruncationDiagnostics {
  std::uint64_t m = 0;  // M(s)
  std::uint64_t fired_count = 0;
  double event_sum = 0.0;
  double event_expect_sum = 0.0;
  double expect_remainder_bound = 0.0;  // for k > k_max
};

/// Events over M(s) < k <= k_max, with s < exp(-e).
TruncationDiagnostics truncation_diagnostics(Exponent s, double rho,
                                             const InnovationSpec& spec,
                                             const SeedContext& ctx,
                                             std::uint64_t k_max);

enum class FragmentKind { kHead = 0, kSparseHead = 1, kTail = 2 };

/// f(s) |fragment(s)| per s; the gaussian tail fragment reports
/// f(s) (certified fragment variance bound)^1/2 instead of a path value.
std::vector<double> fragment_decay(FragmentKind kind, const std::vector<Exponent>& s_list,
                                   const InnovationSpec& spec, const SeedContext& ctx,
                                   const EnginePolicy& policy = {});

}  // namespace rds::lil

#endif  // RDSERIES_LIL_EXPLORER_HPP_
