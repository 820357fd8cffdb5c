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


// Functional limit theorem experiments: boundary-case paths under the
// exponent time change exp(-t S), and the limit process for alpha > -1/2.

#ifndef RDSERIES_FLT_HARNESS_HPP_
#define RDSERIES_FLT_HARNESS_HPP_

#include <cstdint>
#include <vector>

#include "rdseries/ensemble.hpp"
#include "rdseries/innovations.hpp"
#include "rdseries/series_engine.hpp"
#include "rdseries/stats.hpp"

namespace rds::flt {

/// Rows are S^-1/2 X_{-1/2}(exp(-t S)) on t_grid, one eta-path per row.
/// Infeasible grids raise FeasibilityError whose max_usable() is the
/// largest feasible S for this grid.
PathEnsemble simulate_flt_boundary(double s_big, const std::vector<double>& t_grid,
                                   std::size_t n_rep, const InnovationSpec& spec,
                                   const SeedContext& ctx, double rel_tol,
                                   std::uint64_t n_max = series::kDefaultNMax,
                                   unsigned workers = 0);

/// Largest S for which exp(-t_max S) admits a cutoff <= n_max.
/// Covariance (row-major) of the truncated sums simulate_flt_boundary draws:
/// sigma^2 / s_big * sum_{k <= min(N_i, N_j)} (log k)^-1 k^-(1 + e_i + e_j).
std::vector<double> truncated_covariance(double s_big, const std::vector<double>& t_grid,
                                         const std::vector<std::uint64_t>& cutoffs,
                                         double sigma, unsigned workers = 0);

double max_feasible_s_big(double t_max, double rel_tol, std::uint64_t n_max);

/// Discretized sigma int_0^y_max y^alpha e^-ty dB(y): left-endpoint cells,
/// except the first cell which carries its exact variance.
PathEnsemble simulate_limit_alpha(double alpha, const std::vector<double>& t_grid,
                                  std::size_t n_rep, double y_max, int n_steps,
                                  double sigma, const SeedContext& ctx,
                                  unsigned workers = 0);

/// Exact covariance of the discretized process above.
double discretized_limit_cov(double alpha, double t1, double t2, double y_max,
                             int n_steps, double sigma);

using stats::compare_fdd;

}  // namespace rds::flt

#endif  // RDSERIES_FLT_HARNESS_HPP_
