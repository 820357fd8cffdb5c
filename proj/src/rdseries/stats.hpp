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


// Empirical moments, jackknife standard errors and Kolmogorov-Smirnov
// normality checks for path ensembles.

#ifndef RDSERIES_STATS_HPP_
#define RDSERIES_STATS_HPP_

#include <cstddef>
#include <vector>

#include "rdseries/ensemble.hpp"

namespace rds::stats {

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

/// Asymptotic Kolmogorov tail probability with Stephens' small-n correction.
double kolmogorov_pvalue(double d, std::size_t n);

/// One-sample KS test of `x` against N(0, variance).
KsResult ks_normal(std::vector<double> x, double variance);

struct StatReport {
  std::size_t dim = 0;
  std::size_t n_rep = 0;
  std::vector<double> mean;
  std::vector<double> empirical_cov;  // dim x dim, row-major
  std::vector<double> std_errors;     // jackknife SE per covariance entry
  std::vector<double> reference_cov;
  std::vector<KsResult> ks;           // per coordinate, against N(0, ref_ii)
  std::vector<double> increment_corr; // corr of consecutive increments

  /// Entries with |emp - ref| <= k * SE.
  std::size_t count_within(double k) const;
};

/// Sample covariance (n - 1 denominator) and its leave-one-out jackknife SE.
void covariance_with_se(const PathEnsemble& ens, std::vector<double>& cov,
                        std::vector<double>& se);

/// Requires n_rep >= 100 and a dim x dim reference.
StatReport compare_fdd(const PathEnsemble& ens, const std::vector<double>& reference);

double median(std::vector<double> x);

}  // namespace rds::stats

#endif  // RDSERIES_STATS_HPP_
