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


// Exact joint law of the series at arbitrary exponent grids for gaussian
// innovations, via factorization of the certified covariance matrix.

#ifndef RDSERIES_GAUSSIAN_EXACT_HPP_
#define RDSERIES_GAUSSIAN_EXACT_HPP_

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "rdseries/analytics.hpp"
#include "rdseries/ensemble.hpp"
#include "rdseries/innovations.hpp"
#include "rdseries/types.hpp"

namespace rds::gaussian_exact {

enum class GridKind { kLil = 0, kFlt = 1, kAlphaFlt = 2 };

/// Evaluation grid. For kLil `points` holds log s (s may underflow a
/// double); for the FLT kinds it holds the time points t.
struct CovGrid {
  GridKind kind = GridKind::kLil;
  std::vector<double> points;
  double s_big = 0.0;   // kFlt: exponents exp(-t s_big), entries / s_big
  double alpha = -0.5;  // kAlphaFlt
  double s = 0.0;       // kAlphaFlt: exponents s t, entries * s^(1+2 alpha)

  static CovGrid lil(const std::vector<Exponent>& s_points);
  static CovGrid lil_values(const std::vector<double>& s_points);
  static CovGrid flt(double s_big, const std::vector<double>& t_points);
  static CovGrid alpha_flt(double alpha, double s, const std::vector<double>& t_points);

  /// Series exponent at point i.
  Exponent exponent(std::size_t i) const;
  /// Factor applied to raw covariances.
  double scale() const;
};

struct FactorizedCov {
  CovGrid grid;
  Eigen::MatrixXd matrix;  // enclosure midpoints, scaled
  Eigen::MatrixXd widths;  // enclosure widths, scaled
  Eigen::MatrixXd factor;  // lower triangular, factor * factor^T ~ matrix
  double jitter_used = 0.0;

  std::size_t dim() const { return static_cast<std::size_t>(matrix.rows()); }
};

inline constexpr double kJitterLadder[] = {0.0, 1e-12, 1e-10, 1e-8};

/// Entries sigma^2 * cov_kernel midpoints; refuses (PrecisionError) when an
/// enclosure is wider than 1e-6 sqrt(d_i d_j).
FactorizedCov build_cov(const CovGrid& grid, double sigma,
                        std::uint64_t direct_terms = analytics::kDefaultDirectTerms);

/// Factorizes an arbitrary symmetric matrix with the jitter ladder applied
/// to its correlation form. Throws ConditioningError when it is exhausted.
FactorizedCov factorize(const Eigen::MatrixXd& matrix);

/// Relative Frobenius error of factor * factor^T against matrix.
double round_trip_error(const FactorizedCov& fc);

/// Row r is factor * z with z_i = standard_normal(ctx.replicate(r), i + 2).
PathEnsemble sample_ensemble(const FactorizedCov& fc, std::size_t n_rep,
                             const SeedContext& ctx, unsigned workers = 0);

/// One joint draw keyed directly by ctx.
std::vector<double> sample_one(const FactorizedCov& fc, const SeedContext& ctx);

}  // namespace rds::gaussian_exact

#endif  // RDSERIES_GAUSSIAN_EXACT_HPP_
