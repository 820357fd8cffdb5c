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


// Real zeros of s -> X_{-1/2}(s) on a window: log-spaced sign-change scan,
// bisection on a frozen truncation, and zero counts over seeds.

#ifndef RDSERIES_ZERO_FINDER_HPP_
#define RDSERIES_ZERO_FINDER_HPP_

#include <cstdint>
#include <functional>
#include <vector>

#include "rdseries/innovations.hpp"
#include "rdseries/series_engine.hpp"

namespace rds::zeros {

using PathFn = std::function<double(double)>;

struct ZeroBracket {
  double s_left = 0.0;
  double s_right = 0.0;
  double f_left = 0.0;
  double f_right = 0.0;
  bool degenerate = false;  // exact zero at a grid point
  bool unresolved = false;  // an endpoint lies within 5x the noise bound
};

std::vector<double> log_grid(double s_lo, double s_hi, int n_grid);

/// Brackets every sign change of fn between adjacent log-spaced points.
std::vector<ZeroBracket> scan(const PathFn& fn, double s_lo, double s_hi, int n_grid);

/// Same, from precomputed values on log_grid(s_lo, s_hi, n_grid).
std::vector<ZeroBracket> brackets_from_values(const std::vector<double>& grid,
                                              const std::vector<double>& values);

/// Bisection to a bracket no wider than tol; returns its midpoint.
double refine(const PathFn& fn, const ZeroBracket& bracket, double tol, int max_iter);

/// X_{-1/2} truncated at a fixed cutoff, so it is continuous in s.
class FrozenSeries {
 public:
  FrozenSeries(const InnovationSpec& spec, const SeedContext& ctx, std::uint64_t cutoff);
  /// Cutoff planned at s_lo, which covers the whole window [s_lo, s_hi].
  static FrozenSeries for_window(const InnovationSpec& spec, const SeedContext& ctx,
                                 double s_lo, double rel_tol,
                                 std::uint64_t n_max = series::kDefaultNMax);

  double operator()(double s) const;
  std::vector<double> evaluate(const std::vector<double>& grid) const;
  /// sigma * (tail variance bound at s)^1/2.
  double noise_bound(double s) const;
  std::uint64_t cutoff() const { return cutoff_; }
  PathFn as_function() const;

 private:
  InnovationSpec spec_;
  SeedContext ctx_;
  std::uint64_t cutoff_;
};

/// Marks brackets whose endpoint magnitudes fall below 5 noise bounds.
void flag_unresolved(std::vector<ZeroBracket>& brackets, const FrozenSeries& path);

struct Window {
  double s_lo = 0.0;
  double s_hi = 0.0;
};

struct WindowStats {
  Window window;
  std::vector<std::size_t> counts;  // per seed
  std::vector<std::size_t> unresolved;
  double mean = 0.0;
  double sd = 0.0;
};

std::vector<WindowStats> zero_count_experiment(const InnovationSpec& spec,
                                               const std::vector<std::uint64_t>& seeds,
                                               const std::vector<Window>& windows,
                                               int n_grid, double rel_tol = 0.05,
                                               std::uint64_t n_max = series::kDefaultNMax,
                                               unsigned workers = 0);

namespace detail {
/// Test hook: `values(seed, grid)` replaces the series evaluation.
using Evaluator =
    std::function<std::vector<double>(std::uint64_t, const std::vector<double>&)>;
std::vector<WindowStats> zero_count_with(const Evaluator& values,
                                         const std::vector<std::uint64_t>& seeds,
                                         const std::vector<Window>& windows, int n_grid);
}  // namespace detail

}  // namespace rds::zeros

#endif  // RDSERIES_ZERO_FINDER_HPP_
