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


#include "rdseries/zero_finder.hpp"

#include <cmath>
#include <sstream>

#include "rdseries/analytics.hpp"
#include "rdseries/errors.hpp"
#include "rdseries/parallel.hpp"

namespace rds::zeros {

std::vector<double> log_grid(double s_lo, double s_hi, int n_grid) {
  if (!(s_lo > 0.0) || !(s_hi > s_lo)) throw DomainError("scan requires 0 < s_lo < s_hi");
  if (n_grid < 2) throw DomainError("n_grid must be >= 2");
  std::vector<double> g(static_cast<std::size_t>(n_grid));
  const double a = std::log(s_lo);
  const double b = std::log(s_hi);
  for (int i = 0; i < n_grid; ++i) g[i] = std::exp(a + (b - a) * i / (n_grid - 1));
  g.front() = s_lo;
  g.back() = s_hi;
  return g;
}

std::vector<ZeroBracket> brackets_from_values(const std::vector<double>& grid,
                                              const std::vector<double>& values) {
  if (grid.size() != values.size()) throw InvalidArgument("grid/value size mismatch");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      std::ostringstream msg;
      msg << "non-finite path value at s=" << grid[i];
      throw EvaluationError(msg.str());
    }
  }
  std::vector<ZeroBracket> out;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (values[i] == 0.0) {
      out.push_back({grid[i], grid[i], 0.0, 0.0, true, false});
      continue;
    }
    if (i + 1 < grid.size() && values[i] * values[i + 1] < 0.0) {
      out.push_back({grid[i], grid[i + 1], values[i], values[i + 1], false, false});
    }
  }
  return out;
}

std::vector<ZeroBracket> scan(const PathFn& fn, double s_lo, double s_hi, int n_grid) {
  const std::vector<double> grid = log_grid(s_lo, s_hi, n_grid);
  std::vector<double> values;
  values.reserve(grid.size());
  for (double s : grid) values.push_back(fn(s));
  return brackets_from_values(grid, values);
}

double refine(const PathFn& fn, const ZeroBracket& bracket, double tol, int max_iter) {
  if (bracket.degenerate) return bracket.s_left;
  if (!(bracket.s_left < bracket.s_right) || !(bracket.f_left * bracket.f_right < 0.0)) {
    throw InvalidArgument("refine needs a sign-changing bracket");
  }
  if (!(tol > 0.0)) throw DomainError("tol must be positive");
  double l = bracket.s_left;
  double r = bracket.s_right;
  double fl = bracket.f_left;
  for (int it = 0; r - l > tol; ++it) {
    if (it >= max_iter) {
      throw ConvergenceError("bisection exceeded max_iter", l, r);
    }
    const double mid = 0.5 * (l + r);
    const double fm = fn(mid);
    if (!std::isfinite(fm)) throw EvaluationError("non-finite path value during refine");
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (fl < 0.0)) {
      l = mid;
      fl = fm;
    } else {
      r = mid;
    }
  }
  return 0.5 * (l + r);
}

FrozenSeries::FrozenSeries(const InnovationSpec& spec, const SeedContext& ctx,
                           std::uint64_t cutoff)
    : spec_(spec), ctx_(ctx), cutoff_(cutoff) {
  if (cutoff < 2) throw DomainError("cutoff must be >= 2");
}

FrozenSeries FrozenSeries::for_window(const InnovationSpec& spec, const SeedContext& ctx,
                                      double s_lo, double rel_tol, std::uint64_t n_max) {
  const series::TruncationPlan plan = series::plan_truncation(
      -0.5, s_lo, rel_tol, series::default_variance_scale(-0.5, s_lo), n_max);
  return FrozenSeries(spec, ctx, plan.cutoff_n);
}

double FrozenSeries::operator()(double s) const {
  return series::evaluate_fixed(-0.5, {s}, cutoff_, spec_, ctx_).front();
}

std::vector<double> FrozenSeries::evaluate(const std::vector<double>& grid) const {
  return series::evaluate_fixed(-0.5, grid, cutoff_, spec_, ctx_);
}

double FrozenSeries::noise_bound(double s) const {
  const double var = analytics::tail_integral_log(-0.5, Exponent::of(2.0 * s),
                                                  std::log(static_cast<double>(cutoff_)))
                         .hi;
  return spec_.sigma() * std::sqrt(var);
}

PathFn FrozenSeries::as_function() const {
  return [self = *this](double s) { return self(s); };
}

void flag_unresolved(std::vector<ZeroBracket>& brackets, const FrozenSeries& path) {
  for (auto& b : brackets) {
    if (b.degenerate) continue;
    b.unresolved = std::fabs(b.f_left) < 5.0 * path.noise_bound(b.s_left) ||
                   std::fabs(b.f_right) < 5.0 * path.noise_bound(b.s_right);
  }
}

namespace {

void summarize(WindowStats& w) {
  const double n = static_cast<double>(w.counts.size());
  if (n == 0) return;
  double m = 0.0;
  for (auto c : w.counts) m += static_cast<double>(c);
  m /= n;
  double ss = 0.0;
  for (auto c : w.counts) ss += (c - m) * (c - m);
  w.mean = m;
  w.sd = n > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
}

}  // namespace

std::vector<WindowStats> zero_count_experiment(const InnovationSpec& spec,
                                               const std::vector<std::uint64_t>& seeds,
                                               const std::vector<Window>& windows,
                                               int n_grid, double rel_tol,
                                               std::uint64_t n_max, unsigned workers) {
  std::vector<WindowStats> out;
  for (const Window& w : windows) {
    const std::vector<double> grid = log_grid(w.s_lo, w.s_hi, n_grid);
    WindowStats ws;
    ws.window = w;
    ws.counts.assign(seeds.size(), 0);
    ws.unresolved.assign(seeds.size(), 0);
    parallel_for(seeds.size(), workers, [&](std::size_t i) {
      const FrozenSeries path =
          FrozenSeries::for_window(spec, SeedContext{seeds[i], 0}, w.s_lo, rel_tol, n_max);
      std::vector<ZeroBracket> br = brackets_from_values(grid, path.evaluate(grid));
      flag_unresolved(br, path);
      ws.counts[i] = br.size();
      for (const auto& b : br) ws.unresolved[i] += b.unresolved ? 1 : 0;
    });
    summarize(ws);
    out.push_back(std::move(ws));
  }
  return out;
}

std::vector<WindowStats> detail::zero_count_with(const Evaluator& values,
                                                 const std::vector<std::uint64_t>& seeds,
                                                 const std::vector<Window>& windows,
                                                 int n_grid) {
  std::vector<WindowStats> out;
  for (const Window& w : windows) {
    const std::vector<double> grid = log_grid(w.s_lo, w.s_hi, n_grid);
    WindowStats ws;
    ws.window = w;
    for (std::uint64_t seed : seeds) {
      ws.counts.push_back(brackets_from_values(grid, values(seed, grid)).size());
      ws.unresolved.push_back(0);
    }
    summarize(ws);
    out.push_back(std::move(ws));
  }
  return out;
}

}  // namespace rds::zeros
