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


#include "rdseries/lil_explorer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

#include "rdseries/errors.hpp"
#include "rdseries/gaussian_exact.hpp"
#include "rdseries/parallel.hpp"
#include "rdseries/special.hpp"

namespace rds::lil {
namespace {

void validate_points(const std::vector<Exponent>& s_points) {
  if (s_points.empty()) throw DomainError("s_points must be nonempty");
  for (std::size_t i = 0; i < s_points.size(); ++i) {
    if (!(s_points[i].log_inv() > std::numbers::e)) {
      throw DomainError("trajectory points must satisfy s < exp(-e)");
    }
    if (i > 0 && !(s_points[i] < s_points[i - 1])) {
      throw InvalidArgument("trajectory points must be strictly descending in s");
    }
  }
}

struct RoutePlan {
  Route route = Route::kSummation;
  std::optional<series::PathPlan> path;
  std::optional<gaussian_exact::FactorizedCov> cov;
};

RoutePlan decide_route(const std::vector<Exponent>& s_points,
                       const InnovationSpec& spec, const EnginePolicy& policy) {
  RoutePlan rp;
  std::optional<FeasibilityError> failure;
  if (policy.route != Route::kGaussianExact) {
    std::vector<double> grid;
    for (const auto& e : s_points) grid.push_back(e.value());
    try {
      if (std::any_of(grid.begin(), grid.end(), [](double s) { return !(s > 0.0); })) {
        throw FeasibilityError("exponent underflows a double; summation impossible",
                               std::numeric_limits<double>::infinity(),
                               std::numeric_limits<double>::quiet_NaN());
      }
      rp.path = series::plan_path(-0.5, grid, policy.rel_tol, policy.n_max);
      rp.route = Route::kSummation;
      return rp;
    } catch (const FeasibilityError& e) {
      if (policy.route == Route::kSummation) throw;
      failure = e;
    }
  }
  if (!spec.is_gaussian()) {
    throw FeasibilityError(
        std::string("non-gaussian innovations need summation: ") +
            (failure ? failure->what() : "summation route disabled"),
        failure ? failure->min_log_n() : std::numeric_limits<double>::quiet_NaN(),
        std::numeric_limits<double>::quiet_NaN());
  }
  rp.route = Route::kGaussianExact;
  rp.cov = gaussian_exact::build_cov(gaussian_exact::CovGrid::lil(s_points),
                                     spec.sigma(), policy.direct_terms);
  return rp;
}

Trajectory finish(const std::vector<Exponent>& s_points, std::vector<double> raw,
                  const std::vector<double>& norms, Route route) {
  Trajectory tr;
  tr.route_used = route;
  tr.raw = std::move(raw);
  for (std::size_t i = 0; i < s_points.size(); ++i) {
    tr.log_s.push_back(s_points[i].log());
    const double v = norms[i] * tr.raw[i];
    tr.normalized.push_back(v);
    tr.running_sup.push_back(i == 0 ? v : std::max(tr.running_sup.back(), v));
    tr.running_inf.push_back(i == 0 ? v : std::min(tr.running_inf.back(), v));
  }
  return tr;
}

std::vector<double> f_norms(const std::vector<Exponent>& s_points, double sigma) {
  std::vector<double> out;
  for (const auto& e : s_points) {
    out.push_back(analytics::normalizer(analytics::NormalizerKind::kF, e, -0.5, sigma));
  }
  return out;
}

std::vector<double> raw_values(const RoutePlan& rp, const InnovationSpec& spec,
                               const SeedContext& ctx, unsigned workers) {
  if (rp.route == Route::kSummation) {
    return series::evaluate_planned(*rp.path, spec, ctx, workers);
  }
  return gaussian_exact::sample_one(*rp.cov, ctx);
}

// sum_{k=a}^{b} (log k)^-1/2 k^-(1/2+s) eta_k
double fragment_sum(Exponent s, std::uint64_t a, std::uint64_t b,
                    const InnovationSpec& spec, const SeedContext& ctx) {
  if (b < a) return 0.0;
  const double sv = s.value();
  return blocked_sum(a, b, [&](std::uint64_t k) {
           const double lk = std::log(static_cast<double>(k));
           return std::exp(-(0.5 + sv) * lk) / std::sqrt(lk) *
                  innovations::draw(spec, ctx, k);
         }).value;
}

}  // namespace

Trajectory normalized_trajectory(const std::vector<Exponent>& s_points,
                                 const InnovationSpec& spec, const SeedContext& ctx,
                                 const EnginePolicy& policy) {
  validate_points(s_points);
  const RoutePlan rp = decide_route(s_points, spec, policy);
  return finish(s_points, raw_values(rp, spec, ctx, 0), f_norms(s_points, spec.sigma()),
                rp.route);
}

std::vector<Trajectory> trajectory_ensemble(const std::vector<Exponent>& s_points,
                                            const InnovationSpec& spec,
                                            const SeedContext& ctx, std::size_t n_rep,
                                            const EnginePolicy& policy,
                                            unsigned workers) {
  validate_points(s_points);
  if (n_rep < 1) throw DomainError("n_rep must be >= 1");
  const RoutePlan rp = decide_route(s_points, spec, policy);
  const std::vector<double> norms = f_norms(s_points, spec.sigma());
  std::vector<Trajectory> out(n_rep);
  parallel_for(n_rep, workers, [&](std::size_t r) {
    out[r] = finish(s_points, raw_values(rp, spec, ctx.replicate(r), workers), norms,
                    rp.route);
  });
  return out;
}

double normalized_sd(Exponent s, std::uint64_t direct_terms) {
  const double big_l = s.log_inv();
  if (!(big_l > std::numbers::e)) throw DomainError("normalized_sd requires s < exp(-e)");
  const double lll = std::log(std::log(big_l));
  const double g = analytics::g_enclosure(s, direct_terms).mid();
  return std::sqrt(g / big_l) / std::sqrt(2.0 * lll);
}

Coverage limit_set_coverage(const std::vector<Trajectory>& paths, int bins) {
  if (paths.size() < 100) throw InsufficientSample("coverage needs >= 100 trajectories");
  if (bins < 1) throw DomainError("bins must be >= 1");
  Coverage c;
  c.counts.assign(static_cast<std::size_t>(bins), 0);
  const double width = (c.hi - c.lo) / bins;
  std::size_t inside = 0;
  for (const auto& tr : paths) {
    for (double v : tr.normalized) {
      ++c.total;
      c.max_abs = std::max(c.max_abs, std::fabs(v));
      if (v >= -1.0 && v <= 1.0) ++inside;
      if (v > 1.0) ++c.above_one;
      if (v < -1.0) ++c.below_minus_one;
      if (v < c.lo || v > c.hi) {
        ++c.out_of_range;
        continue;
      }
      auto b = static_cast<std::size_t>((v - c.lo) / width);
      c.counts[std::min(b, c.counts.size() - 1)]++;
    }
  }
  c.fraction_inside = c.total ? static_cast<double>(inside) / c.total : 0.0;
  return c;
}

double event_threshold(Exponent s, double rho, std::uint64_t k, double g_mid) {
  const double big_l = s.log_inv();
  if (!(big_l > std::numbers::e)) throw DomainError("events require s < exp(-e)");
  const double ll = std::log(big_l);
  const double lll = std::log(ll);
  const double lk = std::log(static_cast<double>(k));
  const double sv = s.value();
  return rho / ll * std::sqrt(std::exp((1.0 + 2.0 * sv) * lk) * lk * g_mid / lll);
}

TruncationEvent truncation_event(Exponent s, double rho, std::uint64_t k,
                                 const InnovationSpec& spec, const SeedContext& ctx) {
  TruncationEvent ev;
  ev.k = k;
  ev.log_s = s.log();
  ev.rho = rho;
  ev.threshold = event_threshold(s, rho, k, analytics::g_enclosure(s).mid());
  ev.fired = std::fabs(innovations::draw(spec, ctx, k)) > ev.threshold;
  return ev;
}

TruncationDiagnostics truncation_diagnostics(Exponent s, double rho,
                                             const InnovationSpec& spec,
                                             const SeedContext& ctx,
                                             std::uint64_t k_max) {
  if (!(rho > 0.0)) throw DomainError("rho must be positive");
  const double m = analytics::m_of_s(s);
  if (!(static_cast<double>(k_max) >= m + 1.0)) {
    throw DomainError("k_max must be >= M(s) + 1");
  }
  TruncationDiagnostics d;
  d.m = static_cast<std::uint64_t>(m);
  const double g_mid = analytics::g_enclosure(s).mid();
  const double sv = s.value();
  CompensatedSum path_sum;
  CompensatedSum expect_sum;
  for (std::uint64_t k = std::max<std::uint64_t>(d.m + 1, 2); k <= k_max; ++k) {
    const double lk = std::log(static_cast<double>(k));
    const double c = std::exp(-(0.5 + sv) * lk) / std::sqrt(lk);
    const double thr = event_threshold(s, rho, k, g_mid);
    const double eta = innovations::draw(spec, ctx, k);
    if (std::fabs(eta) > thr) {
      ++d.fired_count;
      path_sum.add(c * std::fabs(eta));
    }
    expect_sum.add(c * innovations::truncated_abs_moment(spec, thr));
  }
  d.event_sum = path_sum.value();
  d.event_expect_sum = expect_sum.value();

  // For k > k_max: c(k) E[|eta|; |eta| > thr_k] <= c(k) E[eta^2; |eta| > thr_k] / thr_k,
  // which is (loglog/rho)(lll/g)^1/2 (log k)^-1 k^-(1+2s) E[eta^2; |eta| > thr_{k_max+1}].
  const double big_l = s.log_inv();
  const double ll = std::log(big_l);
  const double lll = std::log(ll);
  const double m2 =
      innovations::truncated_second_moment(spec, event_threshold(s, rho, k_max + 1, g_mid));
  if (m2 > 0.0 && k_max >= 2) {
    const double tail = special::e1_from_log(std::numbers::ln2 + s.log() +
                                             std::log(std::log(static_cast<double>(k_max))))
                            .hi;
    d.expect_remainder_bound = ll / rho * std::sqrt(lll / g_mid) * m2 * tail;
  }
  return d;
}

std::vector<double> fragment_decay(FragmentKind kind, const std::vector<Exponent>& s_list,
                                   const InnovationSpec& spec, const SeedContext& ctx,
                                   const EnginePolicy& policy) {
  std::vector<double> out;
  for (const Exponent& s : s_list) {
    const double f = analytics::normalizer(analytics::NormalizerKind::kF, s, -0.5, spec.sigma());
    switch (kind) {
      case FragmentKind::kHead:
      case FragmentKind::kSparseHead: {
        const double top = kind == FragmentKind::kHead ? analytics::m_of_s(s)
                                                                : analytics::head_cutoff(s);
        if (top > static_cast<double>(series::kMaxTerms)) {
          throw ResourceError("initial fragment longer than 2^53 terms");
        }
        const auto n = static_cast<std::uint64_t>(top);
        out.push_back(n < 2 ? 0.0 : f * std::fabs(fragment_sum(s, 2, n, spec, ctx)));
        break;
      }
      case FragmentKind::kTail: {
        const double log_n2 = analytics::log_tail_cutoff(s);
        if (spec.is_gaussian()) {
          // sum_{k > N_2} (log k)^-1 k^-(1+2s) <= E1(2 s log N_2)
          const double var = special::e1_from_log(std::numbers::ln2 + s.log() +
                                                  analytics::loglog_tail_cutoff(s))
                                 .hi;
          out.push_back(f * spec.sigma() * std::sqrt(var));
          break;
        }
        const double sv = s.value();
        if (!(sv > 0.0)) {
          throw FeasibilityError("tail fragment at an exponent below double range",
                                 log_n2, std::numeric_limits<double>::quiet_NaN());
        }
        const series::TruncationPlan plan =
            series::plan_truncation(-0.5, sv, policy.rel_tol,
                                    series::default_variance_scale(-0.5, sv), policy.n_max);
        if (log_n2 >= std::log(static_cast<double>(plan.cutoff_n))) {
          std::ostringstream msg;
          msg << "tail fragment starts beyond the feasible cutoff (log N_2 = " << log_n2
              << ")";
          throw FeasibilityError(msg.str(), log_n2, std::numeric_limits<double>::quiet_NaN());
        }
        const auto n2 = static_cast<std::uint64_t>(std::floor(std::exp(log_n2)));
        out.push_back(f * std::fabs(fragment_sum(s, n2 + 1, plan.cutoff_n, spec, ctx)));
        break;
      }
    }
  }
  return out;
}

}  // namespace rds::lil
