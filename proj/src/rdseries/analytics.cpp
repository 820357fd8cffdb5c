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


#include "rdseries/analytics.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "rdseries/parallel.hpp"
#include "rdseries/special.hpp"

namespace rds::analytics {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double log_add(double a, double b) {
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

void require_alpha(double alpha) {
  if (!(alpha >= -0.5) || !std::isfinite(alpha)) {
    throw DomainError("alpha must be >= -1/2, got " + std::to_string(alpha));
  }
}

}  // namespace

Enclosure exp_integral_e1(double x) { return special::e1(x); }

Enclosure tail_integral(double alpha, Exponent u, double x) {
  if (!(x > 1.0)) throw DomainError("tail_integral requires x > 1");
  return tail_integral_log(alpha, u, std::log(x));
}

Enclosure tail_integral_log(double alpha, Exponent u, double log_x) {
  require_alpha(alpha);
  if (!(log_x > 0.0)) throw DomainError("tail_integral requires log x > 0");
  // y = u log t turns the integral into u^-(1+2 alpha) Gamma(1+2 alpha, u log x).
  const double log_z = u.log() + std::log(log_x);
  if (alpha == -0.5) return special::e1_from_log(log_z);
  const double a = 1.0 + 2.0 * alpha;
  const Enclosure g = special::upper_gamma(a, std::exp(log_z));
  const double pref = std::exp(-a * u.log());
  return g.scaled(pref).widened(4.0 * kEps * pref * g.hi);
}

Enclosure kernel_sum(double alpha, Exponent u, std::uint64_t direct_terms,
                     unsigned workers) {
  require_alpha(alpha);
  if (direct_terms < 2) throw DomainError("direct_terms must be >= 2");
  const double uval = u.value();
  const double d = static_cast<double>(direct_terms);
  if (std::log(d) < 2.0 * alpha / (1.0 + uval)) {
    throw DomainError(
        "direct_terms too small: summand still increasing at the cutoff");
  }
  const bool boundary = alpha == -0.5;
  const double two_alpha = 2.0 * alpha;
  const DirectSum direct = blocked_sum(
      2, direct_terms,
      [&](std::uint64_t k) {
        const double kd = static_cast<double>(k);
        const double lk = std::log(kd);
        const double w = boundary ? 1.0 / lk : std::pow(lk, two_alpha);
        return w * std::exp(-uval * lk) / kd;
      },
      workers);
  const Enclosure upper = tail_integral(alpha, u, d);
  const Enclosure lower = tail_integral(alpha, u, d + 1.0);
  const double lo = direct.value + lower.lo;
  const double hi = direct.value + upper.hi;
  const double margin = 32.0 * kEps * direct.abs_sum + 4.0 * kEps * std::fabs(hi);
  return {lo - margin, hi + margin};
}

Enclosure g_enclosure(double s, std::uint64_t direct_terms) {
  return g_enclosure(Exponent::of(s), direct_terms);
}

Enclosure g_enclosure(Exponent s, std::uint64_t direct_terms) {
  return kernel_sum(-0.5, s.times(2.0), direct_terms);
}

Enclosure cov_kernel_enclosure(double alpha, double e1_exp, double e2_exp,
                               std::uint64_t direct_terms) {
  if (!(e1_exp >= 0.0) || !(e2_exp >= 0.0)) {
    throw DomainError("covariance exponents must be nonnegative");
  }
  const double total = e1_exp + e2_exp;
  if (!(total > 0.0)) {
    throw DomainError("covariance diverges: exponents sum to 0");
  }
  return kernel_sum(alpha, Exponent::of(total), direct_terms);
}

Enclosure cov_kernel_enclosure(double alpha, Exponent e1_exp, Exponent e2_exp,
                               std::uint64_t direct_terms) {
  return kernel_sum(alpha, Exponent::sum(e1_exp, e2_exp), direct_terms);
}

double normalizer(NormalizerKind kind, double s, double alpha, double sigma) {
  return normalizer(kind, Exponent::of(s), alpha, sigma);
}

double normalizer(NormalizerKind kind, Exponent s, double alpha, double sigma) {
  if (!(sigma > 0.0)) throw DomainError("sigma must be positive");
  const double big_l = s.log_inv();
  const double var = sigma * sigma;
  switch (kind) {
    case NormalizerKind::kF:
    case NormalizerKind::kFStar: {
      if (!(big_l > std::numbers::e)) {
        throw DomainError("f and f* require s < exp(-e)");
      }
      const double lll = std::log(std::log(big_l));
      const double scale =
          kind == NormalizerKind::kF ? big_l : g_enclosure(s).mid();
      return 1.0 / std::sqrt(2.0 * var * scale * lll);
    }
    case NormalizerKind::kNAlpha: {
      if (!(alpha > -0.5)) throw DomainError("n_alpha requires alpha > -1/2");
      if (!(big_l > 1.0)) throw DomainError("n_alpha requires s < exp(-1)");
      const double a = 1.0 + 2.0 * alpha;
      const double log_v = 2.0 * alpha * std::numbers::ln2 + a * s.log() -
                           std::log(var) - std::lgamma(a) -
                           std::log(std::log(big_l));
      return std::exp(0.5 * log_v);
    }
    case NormalizerKind::kFltBoundary: {
      if (!(big_l > 0.0)) throw DomainError("flt_boundary requires s < 1");
      return 1.0 / std::sqrt(var * big_l);
    }
  }
  throw InvalidArgument("unknown normalizer kind");
}

Exponent chaining_schedule_s(double gamma, int n) {
  if (!(gamma >= 0.0 && gamma < (std::sqrt(5.0) - 1.0) / 2.0)) {
    throw DomainError("chaining schedule requires gamma in [0, (sqrt5-1)/2)");
  }
  if (n < 1) throw DomainError("schedule index must be >= 1");
  return Exponent::from_loglog_inv(std::pow(static_cast<double>(n), 1.0 - gamma));
}

Exponent sparse_schedule_s(double gamma, int n) {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
    throw DomainError("sparse schedule requires gamma >= 0");
  }
  if (n < 1) throw DomainError("schedule index must be >= 1");
  return Exponent::from_loglog_inv(std::pow(static_cast<double>(n), 1.0 + gamma));
}

double v_n(double gamma, int n) {
  return 1.0 / chaining_schedule_s(gamma, n).log_inv();
}

double m_of_s(Exponent s) {
  const double big_l = s.log_inv();
  if (!(big_l > std::numbers::e)) throw DomainError("M(s) requires s < exp(-e)");
  return std::floor(big_l / std::log(big_l));
}

double head_cutoff(Exponent s) {
  const double big_l = s.log_inv();
  if (!(big_l > std::numbers::e)) throw DomainError("N_1 requires s < exp(-e)");
  return std::floor(std::sqrt(big_l));
}

double log_tail_cutoff(Exponent s) {
  const double big_l = s.log_inv();
  if (!(big_l > std::numbers::e)) throw DomainError("N_2 requires s < exp(-e)");
  return std::exp(loglog_tail_cutoff(s));
}

double loglog_tail_cutoff(Exponent s) {
  const double big_l = s.log_inv();
  if (!(big_l > std::numbers::e)) throw DomainError("N_2 requires s < exp(-e)");
  return big_l - std::sqrt(big_l);
}

ChainingResult chaining_bound_check(const ChainingConfig& cfg, ChainingMode mode,
                                    std::uint64_t direct_terms) {
  if (cfg.j < 0 || cfg.j > 62) throw DomainError("chaining level j out of range");
  if (cfg.m > (std::uint64_t{1} << cfg.j)) {
    throw DomainError("chaining index m must be <= 2^j");
  }
  ChainingResult out;
  double log_hi = 0.0;  // log of the larger exponent
  double delta = 0.0;   // log(larger / smaller)
  if (mode == ChainingMode::kSequence) {
    if (!(cfg.gamma >= 0.0 && cfg.gamma < 0.5)) {
      throw DomainError("chaining gamma must lie in [0, 1/2)");
    }
    if (cfg.n < 2) throw DomainError("chaining n must be >= 2");
    const double vn = v_n(cfg.gamma, cfg.n);
    const double vn1 = v_n(cfg.gamma, cfg.n + 1);
    const double step = std::ldexp(vn - vn1, -cfg.j);
    out.bound = step / (vn1 * vn1);
    out.start = static_cast<std::uint64_t>(m_of_s(chaining_schedule_s(cfg.gamma, cfg.n + 1))) + 1;
    if (cfg.m == 0) {
      out.satisfied = true;
      return out;
    }
    const double t_m = vn1 + static_cast<double>(cfg.m) * step;
    const double t_prev = vn1 + static_cast<double>(cfg.m - 1) * step;
    log_hi = -1.0 / t_m;
    delta = step / (t_m * t_prev);
  } else {
    if (!(cfg.s_big >= 4.0) || !std::isfinite(cfg.s_big)) {
      throw DomainError("boundary chaining requires s_big >= 4");
    }
    out.bound = std::ldexp(cfg.s_big, -cfg.j);
    out.start = static_cast<std::uint64_t>(std::floor(std::sqrt(cfg.s_big))) + 1;
    if (cfg.m == 0) {
      out.satisfied = true;
      return out;
    }
    const double t_prev = std::ldexp(static_cast<double>(cfg.m - 1), -cfg.j);
    log_hi = -t_prev * cfg.s_big;
    delta = std::ldexp(cfg.s_big, -cfg.j);
  }

  const double log_lo = log_hi - delta;
  const double log_gap = log_hi + std::log(-std::expm1(-delta));
  const std::uint64_t last = std::max(direct_terms, out.start - 1);
  const DirectSum direct = blocked_sum(out.start, last, [&](std::uint64_t k) {
    const double kd = static_cast<double>(k);
    const double lk = std::log(kd);
    const double llk = std::log(lk);
    const double diff = std::exp(-std::exp(log_lo + llk)) *
                        -std::expm1(-std::exp(log_gap + llk));
    return diff * diff / (kd * lk);
  });

  // int_X^inf y^-1 (e^-ay - e^-by)^2 dy in y = log x.
  auto tail = [&](double x) {
    const double log_y = std::log(std::log(x));
    const Enclosure e_lo = special::e1_from_log(std::numbers::ln2 + log_lo + log_y);
    const Enclosure e_hi = special::e1_from_log(std::numbers::ln2 + log_hi + log_y);
    const Enclosure e_mid = special::e1_from_log(log_add(log_lo, log_hi) + log_y);
    Enclosure r = e_lo + e_hi - e_mid.scaled(2.0);
    r.lo = std::max(r.lo, 0.0);
    return r;
  };
  const double xd = static_cast<double>(last);
  const Enclosure upper = tail(xd);
  const Enclosure lower = tail(xd + 1.0);
  const double margin = 64.0 * kEps * direct.abs_sum;
  out.a_value = {std::max(0.0, direct.value + lower.lo - margin),
                 direct.value + upper.hi + margin};
  out.satisfied = out.a_value.hi <= out.bound;
  return out;
}

double i_concave_gap(double a, double b, double quad_tol) {
  if (!(a >= 0.0 && a <= 1.0 && b >= 0.0 && b <= 1.0)) {
    throw DomainError("i_concave_gap requires a, b in [0, 1]");
  }
  return special::i_function(2.0 * a, quad_tol) +
         special::i_function(2.0 * b, quad_tol) -
         2.0 * special::i_function(a + b, quad_tol);
}

double lindeberg_term(double s_big, double t, double eps,
                      const InnovationSpec& spec, double tol) {
  if (!(s_big > 0.0) || !(t > 0.0) || !(eps > 0.0) || !(tol > 0.0)) {
    throw DomainError("lindeberg_term requires positive s_big, t, eps, tol");
  }
  const double log_e = -t * s_big;
  const double e = std::exp(log_e);
  const double root_s = std::sqrt(s_big);
  auto threshold = [&](double lk) {
    return eps * root_s * std::sqrt(lk) * std::exp((0.5 + e) * lk);
  };
  constexpr std::uint64_t kChunk = 256;
  constexpr std::uint64_t kMaxK = std::uint64_t{1} << 36;
  CompensatedSum acc;
  for (std::uint64_t k0 = 2; k0 < kMaxK; k0 += kChunk) {
    const std::uint64_t k1 = k0 + kChunk - 1;
    for (std::uint64_t k = k0; k <= k1; ++k) {
      const double lk = std::log(static_cast<double>(k));
      const double m2 = innovations::truncated_second_moment(spec, threshold(lk));
      if (m2 == 0.0) continue;
      acc.add(std::exp(-(1.0 + 2.0 * e) * lk) / lk * m2);
    }
    // Thresholds increase in k, so later truncated moments are no larger.
    const double next_lk = std::log(static_cast<double>(k1 + 1));
    const double m2_next =
        innovations::truncated_second_moment(spec, threshold(next_lk));
    if (m2_next == 0.0) break;
    const double tail_sum =
        special::e1_from_log(std::numbers::ln2 + log_e + std::log(std::log(static_cast<double>(k1))))
            .hi;
    if (m2_next * tail_sum / s_big < tol) break;
  }
  return acc.value() / s_big;
}

bool decreasing_kernel_check(double a, double b, const std::vector<double>& grid) {
  if (!(a > 0.0) || !(b > 0.0) || a == b) {
    throw DomainError("decreasing_kernel_check requires distinct a, b > 0");
  }
  const double lo = std::min(a, b);
  const double gap = std::fabs(a - b);
  auto h = [&](double x) {
    const double d = std::expm1(-gap * x);
    return std::exp(-(1.0 + 2.0 * lo) * x) / x * d * d;
  };
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 1.0)) throw DomainError("kernel grid must lie in (1, inf)");
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw DomainError("kernel grid must be ascending");
    }
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (h(grid[i]) > h(grid[i - 1])) return false;
  }
  return true;
}

double limit_cov_alpha(double alpha, double t1, double t2, double sigma) {
  if (!(alpha > -0.5)) throw DomainError("limit_cov_alpha requires alpha > -1/2");
  if (!(t1 > 0.0) || !(t2 > 0.0)) throw DomainError("times must be positive");
  const double a = 1.0 + 2.0 * alpha;
  return sigma * sigma * std::exp(std::lgamma(a) - a * std::log(t1 + t2));
}

}  // namespace rds::analytics
