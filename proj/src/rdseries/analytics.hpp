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


// Deterministic quantities of the series: variance and covariance kernels
// with certified enclosures, normalizers, schedules, and the analytic
// inequalities behind the limit theorems.

#ifndef RDSERIES_ANALYTICS_HPP_
#define RDSERIES_ANALYTICS_HPP_

#include <cstdint>
#include <vector>

#include "rdseries/innovations.hpp"
#include "rdseries/types.hpp"

namespace rds::analytics {

inline constexpr std::uint64_t kDefaultDirectTerms = std::uint64_t{1} << 20;

Enclosure exp_integral_e1(double x);

/// Encloses sum_{k>=2} (log k)^(2 alpha) k^-(1+u) for u > 0.
/// Requires alpha >= -1/2 and a decreasing summand beyond direct_terms.
Enclosure kernel_sum(double alpha, Exponent u, std::uint64_t direct_terms,
                     unsigned workers = 0);

/// Encloses int_x^inf (log y)^(2 alpha) y^-(1+u) dy for x > 1.
Enclosure tail_integral(double alpha, Exponent u, double x);
/// Same integral with the lower limit given as log x > 0.
Enclosure tail_integral_log(double alpha, Exponent u, double log_x);

/// g(s) = sum_{k>=2} (log k)^-1 k^-(1+2s).
Enclosure g_enclosure(double s, std::uint64_t direct_terms = kDefaultDirectTerms);
Enclosure g_enclosure(Exponent s, std::uint64_t direct_terms = kDefaultDirectTerms);

/// sum_{k>=2} (log k)^(2 alpha) k^-(1 + e1 + e2).
Enclosure cov_kernel_enclosure(double alpha, double e1_exp, double e2_exp,
                               std::uint64_t direct_terms = kDefaultDirectTerms);
Enclosure cov_kernel_enclosure(double alpha, Exponent e1_exp, Exponent e2_exp,
                               std::uint64_t direct_terms = kDefaultDirectTerms);

enum class NormalizerKind { kF = 0, kFStar = 1, kNAlpha = 2, kFltBoundary = 3 };

/// f     = (2 sigma^2 log(1/s) logloglog(1/s))^-1/2,  s < e^-e
/// f*    = (2 sigma^2 g(s) logloglog(1/s))^-1/2,      s < e^-e
/// n_a   = (2^(2a) s^(1+2a) / (sigma^2 Gamma(1+2a) loglog(1/s)))^1/2, s < 1/e
/// flt   = (sigma^2 log(1/s))^-1/2,                   s < 1
double normalizer(NormalizerKind kind, Exponent s, double alpha, double sigma);
double normalizer(NormalizerKind kind, double s, double alpha, double sigma);

/// s_n = exp(-exp(n^(1-gamma))), gamma in [0, (sqrt 5 - 1)/2).
Exponent chaining_schedule_s(double gamma, int n);
/// exp(-exp(n^(1+gamma))), gamma >= 0.
Exponent sparse_schedule_s(double gamma, int n);
/// v_n = 1/log(1/s_n) = exp(-n^(1-gamma)).
double v_n(double gamma, int n);
/// M(s) = floor(log(1/s) / loglog(1/s)), s < e^-e. Returned as a double
/// because it exceeds 2^64 at deep s.
double m_of_s(Exponent s);

/// Bounds of the central fragment: N_1 = floor(log(1/s)^1/2) and
/// log N_2 = exp(L - L^1/2), L = log(1/s).
double head_cutoff(Exponent s);
double log_tail_cutoff(Exponent s);
/// log log N_2 = L - L^1/2, finite where log N_2 overflows.
double loglog_tail_cutoff(Exponent s);

struct ChainingConfig {
  double gamma = 0.25;
  int n = 2;
  int j = 0;
  std::uint64_t m = 1;
  double s_big = 10.0;  // boundary mode only
};

enum class ChainingMode { kSequence = 0, kBoundaryFlt = 1 };

struct ChainingResult {
  Enclosure a_value;
  double bound = 0.0;
  bool satisfied = false;
  std::uint64_t start = 0;
};

/// Sum over k >= start of (k log k)^-1 (k^-p - k^-q)^2 for adjacent dyadic
/// exponents p, q, compared with its chaining bound.
ChainingResult chaining_bound_check(const ChainingConfig& cfg, ChainingMode mode,
                                    std::uint64_t direct_terms = 1 << 16);

/// I(2a) + I(2b) - 2 I(a + b), a, b in [0, 1].
double i_concave_gap(double a, double b, double quad_tol);

/// (1/S) sum_k (log k)^-1 k^-(1+2e) E[eta^2; |eta| > eps S^1/2 (log k)^1/2
/// k^(1/2+e)] with e = exp(-t S), summed until the remainder bound < tol.
double lindeberg_term(double s_big, double t, double eps,
                      const InnovationSpec& spec, double tol);

/// True when x -> x^-1 e^-x (e^-ax - e^-bx)^2 is nonincreasing on the grid.
bool decreasing_kernel_check(double a, double b, const std::vector<double>& grid);

/// sigma^2 Gamma(1+2 alpha) / (t1 + t2)^(1+2 alpha).
double limit_cov_alpha(double alpha, double t1, double t2, double sigma);

}  // namespace rds::analytics

#endif  // RDSERIES_ANALYTICS_HPP_
