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


// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <iostream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rdseries/analytics.hpp"
#include "rdseries/errors.hpp"
#include "rdseries/flt_harness.hpp"
#include "rdseries/gaussian_exact.hpp"
#include "rdseries/lil_explorer.hpp"
#include "rdseries/parallel.hpp"
#include "rdseries/series_engine.hpp"
#include "rdseries/stats.hpp"
#include "rdseries/zero_finder.hpp"

namespace {

using namespace rds;

struct Outcome {
  bool passed = false;
  std::string detail;
};

class Report {
 public:
  Report& operator<<(const auto& x) {
    out_ << x;
    return *this;
  }
  Outcome done(bool ok) const { return {ok, out_.str()}; }

 private:
  std::ostringstream out_;
};

const std::vector<double> kFltGrid{0.25, 0.5, 0.75, 1.0};

Outcome variance_asymptotics() {
  Report r;
  double prev = 0.0;
  bool ok = true;
  for (double s : {1e-2, 1e-4, 1e-6, 1e-8}) {
    const Enclosure g = analytics::g_enclosure(s);
    const double ratio = g.mid() / std::log(1.0 / s);
    ok = ok && ratio > prev && g.width() < 1e-5;
    r << "s=" << s << " ratio=" << ratio << " width=" << g.width() << "; ";
    prev = ratio;
  }
  ok = ok && prev > 0.9;
  return r.done(ok);
}

Outcome covariance_asymptote() {
  const auto fc = gaussian_exact::build_cov(gaussian_exact::CovGrid::flt(100.0, kFltGrid), 1.0);
  double worst = 0.0;
  for (std::size_t i = 0; i < kFltGrid.size(); ++i) {
    for (std::size_t j = 0; j < kFltGrid.size(); ++j) {
      const double m = std::min(kFltGrid[i], kFltGrid[j]);
      worst = std::max(worst, std::fabs(fc.matrix(i, j) - m) / (0.1 * m + 0.02));
    }
  }
  Report r;
  r << "max deviation / allowance = " << worst;
  return r.done(worst <= 1.0);
}

std::vector<double> flatten(const Eigen::MatrixXd& m) {
  std::vector<double> out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out.push_back(m(i, j));
  }
  return out;
}

Outcome flt_exact_route() {
  const auto fc = gaussian_exact::build_cov(gaussian_exact::CovGrid::flt(100.0, kFltGrid), 1.0);
  const PathEnsemble ens = gaussian_exact::sample_ensemble(fc, 10000, {2026, 3});
  const stats::StatReport rep = stats::compare_fdd(ens, flatten(fc.matrix));
  const std::size_t within = rep.count_within(3.0);
  double min_p = 1.0;
  for (const auto& ks : rep.ks) min_p = std::min(min_p, ks.p_value);
  Report r;
  r << within << "/16 entries within 3 SE; min KS p = " << min_p;
  return r.done(within >= 14 && min_p > 0.01);
}

Outcome universality() {
  const std::vector<double> t{0.5, 1.0};
  const auto fc = gaussian_exact::build_cov(gaussian_exact::CovGrid::flt(3.0, t), 1.0);
  const std::vector<double> series_ref = flatten(fc.matrix);
  Report r;
  bool ok = true;
  std::vector<std::vector<double>> covs;
  std::vector<std::vector<double>> ses;
  for (const auto& spec : {InnovationSpec::rademacher(), InnovationSpec::gaussian()}) {
    const PathEnsemble ens = flt::simulate_flt_boundary(3.0, t, 1000, spec, {77, 1}, 0.05);
    const std::vector<double> ref = flt::truncated_covariance(3.0, t, ens.meta.cutoffs, 1.0);
    const stats::StatReport rep = stats::compare_fdd(ens, ref);
    const std::size_t within = rep.count_within(3.0);
    const std::size_t within_series = stats::compare_fdd(ens, series_ref).count_within(3.0);
    ok = ok && within == ref.size();
    r << family_name(spec.family()) << ": " << within << "/" << ref.size()
      << " within 3 SE of the truncated covariance (" << within_series
      << " of the untruncated series); ";
    covs.push_back(rep.empirical_cov);
    ses.push_back(rep.std_errors);
  }
  double worst = 0.0;
  for (std::size_t k = 0; k < covs[0].size(); ++k) {
    worst = std::max(worst, std::fabs(covs[0][k] - covs[1][k]) / std::hypot(ses[0][k], ses[1][k]));
  }
  r << "rademacher vs gaussian max |z| " << worst;
  return r.done(ok && worst <= 3.0);
}

Outcome limit_process() {
  const std::vector<double> t{0.5, 1.0, 2.0};
  const double y_max = 40.0 / t.front();
  const int n_steps = 10000;
  Report r;
  bool ok = true;
  for (double alpha : {0.0, 0.5}) {
    const PathEnsemble ens =
        flt::simulate_limit_alpha(alpha, t, 10000, y_max, n_steps, 1.0, {11, 5});
    std::vector<double> cov;
    std::vector<double> se;
    stats::covariance_with_se(ens, cov, se);
    double worst = 0.0;
    double dev = 0.0;
    double dev_half = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      for (std::size_t j = 0; j < t.size(); ++j) {
        const double ref = analytics::limit_cov_alpha(alpha, t[i], t[j], 1.0);
        const std::size_t k = i * t.size() + j;
        worst = std::max(worst, std::fabs(cov[k] - ref) / (3.0 * se[k] + 0.01 * ref));
        dev = std::max(dev, std::fabs(flt::discretized_limit_cov(alpha, t[i], t[j], y_max,
                                                                 n_steps, 1.0) -
                                      ref));
        dev_half = std::max(dev_half,
                            std::fabs(flt::discretized_limit_cov(alpha, t[i], t[j], y_max,
                                                                 2 * n_steps, 1.0) -
                                      ref));
      }
    }
    ok = ok && worst <= 1.0 && dev_half < dev;
    r << "alpha=" << alpha << " worst/allowance=" << worst << " mesh deviation " << dev
      << " -> " << dev_half << "; ";
  }
  return r.done(ok);
}

Outcome exact_identities() {
  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::vector<InnovationSpec> families{
      InnovationSpec::rademacher(), InnovationSpec::gaussian(1.5),
      {Family::kCenteredUniform, 1.0}, {Family::kTwoPoint, 1.0, 0.3},
      {Family::kCenteredExponential, 0.7}};
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const InnovationSpec& spec = families[rng() % families.size()];
    const double s = 0.01 + 1.99 * unit(rng);
    const std::uint64_t m = 3 + rng() % 1998;
    worst = std::max(worst, series::parts_identity_residual(s, m, spec, {rng(), rng()}, 1e-13));
  }

  const InnovationSpec gauss = InnovationSpec::gaussian();
  const std::vector<double> grid{0.1, 0.3, 1.0};
  std::vector<std::vector<double>> results;
  for (unsigned w : {1u, 2u, 8u}) {
    std::vector<double> v = series::evaluate_path(-0.5, grid, gauss, {9, 9}, 0.05,
                                                  series::kDefaultNMax, w)
                                .values;
    v.push_back(series::partial_sum({-0.5, 0.2, gauss}, (1u << 18) + 12345, {9, 9}, w));
    v.push_back(analytics::g_enclosure(1e-6).mid());
    const PathEnsemble e = flt::simulate_flt_boundary(3.0, {0.5, 1.0}, 4, gauss, {1, 2}, 0.05,
                                                      series::kDefaultNMax, w);
    v.insert(v.end(), e.values.begin(), e.values.end());
    results.push_back(std::move(v));
  }
  bool same = true;
  for (const auto& v : results) {
    same = same && v.size() == results[0].size() &&
           std::memcmp(v.data(), results[0].data(), v.size() * sizeof(double)) == 0;
  }
  Report r;
  r << "max parts residual " << worst << "; workers {1,2,8} bit-identical: "
    << (same ? "yes" : "no");
  return r.done(worst <= 1e-8 && same);
}

Outcome inequality_suite() {
  std::mt19937_64 rng(707);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst_gap = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < 1000; ++i) {
    worst_gap = std::max(worst_gap, analytics::i_concave_gap(unit(rng), unit(rng), 1e-13));
  }
  std::vector<double> grid(400);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid[i] = 1.001 * std::pow(1000.0 / 1.001, static_cast<double>(i) / (grid.size() - 1));
  }
  int kernel_fail = 0;
  for (int i = 0; i < 100; ++i) {
    const double a = 1e-3 + 2.0 * unit(rng);
    double b = 1e-3 + 2.0 * unit(rng);
    if (a == b) b += 1e-3;
    if (!analytics::decreasing_kernel_check(a, b, grid)) ++kernel_fail;
  }
  auto chaining = [&](analytics::ChainingMode mode, int n) {
    int fails = 0;
    for (int i = 0; i < n; ++i) {
      analytics::ChainingConfig cfg;
      cfg.j = static_cast<int>(rng() % 21);
      cfg.m = 1 + rng() % (std::uint64_t{1} << cfg.j);
      cfg.gamma = 0.5 * unit(rng);
      cfg.n = 2 + static_cast<int>(rng() % 39);
      cfg.s_big = 9.0 + 191.0 * unit(rng);
      if (!analytics::chaining_bound_check(cfg, mode).satisfied) ++fails;
    }
    return fails;
  };
  const int sequence_fail = chaining(analytics::ChainingMode::kSequence, 200);
  const int boundary_fail = chaining(analytics::ChainingMode::kBoundaryFlt, 100);
  Report r;
  r << "max I gap " << worst_gap << "; kernel failures " << kernel_fail << "/100; chaining "
    << "failures " << sequence_fail << "/200 and " << boundary_fail << "/100";
  return r.done(worst_gap <= 1e-10 && kernel_fail == 0 && sequence_fail == 0 &&
                boundary_fail == 0);
}

Outcome lindeberg() {
  const InnovationSpec gauss = InnovationSpec::gaussian();
  const InnovationSpec rad = InnovationSpec::rademacher();
  const double eps = 0.1;
  Report r;
  double prev = std::numeric_limits<double>::infinity();
  bool ok = true;
  for (double s_big : {10.0, 20.0, 40.0}) {
    const double v = analytics::lindeberg_term(s_big, 1.0, eps, gauss, 1e-12);
    ok = ok && v < prev;
    r << "gaussian(" << s_big << ")=" << v << "; ";
    prev = v;
  }
  const double s0 = 1.0 / (eps * eps * std::numbers::ln2);
  for (double s_big : {s0, 1.5 * s0, 4.0 * s0}) {
    const double v = analytics::lindeberg_term(s_big, 1.0, eps, rad, 1e-12);
    ok = ok && v == 0.0;
    r << "rademacher(" << s_big << ")=" << v << "; ";
  }
  return r.done(ok);
}

Outcome lil_diagnostics() {
  Report r;
  const auto diag = lil::truncation_diagnostics(Exponent::from_loglog_inv(6.0), 0.5,
                                                InnovationSpec::rademacher(), {5, 0}, 1000000);
  const bool zero_count = diag.fired_count == 0 && diag.event_sum == 0.0 &&
                          diag.event_expect_sum == 0.0 && diag.expect_remainder_bound == 0.0;
  r << "(a) fired=" << diag.fired_count << " over k in (" << diag.m << ", 1e6]; ";

  const std::vector<Exponent> s_list{Exponent::of(1e-3), Exponent::of(1e-6),
                                     Exponent::of(1e-9)};
  std::vector<std::vector<double>> per_s(s_list.size());
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto v = lil::fragment_decay(lil::FragmentKind::kHead, s_list,
                                       InnovationSpec::rademacher(), {seed, 1});
    for (std::size_t i = 0; i < v.size(); ++i) per_s[i].push_back(v[i]);
  }
  bool medians_down = true;
  double prev = std::numeric_limits<double>::infinity();
  r << "(b) head medians";
  for (auto& col : per_s) {
    const double m = stats::median(col);
    medians_down = medians_down && m < prev;
    r << " " << m;
    prev = m;
  }
  const auto tail = lil::fragment_decay(lil::FragmentKind::kTail, s_list,
                                        InnovationSpec::gaussian(), {});
  bool tail_down = true;
  r << ", tail bounds";
  for (std::size_t i = 0; i < tail.size(); ++i) {
    tail_down = tail_down && (i == 0 || tail[i] < tail[i - 1]);
    r << " " << tail[i];
  }
  r << "; ";

  const std::vector<double> loglog{2, 3, 4, 5, 6, 7, 8, 9, 10, 16, 32, 64, 128, 256};
  std::vector<Exponent> pts;
  for (double x : loglog) pts.push_back(Exponent::from_loglog_inv(x));
  const std::size_t n_rep = 2000;
  const auto paths = lil::trajectory_ensemble(pts, InnovationSpec::gaussian(), {31, 4}, n_rep);
  bool sd_ok = true;
  double worst_z = 0.0;
  std::size_t pooled = 0;
  std::size_t inside = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    double ss = 0.0;
    for (const auto& tr : paths) ss += tr.normalized[i] * tr.normalized[i];
    const double sd = std::sqrt(ss / n_rep);
    const double formula = lil::normalized_sd(pts[i]);
    const double z = std::fabs(sd - formula) / (sd / std::sqrt(2.0 * (n_rep - 1)));
    worst_z = std::max(worst_z, z);
    sd_ok = sd_ok && z <= 3.0;
    if (formula <= 1.0 / 2.576) {
      for (const auto& tr : paths) {
        ++pooled;
        if (std::fabs(tr.normalized[i]) <= 1.0) ++inside;
      }
    }
  }
  const double mass = pooled ? static_cast<double>(inside) / pooled : 0.0;
  r << "(c) worst SD z=" << worst_z << ", mass in [-1,1] " << mass << " over " << pooled
    << " deep values";
  return r.done(zero_count && medians_down && tail_down && sd_ok && pooled > 0 &&
                mass > 0.99);
}

Outcome zero_machinery() {
  const auto f = [](double s) { return std::cos(1.0 / s); };
  const auto br = zeros::scan(f, 0.05, 1.0, 4000);
  double worst = 0.0;
  bool complete = br.size() == 6;
  for (std::size_t i = 0; i < br.size(); ++i) {
    const int k = static_cast<int>(br.size() - 1 - i);
    const double z = zeros::refine(f, br[i], 1e-14, 200);
    worst = std::max(worst, std::fabs(z - 2.0 / ((2 * k + 1) * std::numbers::pi)));
  }
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t i = 0; i < 100; ++i) seeds.push_back(1 + i);
  const auto stats = zeros::zero_count_experiment(InnovationSpec::rademacher(), seeds,
                                                  {{0.2, 1.0}, {0.05, 1.0}}, 200);
  const double narrow = stats[0].mean;
  const double wide = stats[1].mean;
  const double se = std::hypot(stats[0].sd, stats[1].sd) / std::sqrt(100.0);
  Report r;
  r << br.size() << " oracle zeros, max error " << worst << "; mean zero count " << narrow
    << " on [0.2,1] vs " << wide << " on [0.05,1] (se " << se << ")";
  return r.done(complete && worst <= 1e-9 && wide >= narrow);
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"variance asymptotics", variance_asymptotics},
      {"covariance asymptote", covariance_asymptote},
      {"boundary FLT, exact law", flt_exact_route},
      {"universality at feasible depth", universality},
      {"limit process for alpha > -1/2", limit_process},
      {"exact identities and worker invariance", exact_identities},
      {"inequality suite", inequality_suite},
      {"Lindeberg decay", lindeberg},
      {"iterated-logarithm diagnostics", lil_diagnostics},
      {"zero machinery", zero_machinery},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.passed) ++failures;
    std::cout << (o.passed ? "PASS" : "FAIL") << " criterion " << index << " (" << name
              << ", " << secs << " s): " << o.detail << std::endl;
  }
  std::cout << (10 - failures) << "/10 criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
