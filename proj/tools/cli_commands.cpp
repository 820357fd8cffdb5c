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


#include "cli_commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numbers>
#include <string>
#include <vector>

namespace rdscli {
namespace {

constexpr char kNMaxDefault[] = "8589934592";

std::vector<OptionSpec> with_common(std::vector<OptionSpec> specific) {
  specific.push_back({"out", "output directory", "", true});
  specific.push_back({"seed", "master seed", "1"});
  specific.push_back({"threads", "worker threads (0 = all cores)", "0"});
  return specific;
}

std::vector<OptionSpec> sampling(const std::string& replicates,
                                 const std::string& innovation) {
  return {{"replicates", "number of replicates", replicates},
          {"rel-tol", "relative truncation tolerance", "0.05"},
          {"n-max", "largest admissible cutoff", kNMaxDefault},
          {"innovation", "rademacher|gaussian|centered_uniform|two_point|centered_exponential",
           innovation},
          {"sigma", "innovation standard deviation", "1"},
          {"p", "two_point probability", "0.5"}};
}

std::vector<OptionSpec> concat(std::vector<OptionSpec> a, const std::vector<OptionSpec>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

rds_seed seed_of(const Options& opts, std::uint64_t stream = 0) {
  return {opts.unsigned_integer("seed"), stream};
}

std::size_t positive_count(const Options& opts, const std::string& name) {
  const std::int64_t n = opts.integer(name);
  if (n < 1) throw UsageError(name + " must be >= 1");
  return static_cast<std::size_t>(n);
}

void require_ascending_positive(const std::vector<double>& t, const std::string& name) {
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(t[i] > 0.0) || (i > 0 && !(t[i] > t[i - 1]))) {
      throw UsageError(name + " must be positive and strictly ascending");
    }
  }
}

struct EnsembleHandle {
  rds_ensemble* ptr = nullptr;
  ~EnsembleHandle() { rds_ensemble_destroy(ptr); }
};

struct CovHandle {
  rds_factorized_cov* ptr = nullptr;
  ~CovHandle() { rds_factorized_cov_destroy(ptr); }
};

struct ReportHandle {
  rds_stat_report* ptr = nullptr;
  ~ReportHandle() { rds_stat_report_destroy(ptr); }
};

struct TrajectoryHandle {
  rds_trajectory_set* ptr = nullptr;
  ~TrajectoryHandle() { rds_trajectory_set_destroy(ptr); }
};

struct FddComparison {
  std::vector<double> emp, se, ks_stat, ks_p;
};

FddComparison compare(const rds_ensemble* ens, const std::vector<double>& reference) {
  ReportHandle rep;
  check(rds_compare_fdd(ens, reference.data(), &rep.ptr));
  const std::size_t d = rds_stat_report_dim(rep.ptr);
  FddComparison c{std::vector<double>(d * d), std::vector<double>(d * d),
                  std::vector<double>(d), std::vector<double>(d)};
  check(rds_stat_report_copy(rep.ptr, c.emp.data(), c.se.data(), c.ks_stat.data(),
                             c.ks_p.data(), nullptr));
  return c;
}

Table paths_table(const rds_ensemble* ens, const std::vector<double>& t) {
  std::vector<std::string> header{"replicate"};
  for (double x : t) header.push_back("t=" + format_real(x));
  Table tab("paths.csv", header);
  const std::size_t d = rds_ensemble_dim(ens);
  const double* v = rds_ensemble_values(ens);
  for (std::size_t r = 0; r < rds_ensemble_replicates(ens); ++r) {
    tab.row().add(std::uint64_t{r});
    for (std::size_t i = 0; i < d; ++i) tab.add(v[r * d + i]);
  }
  return tab;
}

bool flag(const Options& opts, const std::string& name) {
  const std::string v = opts.str(name);
  if (v == "1" || v == "true" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "no") return false;
  throw UsageError("invalid value '" + v + "' for " + name + ": expected 0 or 1");
}

// FDD table and the two headline checks shared by flt and limit-sim.
void report_fdd(RunResult& out, const std::vector<double>& t, const FddComparison& c,
                const std::vector<double>& reference, double slack_rel, double min_within,
                double ks_alpha, const std::string& ref_name) {
  const std::size_t d = t.size();
  Table fdd("fdd.csv", {"t_i", "t_j", "empirical", "std_error", ref_name, "z"});
  std::size_t within = 0;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const std::size_t k = i * d + j;
      const double dev = std::fabs(c.emp[k] - reference[k]);
      const double z = c.se[k] > 0.0 ? (c.emp[k] - reference[k]) / c.se[k] : 0.0;
      if (dev <= 3.0 * c.se[k] + slack_rel * std::fabs(reference[k])) ++within;
      fdd.row().add(t[i]).add(t[j]).add(c.emp[k]).add(c.se[k]).add(reference[k]).add(z);
    }
  }
  Table marg("marginals.csv", {"t", "ks_statistic", "ks_pvalue"});
  double min_p = 1.0;
  for (std::size_t i = 0; i < d; ++i) {
    marg.row().add(t[i]).add(c.ks_stat[i]).add(c.ks_p[i]);
    min_p = std::min(min_p, c.ks_p[i]);
  }
  const double frac = static_cast<double>(within) / static_cast<double>(d * d);
  out.checks.push_back({"covariance_within_3se", frac >= min_within, frac, min_within});
  out.checks.push_back({"marginal_ks", min_p > ks_alpha, min_p, ks_alpha});
  out.tables.push_back(std::move(fdd));
  out.tables.push_back(std::move(marg));
}

}  // namespace

RunResult run_covariance(const Options& opts) {
  const double s_big = opts.real("s-big");
  const auto t = opts.real_list("t");
  const double sigma = opts.real("sigma");
  const double rel = opts.real("rel-tolerance");
  const double abs = opts.real("abs-tolerance");
  require_ascending_positive(t, "--t");

  const rds_cov_grid grid{RDS_GRID_FLT, t.data(), t.size(), s_big, -0.5, 0.0};
  CovHandle fc;
  check(rds_build_cov(&grid, sigma, opts.unsigned_integer("direct-terms"), &fc.ptr));
  const std::size_t d = t.size();
  std::vector<double> mid(d * d), width(d * d);
  check(rds_factorized_cov_copy(fc.ptr, mid.data(), width.data(), nullptr));

  RunResult out;
  Table tab("covariance.csv", {"t_i", "t_j", "enclosure_lo", "enclosure_hi", "asymptote"});
  const double s2 = sigma * sigma;
  double worst = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const std::size_t k = i * d + j;
      const double m = std::min(t[i], t[j]);
      tab.row()
          .add(t[i])
          .add(t[j])
          .add((mid[k] - 0.5 * width[k]) * s_big)
          .add((mid[k] + 0.5 * width[k]) * s_big)
          .add(s2 * m * s_big);
      worst = std::max(worst, std::fabs(mid[k] / s2 - m) / (rel * m + abs));
    }
  }
  out.tables.push_back(std::move(tab));
  out.checks.push_back({"covariance_asymptote", worst <= 1.0, worst, 1.0});
  return out;
}

RunResult run_flt(const Options& opts) {
  const double s_big = opts.real("s-big");
  const auto t = opts.real_list("t");
  const std::size_t n_rep = positive_count(opts, "replicates");
  const std::string route = opts.str("route");
  require_ascending_positive(t, "--t");
  if (route != "exact" && route != "summation") {
    throw UsageError("--route must be exact or summation");
  }
  Innovation spec(opts);

  const rds_cov_grid grid{RDS_GRID_FLT, t.data(), t.size(), s_big, -0.5, 0.0};
  CovHandle fc;
  check(rds_build_cov(&grid, opts.real("sigma"), 0, &fc.ptr));
  const std::size_t d = t.size();
  std::vector<double> reference(d * d);
  check(rds_factorized_cov_copy(fc.ptr, reference.data(), nullptr, nullptr));

  EnsembleHandle ens;
  if (route == "exact") {
    check(rds_sample_ensemble(fc.ptr, n_rep, seed_of(opts), &ens.ptr));
  } else {
    check(rds_simulate_flt_boundary(s_big, t.data(), d, n_rep, spec.ptr, seed_of(opts),
                                    opts.real("rel-tol"), opts.unsigned_integer("n-max"),
                                    &ens.ptr));
  }

  RunResult out;
  if (route == "summation") {
    std::size_t n = 0;
    const std::uint64_t* cut = rds_ensemble_cutoffs(ens.ptr, &n);
    std::vector<double> truncated(d * d);
    check(rds_flt_truncated_covariance(s_big, t.data(), d, cut, opts.real("sigma"),
                                       truncated.data()));
    report_fdd(out, t, compare(ens.ptr, truncated), truncated, 0.0, opts.real("min-within"),
               opts.real("ks-alpha"), "truncated_reference");
    Table tab("cutoffs.csv", {"t", "cutoff", "series_variance", "truncated_variance"});
    for (std::size_t i = 0; i < n; ++i) {
      tab.row().add(t[i]).add(cut[i]).add(reference[i * d + i]).add(truncated[i * d + i]);
    }
    out.tables.push_back(std::move(tab));
  } else {
    report_fdd(out, t, compare(ens.ptr, reference), reference, 0.0, opts.real("min-within"),
               opts.real("ks-alpha"), "reference");
  }
  if (flag(opts, "write-paths")) out.tables.push_back(paths_table(ens.ptr, t));
  return out;
}

RunResult run_limit_sim(const Options& opts) {
  const double alpha = opts.real("alpha");
  const auto t = opts.real_list("t");
  const std::size_t n_rep = positive_count(opts, "replicates");
  const double sigma = opts.real("sigma");
  const std::int64_t steps = opts.integer("n-steps");
  require_ascending_positive(t, "--t");
  if (steps < 1 || steps > (1 << 29)) throw UsageError("--n-steps out of range");
  double y_max = opts.real("y-max");
  if (y_max == 0.0) y_max = 40.0 / t.front();
  const int n_steps = static_cast<int>(steps);

  EnsembleHandle ens;
  check(rds_simulate_limit_alpha(alpha, t.data(), t.size(), n_rep, y_max, n_steps, sigma,
                                 seed_of(opts), &ens.ptr));
  const std::size_t d = t.size();
  std::vector<double> limit(d * d), coarse(d * d), fine(d * d);
  double dev_coarse = 0.0, dev_fine = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const std::size_t k = i * d + j;
      check(rds_limit_cov_alpha(alpha, t[i], t[j], sigma, &limit[k]));
      check(rds_discretized_limit_cov(alpha, t[i], t[j], y_max, n_steps, sigma, &coarse[k]));
      check(rds_discretized_limit_cov(alpha, t[i], t[j], y_max, 2 * n_steps, sigma,
                                      &fine[k]));
      dev_coarse = std::max(dev_coarse, std::fabs(coarse[k] - limit[k]));
      dev_fine = std::max(dev_fine, std::fabs(fine[k] - limit[k]));
    }
  }

  RunResult out;
  report_fdd(out, t, compare(ens.ptr, limit), limit, opts.real("slack"),
             opts.real("min-within"), opts.real("ks-alpha"), "limit");
  Table mesh("mesh.csv", {"t_i", "t_j", "limit", "discretized", "discretized_half_mesh"});
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const std::size_t k = i * d + j;
      mesh.row().add(t[i]).add(t[j]).add(limit[k]).add(coarse[k]).add(fine[k]);
    }
  }
  out.tables.push_back(std::move(mesh));
  const double ratio = dev_coarse > 0.0 ? dev_fine / dev_coarse : 0.0;
  out.checks.push_back({"mesh_halving_reduces_deviation", ratio < 1.0, ratio, 1.0});
  if (flag(opts, "write-paths")) out.tables.push_back(paths_table(ens.ptr, t));
  return out;
}

RunResult run_lil(const Options& opts) {
  const auto loglog = opts.real_list("loglog");
  const std::size_t n_rep = positive_count(opts, "replicates");
  const std::string route_name = opts.str("route");
  require_ascending_positive(loglog, "--loglog");
  rds_route route = RDS_ROUTE_AUTO;
  if (route_name == "summation") {
    route = RDS_ROUTE_SUMMATION;
  } else if (route_name == "exact") {
    route = RDS_ROUTE_GAUSSIAN_EXACT;
  } else if (route_name != "auto") {
    throw UsageError("--route must be auto, summation or exact");
  }
  const int bins = static_cast<int>(opts.integer("bins"));
  const double deep_sd = opts.real("deep-sd");
  const double min_inside = opts.real("min-inside");
  Innovation spec(opts);

  const std::size_t n = loglog.size();
  std::vector<double> log_s(n);
  for (std::size_t i = 0; i < n; ++i) log_s[i] = -std::exp(loglog[i]);

  TrajectoryHandle set;
  check(rds_trajectory_ensemble(log_s.data(), n, spec.ptr, seed_of(opts), n_rep, route,
                                opts.real("rel-tol"), opts.unsigned_integer("n-max"),
                                &set.ptr));
  std::vector<double> raw(n_rep * n), normalized(n_rep * n);
  check(rds_trajectory_set_copy(set.ptr, raw.data(), normalized.data(), nullptr, nullptr));

  RunResult out;
  Table points("lil_points.csv", {"loglog_inv", "log_s", "sd_empirical", "sd_std_error",
                                  "sd_formula", "fraction_inside"});
  std::size_t sd_ok = 0, deep_total = 0, deep_inside = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double mean = 0.0;
    std::size_t inside = 0;
    for (std::size_t r = 0; r < n_rep; ++r) {
      const double x = normalized[r * n + i];
      mean += x;
      if (std::fabs(x) <= 1.0) ++inside;
    }
    mean /= static_cast<double>(n_rep);
    double ss = 0.0;
    for (std::size_t r = 0; r < n_rep; ++r) {
      const double dx = normalized[r * n + i] - mean;
      ss += dx * dx;
    }
    const double dof = static_cast<double>(n_rep > 1 ? n_rep - 1 : 1);
    const double sd = std::sqrt(ss / dof);
    const double se = sd / std::sqrt(2.0 * dof);
    double formula = 0.0;
    check(rds_normalized_sd(log_s[i], &formula));
    if (std::fabs(sd - formula) <= 3.0 * se) ++sd_ok;
    if (formula <= deep_sd) {
      deep_total += n_rep;
      deep_inside += inside;
    }
    points.row()
        .add(loglog[i])
        .add(log_s[i])
        .add(sd)
        .add(se)
        .add(formula)
        .add(static_cast<double>(inside) / static_cast<double>(n_rep));
  }
  out.tables.push_back(std::move(points));

  if (bins > 0 && n_rep >= 100) {
    std::vector<std::size_t> counts(static_cast<std::size_t>(bins));
    rds_coverage_summary cov{};
    check(rds_limit_set_coverage(set.ptr, bins, counts.data(), &cov));
    Table tab("coverage.csv", {"bin_lo", "bin_hi", "count"});
    const double w = 3.0 / bins;
    for (int b = 0; b < bins; ++b) {
      tab.row().add(-1.5 + b * w).add(-1.5 + (b + 1) * w).add(std::uint64_t{counts[b]});
    }
    out.tables.push_back(std::move(tab));
  }

  const double sd_frac = static_cast<double>(sd_ok) / static_cast<double>(n);
  out.checks.push_back({"normalized_sd_within_3se", sd_ok == n, sd_frac, 1.0});
  const double inside_frac = deep_total == 0 ? std::nan("")
                                             : static_cast<double>(deep_inside) /
                                                   static_cast<double>(deep_total);
  out.checks.push_back({"deep_mass_in_unit_interval",
                        deep_total > 0 && inside_frac > min_inside, inside_frac, min_inside});
  if (flag(opts, "write-paths")) {
    Table tab("trajectories.csv", {"replicate", "loglog_inv", "raw", "normalized"});
    for (std::size_t r = 0; r < n_rep; ++r) {
      for (std::size_t i = 0; i < n; ++i) {
        tab.row().add(std::uint64_t{r}).add(loglog[i]).add(raw[r * n + i]).add(
            normalized[r * n + i]);
      }
    }
    out.tables.push_back(std::move(tab));
  }
  return out;
}

namespace {

double cos_inverse(double s, void*) { return std::cos(1.0 / s); }

}  // namespace

RunResult run_zeros(const Options& opts) {
  const auto windows = opts.range_list("windows");
  const std::size_t n_seeds = positive_count(opts, "replicates");
  const int n_grid = static_cast<int>(opts.integer("n-grid"));
  const int oracle_grid = static_cast<int>(opts.integer("oracle-n-grid"));
  const double oracle_tol = opts.real("oracle-tol");
  Innovation spec(opts);

  double lo = windows.front().first, hi = windows.front().second;
  for (const auto& w : windows) {
    lo = std::min(lo, w.first);
    hi = std::max(hi, w.second);
  }
  if (!(lo > 0.0)) throw UsageError("--windows must lie in (0, inf)");

  RunResult out;

  // cos(1/s) vanishes at s = 2 / ((2k + 1) pi).
  std::vector<double> exact;
  for (int k = 0;; ++k) {
    const double z = 2.0 / ((2 * k + 1) * std::numbers::pi);
    if (z < lo) break;
    if (z <= hi) exact.push_back(z);
  }
  std::vector<rds_zero_bracket> br(exact.size() + 64);
  std::size_t found = 0;
  check(rds_scan(cos_inverse, nullptr, lo, hi, oracle_grid, br.data(), br.size(), &found));
  std::vector<double> roots;
  for (std::size_t i = 0; i < found; ++i) {
    double r = 0.0;
    check(rds_refine(cos_inverse, nullptr, &br[i], 1e-14, 200, &r));
    roots.push_back(r);
  }
  std::sort(roots.begin(), roots.end(), std::greater<>());
  Table oracle("oracle_zeros.csv", {"k", "exact", "found", "abs_error"});
  double worst = roots.size() == exact.size() ? 0.0 : std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < exact.size(); ++k) {
    const double f = k < roots.size() ? roots[k] : std::nan("");
    const double err = std::fabs(f - exact[k]);
    worst = std::isnan(err) ? std::numeric_limits<double>::infinity() : std::max(worst, err);
    oracle.row().add(std::uint64_t{k}).add(exact[k]).add(f).add(err);
  }
  out.tables.push_back(std::move(oracle));
  out.checks.push_back({"oracle_cos_inverse_zeros", worst <= oracle_tol, worst, oracle_tol});

  std::vector<std::uint64_t> seeds(n_seeds);
  for (std::size_t i = 0; i < n_seeds; ++i) seeds[i] = opts.unsigned_integer("seed") + i;
  std::vector<double> flat;
  for (const auto& w : windows) {
    flat.push_back(w.first);
    flat.push_back(w.second);
  }
  std::vector<rds_window_stats> stats(windows.size());
  std::vector<std::uint64_t> counts(windows.size() * n_seeds);
  check(rds_zero_count_experiment(spec.ptr, seeds.data(), n_seeds, flat.data(),
                                  windows.size(), n_grid, opts.real("rel-tol"),
                                  opts.unsigned_integer("n-max"), stats.data(),
                                  counts.data()));
  Table per_seed("zero_counts.csv", {"seed", "window_lo", "window_hi", "count"});
  Table summary("windows.csv", {"window_lo", "window_hi", "mean", "sd", "unresolved_mean"});
  double min_step = std::numeric_limits<double>::infinity();
  for (std::size_t w = 0; w < windows.size(); ++w) {
    summary.row()
        .add(stats[w].s_lo)
        .add(stats[w].s_hi)
        .add(stats[w].mean)
        .add(stats[w].sd)
        .add(stats[w].unresolved_mean);
    for (std::size_t i = 0; i < n_seeds; ++i) {
      per_seed.row().add(seeds[i]).add(stats[w].s_lo).add(stats[w].s_hi).add(
          counts[w * n_seeds + i]);
    }
    if (w > 0) min_step = std::min(min_step, stats[w].mean - stats[w - 1].mean);
  }
  out.tables.push_back(std::move(per_seed));
  out.tables.push_back(std::move(summary));
  if (windows.size() > 1) {
    out.checks.push_back({"zero_count_nondecreasing", min_step >= 0.0, min_step, 0.0});
  }
  return out;
}

namespace {

struct LemmaTable {
  Table tab{"lemmas.csv", {"check", "trial", "params", "value", "bound", "passed"}};

  void add(const std::string& name, std::uint64_t trial, const std::string& params,
           double value, double bound, bool passed) {
    tab.row().add(name).add(trial).add(params).add(value).add(bound).add(
        std::string(passed ? "1" : "0"));
  }
};

std::string kv(const char* k, double v) { return std::string(k) + "=" + format_real(v); }

void inequality_suite(std::size_t trials, TrialRng& rng, LemmaTable& lt, RunResult& out) {
  const double gap_tol = 1e-10;
  double worst_gap = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < trials; ++i) {
    const double a = rng.uniform(), b = rng.uniform();
    double gap = 0.0;
    check(rds_i_concave_gap(a, b, 1e-13, &gap));
    worst_gap = std::max(worst_gap, gap);
    lt.add("i_concave_gap", i, kv("a", a) + ";" + kv("b", b), gap, gap_tol, gap <= gap_tol);
  }
  out.checks.push_back({"i_concave_gap", worst_gap <= gap_tol, worst_gap, gap_tol});

  std::vector<double> grid(400);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid[i] = 1.001 * std::pow(1000.0 / 1.001, static_cast<double>(i) / (grid.size() - 1));
  }
  std::size_t kernel_fail = 0;
  const std::size_t n_kernel = std::max<std::size_t>(1, trials / 10);
  for (std::size_t i = 0; i < n_kernel; ++i) {
    double a = rng.uniform(1e-3, 2.0), b = rng.uniform(1e-3, 2.0);
    if (a == b) b += 1e-3;
    int ok = 0;
    check(rds_decreasing_kernel_check(a, b, grid.data(), grid.size(), &ok));
    if (!ok) ++kernel_fail;
    lt.add("decreasing_kernel", i, kv("a", a) + ";" + kv("b", b), ok, 1.0, ok != 0);
  }
  out.checks.push_back({"decreasing_kernel", kernel_fail == 0,
                        static_cast<double>(kernel_fail), 0.0});

  auto chaining = [&](const char* name, rds_chaining_mode mode, std::size_t n) {
    double worst = 0.0;
    bool all = true;
    for (std::size_t i = 0; i < n; ++i) {
      rds_chaining_config cfg{};
      cfg.j = static_cast<int>(rng.below(21));
      cfg.m = 1 + rng.below(std::uint64_t{1} << cfg.j);
      if (mode == RDS_CHAIN_SEQUENCE) {
        cfg.gamma = rng.uniform(0.0, 0.5);
        cfg.n = 2 + static_cast<int>(rng.below(39));
      } else {
        cfg.s_big = rng.uniform(9.0, 200.0);
      }
      rds_chaining_result r{};
      check(rds_chaining_bound_check(&cfg, mode, 0, &r));
      const double ratio = r.a_value.hi / r.bound;
      worst = std::max(worst, ratio);
      all = all && r.satisfied;
      const std::string params =
          (mode == RDS_CHAIN_SEQUENCE ? kv("gamma", cfg.gamma) + ";n=" + std::to_string(cfg.n)
                                    : kv("s_big", cfg.s_big)) +
          ";j=" + std::to_string(cfg.j) + ";m=" + std::to_string(cfg.m);
      lt.add(name, i, params, r.a_value.hi, r.bound, r.satisfied != 0);
    }
    out.checks.push_back({name, all, worst, 1.0});
  };
  chaining("chaining_sequence", RDS_CHAIN_SEQUENCE, std::max<std::size_t>(1, trials / 5));
  chaining("chaining_boundary", RDS_CHAIN_BOUNDARY, std::max<std::size_t>(1, trials / 10));
}

void lindeberg_suite(LemmaTable& lt, RunResult& out) {
  const double t = 1.0, eps = 0.1, tol = 1e-12;
  Innovation gauss("gaussian", 1.0, 0.5);
  double prev = std::numeric_limits<double>::infinity();
  double worst_ratio = 0.0;
  bool decreasing = true;
  std::uint64_t trial = 0;
  for (double s_big : {10.0, 20.0, 40.0}) {
    double v = 0.0;
    check(rds_lindeberg_term(s_big, t, eps, gauss.ptr, tol, &v));
    const bool ok = v < prev;
    decreasing = decreasing && ok;
    if (std::isfinite(prev)) worst_ratio = std::max(worst_ratio, v / prev);
    lt.add("lindeberg_gaussian", trial++, kv("s_big", s_big), v, prev, ok);
    prev = v;
  }
  out.checks.push_back({"lindeberg_gaussian_decreasing", decreasing, worst_ratio, 1.0});

  Innovation rad("rademacher", 1.0, 0.5);
  const double threshold = 1.0 / (eps * eps * std::numbers::ln2);
  double worst = 0.0;
  trial = 0;
  for (double s_big : {threshold, 2.0 * threshold}) {
    double v = 0.0;
    check(rds_lindeberg_term(s_big, t, eps, rad.ptr, tol, &v));
    worst = std::max(worst, std::fabs(v));
    lt.add("lindeberg_rademacher", trial++, kv("s_big", s_big), v, 0.0, v == 0.0);
  }
  out.checks.push_back({"lindeberg_rademacher_zero", worst == 0.0, worst, 0.0});
}

void identity_suite(std::size_t trials, TrialRng& rng, LemmaTable& lt, RunResult& out) {
  static const char* kFamilies[] = {"rademacher", "gaussian", "centered_uniform",
                                    "two_point", "centered_exponential"};
  const double tol = 1e-8;
  double worst = 0.0;
  const std::size_t n = std::max<std::size_t>(1, trials / 20);
  for (std::size_t i = 0; i < n; ++i) {
    const char* family = kFamilies[rng.below(5)];
    const double s = rng.uniform(0.01, 2.0);
    const std::uint64_t m = 3 + rng.below(1998);
    const double p = rng.uniform(0.1, 0.9);
    const rds_seed seed{static_cast<std::uint64_t>(rng.uniform() * 9.0e15), i};
    Innovation spec(family, rng.uniform(0.5, 2.0), p);
    double r = 0.0;
    check(rds_parts_identity_residual(s, m, spec.ptr, seed, 1e-13, &r));
    worst = std::max(worst, r);
    lt.add("parts_identity", i,
           std::string("family=") + family + ";" + kv("s", s) + ";m=" + std::to_string(m), r,
           tol, r <= tol);
  }
  out.checks.push_back({"parts_identity", worst <= tol, worst, tol});

  // Same path under several worker counts, compared bit for bit.
  Innovation spec("rademacher", 1.0, 0.5);
  const std::vector<double> grid{0.1, 0.3, 1.0};
  const rds_seed seed{rng.below(std::uint64_t{1} << 53), 7};
  std::vector<double> base;
  bool same = true;
  std::uint64_t trial = 0;
  for (unsigned w : {1u, 2u, 8u}) {
    rds_set_threads(w);
    std::vector<double> v(grid.size() + 1);
    check(rds_evaluate_path(-0.5, grid.data(), grid.size(), spec.ptr, seed, 0.05, 0,
                            v.data(), nullptr));
    check(rds_partial_sum(-0.5, 0.2, spec.ptr, seed, (std::uint64_t{1} << 18) + 12345,
                          &v.back()));
    if (base.empty()) base = v;
    const bool eq = std::memcmp(base.data(), v.data(), v.size() * sizeof(double)) == 0;
    same = same && eq;
    lt.add("thread_invariance", trial++, "workers=" + std::to_string(w), v.back(), base.back(),
           eq);
  }
  rds_set_threads(0);
  out.checks.push_back({"thread_invariance", same, same ? 0.0 : 1.0, 0.0});
}

}  // namespace

RunResult run_lemmas(const Options& opts) {
  const std::string suite = opts.str("suite");
  const std::size_t trials = positive_count(opts, "trials");
  const bool all = suite == "all";
  if (!all && suite != "inequalities" && suite != "lindeberg" && suite != "identities") {
    throw UsageError("--suite must be inequalities, lindeberg, identities or all");
  }
  RunResult out;
  LemmaTable lt;
  TrialRng rng(opts.unsigned_integer("seed"));
  if (all || suite == "inequalities") inequality_suite(trials, rng, lt, out);
  if (all || suite == "lindeberg") lindeberg_suite(lt, out);
  if (all || suite == "identities") identity_suite(trials, rng, lt, out);
  out.tables.push_back(std::move(lt.tab));
  return out;
}

const std::vector<Command>& commands() {
  static const std::vector<Command> kCommands = {
      {"covariance",
       "certified covariance of the boundary series against min(t_i, t_j) s_big",
       with_common({{"s-big", "time-change scale", "", true},
                    {"t", "comma-separated ascending times", "", true},
                    {"sigma", "innovation standard deviation", "1"},
                    {"direct-terms", "terms summed directly before the tail bracket",
                     "1048576"},
                    {"rel-tolerance", "allowed |mid/s_big - min| relative to min", "0.1"},
                    {"abs-tolerance", "absolute allowance added to the above", "0.02"}}),
       run_covariance},
      {"flt", "finite-dimensional laws of the normalized boundary process",
       with_common(concat({{"s-big", "time-change scale", "", true},
                           {"t", "comma-separated ascending times", "", true},
                           {"route", "exact|summation", "exact"},
                           {"min-within", "share of covariance entries within 3 SE", "0.875"},
                           {"ks-alpha", "per-coordinate KS level", "0.01"},
                           {"write-paths", "also write paths.csv (0|1)", "0"}},
                          sampling("10000", "gaussian"))),
       run_flt},
      {"limit-sim", "discretized limit process for alpha > -1/2",
       with_common({{"alpha", "log-power exponent", "", true},
                    {"t", "comma-separated ascending times", "", true},
                    {"replicates", "number of replicates", "10000"},
                    {"y-max", "integration range (0 = 40 / min t)", "0"},
                    {"n-steps", "integration cells", "10000"},
                    {"sigma", "innovation standard deviation", "1"},
                    {"slack", "relative allowance added to 3 SE", "0.01"},
                    {"min-within", "share of covariance entries within tolerance", "1"},
                    {"ks-alpha", "per-coordinate KS level", "0.01"},
                    {"write-paths", "also write paths.csv (0|1)", "0"}}),
       run_limit_sim},
      {"lil", "normalized trajectories on a deep s grid",
       with_common(concat({{"loglog", "comma-separated loglog(1/s) values",
                            "2,3,4,5,6,7,8,9,10,16,32,64,128,256"},
                           {"route", "auto|summation|exact", "auto"},
                           {"bins", "coverage histogram bins", "60"},
                           {"deep-sd", "points pooled for the mass check have sd <= this",
                            "0.3881987577639752"},
                           {"min-inside", "required pooled share in [-1, 1]", "0.99"},
                           {"write-paths", "also write trajectories.csv (0|1)", "0"}},
                          sampling("2000", "gaussian"))),
       run_lil},
      {"zeros", "real zeros of sample paths and the cos(1/s) oracle",
       with_common(concat({{"windows", "comma-separated lo:hi windows, widening",
                            "0.2:1,0.05:1"},
                           {"n-grid", "log-grid points per window", "200"},
                           {"oracle-n-grid", "log-grid points for the oracle scan", "4000"},
                           {"oracle-tol", "oracle root tolerance", "1e-9"}},
                          sampling("100", "rademacher"))),
       run_zeros},
      {"lemmas", "randomized checks of the analytic inequalities and identities",
       with_common({{"suite", "inequalities|lindeberg|identities|all", "all"},
                    {"trials", "random trials (scaled per check)", "1000"}}),
       run_lemmas},
  };
  return kCommands;
}

}  // namespace rdscli
