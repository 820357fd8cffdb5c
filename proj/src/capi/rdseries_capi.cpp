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


#include "rdseries/rdseries.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "rdseries/analytics.hpp"
#include "rdseries/errors.hpp"
#include "rdseries/flt_harness.hpp"
#include "rdseries/gaussian_exact.hpp"
#include "rdseries/innovations.hpp"
#include "rdseries/lil_explorer.hpp"
#include "rdseries/parallel.hpp"
#include "rdseries/series_engine.hpp"
#include "rdseries/special.hpp"
#include "rdseries/stats.hpp"
#include "rdseries/zero_finder.hpp"

struct rds_innovation {
  rds::InnovationSpec spec;
};

struct rds_ensemble {
  rds::PathEnsemble ens;
};

struct rds_factorized_cov {
  rds::gaussian_exact::FactorizedCov fc;
};

struct rds_stat_report {
  rds::stats::StatReport rep;
};

struct rds_trajectory_set {
  std::vector<rds::lil::Trajectory> paths;
};

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct LastError {
  std::string message;
  double value = kNaN;
  double aux = kNaN;
};

thread_local LastError t_error;

rds_status fail(rds_status code, std::string msg, double value = kNaN,
                double aux = kNaN) {
  t_error = {std::move(msg), value, aux};
  return code;
}

template <class F>
rds_status guarded(F&& body) {
  t_error = {};
  try {
    body();
    return RDS_OK;
  } catch (const rds::FeasibilityError& e) {
    return fail(RDS_ERR_FEASIBILITY, e.what(), e.min_log_n(), e.max_usable());
  } catch (const rds::ConditioningError& e) {
    return fail(RDS_ERR_CONDITIONING, e.what(), e.min_eigenvalue());
  } catch (const rds::ConvergenceError& e) {
    return fail(RDS_ERR_CONVERGENCE, e.what(), e.best_left(), e.best_right());
  } catch (const rds::Error& e) {
    return fail(static_cast<rds_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(RDS_ERR_RESOURCE, "out of memory");
  } catch (const std::exception& e) {
    return fail(RDS_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(RDS_ERR_INTERNAL, "unknown failure");
  }
}

void require(bool cond, const char* what) {
  if (!cond) throw rds::InvalidArgument(what);
}

template <class T>
void require_ptr(const T* p, const char* name) {
  if (p == nullptr) throw rds::InvalidArgument(std::string(name) + " is null");
}

rds::SeedContext ctx_of(rds_seed s) { return {s.master_seed, s.stream_id}; }

std::vector<double> vec(const double* p, std::size_t n, const char* name) {
  if (n > 0) require_ptr(p, name);
  return n == 0 ? std::vector<double>{} : std::vector<double>(p, p + n);
}

std::vector<rds::Exponent> exponents(const double* log_s, std::size_t n) {
  if (n > 0) require_ptr(log_s, "log_s");
  std::vector<rds::Exponent> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(rds::Exponent::from_log(log_s[i]));
  return out;
}

void copy_out(const std::vector<double>& v, double* dst) {
  if (dst != nullptr) std::copy(v.begin(), v.end(), dst);
}

void copy_row_major(const Eigen::MatrixXd& m, double* dst) {
  if (dst == nullptr) return;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) *dst++ = m(i, j);
  }
}

rds_enclosure to_c(rds::Enclosure e) { return {e.lo, e.hi}; }

rds_zero_bracket to_c(const rds::zeros::ZeroBracket& b) {
  return {b.s_left, b.s_right, b.f_left, b.f_right, b.degenerate ? 1 : 0,
          b.unresolved ? 1 : 0};
}

rds::zeros::ZeroBracket from_c(const rds_zero_bracket& b) {
  rds::zeros::ZeroBracket z;
  z.s_left = b.s_left;
  z.s_right = b.s_right;
  z.f_left = b.f_left;
  z.f_right = b.f_right;
  z.degenerate = b.degenerate != 0;
  z.unresolved = b.unresolved != 0;
  return z;
}

std::uint64_t n_max_or_default(std::uint64_t n_max) {
  return n_max == 0 ? rds::series::kDefaultNMax : n_max;
}

rds::zeros::PathFn callback(rds_path_fn fn, void* user) {
  require(fn != nullptr, "path callback is null");
  return [fn, user](double s) { return fn(s, user); };
}

rds_status write_brackets(const std::vector<rds::zeros::ZeroBracket>& found,
                          rds_zero_bracket* out, std::size_t cap, std::size_t* n_found) {
  if (n_found != nullptr) *n_found = found.size();
  const std::size_t n = std::min(cap, found.size());
  if (n > 0) require_ptr(out, "out");
  for (std::size_t i = 0; i < n; ++i) out[i] = to_c(found[i]);
  if (found.size() > cap) {
    throw rds::ResourceError("bracket buffer holds " + std::to_string(cap) + " of " +
                             std::to_string(found.size()));
  }
  return RDS_OK;
}

}  // namespace

extern "C" {

const char* rds_version(void) { return "0.1.0"; }

const char* rds_status_name(rds_status status) {
  switch (status) {
    case RDS_OK: return "ok";
    case RDS_ERR_DOMAIN: return "domain";
    case RDS_ERR_FEASIBILITY: return "feasibility";
    case RDS_ERR_CONDITIONING: return "conditioning";
    case RDS_ERR_CONVERGENCE: return "convergence";
    case RDS_ERR_INSUFFICIENT_SAMPLE: return "insufficient_sample";
    case RDS_ERR_RESOURCE: return "resource";
    case RDS_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case RDS_ERR_PRECISION: return "precision";
    case RDS_ERR_EVALUATION: return "evaluation";
    case RDS_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* rds_last_error(void) { return t_error.message.c_str(); }
double rds_last_error_value(void) { return t_error.value; }
double rds_last_error_aux(void) { return t_error.aux; }

void rds_set_threads(unsigned threads) { rds::set_default_workers(threads); }

/* innovations */

rds_status rds_innovation_create(rds_family family, double sigma, double p,
                                 rds_innovation** out) {
  return guarded([&] {
    require_ptr(out, "out");
    *out = nullptr;
    require(family >= RDS_RADEMACHER && family <= RDS_CENTERED_EXPONENTIAL,
            "unknown innovation family");
    *out = new rds_innovation{
        rds::InnovationSpec(static_cast<rds::Family>(family), sigma, p)};
  });
}

rds_status rds_innovation_from_name(const char* name, double sigma, double p,
                                    rds_innovation** out) {
  return guarded([&] {
    require_ptr(out, "out");
    require_ptr(name, "name");
    *out = nullptr;
    *out = new rds_innovation{rds::InnovationSpec(rds::parse_family(name), sigma, p)};
  });
}

void rds_innovation_destroy(rds_innovation* spec) { delete spec; }

rds_status rds_draw(const rds_innovation* spec, rds_seed seed, uint64_t k, double* out) {
  return guarded([&] {
    require_ptr(spec, "spec");
    require_ptr(out, "out");
    *out = rds::innovations::draw(spec->spec, ctx_of(seed), k);
  });
}

rds_status rds_truncated_second_moment(const rds_innovation* spec, double a, double* out) {
  return guarded([&] {
    require_ptr(spec, "spec");
    require_ptr(out, "out");
    *out = rds::innovations::truncated_second_moment(spec->spec, a);
  });
}

/* analytics */

rds_status rds_e1(double x, rds_enclosure* out) {
  return guarded([&] {
    require_ptr(out, "out");
    *out = to_c(rds::analytics::exp_integral_e1(x));
  });
}

rds_status rds_g_enclosure(double log_s, uint64_t direct_terms, rds_enclosure* out) {
  return guarded([&] {
    require_ptr(out, "out");
    if (direct_terms == 0) direct_terms = rds::analytics::kDefaultDirectTerms;
    *out = to_c(rds::analytics::g_enclosure(rds::Exponent::from_log(log_s), direct_terms));
  });
}

rds_status rds_cov_kernel(double alpha, double e1_exp, double e2_exp,
                          uint64_t direct_terms, rds_enclosure* out) {
  return guarded([&] {
    require_ptr(out, "out");
    if (direct_terms == 0) direct_terms = rds::analytics::kDefaultDirectTerms;
    *out = to_c(rds::analytics::cov_kernel_enclosure(alpha, e1_exp, e2_exp, direct_terms));
  });
}

rds_status rds_normalizer(rds_normalizer_kind kind, double log_s, double alpha,
                          double sigma, double* out) {
  return guarded([&] {
    require_ptr(out, "out");
    require(kind >= RDS_NORM_F && kind <= RDS_NORM_FLT_BOUNDARY, "unknown normalizer");
    *out = rds::analytics::normalizer(static_cast<rds::analytics::NormalizerKind>(kind),
                                      rds::Exponent::from_log(log_s), alpha, sigma);
  });
}

rds_status rds_schedule(rds_schedule_kind kind, double gamma, int n, double* out) {
  return guarded([&] {
    require_ptr(out, "out");
    switch (kind) {
      case RDS_SCHED_CHAINING_S: *out = rds::analytics::chaining_schedule_s(gamma, n).log(); break;
      case RDS_SCHED_SPARSE_S: *out = rds::analytics::sparse_schedule_s(gamma, n).log(); break;
      case RDS_SCHED_V: *out = rds::analytics::v_n(gamma, n); break;
      default: throw rds::InvalidArgument("unknown schedule");
    }
  });
}

rds_status rds_m_of_s(double log_s, double* out) {
  return guarded([&] {
    require_ptr(out, "out");
    *out = rds::analytics::m_of_s(rds::Exponent::from_log(log_s));
  });
}

rds_status rds_chaining_bound_check(const rds_chaining_config* cfg, rds_chaining_mode mode,
                                    uint64_t direct_terms, rds_chaining_result* out) {
  return guarded([&] {
    require_ptr(cfg, "cfg");
    require_ptr(out, "out");
    require(mode == RDS_CHAIN_SEQUENCE || mode == RDS_CHAIN_BOUNDARY, "unknown chaining mode");
    rds::analytics::ChainingConfig c;
    c.gamma = cfg->gamma;
    c.n = cfg->n;
    c.j = cfg->j;
    c.m = cfg->m;
    c.s_big = cfg->s_big;
    if (direct_terms == 0) direct_terms = 1 << 16;
    const auto r = rds::analytics::chaining_bound_check(
        c, static_cast<rds::analytics::ChainingMode>(mode), direct_terms);
    *out = {to_c(r.a_value), r.bound, r.satisfied ? 1 : 0, r.start};
  });
}

rds_status rds_i_concave_gap(double a, double b, double quad_tol, double* out) {
  return guarded([&] {
    require_ptr(out, "out");
    *out = rds::analytics::i_concave_gap(a, b, quad_tol);
  });
}

rds_status rds_lindeberg_term(double s_big, double t, double eps,
                              const rds_innovation* spec, double tol, double* out) {
  return guarded([&] {
    require_ptr(spec, "spec");
    require_ptr(out, "out");
    *out = rds::analytics::lindeberg_term(s_big, t, eps, spec->spec, tol);
  });
}

rds_status rds_decreasing_kernel_check(double a, double b, const double* grid, size_t n,
                                       int* ok) {
  return guarded([&] {
    require_ptr(ok, "ok");
    *ok = rds::analytics::decreasing_kernel_check(a, b, vec(grid, n, "grid")) ? 1 : 0;
  });
}

rds_status rds_limit_cov_alpha(double alpha, double t1, double t2, double sigma,
                               double* out) {
  return guarded([&] {
    require_ptr(out, "out");
    *out = rds::analytics::limit_cov_alpha(alpha, t1, t2, sigma);
  });
}

/* series engine */

rds_status rds_plan_truncation(double alpha, double s, double rel_tol, double variance_scale,
                               uint64_t n_max, rds_truncation_plan* out) {
  return guarded([&] {
    require_ptr(out, "out");
    if (!(variance_scale > 0.0)) {
      variance_scale = rds::series::default_variance_scale(alpha, s);
    }
    const auto p = rds::series::plan_truncation(alpha, s, rel_tol, variance_scale,
                                                n_max_or_default(n_max));
    *out = {p.cutoff_n, p.tail_variance_bound};
  });
}

rds_status rds_partial_sum(double alpha, double s, const rds_innovation* spec,
                           rds_seed seed, uint64_t n, double* out) {
  return guarded([&] {
    require_ptr(spec, "spec");
    require_ptr(out, "out");
    *out = rds::series::partial_sum({alpha, s, spec->spec}, n, ctx_of(seed));
  });
}

rds_status rds_evaluate_path(double alpha, const double* s_grid, size_t n,
                             const rds_innovation* spec, rds_seed seed, double rel_tol,
                             uint64_t n_max, double* values, uint64_t* cutoffs) {
  return guarded([&] {
    require_ptr(spec, "spec");
    require_ptr(values, "values");
    const auto ev = rds::series::evaluate_path(alpha, vec(s_grid, n, "s_grid"), spec->spec,
                                               ctx_of(seed), rel_tol,
                                               n_max_or_default(n_max));
    copy_out(ev.values, values);
    if (cutoffs != nullptr) {
      for (std::size_t i = 0; i < n; ++i) cutoffs[i] = ev.plans[i].cutoff_n;
    }
  });
}

rds_status rds_parts_identity_residual(double s, uint64_t m, const rds_innovation* spec,
                                       rds_seed seed, double quad_tol, double* out) {
  return guarded([&] {
    require_ptr(spec, "spec");
    require_ptr(out, "out");
    *out = rds::series::parts_identity_residual(s, m, spec->spec, ctx_of(seed), quad_tol);
  });
}

/* ensembles */

void rds_ensemble_destroy(rds_ensemble* ens) { delete ens; }

size_t rds_ensemble_replicates(const rds_ensemble* ens) {
  return ens == nullptr ? 0 : ens->ens.n_rep;
}

size_t rds_ensemble_dim(const rds_ensemble* ens) {
  return ens == nullptr ? 0 : ens->ens.dim();
}

const double* rds_ensemble_values(const rds_ensemble* ens) {
  return ens == nullptr ? nullptr : ens->ens.values.data();
}

const double* rds_ensemble_grid(const rds_ensemble* ens) {
  return ens == nullptr ? nullptr : ens->ens.t_grid.data();
}

const uint64_t* rds_ensemble_cutoffs(const rds_ensemble* ens, size_t* n) {
  if (ens == nullptr) {
    if (n != nullptr) *n = 0;
    return nullptr;
  }
  if (n != nullptr) *n = ens->ens.meta.cutoffs.size();
  return ens->ens.meta.cutoffs.data();
}

rds_status rds_simulate_flt_boundary(double s_big, const double* t_grid, size_t n_t,
                                     size_t n_rep, const rds_innovation* spec, rds_seed seed,
                                     double rel_tol, uint64_t n_max, rds_ensemble** out) {
  return guarded([&] {
    require_ptr(spec, "spec");
    require_ptr(out, "out");
    *out = nullptr;
    *out = new rds_ensemble{rds::flt::simulate_flt_boundary(
        s_big, vec(t_grid, n_t, "t_grid"), n_rep, spec->spec, ctx_of(seed), rel_tol,
        n_max_or_default(n_max))};
  });
}

rds_status rds_simulate_limit_alpha(double alpha, const double* t_grid, size_t n_t,
                                    size_t n_rep, double y_max, int n_steps, double sigma,
                                    rds_seed seed, rds_ensemble** out) {
  return guarded([&] {
    require_ptr(out, "out");
    *out = nullptr;
    *out = new rds_ensemble{rds::flt::simulate_limit_alpha(
        alpha, vec(t_grid, n_t, "t_grid"), n_rep, y_max, n_steps, sigma, ctx_of(seed))};
  });
}

rds_status rds_discretized_limit_cov(double alpha, double t1, double t2, double y_max,
                                     int n_steps, double sigma, double* out) {
  return guarded([&] {
    require_ptr(out, "out");
    *out = rds::flt::discretized_limit_cov(alpha, t1, t2, y_max, n_steps, sigma);
  });
}

rds_status rds_flt_truncated_covariance(double s_big, const double* t_grid, size_t n_t,
                                        const uint64_t* cutoffs, double sigma,
                                        double* out) {
  return guarded([&] {
    require_ptr(cutoffs, "cutoffs");
    require_ptr(out, "out");
    const auto cov = rds::flt::truncated_covariance(
        s_big, vec(t_grid, n_t, "t_grid"), std::vector<std::uint64_t>(cutoffs, cutoffs + n_t),
        sigma);
    std::copy(cov.begin(), cov.end(), out);
  });
}

/* exact gaussian law */

rds_status rds_build_cov(const rds_cov_grid* grid, double sigma, uint64_t direct_terms,
                         rds_factorized_cov** out) {
  namespace ge = rds::gaussian_exact;
  return guarded([&] {
    require_ptr(grid, "grid");
    require_ptr(out, "out");
    *out = nullptr;
    const auto pts = vec(grid->points, grid->n_points, "grid points");
    ge::CovGrid g;
    switch (grid->kind) {
      case RDS_GRID_LIL: g = ge::CovGrid::lil(exponents(pts.data(), pts.size())); break;
      case RDS_GRID_FLT: g = ge::CovGrid::flt(grid->s_big, pts); break;
      case RDS_GRID_ALPHA_FLT: g = ge::CovGrid::alpha_flt(grid->alpha, grid->s, pts); break;
      default: throw rds::InvalidArgument("unknown grid kind");
    }
    if (direct_terms == 0) direct_terms = rds::analytics::kDefaultDirectTerms;
    *out = new rds_factorized_cov{ge::build_cov(g, sigma, direct_terms)};
  });
}

void rds_factorized_cov_destroy(rds_factorized_cov* fc) { delete fc; }

size_t rds_factorized_cov_dim(const rds_factorized_cov* fc) {
  return fc == nullptr ? 0 : fc->fc.dim();
}

double rds_factorized_cov_jitter(const rds_factorized_cov* fc) {
  return fc == nullptr ? kNaN : fc->fc.jitter_used;
}

rds_status rds_factorized_cov_copy(const rds_factorized_cov* fc, double* matrix,
                                   double* widths, double* factor) {
  return guarded([&] {
    require_ptr(fc, "fc");
    copy_row_major(fc->fc.matrix, matrix);
    copy_row_major(fc->fc.widths, widths);
    copy_row_major(fc->fc.factor, factor);
  });
}

rds_status rds_sample_ensemble(const rds_factorized_cov* fc, size_t n_rep, rds_seed seed,
                               rds_ensemble** out) {
  return guarded([&] {
    require_ptr(fc, "fc");
    require_ptr(out, "out");
    *out = nullptr;
    *out = new rds_ensemble{rds::gaussian_exact::sample_ensemble(fc->fc, n_rep, ctx_of(seed))};
  });
}

/* statistics */

rds_status rds_compare_fdd(const rds_ensemble* ens, const double* reference,
                           rds_stat_report** out) {
  return guarded([&] {
    require_ptr(ens, "ens");
    require_ptr(out, "out");
    *out = nullptr;
    const std::size_t d = ens->ens.dim();
    *out = new rds_stat_report{
        rds::stats::compare_fdd(ens->ens, vec(reference, d * d, "reference"))};
  });
}

void rds_stat_report_destroy(rds_stat_report* rep) { delete rep; }

size_t rds_stat_report_dim(const rds_stat_report* rep) {
  return rep == nullptr ? 0 : rep->rep.dim;
}

rds_status rds_stat_report_copy(const rds_stat_report* rep, double* emp_cov,
                                double* std_errors, double* ks_stat, double* ks_p,
                                double* increment_corr) {
  return guarded([&] {
    require_ptr(rep, "rep");
    copy_out(rep->rep.empirical_cov, emp_cov);
    copy_out(rep->rep.std_errors, std_errors);
    for (std::size_t i = 0; i < rep->rep.ks.size(); ++i) {
      if (ks_stat != nullptr) ks_stat[i] = rep->rep.ks[i].statistic;
      if (ks_p != nullptr) ks_p[i] = rep->rep.ks[i].p_value;
    }
    copy_out(rep->rep.increment_corr, increment_corr);
  });
}

size_t rds_stat_report_count_within(const rds_stat_report* rep, double k) {
  return rep == nullptr ? 0 : rep->rep.count_within(k);
}

/* iterated logarithm */

rds_status rds_trajectory_ensemble(const double* log_s, size_t n_points,
                                   const rds_innovation* spec, rds_seed seed, size_t n_rep,
                                   rds_route route, double rel_tol, uint64_t n_max,
                                   rds_trajectory_set** out) {
  return guarded([&] {
    require_ptr(spec, "spec");
    require_ptr(out, "out");
    *out = nullptr;
    require(route >= RDS_ROUTE_AUTO && route <= RDS_ROUTE_GAUSSIAN_EXACT, "unknown route");
    rds::lil::EnginePolicy policy;
    policy.route = static_cast<rds::lil::Route>(route);
    policy.rel_tol = rel_tol;
    policy.n_max = n_max_or_default(n_max);
    *out = new rds_trajectory_set{rds::lil::trajectory_ensemble(
        exponents(log_s, n_points), spec->spec, ctx_of(seed), n_rep, policy)};
  });
}

void rds_trajectory_set_destroy(rds_trajectory_set* set) { delete set; }

size_t rds_trajectory_set_replicates(const rds_trajectory_set* set) {
  return set == nullptr ? 0 : set->paths.size();
}

size_t rds_trajectory_set_points(const rds_trajectory_set* set) {
  return set == nullptr || set->paths.empty() ? 0 : set->paths.front().log_s.size();
}

rds_route rds_trajectory_set_route(const rds_trajectory_set* set) {
  if (set == nullptr || set->paths.empty()) return RDS_ROUTE_AUTO;
  return static_cast<rds_route>(set->paths.front().route_used);
}

rds_status rds_trajectory_set_copy(const rds_trajectory_set* set, double* raw,
                                   double* normalized, double* running_sup,
                                   double* running_inf) {
  return guarded([&] {
    require_ptr(set, "set");
    const std::size_t n = rds_trajectory_set_points(set);
    for (std::size_t r = 0; r < set->paths.size(); ++r) {
      const auto& p = set->paths[r];
      const std::size_t off = r * n;
      if (raw != nullptr) std::copy(p.raw.begin(), p.raw.end(), raw + off);
      if (normalized != nullptr) {
        std::copy(p.normalized.begin(), p.normalized.end(), normalized + off);
      }
      if (running_sup != nullptr) {
        std::copy(p.running_sup.begin(), p.running_sup.end(), running_sup + off);
      }
      if (running_inf != nullptr) {
        std::copy(p.running_inf.begin(), p.running_inf.end(), running_inf + off);
      }
    }
  });
}

rds_status rds_limit_set_coverage(const rds_trajectory_set* set, int bins, size_t* counts,
                                  rds_coverage_summary* out) {
  return guarded([&] {
    require_ptr(set, "set");
    require_ptr(out, "out");
    const auto c = rds::lil::limit_set_coverage(set->paths, bins);
    if (counts != nullptr) std::copy(c.counts.begin(), c.counts.end(), counts);
    *out = {c.total, c.fraction_inside, c.above_one, c.below_minus_one, c.out_of_range,
            c.max_abs};
  });
}

rds_status rds_normalized_sd(double log_s, double* out) {
  return guarded([&] {
    require_ptr(out, "out");
    *out = rds::lil::normalized_sd(rds::Exponent::from_log(log_s));
  });
}

rds_status rds_event_threshold(double log_s, double rho, uint64_t k, double* out) {
  return guarded([&] {
    require_ptr(out, "out");
    const auto s = rds::Exponent::from_log(log_s);
    *out = rds::lil::event_threshold(s, rho, k, rds::analytics::g_enclosure(s).mid());
  });
}

rds_status rds_truncation_diagnostics(double log_s, double rho, const rds_innovation* spec,
                                      rds_seed seed, uint64_t k_max,
                                      rds_truncation_report* out) {
  return guarded([&] {
    require_ptr(spec, "spec");
    require_ptr(out, "out");
    const auto d = rds::lil::truncation_diagnostics(rds::Exponent::from_log(log_s), rho,
                                                    spec->spec, ctx_of(seed), k_max);
    *out = {d.m, d.fired_count, d.event_sum, d.event_expect_sum,
            d.expect_remainder_bound};
  });
}

rds_status rds_fragment_decay(rds_fragment_kind kind, const double* log_s, size_t n,
                              const rds_innovation* spec, rds_seed seed, double* out) {
  return guarded([&] {
    require_ptr(spec, "spec");
    require_ptr(out, "out");
    require(kind >= RDS_FRAG_HEAD && kind <= RDS_FRAG_TAIL,
            "unknown fragment kind");
    copy_out(rds::lil::fragment_decay(static_cast<rds::lil::FragmentKind>(kind),
                                      exponents(log_s, n), spec->spec, ctx_of(seed)),
             out);
  });
}

/* zeros */

rds_status rds_scan(rds_path_fn fn, void* user, double s_lo, double s_hi, int n_grid,
                    rds_zero_bracket* out, size_t cap, size_t* n_found) {
  return guarded([&] {
    write_brackets(rds::zeros::scan(callback(fn, user), s_lo, s_hi, n_grid), out, cap,
                   n_found);
  });
}

rds_status rds_refine(rds_path_fn fn, void* user, const rds_zero_bracket* bracket,
                      double tol, int max_iter, double* root) {
  return guarded([&] {
    require_ptr(bracket, "bracket");
    require_ptr(root, "root");
    *root = rds::zeros::refine(callback(fn, user), from_c(*bracket), tol, max_iter);
  });
}

rds_status rds_series_scan(const rds_innovation* spec, rds_seed seed, double s_lo,
                           double s_hi, int n_grid, double rel_tol, uint64_t n_max,
                           rds_zero_bracket* out, size_t cap, size_t* n_found,
                           uint64_t* cutoff) {
  return guarded([&] {
    require_ptr(spec, "spec");
    const auto path = rds::zeros::FrozenSeries::for_window(spec->spec, ctx_of(seed), s_lo,
                                                           rel_tol, n_max_or_default(n_max));
    if (cutoff != nullptr) *cutoff = path.cutoff();
    const auto grid = rds::zeros::log_grid(s_lo, s_hi, n_grid);
    auto found = rds::zeros::brackets_from_values(grid, path.evaluate(grid));
    rds::zeros::flag_unresolved(found, path);
    write_brackets(found, out, cap, n_found);
  });
}

rds_status rds_series_refine(const rds_innovation* spec, rds_seed seed, uint64_t cutoff,
                             const rds_zero_bracket* bracket, double tol, int max_iter,
                             double* root) {
  return guarded([&] {
    require_ptr(spec, "spec");
    require_ptr(bracket, "bracket");
    require_ptr(root, "root");
    const rds::zeros::FrozenSeries path(spec->spec, ctx_of(seed), cutoff);
    *root = rds::zeros::refine(path.as_function(), from_c(*bracket), tol, max_iter);
  });
}

rds_status rds_zero_count_experiment(const rds_innovation* spec, const uint64_t* seeds,
                                     size_t n_seeds, const double* windows, size_t n_windows,
                                     int n_grid, double rel_tol, uint64_t n_max,
                                     rds_window_stats* out, uint64_t* counts) {
  return guarded([&] {
    require_ptr(spec, "spec");
    require_ptr(out, "out");
    if (n_seeds > 0) require_ptr(seeds, "seeds");
    if (n_windows > 0) require_ptr(windows, "windows");
    std::vector<rds::zeros::Window> ws(n_windows);
    for (std::size_t i = 0; i < n_windows; ++i) ws[i] = {windows[2 * i], windows[2 * i + 1]};
    const auto stats = rds::zeros::zero_count_experiment(
        spec->spec, std::vector<std::uint64_t>(seeds, seeds + n_seeds), ws, n_grid, rel_tol,
        n_max_or_default(n_max));
    for (std::size_t w = 0; w < stats.size(); ++w) {
      const auto& st = stats[w];
      double unresolved = 0.0;
      for (auto u : st.unresolved) unresolved += static_cast<double>(u);
      out[w] = {st.window.s_lo, st.window.s_hi, st.mean, st.sd,
                st.unresolved.empty() ? 0.0 : unresolved / st.unresolved.size()};
      if (counts != nullptr) {
        for (std::size_t i = 0; i < st.counts.size(); ++i) {
          counts[w * n_seeds + i] = st.counts[i];
        }
      }
    }
  });
}

}  // extern "C"
