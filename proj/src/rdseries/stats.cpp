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


#include "rdseries/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rdseries/errors.hpp"

namespace rds::stats {
namespace {

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const double n = static_cast<double>(a.size());
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (saa == 0.0 || sbb == 0.0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

}  // namespace

double kolmogorov_pvalue(double d, std::size_t n) {
  if (n == 0) return 1.0;
  const double en = std::sqrt(static_cast<double>(n));
  const double lambda = (en + 0.12 + 0.11 / en) * d;
  if (lambda <= 0.0) return 1.0;
  double q;
  if (lambda < 1.18) {
    // Jacobi-transformed form, rapidly convergent for small lambda.
    const double y = std::exp(-std::numbers::pi * std::numbers::pi /
                              (8.0 * lambda * lambda));
    const double y8 = std::pow(y, 8.0);
    const double s = y * (1.0 + y8 * (1.0 + y8 * y8 * (1.0 + y8 * y8 * y8)));
    q = 1.0 - std::sqrt(2.0 * std::numbers::pi) / lambda * s;
  } else {
    q = 0.0;
    double sign = 1.0;
    for (int j = 1; j <= 100; ++j) {
      const double term = std::exp(-2.0 * j * j * lambda * lambda);
      q += sign * term;
      sign = -sign;
      if (term < 1e-17) break;
    }
    q *= 2.0;
  }
  return std::clamp(q, 0.0, 1.0);
}

KsResult ks_normal(std::vector<double> x, double variance) {
  KsResult r;
  if (x.empty()) return r;
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  if (!(variance > 0.0)) {
    // Point mass at 0.
    const bool all_zero = x.front() == 0.0 && x.back() == 0.0;
    r.statistic = all_zero ? 0.0 : 1.0;
    r.p_value = all_zero ? 1.0 : 0.0;
    return r;
  }
  const double scale = 1.0 / std::sqrt(2.0 * variance);
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = 0.5 * std::erfc(-x[i] * scale);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  r.statistic = d;
  r.p_value = kolmogorov_pvalue(d, x.size());
  return r;
}

std::size_t StatReport::count_within(double k) const {
  std::size_t c = 0;
  for (std::size_t i = 0; i < empirical_cov.size(); ++i) {
    if (std::fabs(empirical_cov[i] - reference_cov[i]) <= k * std_errors[i]) ++c;
  }
  return c;
}

void covariance_with_se(const PathEnsemble& ens, std::vector<double>& cov,
                        std::vector<double>& se) {
  const std::size_t p = ens.dim();
  const std::size_t n = ens.n_rep;
  if (n < 3) throw InsufficientSample("covariance needs at least 3 replicates");
  std::vector<double> mean(p, 0.0);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t i = 0; i < p; ++i) mean[i] += ens.at(r, i);
  for (double& m : mean) m /= static_cast<double>(n);

  cov.assign(p * p, 0.0);
  se.assign(p * p, 0.0);
  const double nd = static_cast<double>(n);
  std::vector<double> d(n);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = i; j < p; ++j) {
      double sum = 0.0;
      for (std::size_t r = 0; r < n; ++r) {
        d[r] = (ens.at(r, i) - mean[i]) * (ens.at(r, j) - mean[j]);
        sum += d[r];
      }
      const double dbar = sum / nd;
      double ss = 0.0;
      for (std::size_t r = 0; r < n; ++r) ss += (d[r] - dbar) * (d[r] - dbar);
      // Leave-one-out covariances are (S - d_r n/(n-1))/(n-2); their
      // jackknife variance collapses to this closed form.
      const double var = nd / ((nd - 1.0) * (nd - 2.0) * (nd - 2.0)) * ss;
      cov[i * p + j] = cov[j * p + i] = sum / (nd - 1.0);
      se[i * p + j] = se[j * p + i] = std::sqrt(var);
    }
  }
}

StatReport compare_fdd(const PathEnsemble& ens, const std::vector<double>& reference) {
  const std::size_t p = ens.dim();
  if (reference.size() != p * p) {
    throw InvalidArgument("reference matrix dimension does not match t_grid");
  }
  if (ens.n_rep < 100) {
    throw InsufficientSample("compare_fdd needs at least 100 replicates");
  }
  StatReport rep;
  rep.dim = p;
  rep.n_rep = ens.n_rep;
  rep.reference_cov = reference;
  covariance_with_se(ens, rep.empirical_cov, rep.std_errors);

  rep.mean.assign(p, 0.0);
  for (std::size_t i = 0; i < p; ++i) {
    const std::vector<double> col = ens.column(i);
    double m = 0.0;
    for (double v : col) m += v;
    rep.mean[i] = m / static_cast<double>(col.size());
    rep.ks.push_back(ks_normal(col, reference[i * p + i]));
  }

  std::vector<double> prev = ens.column(0);
  for (std::size_t i = 1; i < p; ++i) {
    const std::vector<double> cur_level = ens.column(i);
    const std::vector<double> last_level = ens.column(i - 1);
    std::vector<double> inc(ens.n_rep);
    for (std::size_t r = 0; r < ens.n_rep; ++r) inc[r] = cur_level[r] - last_level[r];
    rep.increment_corr.push_back(pearson(prev, inc));
    prev = std::move(inc);
  }
  return rep;
}

double median(std::vector<double> x) {
  if (x.empty()) throw InsufficientSample("median of an empty sample");
  const std::size_t mid = x.size() / 2;
  std::nth_element(x.begin(), x.begin() + mid, x.end());
  double m = x[mid];
  if (x.size() % 2 == 0) {
    m = 0.5 * (m + *std::max_element(x.begin(), x.begin() + mid));
  }
  return m;
}

}  // namespace rds::stats
