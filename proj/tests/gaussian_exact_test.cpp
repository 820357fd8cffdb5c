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


#include "rdseries/gaussian_exact.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "rdseries/errors.hpp"
#include "rdseries/stats.hpp"

namespace rds::gaussian_exact {
namespace {

const std::vector<double> kTimes{0.25, 0.5, 0.75, 1.0};

TEST(BuildCov, FltGridMatchesOracleAndAsymptote) {
  const FactorizedCov fc = build_cov(CovGrid::flt(100.0, kTimes), 1.0);
  ASSERT_EQ(fc.dim(), 4u);
  EXPECT_NEAR(fc.matrix(3, 3), 0.99524315799991421, 1e-9);
  EXPECT_NEAR(fc.matrix(0, 3), 0.25217462980557238, 1e-9);
  EXPECT_NEAR(fc.matrix(0, 0), 0.24524315800003164, 1e-9);
  EXPECT_NEAR(fc.matrix(1, 2), 0.50217462980537479, 1e-9);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const double m = std::min(kTimes[i], kTimes[j]);
      EXPECT_LE(std::fabs(fc.matrix(i, j) - m), 0.1 * m + 0.02);
      EXPECT_LT(fc.widths(i, j), 1e-7);
      EXPECT_EQ(fc.matrix(i, j), fc.matrix(j, i));
    }
  }
  EXPECT_LT(round_trip_error(fc), 1e-12);
  EXPECT_EQ(fc.jitter_used, 0.0);
}

TEST(BuildCov, SigmaScalesQuadratically) {
  const FactorizedCov a = build_cov(CovGrid::flt(20.0, {0.5, 1.0}), 1.0);
  const FactorizedCov b = build_cov(CovGrid::flt(20.0, {0.5, 1.0}), 2.0);
  EXPECT_NEAR(b.matrix(0, 1), 4.0 * a.matrix(0, 1), 1e-14);
}

TEST(BuildCov, AlphaGridApproachesGammaKernel) {
  const FactorizedCov fc = build_cov(CovGrid::alpha_flt(0.0, 1e-3, {0.5, 1.0}), 1.0);
  EXPECT_NEAR(fc.matrix(0, 1), 1.0 / 1.5, 2e-3);
  EXPECT_NEAR(fc.matrix(1, 1), 0.5, 2e-3);
}

TEST(BuildCov, DeepLilGrid) {
  std::vector<Exponent> pts;
  for (double ll : {2.0, 4.0, 8.0, 16.0, 64.0}) pts.push_back(Exponent::from_loglog_inv(ll));
  const FactorizedCov fc = build_cov(CovGrid::lil(pts), 1.0);
  // Var X(s) = g(s) ~ log(1/s) = e^LL.
  EXPECT_NEAR(fc.matrix(4, 4) / std::exp(64.0), 1.0, 1e-12);
  EXPECT_LT(round_trip_error(fc), 1e-10);
}

TEST(BuildCov, RejectsDuplicatesAndBadSigma) {
  EXPECT_THROW(CovGrid::flt(10.0, {0.5, 0.5}), InvalidArgument);
  EXPECT_THROW(build_cov(CovGrid::flt(10.0, {0.5}), 0.0), DomainError);
}

TEST(Factorize, ConditioningErrorCarriesEigenvalue) {
  Eigen::MatrixXd m(2, 2);
  m << 1.0, 2.0, 2.0, 1.0;
  try {
    factorize(m);
    FAIL() << "expected ConditioningError";
  } catch (const ConditioningError& e) {
    EXPECT_NEAR(e.min_eigenvalue(), -1.0, 1e-12);
  }
}

TEST(Factorize, SingularNeedsJitter) {
  Eigen::MatrixXd m(2, 2);
  m << 1.0, 1.0, 1.0, 1.0;
  const FactorizedCov fc = factorize(m);
  EXPECT_GT(fc.jitter_used, 0.0);
  EXPECT_LT(round_trip_error(fc), 1e-6);
}

TEST(Sample, DeterministicAndMatchesCovariance) {
  const FactorizedCov fc = build_cov(CovGrid::flt(50.0, {0.5, 1.0}), 1.0);
  const SeedContext ctx{11, 2};
  const PathEnsemble a = sample_ensemble(fc, 20000, ctx, 1);
  const PathEnsemble b = sample_ensemble(fc, 20000, ctx, 4);
  EXPECT_EQ(a.values, b.values);
  const auto one = sample_one(fc, ctx.replicate(17));
  EXPECT_EQ(one[0], a.at(17, 0));
  EXPECT_EQ(one[1], a.at(17, 1));

  std::vector<double> ref(fc.matrix.data(), fc.matrix.data() + 4);
  const stats::StatReport rep = stats::compare_fdd(a, ref);
  EXPECT_EQ(rep.count_within(4.0), 4u);
  for (const auto& ks : rep.ks) EXPECT_GT(ks.p_value, 1e-3);
}

}  // namespace
}  // namespace rds::gaussian_exact

namespace rds::stats {
namespace {

TEST(Kolmogorov, PValueMatchesAsymptoticDistribution) {
  EXPECT_NEAR(kolmogorov_pvalue(0.05, 100), 0.9596004458626864, 1e-10);
  EXPECT_NEAR(kolmogorov_pvalue(0.02, 1000), 0.8149480335331604, 1e-10);
  EXPECT_NEAR(kolmogorov_pvalue(0.2, 50), 0.03137665215307253, 1e-10);
  EXPECT_NEAR(kolmogorov_pvalue(0.01, 10000), 0.2687038049688466, 1e-10);
  EXPECT_EQ(kolmogorov_pvalue(0.0, 10), 1.0);
}

TEST(Kolmogorov, NormalQuantilesFitPerfectly) {
  // Midpoint quantiles of N(0, 4): D = 1/(2n).
  std::vector<double> x;
  const int n = 200;
  for (int i = 0; i < n; ++i) {
    const double p = (i + 0.5) / n;
    // Inverse via bisection on erfc.
    double lo = -10, hi = 10;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (0.5 * std::erfc(-mid / std::sqrt(2.0)) < p ? lo : hi) = mid;
    }
    x.push_back(2.0 * lo);
  }
  const KsResult r = ks_normal(x, 4.0);
  EXPECT_NEAR(r.statistic, 0.5 / n, 1e-9);
  EXPECT_GT(r.p_value, 0.999);
}

PathEnsemble toy_ensemble(std::size_t n_rep) {
  PathEnsemble e;
  e.t_grid = {1.0, 2.0};
  e.n_rep = n_rep;
  for (std::size_t r = 0; r < n_rep; ++r) {
    const double u = std::sin(1.0 + r * 0.7);
    const double v = std::cos(2.0 + r * 1.3);
    e.values.push_back(u);
    e.values.push_back(u + v);
  }
  return e;
}

TEST(CompareFdd, ValidatesInputs) {
  EXPECT_THROW(compare_fdd(toy_ensemble(50), {1, 0, 0, 1}), InsufficientSample);
  EXPECT_THROW(compare_fdd(toy_ensemble(200), {1, 0, 0}), InvalidArgument);
}

TEST(CompareFdd, CovarianceAndJackknifeErrors) {
  const PathEnsemble e = toy_ensemble(400);
  std::vector<double> cov, se;
  covariance_with_se(e, cov, se);
  // Direct unbiased covariance.
  double m0 = 0, m1 = 0;
  for (std::size_t r = 0; r < e.n_rep; ++r) {
    m0 += e.at(r, 0);
    m1 += e.at(r, 1);
  }
  m0 /= e.n_rep;
  m1 /= e.n_rep;
  double c01 = 0;
  for (std::size_t r = 0; r < e.n_rep; ++r) c01 += (e.at(r, 0) - m0) * (e.at(r, 1) - m1);
  c01 /= (e.n_rep - 1);
  EXPECT_NEAR(cov[1], c01, 1e-14);
  EXPECT_EQ(cov[1], cov[2]);
  for (double s : se) EXPECT_GT(s, 0.0);
  const StatReport rep = compare_fdd(e, cov);
  EXPECT_EQ(rep.count_within(1e-9), 4u);
  ASSERT_EQ(rep.increment_corr.size(), 1u);
}

TEST(Median, OddAndEven) {
  EXPECT_EQ(median({3, 1, 2}), 2.0);
  EXPECT_EQ(median({4, 1, 3, 2}), 2.5);
}

}  // namespace
}  // namespace rds::stats
