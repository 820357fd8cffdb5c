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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "rdseries/errors.hpp"

namespace rds::zeros {
namespace {

double cos_inverse(double s) { return std::cos(1.0 / s); }

TEST(Scan, FindsCosInverseZeros) {
  const auto br = scan(cos_inverse, 0.05, 1.0, 4000);
  ASSERT_EQ(br.size(), 6u);
  // Scan runs in ascending s, so the largest k comes first.
  for (std::size_t i = 0; i < br.size(); ++i) {
    const int k = static_cast<int>(br.size() - 1 - i);
    const double exact = 2.0 / ((2 * k + 1) * std::numbers::pi);
    const double z = refine(cos_inverse, br[i], 1e-14, 200);
    EXPECT_NEAR(z, exact, 1e-9) << "k=" << k;
  }
}

TEST(Scan, GridEndpointsAreExact) {
  const auto g = log_grid(0.05, 1.0, 17);
  EXPECT_EQ(g.front(), 0.05);
  EXPECT_EQ(g.back(), 1.0);
  for (std::size_t i = 1; i < g.size(); ++i) EXPECT_GT(g[i], g[i - 1]);
  EXPECT_THROW(log_grid(0.0, 1.0, 10), DomainError);
  EXPECT_THROW(log_grid(0.5, 0.2, 10), DomainError);
  EXPECT_THROW(log_grid(0.1, 1.0, 1), DomainError);
}

TEST(Scan, NonFiniteValueNamesThePoint) {
  try {
    brackets_from_values({0.1, 0.2, 0.3}, {1.0, NAN, -1.0});
    FAIL() << "expected EvaluationError";
  } catch (const EvaluationError& e) {
    EXPECT_NE(std::string(e.what()).find("0.2"), std::string::npos);
  }
  EXPECT_THROW(brackets_from_values({0.1, 0.2}, {1.0}), InvalidArgument);
}

TEST(Scan, ExactGridZeroIsDegenerate) {
  const auto br = brackets_from_values({0.1, 0.2, 0.3}, {1.0, 0.0, -1.0});
  ASSERT_EQ(br.size(), 1u);
  EXPECT_TRUE(br[0].degenerate);
  EXPECT_EQ(refine(cos_inverse, br[0], 1e-12, 10), 0.2);
}

TEST(Refine, ReportsBestBracketOnExhaustion) {
  const auto br = scan(cos_inverse, 0.5, 1.0, 10);
  ASSERT_EQ(br.size(), 1u);
  try {
    refine(cos_inverse, br[0], 1e-15, 5);
    FAIL() << "expected ConvergenceError";
  } catch (const ConvergenceError& e) {
    EXPECT_LE(e.best_left(), 2.0 / std::numbers::pi);
    EXPECT_GE(e.best_right(), 2.0 / std::numbers::pi);
    EXPECT_LT(e.best_right() - e.best_left(), br[0].s_right - br[0].s_left);
  }
  ZeroBracket bad{0.1, 0.2, 1.0, 1.0, false, false};
  EXPECT_THROW(refine(cos_inverse, bad, 1e-9, 10), InvalidArgument);
}

TEST(FrozenSeries, MatchesPartialSumAtItsCutoff) {
  const auto spec = InnovationSpec::rademacher();
  const SeedContext ctx{11, 0};
  const FrozenSeries path(spec, ctx, 100000);
  for (double s : {0.2, 0.5, 1.0}) {
    EXPECT_NEAR(path(s), series::partial_sum({-0.5, s, spec}, 100000, ctx), 1e-12);
  }
  EXPECT_THROW(FrozenSeries(spec, ctx, 1), DomainError);
}

TEST(FrozenSeries, WindowCutoffCoversWindow) {
  const auto spec = InnovationSpec::rademacher();
  const auto path = FrozenSeries::for_window(spec, {3, 0}, 0.2, 0.05);
  const auto plan = series::plan_truncation(-0.5, 0.2, 0.05,
                                            series::default_variance_scale(-0.5, 0.2));
  EXPECT_EQ(path.cutoff(), plan.cutoff_n);
  EXPECT_GT(path.noise_bound(0.2), path.noise_bound(1.0));
}

TEST(FrozenSeries, UnresolvedFlagUsesNoiseBound) {
  const auto spec = InnovationSpec::rademacher();
  const FrozenSeries path(spec, {3, 0}, 1024);
  const double noise = path.noise_bound(0.3);
  std::vector<ZeroBracket> br{{0.3, 0.31, noise, -1.0, false, false},
                              {0.3, 0.31, 10.0 * noise, -1.0, false, false}};
  flag_unresolved(br, path);
  EXPECT_TRUE(br[0].unresolved);
  EXPECT_FALSE(br[1].unresolved);
}

TEST(Experiment, CountsWithInjectedEvaluator) {
  const detail::Evaluator values = [](std::uint64_t seed, const std::vector<double>& g) {
    std::vector<double> v;
    for (double s : g) v.push_back(std::cos((1.0 + static_cast<double>(seed)) / s));
    return v;
  };
  const auto stats = detail::zero_count_with(values, {0, 1}, {{0.05, 1.0}, {0.2, 1.0}}, 4000);
  ASSERT_EQ(stats.size(), 2u);
  EXPECT_EQ(stats[0].counts[0], 6u);
  EXPECT_EQ(stats[1].counts[0], 2u);
  EXPECT_EQ(stats[0].counts[1], 12u);
  EXPECT_GE(stats[0].mean, stats[1].mean);
}

TEST(Experiment, WiderWindowNeverHasFewerZerosOnAverage) {
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t i = 0; i < 8; ++i) seeds.push_back(100 + i);
  const auto stats = zero_count_experiment(InnovationSpec::rademacher(), seeds,
                                           {{0.2, 1.0}, {0.05, 1.0}}, 100);
  ASSERT_EQ(stats.size(), 2u);
  EXPECT_EQ(stats[0].counts.size(), seeds.size());
  EXPECT_GE(stats[1].mean, stats[0].mean);
  const auto again = zero_count_experiment(InnovationSpec::rademacher(), seeds,
                                           {{0.2, 1.0}, {0.05, 1.0}}, 100, 0.05,
                                           series::kDefaultNMax, 1);
  EXPECT_EQ(again[1].counts, stats[1].counts);
}

}  // namespace
}  // namespace rds::zeros
