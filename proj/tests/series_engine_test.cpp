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


#include "rdseries/series_engine.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "rdseries/errors.hpp"

namespace rds::series {
namespace {

const SeedContext kCtx{42, 7};

TEST(PartialSum, MatchesIndependentReference) {
  const auto rad = InnovationSpec::rademacher();
  EXPECT_NEAR(partial_sum({-0.5, 0.3, rad}, 1000, kCtx), -0.08621426484536741, 1e-14);
  EXPECT_NEAR(partial_sum({-0.5, 1.0, rad}, 1000, kCtx), 0.14566926371623748, 1e-14);
  EXPECT_NEAR(partial_sum({-0.5, 0.3, InnovationSpec::gaussian()}, 1000, kCtx),
              0.5078814834517724, 1e-13);
}

TEST(PartialSum, SigmaScalesLinearly) {
  const double a = partial_sum({-0.5, 0.2, InnovationSpec::gaussian(1.0)}, 5000, kCtx);
  const double b = partial_sum({-0.5, 0.2, InnovationSpec::gaussian(3.0)}, 5000, kCtx);
  EXPECT_NEAR(b, 3.0 * a, 1e-13);
}

TEST(PartialSum, RejectsBadExponent) {
  EXPECT_THROW(partial_sum({-0.5, 0.0, InnovationSpec::rademacher()}, 10, kCtx), DomainError);
  EXPECT_THROW(partial_sum({-0.7, 0.5, InnovationSpec::rademacher()}, 10, kCtx), DomainError);
}

TEST(PlanTruncation, SmallestPowerOfTwo) {
  const double s = std::exp(-3.0);
  const TruncationPlan p = plan_truncation(-0.5, s, 0.05, default_variance_scale(-0.5, s));
  EXPECT_EQ(p.cutoff_n, std::uint64_t{1} << 20);
  // E1(2 s log N) at N = 2^20 and 2^19.
  EXPECT_NEAR(p.tail_variance_bound, 0.119732145944251, 1e-12);
  EXPECT_LE(p.tail_variance_bound, 0.05 * p.variance_scale);
  EXPECT_GT(0.133090909393492, 0.05 * p.variance_scale);
}

TEST(PlanTruncation, InfeasibleReportsMinimalLogN) {
  try {
    plan_truncation(-0.5, 0.01, 0.01, default_variance_scale(-0.5, 0.01));
    FAIL() << "expected FeasibilityError";
  } catch (const FeasibilityError& e) {
    EXPECT_NEAR(e.min_log_n(), 106.075898304958, 1e-3);
  }
}

TEST(PlanTruncation, ValidatesArguments) {
  EXPECT_THROW(plan_truncation(-0.5, 0.1, 0.0, 1.0), DomainError);
  EXPECT_THROW(plan_truncation(-0.5, 0.1, 1.0, 1.0), DomainError);
  EXPECT_THROW(plan_truncation(-0.5, 0.1, 0.1, -1.0), DomainError);
}

TEST(PlanPath, ErrorNamesOffendingPoint) {
  try {
    plan_path(-0.5, {0.5, 0.01}, 0.01);
    FAIL() << "expected FeasibilityError";
  } catch (const FeasibilityError& e) {
    EXPECT_NE(std::string(e.what()).find("0.01"), std::string::npos) << e.what();
  }
}

TEST(EvaluatePath, AgreesWithPartialSumsAtPlannedCutoffs) {
  const auto spec = InnovationSpec::rademacher();
  const std::vector<double> grid{0.2, 0.5, 1.0};
  const PathEvaluation ev = evaluate_path(-0.5, grid, spec, kCtx, 0.05);
  ASSERT_EQ(ev.values.size(), grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double ref = partial_sum({-0.5, grid[i], spec}, ev.plans[i].cutoff_n, kCtx);
    EXPECT_NEAR(ev.values[i], ref, 1e-13) << "s=" << grid[i];
  }
}

TEST(EvaluatePath, BitIdenticalAcrossWorkerCounts) {
  const auto spec = InnovationSpec::gaussian();
  const std::vector<double> grid{0.08, 0.3};
  const auto base = evaluate_path(-0.5, grid, spec, kCtx, 0.05, kDefaultNMax, 1).values;
  for (unsigned w : {2u, 8u}) {
    const auto v = evaluate_path(-0.5, grid, spec, kCtx, 0.05, kDefaultNMax, w).values;
    for (std::size_t i = 0; i < grid.size(); ++i) EXPECT_EQ(v[i], base[i]) << w;
  }
  const double p1 = partial_sum({-0.5, 0.1, spec}, 300000, kCtx, 1);
  EXPECT_EQ(partial_sum({-0.5, 0.1, spec}, 300000, kCtx, 8), p1);
}

TEST(EvaluateFixed, SharedCutoff) {
  const auto spec = InnovationSpec(Family::kCenteredUniform, 1.0);
  const auto v = evaluate_fixed(0.5, {0.7, 1.3}, 4096, spec, kCtx);
  EXPECT_NEAR(v[0], partial_sum({0.5, 0.7, spec}, 4096, kCtx), 1e-13);
  EXPECT_NEAR(v[1], partial_sum({0.5, 1.3, spec}, 4096, kCtx), 1e-13);
}

TEST(PartsIdentity, ResidualIsRoundingLevel) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> s_dist(0.01, 2.0);
  for (int i = 0; i < 10; ++i) {
    const double s = s_dist(rng);
    const std::uint64_t m = 3 + rng() % 500;
    const double r = parts_identity_residual(s, m, InnovationSpec::gaussian(), {rng(), 0}, 1e-13);
    EXPECT_LE(r, 1e-8) << "s=" << s << " m=" << m;
  }
  EXPECT_THROW(parts_identity_residual(0.5, 2, InnovationSpec::gaussian(), kCtx, 1e-12),
               DomainError);
}

TEST(PartsIdentity, ScaledInnovationsStayAtRoundingLevel) {
  const double r = detail::parts_identity_residual_scaled(0.3, 200, InnovationSpec::gaussian(),
                                                          kCtx, 1e-13, 1e3);
  EXPECT_LE(r, 1e-8 * 1e3);
}

}  // namespace
}  // namespace rds::series
