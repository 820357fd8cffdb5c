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


#include "rdseries/innovations.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <ostream>
#include <string>
#include <vector>

#include "rdseries/errors.hpp"
#include "rdseries/philox.hpp"

namespace rds {

void PrintTo(const InnovationSpec& spec, std::ostream* os) {
  *os << family_name(spec.family()) << " sigma=" << spec.sigma();
}

namespace {

const SeedContext kCtx{42, 7};

TEST(Philox, KnownAnswerAtZero) {
  const PhiloxCounter out = philox4x32_10({0, 0, 0, 0}, {0, 0});
  EXPECT_EQ(out[0], 0x6627e8d5u);
  EXPECT_EQ(out[1], 0xe169c58du);
  EXPECT_EQ(out[2], 0xbc57ac4cu);
  EXPECT_EQ(out[3], 0x9b00dbd8u);
}

TEST(Draw, RademacherMatchesReferenceStream) {
  const std::vector<double> expected{1, -1, -1, 1, -1, 1, -1, -1, 1, 1};
  const auto spec = InnovationSpec::rademacher();
  for (std::uint64_t k = 2; k < 12; ++k) {
    EXPECT_EQ(innovations::draw(spec, kCtx, k), expected[k - 2]) << "k=" << k;
  }
}

TEST(Draw, GaussianMatchesReferenceStream) {
  const auto spec = InnovationSpec::gaussian();
  EXPECT_NEAR(innovations::draw(spec, kCtx, 2), 0.16157004282462767, 1e-15);
  EXPECT_NEAR(innovations::draw(spec, kCtx, 3), 1.1854034925272372, 1e-15);
  EXPECT_NEAR(innovations::draw(spec, kCtx, 4), 0.8720562146162437, 1e-15);
}

TEST(Draw, RandomAccessIsPure) {
  const auto spec = InnovationSpec(Family::kCenteredExponential, 1.5);
  const double a = innovations::draw(spec, kCtx, 123456789);
  innovations::draw(spec, kCtx, 5);
  EXPECT_EQ(innovations::draw(spec, kCtx, 123456789), a);
}

TEST(Draw, RejectsIndexBelowTwo) {
  const auto spec = InnovationSpec::rademacher();
  EXPECT_THROW(innovations::draw(spec, kCtx, 1), DomainError);
  EXPECT_THROW(innovations::draw(spec, kCtx, 0), DomainError);
}

TEST(Spec, ValidatesParameters) {
  EXPECT_THROW(InnovationSpec(Family::kGaussian, 0.0), DomainError);
  EXPECT_THROW(InnovationSpec(Family::kGaussian, -1.0), DomainError);
  EXPECT_THROW(InnovationSpec(Family::kGaussian, NAN), DomainError);
  EXPECT_THROW(InnovationSpec(Family::kTwoPoint, 1.0, 0.0), DomainError);
  EXPECT_THROW(InnovationSpec(Family::kTwoPoint, 1.0, 1.0), DomainError);
  EXPECT_NO_THROW(InnovationSpec(Family::kTwoPoint, 1.0, 0.2));
}

TEST(Spec, FamilyNamesRoundTrip) {
  for (Family f : {Family::kRademacher, Family::kGaussian, Family::kCenteredUniform,
                   Family::kTwoPoint, Family::kCenteredExponential}) {
    EXPECT_EQ(parse_family(family_name(f)), f);
  }
  EXPECT_THROW(parse_family("cauchy"), InvalidArgument);
}

TEST(Spec, SupAbs) {
  EXPECT_EQ(InnovationSpec::rademacher(2.0).sup_abs(), 2.0);
  EXPECT_DOUBLE_EQ(InnovationSpec(Family::kCenteredUniform, 1.0).sup_abs(), std::sqrt(3.0));
  EXPECT_TRUE(std::isinf(InnovationSpec::gaussian().sup_abs()));
  const InnovationSpec tp(Family::kTwoPoint, 1.0, 0.2);
  EXPECT_DOUBLE_EQ(tp.sup_abs(), 2.0);  // low = -sqrt(0.8/0.2)
}

class FamilyMoments : public ::testing::TestWithParam<InnovationSpec> {};

TEST_P(FamilyMoments, MeanZeroVarianceSigmaSquared) {
  const InnovationSpec spec = GetParam();
  constexpr int kN = 200000;
  double sum = 0, sum2 = 0, sum4 = 0;
  for (std::uint64_t k = 2; k < kN + 2; ++k) {
    const double x = innovations::draw(spec, kCtx, k);
    sum += x;
    sum2 += x * x;
    sum4 += x * x * x * x;
  }
  const double s2 = spec.sigma() * spec.sigma();
  const double mean = sum / kN;
  const double var = sum2 / kN;
  const double var_se = std::sqrt((sum4 / kN - var * var) / kN);
  EXPECT_NEAR(mean, 0.0, 5.0 * spec.sigma() / std::sqrt(kN));
  EXPECT_NEAR(var, s2, 5.0 * var_se + 1e-12);
}

INSTANTIATE_TEST_SUITE_P(
    AllFamilies, FamilyMoments,
    ::testing::Values(InnovationSpec::rademacher(1.0), InnovationSpec::gaussian(2.0),
                      InnovationSpec(Family::kCenteredUniform, 0.5),
                      InnovationSpec(Family::kTwoPoint, 1.0, 0.3),
                      InnovationSpec(Family::kCenteredExponential, 1.0)),
    [](const auto& info) { return std::string(family_name(info.param.family())); });

TEST(TruncatedMoments, ClosedFormsAgainstQuadrature) {
  EXPECT_NEAR(innovations::truncated_second_moment(InnovationSpec::gaussian(2.0), 1.0),
              3.87656161686509308, 1e-14);
  EXPECT_NEAR(innovations::truncated_second_moment(
                  InnovationSpec(Family::kCenteredExponential, 1.0), 0.5),
              0.967009695841605165, 1e-14);
  EXPECT_NEAR(innovations::truncated_second_moment(
                  InnovationSpec(Family::kCenteredUniform, 1.0), 1.0),
              0.807549910270124745, 1e-14);
}

TEST(TruncatedMoments, FullMomentAtZero) {
  for (const auto& spec :
       {InnovationSpec::rademacher(1.5), InnovationSpec::gaussian(1.5),
        InnovationSpec(Family::kCenteredUniform, 1.5), InnovationSpec(Family::kTwoPoint, 1.5, 0.3),
        InnovationSpec(Family::kCenteredExponential, 1.5)}) {
    EXPECT_NEAR(innovations::truncated_second_moment(spec, 0.0), 2.25, 1e-12)
        << family_name(spec.family());
  }
}

TEST(TruncatedMoments, FarTail) {
  EXPECT_EQ(innovations::truncated_second_moment(InnovationSpec::rademacher(), 10.0), 0.0);
  EXPECT_EQ(innovations::truncated_second_moment(
                InnovationSpec(Family::kCenteredUniform, 1.0), 10.0),
            0.0);
  EXPECT_EQ(innovations::truncated_second_moment(
                InnovationSpec(Family::kTwoPoint, 1.0, 0.5), 10.0),
            0.0);
  EXPECT_LT(innovations::truncated_second_moment(InnovationSpec::gaussian(), 10.0), 1e-3);
  const InnovationSpec ex(Family::kCenteredExponential, 1.0);
  EXPECT_NEAR(innovations::truncated_second_moment(ex, 10.0), 122.0 * std::exp(-11.0),
              1e-16);
  EXPECT_LT(innovations::truncated_second_moment(ex, 12.0), 1e-3);
}

TEST(TruncatedMoments, RejectsNegativeLevel) {
  EXPECT_THROW(innovations::truncated_second_moment(InnovationSpec::gaussian(), -1.0),
               DomainError);
}

TEST(TruncatedMoments, FirstAndAbsoluteMomentsMatchSampling) {
  const InnovationSpec spec(Family::kCenteredExponential, 1.0);
  constexpr int kN = 400000;
  const double a = 0.7;
  double first = 0, absm = 0;
  for (std::uint64_t k = 2; k < kN + 2; ++k) {
    const double x = innovations::draw(spec, kCtx, k);
    if (std::fabs(x) > a) {
      first += x;
      absm += std::fabs(x);
    }
  }
  EXPECT_NEAR(first / kN, innovations::truncated_first_moment(spec, a), 6e-3);
  EXPECT_NEAR(absm / kN, innovations::truncated_abs_moment(spec, a), 6e-3);
  EXPECT_EQ(innovations::truncated_first_moment(InnovationSpec::gaussian(), a), 0.0);
}

TEST(Seeds, ReplicateStreamsDifferAndAreStable) {
  const SeedContext root{9, 3};
  EXPECT_EQ(root.replicate(5).stream_id, root.replicate(5).stream_id);
  EXPECT_NE(root.replicate(5).stream_id, root.replicate(6).stream_id);
  EXPECT_EQ(root.replicate(5).master_seed, 9u);
  const auto spec = InnovationSpec::gaussian();
  EXPECT_NE(innovations::draw(spec, root.replicate(0), 2),
            innovations::draw(spec, root.replicate(1), 2));
}

}  // namespace
}  // namespace rds
