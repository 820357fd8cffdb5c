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


#include "rdseries/special.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>

#include "rdseries/errors.hpp"

namespace rds::special {
namespace {

struct E1Case {
  double x;
  double expected;
};

void PrintTo(const E1Case& c, std::ostream* os) { *os << "x=" << c.x; }

class E1Values : public ::testing::TestWithParam<E1Case> {};

TEST_P(E1Values, EnclosesReference) {
  const auto [x, expected] = GetParam();
  const Enclosure e = e1(x);
  EXPECT_TRUE(e.contains(expected) ||
              std::fabs(e.mid() - expected) <= 1e-14 * expected)
      << "x=" << x << " [" << e.lo << ", " << e.hi << "]";
  EXPECT_LE(e.width(), 1e-12 * expected);
  const Enclosure l = e1_from_log(std::log(x));
  // x itself carries a relative rounding of about eps once it goes through log.
  const double rel = std::max(1e-13, 4.0 * x * std::numeric_limits<double>::epsilon());
  EXPECT_NEAR(l.mid(), expected, rel * expected);
}

INSTANTIATE_TEST_SUITE_P(Mpmath, E1Values,
                         ::testing::Values(E1Case{1e-8, 17.843465089050832587},
                                           E1Case{0.5, 0.55977359477616081175},
                                           E1Case{1.0, 0.21938393439552027368},
                                           E1Case{2.0, 0.048900510708061119567},
                                           E1Case{10.0, 4.1569689296853242774e-6},
                                           E1Case{50.0, 3.7832640295504590187e-24},
                                           E1Case{700.0, 1.4065187662340329228e-307}),
                         [](const auto& info) { return "case" + std::to_string(info.index); });

TEST(E1, DeepLogArgumentUsesSmallXExpansion) {
  // x = 1e-30: E1 = -gamma - log x + x + ...
  const double log_x = -30.0 * std::numbers::ln10;
  const Enclosure e = e1_from_log(log_x);
  EXPECT_NEAR(e.mid(), -kEulerGamma - log_x, 1e-12);
}

TEST(E1, UnderflowBeyondRangeIsBracketed) {
  const Enclosure e = e1(800.0);
  EXPECT_GE(e.lo, 0.0);
  EXPECT_LT(e.hi, 1e-300);
}

TEST(E1, RejectsNonPositive) {
  EXPECT_THROW(e1(0.0), DomainError);
  EXPECT_THROW(e1(-1.0), DomainError);
}

TEST(IncompleteGamma, ReducesToE1AndExponential) {
  // Gamma(1, x) = e^-x.
  EXPECT_NEAR(upper_gamma(1.0, 2.0).mid(), std::exp(-2.0), 1e-15);
  EXPECT_NEAR(lower_gamma(1.0, 2.0), 1.0 - std::exp(-2.0), 1e-15);
  EXPECT_NEAR(upper_gamma(2.5, 1.0).mid() + lower_gamma(2.5, 1.0), std::tgamma(2.5), 1e-13);
}

TEST(Integrate, Polynomial) {
  EXPECT_NEAR(integrate([](double x) { return x * x; }, 0.0, 3.0, 1e-14), 9.0, 1e-13);
}

TEST(IFunction, ConcaveGapOracle) {
  auto gap = [](double a, double b) {
    return i_function(2 * a, 1e-14) + i_function(2 * b, 1e-14) - 2 * i_function(a + b, 1e-14);
  };
  EXPECT_NEAR(gap(0.0, 1.0), -0.27393584242456697898, 1e-13);
  EXPECT_NEAR(gap(0.3, 0.7), -0.042522440175058367119, 1e-13);
  EXPECT_EQ(i_function(0.0, 1e-12), 0.0);
  // I(y) = E1(y) + log y + gamma.
  EXPECT_NEAR(i_function(2.0, 1e-14), e1(2.0).mid() + std::log(2.0) + kEulerGamma, 1e-13);
  EXPECT_NEAR(i_function(1e-3, 1e-14), e1(1e-3).mid() + std::log(1e-3) + kEulerGamma, 1e-15);
  EXPECT_NEAR(i_function(10.0, 1e-13), e1(10.0).mid() + std::log(10.0) + kEulerGamma, 1e-12);
}

}  // namespace
}  // namespace rds::special
