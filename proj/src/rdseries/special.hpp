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


// Special functions with certified enclosures: the exponential integral,
// the upper incomplete gamma function, and I(y) = int_0^y (1 - e^-x)/x dx.

#ifndef RDSERIES_SPECIAL_HPP_
#define RDSERIES_SPECIAL_HPP_

#include <functional>

#include "rdseries/types.hpp"

namespace rds::special {

inline constexpr double kEulerGamma = 0.57721566490153286060651209;

/// E1(x) = int_x^inf e^-y / y dy, x > 0.
Enclosure e1(double x);

/// E1(exp(log_x)); stays accurate when x underflows a double.
Enclosure e1_from_log(double log_x);

/// Gamma(a, x) = int_x^inf y^(a-1) e^-y dy for a > 0, x >= 0.
Enclosure upper_gamma(double a, double x);

/// gamma(a, x) = int_0^x y^(a-1) e^-y dy for a > 0, x >= 0.
double lower_gamma(double a, double x);

/// Adaptive Gauss-Kronrod (15 point) integral of f over [a, b].
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol);

/// I(y) = int_0^y (1 - e^-x) / x dx: power series up to y = 4, adaptive
/// quadrature beyond.
double i_function(double y, double quad_tol);

}  // namespace rds::special

#endif  // RDSERIES_SPECIAL_HPP_
