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

#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace rds::special {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

Enclosure e1_series(double x) {
  // E1(x) = -gamma - log x + sum_{n>=1} (-1)^(n+1) x^n / (n n!)
  double power = x;  // x^n / n!
  double sum = 0.0;
  double abs_sum = 0.0;
  int n = 1;
  double next = x;
  for (; n < 200; ++n) {
    const double t = power / n;
    sum += (n % 2 == 1) ? t : -t;
    abs_sum += t;
    power *= x / (n + 1);
    next = power / (n + 1);
    if (next < 1e-3 * kEps * abs_sum) break;
  }
  const double log_x = std::log(x);
  const double v = -kEulerGamma - log_x + sum;
  const double margin =
      next + 8.0 * kEps * (kEulerGamma + std::fabs(log_x) + abs_sum + std::fabs(v));
  return {v - margin, v + margin};
}

Enclosure e1_continued_fraction(double x) {
  // Modified Lentz on e^-x / (x + 1 - 1/(x + 3 - 4/(x + 5 - ...))).
  constexpr double kTiny = 1e-300;
  double b = x + 1.0;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  double last_step = std::fabs(h);
  for (int i = 1; i < 10000; ++i) {
    const double an = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (an * d + b);
    c = b + an / c;
    const double del = c * d;
    const double prev = h;
    h *= del;
    last_step = std::fabs(h - prev);
    if (std::fabs(del - 1.0) <= kEps) break;
  }
  const double scale = std::exp(-x);
  const double v = h * scale;
  const double margin = (last_step + 8.0 * kEps * std::fabs(h)) * scale +
                        4.0 * kEps * std::fabs(v);
  return {v - margin, v + margin};
}

}  // namespace

Enclosure e1(double x) {
  if (!(x > 0.0)) throw DomainError("e1 requires x > 0");
  if (x == std::numeric_limits<double>::infinity()) return {0.0, 0.0};
  if (x < 1.0) return e1_series(x);
  if (x > 700.0) {
    // 0 < E1(x) < e^-x / x
    const double hi = std::exp(-x) / x;
    return {0.0, hi > 0.0 ? hi : std::numeric_limits<double>::denorm_min()};
  }
  Enclosure r = e1_continued_fraction(x);
  r.lo = std::max(r.lo, 0.0);
  return r;
}

Enclosure e1_from_log(double log_x) {
  if (std::isnan(log_x)) throw DomainError("e1_from_log: NaN argument");
  if (log_x < -36.0) {
    // E1(x) = -gamma - log x + x - x^2/4 + ..., and the alternating tail
    // lies in [0, x].
    const double x = std::exp(log_x);
    const double v = -kEulerGamma - log_x;
    const double r = 4.0 * kEps * std::fabs(v);
    return {v - r, v + x + r};
  }
  const double x = std::exp(log_x);
  // Relative rounding of x moves E1 by at most e^-x * eps.
  return e1(x).widened(2.0 * kEps * std::exp(-x));
}

Enclosure upper_gamma(double a, double x) {
  if (!(a > 0.0)) throw DomainError("upper_gamma requires a > 0");
  if (!(x >= 0.0)) throw DomainError("upper_gamma requires x >= 0");
  const double v =
      x == 0.0 ? boost::math::tgamma(a) : boost::math::tgamma(a, x);
  const double r = 64.0 * kEps * std::fabs(v);
  const double hi = v + r;
  return {std::max(0.0, v - r),
          hi > 0.0 ? hi : std::numeric_limits<double>::denorm_min()};
}

double lower_gamma(double a, double x) {
  if (!(a > 0.0)) throw DomainError("lower_gamma requires a > 0");
  if (!(x >= 0.0)) throw DomainError("lower_gamma requires x >= 0");
  return x == 0.0 ? 0.0 : boost::math::tgamma_lower(a, x);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol) {
  if (a == b) return 0.0;
  double error = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      f, a, b, 20, tol, &error);
}

double i_function(double y, double quad_tol) {
  if (!(y >= 0.0)) throw DomainError("I(y) requires y >= 0");
  if (y == 0.0) return 0.0;
  if (y <= 4.0) {
    // sum_{n>=1} (-1)^(n+1) y^n / (n n!)
    double power = y;
    double sum = 0.0;
    for (int n = 1; n < 60; ++n) {
      const double t = power / n;
      sum += (n % 2 == 1) ? t : -t;
      if (t < 1e-3 * kEps * sum) break;
      power *= y / (n + 1);
    }
    return sum;
  }
  auto integrand = [](double x) {
    return x == 0.0 ? 1.0 : -std::expm1(-x) / x;
  };
  return integrate(integrand, 0.0, y, quad_tol);
}

}  // namespace rds::special
