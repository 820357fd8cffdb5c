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

// Value types shared by every module.

#ifndef RDSERIES_TYPES_HPP_
#define RDSERIES_TYPES_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rdseries/errors.hpp"

namespace rds {

/// Closed interval [lo, hi] certified to contain an exact value.
struct Enclosure {
  double lo = 0.0;
  double hi = 0.0;

  double mid() const { return 0.5 * (lo + hi); }
  double width() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }
  bool overlaps(const Enclosure& o) const { return lo <= o.hi && o.lo <= hi; }

  Enclosure operator+(const Enclosure& o) const { return {lo + o.lo, hi + o.hi}; }
  Enclosure operator-(const Enclosure& o) const { return {lo - o.hi, hi - o.lo}; }
  Enclosure scaled(double c) const {
    return c >= 0 ? Enclosure{lo * c, hi * c} : Enclosure{hi * c, lo * c};
  }
  /// Widens by `r` in both directions.
  Enclosure widened(double r) const { return {lo - r, hi + r}; }
};

/// A strictly positive real carried by its natural logarithm.
///
/// The series exponent s (and sums of exponents) can be as small as
/// exp(-e^10) in the iterated-logarithm experiments, far below the double
/// range. Everything that only needs log s, log(1/s), or s·x for moderate x
/// goes through this type; `value()` underflows to 0 gracefully.
class Exponent {
 public:
  Exponent() = default;

  static Exponent of(double s) {
    if (!(s > 0.0) || !std::isfinite(s)) {
      throw DomainError("exponent must be a finite positive real, got " +
                        std::to_string(s));
    }
    return Exponent(std::log(s));
  }
  static Exponent from_log(double log_s) {
    if (std::isnan(log_s) || log_s == std::numeric_limits<double>::infinity()) {
      throw DomainError("exponent log must be finite");
    }
    if (log_s == -std::numeric_limits<double>::infinity()) {
      throw DomainError("exponent underflows even in log space");
    }
    return Exponent(log_s);
  }
  /// s with log log(1/s) = loglog_inv, i.e. s = exp(-exp(loglog_inv)).
  static Exponent from_loglog_inv(double loglog_inv) {
    return from_log(-std::exp(loglog_inv));
  }

  double log() const { return log_; }
  double value() const { return std::exp(log_); }
  /// log(1/s).
  double log_inv() const { return -log_; }

  /// log(a + b) computed without leaving log space.
  static Exponent sum(Exponent a, Exponent b) {
    const double hi = std::max(a.log_, b.log_);
    const double lo = std::min(a.log_, b.log_);
    return Exponent(hi + std::log1p(std::exp(lo - hi)));
  }
  Exponent times(double c) const {
    if (!(c > 0.0)) throw DomainError("exponent multiplier must be positive");
    return Exponent(log_ + std::log(c));
  }

  friend bool operator<(Exponent a, Exponent b) { return a.log_ < b.log_; }
  friend bool operator==(Exponent a, Exponent b) { return a.log_ == b.log_; }

 private:
  explicit Exponent(double log_s) : log_(log_s) {}
  double log_ = 0.0;
};

}  // namespace rds

#endif  // RDSERIES_TYPES_HPP_
