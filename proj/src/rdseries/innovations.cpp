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

#include <cmath>
#include <limits>
#include <numbers>

#include "rdseries/errors.hpp"

namespace rds {
namespace {

constexpr double kTwoPow53Inv = 1.0 / 9007199254740992.0;

struct Words {
  std::uint64_t a;
  std::uint64_t b;
};

Words counter_words(const SeedContext& ctx, std::uint64_t k) {
  const PhiloxCounter ctr = {
      static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32),
      static_cast<std::uint32_t>(ctx.stream_id),
      static_cast<std::uint32_t>(ctx.stream_id >> 32)};
  const PhiloxKey key = {static_cast<std::uint32_t>(ctx.master_seed),
                         static_cast<std::uint32_t>(ctx.master_seed >> 32)};
  const PhiloxCounter out = philox4x32_10(ctr, key);
  return {std::uint64_t{out[0]} | (std::uint64_t{out[1]} << 32),
          std::uint64_t{out[2]} | (std::uint64_t{out[3]} << 32)};
}

// Uniform on the open interval (0, 1).
double open_unit(std::uint64_t w) {
  return (static_cast<double>(w >> 11) + 0.5) * kTwoPow53Inv;
}

double normal_from(Words w) {
  const double u1 = open_unit(w.a);
  const double u2 = open_unit(w.b);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

double normal_pdf(double z) {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

}  // namespace

std::string_view family_name(Family f) {
  switch (f) {
    case Family::kRademacher: return "rademacher";
    case Family::kGaussian: return "gaussian";
    case Family::kCenteredUniform: return "centered_uniform";
    case Family::kTwoPoint: return "two_point";
    case Family::kCenteredExponential: return "centered_exponential";
  }
  return "unknown";
}

Family parse_family(std::string_view name) {
  for (Family f : {Family::kRademacher, Family::kGaussian,
                   Family::kCenteredUniform, Family::kTwoPoint,
                   Family::kCenteredExponential}) {
    if (family_name(f) == name) return f;
  }
  throw InvalidArgument("unknown innovation family '" + std::string(name) +
                        "'");
}

InnovationSpec::InnovationSpec(Family family, double sigma, double p)
    : family_(family), sigma_(sigma), p_(p) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw DomainError("innovation sigma must be a finite positive real");
  }
  if (family == Family::kTwoPoint && !(p > 0.0 && p < 1.0)) {
    throw DomainError("two_point requires p in (0, 1)");
  }
  if (static_cast<int>(family) < 0 || static_cast<int>(family) > 4) {
    throw InvalidArgument("unknown innovation family");
  }
}

double InnovationSpec::sup_abs() const {
  switch (family_) {
    case Family::kRademacher: return sigma_;
    case Family::kCenteredUniform: return std::sqrt(3.0) * sigma_;
    case Family::kTwoPoint: return std::max(-low(), high());
    case Family::kGaussian:
    case Family::kCenteredExponential:
      return std::numeric_limits<double>::infinity();
  }
  return std::numeric_limits<double>::infinity();
}

double InnovationSpec::low() const {
  return -sigma_ * std::sqrt((1.0 - p_) / p_);
}

double InnovationSpec::high() const {
  return sigma_ * std::sqrt(p_ / (1.0 - p_));
}

namespace innovations {

double detail::draw_any(const InnovationSpec& spec, const SeedContext& ctx,
                        std::uint64_t k) {
  const Words w = counter_words(ctx, k);
  const double sigma = spec.sigma();
  switch (spec.family()) {
    case Family::kRademacher:
      return (w.a >> 63) ? sigma : -sigma;
    case Family::kGaussian:
      return sigma * normal_from(w);
    case Family::kCenteredUniform:
      return std::sqrt(3.0) * sigma * (2.0 * open_unit(w.a) - 1.0);
    case Family::kTwoPoint:
      return open_unit(w.a) < spec.p() ? spec.low() : spec.high();
    case Family::kCenteredExponential:
      return sigma * (-std::log(open_unit(w.a)) - 1.0);
  }
  return 0.0;
}

double draw(const InnovationSpec& spec, const SeedContext& ctx,
            std::uint64_t k) {
  if (k < 2) throw DomainError("innovation index must be >= 2");
  return detail::draw_any(spec, ctx, k);
}

double standard_normal(const SeedContext& ctx, std::uint64_t k) {
  return normal_from(counter_words(ctx, k));
}

double truncated_second_moment(const InnovationSpec& spec, double a) {
  if (!(a >= 0.0)) throw DomainError("truncation level must be >= 0");
  const double sigma = spec.sigma();
  const double s2 = sigma * sigma;
  switch (spec.family()) {
    case Family::kRademacher:
      return a < sigma ? s2 : 0.0;
    case Family::kGaussian: {
      const double z = a / sigma;
      return s2 * (2.0 * z * normal_pdf(z) + std::erfc(z / std::sqrt(2.0)));
    }
    case Family::kCenteredUniform: {
      const double c = std::sqrt(3.0) * sigma;
      return a < c ? (c * c * c - a * a * a) / (3.0 * c) : 0.0;
    }
    case Family::kTwoPoint: {
      double m = 0.0;
      if (-spec.low() > a) m += spec.p() * spec.low() * spec.low();
      if (spec.high() > a) m += (1.0 - spec.p()) * spec.high() * spec.high();
      return m;
    }
    case Family::kCenteredExponential: {
      // eta = sigma (E - 1); antiderivative of (x-1)^2 e^{-x} is
      // -e^{-x}(x^2 + 1).
      const double u = a / sigma;
      double m = std::exp(-(1.0 + u)) * ((1.0 + u) * (1.0 + u) + 1.0);
      if (u < 1.0) {
        const double x = 1.0 - u;
        m += 1.0 - std::exp(-x) * (x * x + 1.0);
      }
      return s2 * m;
    }
  }
  return 0.0;
}

double truncated_first_moment(const InnovationSpec& spec, double a) {
  if (!(a >= 0.0)) throw DomainError("truncation level must be >= 0");
  switch (spec.family()) {
    case Family::kRademacher:
    case Family::kGaussian:
    case Family::kCenteredUniform:
      return 0.0;
    case Family::kTwoPoint: {
      double m = 0.0;
      if (-spec.low() > a) m += spec.p() * spec.low();
      if (spec.high() > a) m += (1.0 - spec.p()) * spec.high();
      return m;
    }
    case Family::kCenteredExponential: {
      const double u = a / spec.sigma();
      double m = (1.0 + u) * std::exp(-(1.0 + u));
      if (u < 1.0) m -= (1.0 - u) * std::exp(-(1.0 - u));
      return spec.sigma() * m;
    }
  }
  return 0.0;
}

double truncated_abs_moment(const InnovationSpec& spec, double a) {
  if (!(a >= 0.0)) throw DomainError("truncation level must be >= 0");
  const double sigma = spec.sigma();
  switch (spec.family()) {
    case Family::kRademacher:
      return a < sigma ? sigma : 0.0;
    case Family::kGaussian:
      return 2.0 * sigma * normal_pdf(a / sigma);
    case Family::kCenteredUniform: {
      const double c = std::sqrt(3.0) * sigma;
      return a < c ? (c * c - a * a) / (2.0 * c) : 0.0;
    }
    case Family::kTwoPoint: {
      double m = 0.0;
      if (-spec.low() > a) m += spec.p() * -spec.low();
      if (spec.high() > a) m += (1.0 - spec.p()) * spec.high();
      return m;
    }
    case Family::kCenteredExponential: {
      const double u = a / sigma;
      double m = (1.0 + u) * std::exp(-(1.0 + u));
      if (u < 1.0) m += (1.0 - u) * std::exp(-(1.0 - u));
      return sigma * m;
    }
  }
  return 0.0;
}

}  // namespace innovations
}  // namespace rds
