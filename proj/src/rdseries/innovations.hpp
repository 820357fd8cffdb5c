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

// Innovation laws (mean 0, variance sigma^2) with random access to the
// i.i.d. sequence eta_2, eta_3, ... keyed by (seed, stream, k).

#ifndef RDSERIES_INNOVATIONS_HPP_
#define RDSERIES_INNOVATIONS_HPP_

#include <cstdint>
#include <string>
#include <string_view>

#include "rdseries/philox.hpp"

namespace rds {

enum class Family {
  kRademacher = 0,
  kGaussian = 1,
  kCenteredUniform = 2,
  kTwoPoint = 3,
  kCenteredExponential = 4,
};

std::string_view family_name(Family f);
Family parse_family(std::string_view name);

class InnovationSpec {
 public:
  /// `p` is only read for two_point and must lie in (0, 1).
  InnovationSpec(Family family, double sigma, double p = 0.5);

  static InnovationSpec rademacher(double sigma = 1.0) {
    return {Family::kRademacher, sigma};
  }
  static InnovationSpec gaussian(double sigma = 1.0) {
    return {Family::kGaussian, sigma};
  }

  Family family() const { return family_; }
  double sigma() const { return sigma_; }
  double p() const { return p_; }
  bool is_gaussian() const { return family_ == Family::kGaussian; }

  /// Largest |eta|, or +inf for unbounded families.
  double sup_abs() const;

  /// two_point support: value `low()` with probability p, `high()` otherwise.
  double low() const;
  double high() const;

  /// The same family rescaled to standard deviation `sigma`.
  InnovationSpec with_sigma(double sigma) const {
    return InnovationSpec(family_, sigma, p_);
  }

 private:
  Family family_;
  double sigma_;
  double p_;
};

struct SeedContext {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;

  /// Context for replicate r of an ensemble rooted at this context.
  SeedContext replicate(std::uint64_t r) const {
    return {master_seed, mix64(stream_id ^ mix64(r + 0x5851F42D4C957F2Dull))};
  }
};

namespace innovations {

/// eta_k for the stream. Requires k >= 2.
double draw(const InnovationSpec& spec, const SeedContext& ctx,
            std::uint64_t k);

/// Standard normal keyed like `draw`; any k >= 1.
double standard_normal(const SeedContext& ctx, std::uint64_t k);

/// E[eta^2 1{|eta| > a}], a >= 0.
double truncated_second_moment(const InnovationSpec& spec, double a);

/// E[eta 1{|eta| > a}], a >= 0. Zero for symmetric laws.
double truncated_first_moment(const InnovationSpec& spec, double a);

/// E[|eta| 1{|eta| > a}], a >= 0.
double truncated_abs_moment(const InnovationSpec& spec, double a);

namespace detail {
/// Same as `draw` without the k >= 2 guard (random-walk identities need
/// eta_1).
double draw_any(const InnovationSpec& spec, const SeedContext& ctx,
                std::uint64_t k);
}  // namespace detail

}  // namespace innovations
}  // namespace rds

#endif  // RDSERIES_INNOVATIONS_HPP_
