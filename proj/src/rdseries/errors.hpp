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

#ifndef RDSERIES_ERRORS_HPP_
#define RDSERIES_ERRORS_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rds {

// Numeric values are part of the C ABI (see rdseries.h); do not reorder.
enum class ErrorCode : int {
  kOk = 0,
  kDomain = 1,
  kFeasibility = 2,
  kConditioning = 3,
  kConvergence = 4,
  kInsufficientSample = 5,
  kResource = 6,
  kInvalidArgument = 7,
  kPrecision = 8,
  kEvaluation = 9,
  kInternal = 10,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what)
      : Error(ErrorCode::kDomain, what) {}
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what)
      : Error(ErrorCode::kInvalidArgument, what) {}
};

// Raised when a truncation cutoff would exceed the configured cap.
// `min_log_n` is the estimated smallest log N that meets the tolerance;
// `max_usable` carries a caller-specific frontier (e.g. the largest
// usable s_big for an FLT grid) or NaN when not applicable.
class FeasibilityError : public Error {
 public:
  FeasibilityError(const std::string& what, double min_log_n,
                   double max_usable)
      : Error(ErrorCode::kFeasibility, what),
        min_log_n_(min_log_n),
        max_usable_(max_usable) {}
  double min_log_n() const noexcept { return min_log_n_; }
  double max_usable() const noexcept { return max_usable_; }

 private:
  double min_log_n_;
  double max_usable_;
};

class ConditioningError : public Error {
 public:
  ConditioningError(const std::string& what, double min_eigenvalue)
      : Error(ErrorCode::kConditioning, what),
        min_eigenvalue_(min_eigenvalue) {}
  double min_eigenvalue() const noexcept { return min_eigenvalue_; }

 private:
  double min_eigenvalue_;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double best_left,
                   double best_right)
      : Error(ErrorCode::kConvergence, what),
        best_left_(best_left),
        best_right_(best_right) {}
  double best_left() const noexcept { return best_left_; }
  double best_right() const noexcept { return best_right_; }

 private:
  double best_left_;
  double best_right_;
};

class InsufficientSample : public Error {
 public:
  explicit InsufficientSample(const std::string& what)
      : Error(ErrorCode::kInsufficientSample, what) {}
};

class ResourceError : public Error {
 public:
  explicit ResourceError(const std::string& what)
      : Error(ErrorCode::kResource, what) {}
};

class PrecisionError : public Error {
 public:
  explicit PrecisionError(const std::string& what)
      : Error(ErrorCode::kPrecision, what) {}
};

class EvaluationError : public Error {
 public:
  explicit EvaluationError(const std::string& what)
      : Error(ErrorCode::kEvaluation, what) {}
};

}  // namespace rds

#endif  // RDSERIES_ERRORS_HPP_
