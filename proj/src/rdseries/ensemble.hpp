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


#ifndef RDSERIES_ENSEMBLE_HPP_
#define RDSERIES_ENSEMBLE_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace rds {

/// Replicate x grid matrix of evaluated (normalized) path values.
struct PathEnsemble {
  std::vector<double> t_grid;
  std::size_t n_rep = 0;
  std::vector<double> values;  // row-major, n_rep rows of t_grid.size()
  std::string normalization;

  struct Meta {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_id = 0;
    std::vector<std::uint64_t> cutoffs;
    double rel_tol = 0.0;
    double jitter = 0.0;
    double wall_seconds = 0.0;
  } meta;

  std::size_t dim() const { return t_grid.size(); }
  double at(std::size_t r, std::size_t i) const { return values[r * dim() + i]; }
  double& at(std::size_t r, std::size_t i) { return values[r * dim() + i]; }
  std::vector<double> column(std::size_t i) const {
    std::vector<double> c(n_rep);
    for (std::size_t r = 0; r < n_rep; ++r) c[r] = at(r, i);
    return c;
  }
};

}  // namespace rds

#endif  // RDSERIES_ENSEMBLE_HPP_
