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

// Worker fan-out and deterministic compensated reductions.
//
// Every reduction in the library is shaped by the data (fixed block
// boundaries, fixed pairwise tree), never by the worker count, so results
// are bit-identical for any number of workers.

#ifndef RDSERIES_PARALLEL_HPP_
#define RDSERIES_PARALLEL_HPP_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace rds {

/// Process-wide default worker count; 0 selects hardware concurrency.
void set_default_workers(unsigned workers);
unsigned default_workers();

/// Resolves a requested worker count (0 = process default).
unsigned resolve_workers(unsigned requested);

/// Runs task(i) for i in [0, n_tasks) on up to `workers` threads.
/// Nested calls from inside a worker run serially on that worker.
/// The first exception thrown by any task is rethrown after all workers join.
void parallel_for(std::size_t n_tasks, unsigned workers,
                  const std::function<void(std::size_t)>& task);

/// Neumaier-compensated accumulator.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    const double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  void merge(const CompensatedSum& o) {
    add(o.sum);
    comp += o.comp;
  }
  double value() const { return sum + comp; }
};

/// Pairwise tree reduction over `parts` in index order.
CompensatedSum tree_reduce(std::vector<CompensatedSum> parts);

/// Block length of the fixed reduction tree: blocks are aligned to
/// multiples of this value in absolute index space.
inline constexpr std::uint64_t kBlockSize = std::uint64_t{1} << 16;

/// Result of a certified direct sum of positive-or-signed terms.
struct DirectSum {
  double value = 0.0;
  double abs_sum = 0.0;  // sum of |term|, for rounding margins
};

/// Deterministic blocked sum of term(k) for k in [first, last].
DirectSum blocked_sum(std::uint64_t first, std::uint64_t last,
                      const std::function<double(std::uint64_t)>& term,
                      unsigned workers = 0);

}  // namespace rds

#endif  // RDSERIES_PARALLEL_HPP_
