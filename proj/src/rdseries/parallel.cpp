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

#include "rdseries/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace rds {
namespace {

std::atomic<unsigned> g_default_workers{0};
thread_local bool t_inside_worker = false;

}  // namespace

void set_default_workers(unsigned workers) { g_default_workers = workers; }

unsigned default_workers() {
  const unsigned w = g_default_workers.load();
  if (w != 0) return w;
  return std::max(1u, std::thread::hardware_concurrency());
}

unsigned resolve_workers(unsigned requested) {
  return requested == 0 ? default_workers() : requested;
}

void parallel_for(std::size_t n_tasks, unsigned workers,
                  const std::function<void(std::size_t)>& task) {
  if (n_tasks == 0) return;
  const unsigned w = static_cast<unsigned>(
      std::min<std::size_t>(resolve_workers(workers), n_tasks));
  if (w <= 1 || t_inside_worker) {
    for (std::size_t i = 0; i < n_tasks; ++i) task(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto body = [&] {
    t_inside_worker = true;
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n_tasks) break;
      try {
        task(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = n_tasks;
      }
    }
    t_inside_worker = false;
  };

  std::vector<std::thread> pool;
  pool.reserve(w - 1);
  for (unsigned i = 0; i + 1 < w; ++i) pool.emplace_back(body);
  body();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

CompensatedSum tree_reduce(std::vector<CompensatedSum> parts) {
  if (parts.empty()) return {};
  while (parts.size() > 1) {
    std::vector<CompensatedSum> next((parts.size() + 1) / 2);
    for (std::size_t i = 0; i < next.size(); ++i) {
      next[i] = parts[2 * i];
      if (2 * i + 1 < parts.size()) next[i].merge(parts[2 * i + 1]);
    }
    parts.swap(next);
  }
  return parts.front();
}

DirectSum blocked_sum(std::uint64_t first, std::uint64_t last,
                      const std::function<double(std::uint64_t)>& term,
                      unsigned workers) {
  if (last < first) return {};
  const std::uint64_t first_block = first / kBlockSize;
  const std::uint64_t last_block = last / kBlockSize;
  const std::size_t n_blocks =
      static_cast<std::size_t>(last_block - first_block + 1);
  std::vector<CompensatedSum> sums(n_blocks);
  std::vector<CompensatedSum> abs_sums(n_blocks);
  parallel_for(n_blocks, workers, [&](std::size_t b) {
    const std::uint64_t lo =
        std::max(first, (first_block + b) * kBlockSize);
    const std::uint64_t hi =
        std::min(last, (first_block + b + 1) * kBlockSize - 1);
    CompensatedSum s, a;
    for (std::uint64_t k = lo; k <= hi; ++k) {
      const double t = term(k);
      s.add(t);
      a.add(std::fabs(t));
    }
    sums[b] = s;
    abs_sums[b] = a;
  });
  return {tree_reduce(std::move(sums)).value(),
          tree_reduce(std::move(abs_sums)).value()};
}

}  // namespace rds
