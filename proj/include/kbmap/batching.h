// Copyright 2026 The kbmap Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Bounded fan-out over fixed-size batches. Results come back in batch order
// whatever the completion order, so callers stay schedule independent.

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace kbmap {

// Identifies the batch [begin, end) whose request failed.
class BatchError : public std::runtime_error {
 public:
  BatchError(std::size_t batch, std::size_t begin, std::size_t end,
             const std::string& what)
      : std::runtime_error("batch " + std::to_string(batch) + " (items " +
                           std::to_string(begin) + ".." + std::to_string(end) +
                           ") failed: " + what),
        batch_(batch),
        begin_(begin),
        end_(end) {}

  std::size_t batch() const { return batch_; }
  std::size_t begin() const { return begin_; }
  std::size_t end() const { return end_; }

 private:
  std::size_t batch_;
  std::size_t begin_;
  std::size_t end_;
};

// Splits [0, n) into batches of `batch_size` and calls
// `job(begin, end) -> Result` with at most `max_in_flight` concurrent calls.
// If any batch throws, the failure of the lowest-numbered batch is rethrown
// as a BatchError and no results are returned.
template <typename Result, typename Job>
std::vector<Result> run_batches(std::size_t n, std::size_t batch_size,
                                std::size_t max_in_flight, Job&& job) {
  if (batch_size == 0) throw std::invalid_argument("batch size must be > 0");
  const std::size_t batches = (n + batch_size - 1) / batch_size;
  std::vector<std::optional<Result>> results(batches);
  std::vector<std::exception_ptr> errors(batches);
  std::atomic<std::size_t> next{0};

  auto worker = [&]() {
    while (true) {
      const std::size_t b = next.fetch_add(1);
      if (b >= batches) return;
      const std::size_t begin = b * batch_size;
      const std::size_t end = std::min(n, begin + batch_size);
      try {
        results[b].emplace(job(begin, end));
      } catch (...) {
        errors[b] = std::current_exception();
      }
    }
  };

  const std::size_t threads =
      std::min<std::size_t>(std::max<std::size_t>(max_in_flight, 1), batches);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (std::size_t b = 0; b < batches; ++b) {
    if (!errors[b]) continue;
    const std::size_t begin = b * batch_size;
    const std::size_t end = std::min(n, begin + batch_size);
    try {
      std::rethrow_exception(errors[b]);
    } catch (const std::exception& e) {
      throw BatchError(b, begin, end, e.what());
    } catch (...) {
      throw BatchError(b, begin, end, "unknown error");
    }
  }

  std::vector<Result> out;
  out.reserve(batches);
  for (auto& r : results) out.push_back(std::move(*r));
  return out;
}

}  // namespace kbmap
