// Copyright 2026 The tvadmm Authors
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

#include "parallel_for.hpp"

#include <algorithm>

namespace tvadmm {

ParallelFor::ParallelFor(int threads) {
  const int extra = std::max(threads, 1) - 1;
  workers_.reserve(extra);
  for (int k = 0; k < extra; ++k) {
    workers_.emplace_back([this, k] { worker_loop(static_cast<std::size_t>(k) + 1); });
  }
}

ParallelFor::~ParallelFor() {
  {
    std::lock_guard<std::mutex> lock(mu_);
    stop_ = true;
  }
  start_cv_.notify_all();
  for (auto& w : workers_) w.join();
}

std::pair<std::size_t, std::size_t> ParallelFor::chunk(std::size_t slot) const {
  const std::size_t parts = workers_.size() + 1;
  const std::size_t base = count_ / parts;
  const std::size_t extra = count_ % parts;
  const std::size_t begin = slot * base + std::min(slot, extra);
  return {begin, begin + base + (slot < extra ? 1 : 0)};
}

void ParallelFor::run(std::size_t count, const RangeFn& fn) {
  if (workers_.empty()) {
    fn(0, count);
    return;
  }
  {
    std::lock_guard<std::mutex> lock(mu_);
    fn_ = &fn;
    count_ = count;
    pending_ = workers_.size();
    error_ = nullptr;
    ++generation_;
  }
  start_cv_.notify_all();

  std::exception_ptr local;
  try {
    auto [begin, end] = chunk(0);
    if (begin < end) fn(begin, end);
  } catch (...) {
    local = std::current_exception();
  }

  std::unique_lock<std::mutex> lock(mu_);
  done_cv_.wait(lock, [this] { return pending_ == 0; });
  fn_ = nullptr;
  if (local) std::rethrow_exception(local);
  if (error_) std::rethrow_exception(error_);
}

void ParallelFor::worker_loop(std::size_t slot) {
  std::size_t seen = 0;
  for (;;) {
    const RangeFn* fn = nullptr;
    std::pair<std::size_t, std::size_t> range;
    {
      std::unique_lock<std::mutex> lock(mu_);
      start_cv_.wait(lock, [&] { return stop_ || generation_ != seen; });
      if (stop_) return;
      seen = generation_;
      fn = fn_;
      range = chunk(slot);
    }
    std::exception_ptr err;
    try {
      if (range.first < range.second) (*fn)(range.first, range.second);
    } catch (...) {
      err = std::current_exception();
    }
    {
      std::lock_guard<std::mutex> lock(mu_);
      if (err && !error_) error_ = err;
      if (--pending_ == 0) done_cv_.notify_one();
    }
  }
}

}  // namespace tvadmm
