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

#ifndef TVADMM_SRC_PARALLEL_FOR_HPP_
#define TVADMM_SRC_PARALLEL_FOR_HPP_

#include <condition_variable>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace tvadmm {

// Fixed pool that splits [0, count) into one contiguous chunk per thread.
// The calling thread works on the first chunk; run() returns once every
// chunk is done and rethrows the first exception raised by any chunk.
class ParallelFor {
 public:
  using RangeFn = std::function<void(std::size_t begin, std::size_t end)>;

  explicit ParallelFor(int threads);
  ~ParallelFor();
  ParallelFor(const ParallelFor&) = delete;
  ParallelFor& operator=(const ParallelFor&) = delete;

  int threads() const noexcept { return static_cast<int>(workers_.size()) + 1; }

  void run(std::size_t count, const RangeFn& fn);

 private:
  void worker_loop(std::size_t slot);
  std::pair<std::size_t, std::size_t> chunk(std::size_t slot) const;

  std::vector<std::thread> workers_;
  std::mutex mu_;
  std::condition_variable start_cv_;
  std::condition_variable done_cv_;
  const RangeFn* fn_ = nullptr;
  std::size_t count_ = 0;
  std::size_t generation_ = 0;
  std::size_t pending_ = 0;
  bool stop_ = false;
  std::exception_ptr error_;
};

}  // namespace tvadmm

#endif  // TVADMM_SRC_PARALLEL_FOR_HPP_
