// Copyright 2026 The compriv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef COMPRIV_PARALLEL_H_
#define COMPRIV_PARALLEL_H_

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace compriv {

// Splits [0, count) into `threads` contiguous chunks, runs
// `body(begin, end) -> Acc` on each, and folds the chunk results in chunk
// order with `merge`. Callers keep results thread-count independent by using
// per-index random streams and order-insensitive accumulators.
template <class Acc, class Body, class Merge>
Acc parallel_reduce(std::int64_t count, int threads, Acc init, Body body,
                    Merge merge) {
  threads = std::max(1, threads);
  if (count <= 0) return init;
  const std::int64_t chunks = std::min<std::int64_t>(threads, count);
  std::vector<Acc> partial(static_cast<std::size_t>(chunks), init);
  auto bounds = [&](std::int64_t c) {
    return std::pair{count * c / chunks, count * (c + 1) / chunks};
  };
  if (chunks == 1) {
    partial[0] = body(std::int64_t{0}, count);
  } else {
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(chunks));
    {
      std::vector<std::jthread> workers;
      workers.reserve(static_cast<std::size_t>(chunks));
      for (std::int64_t c = 0; c < chunks; ++c) {
        workers.emplace_back([&, c] {
          const auto slot = static_cast<std::size_t>(c);
          try {
            auto [b, e] = bounds(c);
            partial[slot] = body(b, e);
          } catch (...) {
            errors[slot] = std::current_exception();
          }
        });
      }
    }
    for (auto& err : errors) {
      if (err) std::rethrow_exception(err);
    }
  }
  Acc out = init;
  for (auto& part : partial) out = merge(out, part);
  return out;
}

}  // namespace compriv

#endif  // COMPRIV_PARALLEL_H_
