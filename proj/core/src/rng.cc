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

#include "compriv/rng.h"

#include <boost/random/normal_distribution.hpp>

namespace compriv {

std::uint64_t derive_stream(std::uint64_t parent,
                            std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = mix64(parent ^ 0x6a09e667f3bcc909ULL);
  for (std::uint64_t step : path) {
    h = mix64(h + 0x9e3779b97f4a7c15ULL + mix64(step ^ 0xbb67ae8584caa73bULL));
  }
  return h;
}

CounterStream::CounterStream(std::uint64_t stream_id)
    : id_(stream_id),
      counter_(mix64(stream_id)),
      // Odd increment per stream, as in SplittableRandom, so that two streams
      // never walk the same counter sequence.
      gamma_(mix64(stream_id ^ 0x3c6ef372fe94f82bULL) | 1ULL) {}

double NormalSource::operator()() {
  boost::random::normal_distribution<double> standard(0.0, 1.0);
  return standard(bits_);
}

}  // namespace compriv
