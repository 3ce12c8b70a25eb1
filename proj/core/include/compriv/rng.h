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

#ifndef COMPRIV_RNG_H_
#define COMPRIV_RNG_H_

#include <cstdint>
#include <initializer_list>
#include <limits>

namespace compriv {

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Derives a stream identifier from a parent id and a path of indices, e.g.
// derive_stream(master_seed, {attempt}). Distinct paths give unrelated ids.
std::uint64_t derive_stream(std::uint64_t parent,
                            std::initializer_list<std::uint64_t> path);

// Counter-based uniform bit generator. Word k of stream s is a pure function
// of (s, k), so any stream can be replayed from its identifier alone.
// Satisfies UniformRandomBitGenerator.
class CounterStream {
 public:
  using result_type = std::uint64_t;

  explicit CounterStream(std::uint64_t stream_id);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() {
    counter_ += gamma_;
    return mix64(counter_);
  }

  std::uint64_t id() const { return id_; }

 private:
  std::uint64_t id_;
  std::uint64_t counter_;
  std::uint64_t gamma_;
};

// Standard normal draws (ziggurat) on top of a CounterStream.
class NormalSource {
 public:
  explicit NormalSource(std::uint64_t stream_id) : bits_(stream_id) {}

  double operator()();

  CounterStream& bits() { return bits_; }

 private:
  CounterStream bits_;
};

}  // namespace compriv

#endif  // COMPRIV_RNG_H_
