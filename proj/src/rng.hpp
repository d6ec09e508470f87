// Copyright 2026 The minkcsr Authors
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

#pragma once

#include <array>
#include <cstdint>

namespace minkcsr {

// Philox 4x64-10 counter-based generator. Streams are addressed by a
// 128-bit key (seed, stream) and a 128-bit substream/counter pair, so any
// collection of replications can run in parallel and still produce the
// same draws regardless of scheduling.
struct Philox4x64 {
  static std::array<std::uint64_t, 4> block(
      const std::array<std::uint64_t, 4>& counter,
      const std::array<std::uint64_t, 2>& key);
};

class RngStream {
 public:
  // (seed, stream, substream) identify an independent stream. Harness code
  // uses stream for the cell/task id and substream for the replication.
  explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0,
                     std::uint64_t substream = 0);

  std::uint64_t next_u64();

  // Uniform on the open interval (0,1); every value is representable and
  // strictly inside, so logs of draws are always finite.
  double next_double();

  double uniform(double lo, double hi);

  // Uniform integer in [0, n), exact (rejection on the overflow strip).
  std::uint64_t uniform_index(std::uint64_t n);

  // Poisson variate; sequential-search inversion for small means, the
  // transformed-rejection (PTRS) sampler otherwise.
  std::int64_t poisson(double mean);

 private:
  void refill();

  std::array<std::uint64_t, 4> counter_;
  std::array<std::uint64_t, 2> key_;
  std::array<std::uint64_t, 4> buffer_;
  int index_;
};

// SplitMix64 finalizer; used to spread structured ids over the key space.
std::uint64_t mix64(std::uint64_t x);

}  // namespace minkcsr
