// Copyright 2026 The Level Director Authors.
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

#ifndef LEVELDIR_RNG_HPP
#define LEVELDIR_RNG_HPP

#include <cstdint>
#include <vector>

namespace leveldir {

// splitmix64 generator. Used both as the run-level engine and to expand a
// master seed into per-run seeds, so seed lists stay portable across
// implementations.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~std::uint64_t{0}; }

  result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

// Uniform double in [lo, hi).
inline double uniform_real(SplitMix64& rng, double lo, double hi) {
  const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + unit * (hi - lo);
}

// Uniform index in [0, n). Lemire multiply-shift, no rejection loop needed
// for the small ranges used here.
inline std::size_t uniform_index(SplitMix64& rng, std::size_t n) {
  const unsigned __int128 product =
      static_cast<unsigned __int128>(rng()) * static_cast<unsigned __int128>(n);
  return static_cast<std::size_t>(product >> 64);
}

// Expands a master seed into `count` run seeds via a splitmix64 stream.
inline std::vector<std::uint64_t> expand_seeds(std::uint64_t master,
                                               std::size_t count) {
  SplitMix64 rng(master);
  std::vector<std::uint64_t> seeds(count);
  for (auto& s : seeds) s = rng();
  return seeds;
}

}  // namespace leveldir

#endif  // LEVELDIR_RNG_HPP
