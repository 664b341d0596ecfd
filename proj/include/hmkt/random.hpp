// Copyright 2026 The hmkt Authors
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

#ifndef HMKT_RANDOM_HPP
#define HMKT_RANDOM_HPP

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace hmkt {

// Engine plus distribution helpers whose output depends only on the seed.
// The standard distributions are implementation-defined, so reports built on
// them would differ between standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, bound), bound > 0. Rejection sampling, so unbiased.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit =
        std::mt19937_64::max() - std::mt19937_64::max() % bound;
    for (;;) {
      const std::uint64_t x = engine_();
      if (x < limit) return x % bound;
    }
  }

  // Uniform in [0, 1) with 53 random bits.
  double unit() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return unit() < p; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t k = v.size(); k > 1; --k) {
      std::swap(v[k - 1], v[static_cast<std::size_t>(below(k))]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace hmkt

#endif  // HMKT_RANDOM_HPP
