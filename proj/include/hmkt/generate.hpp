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

#ifndef HMKT_GENERATE_HPP
#define HMKT_GENERATE_HPP

#include <cstdint>
#include <vector>

#include "hmkt/market.hpp"
#include "hmkt/random.hpp"
#include "hmkt/typed.hpp"

namespace hmkt {

// Rank vector of a random weak order over n objects: a uniform permutation
// whose adjacent pairs are merged into one class with probability p each.
std::vector<int> random_weak_order(Rng& rng, int n, double p);

// Agent i owns object i.
Market random_market(int n, double indifference, std::uint64_t seed);

struct TypedInstance {
  Market market;
  typed::TypeStructure types;
  typed::PriorityStructure priorities;
};

// Random type partition, strict preferences over types and random priorities.
TypedInstance random_typed_market(int n, std::uint64_t seed);

// Every weak order over n objects as a normalized rank vector, in
// lexicographic order of the vectors. 13 for n = 3.
std::vector<std::vector<int>> all_weak_orders(int n);

// Seed for the index-th instance of a sweep (splitmix64 finalizer).
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t index);

}  // namespace hmkt

#endif  // HMKT_GENERATE_HPP
