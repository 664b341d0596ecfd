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

#include "hmkt/generate.hpp"

#include <numeric>

#include "hmkt/error.hpp"

namespace hmkt {

std::vector<int> random_weak_order(Rng& rng, int n, double p) {
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);
  std::vector<int> ranks(n);
  int rank = 0;
  for (int k = 0; k < n; ++k) {
    if (k > 0 && !rng.bernoulli(p)) ++rank;
    ranks[order[k]] = rank;
  }
  return ranks;
}

Market random_market(int n, double indifference, std::uint64_t seed) {
  if (n < 1 || n > kMaxIndices) {
    throw Error(ErrorCode::kInvalidArgument, "agent count out of range");
  }
  if (!(indifference >= 0.0 && indifference <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "indifference must lie in [0, 1]");
  }
  Rng rng(seed);
  std::vector<std::vector<int>> ranks;
  for (int i = 0; i < n; ++i) ranks.push_back(random_weak_order(rng, n, indifference));
  std::vector<int> endowment(n);
  std::iota(endowment.begin(), endowment.end(), 0);
  return Market(std::move(endowment), std::move(ranks));
}

TypedInstance random_typed_market(int n, std::uint64_t seed) {
  if (n < 1 || n > kMaxIndices) {
    throw Error(ErrorCode::kInvalidArgument, "agent count out of range");
  }
  Rng rng(seed);
  const int types = 1 + static_cast<int>(rng.below(n));
  std::vector<int> objects(n);
  std::iota(objects.begin(), objects.end(), 0);
  rng.shuffle(objects);
  typed::TypeStructure t{std::vector<int>(n), types};
  for (int k = 0; k < n; ++k) {
    t.type_of[objects[k]] = k < types ? k : static_cast<int>(rng.below(types));
  }

  std::vector<std::vector<int>> ranks;
  for (int i = 0; i < n; ++i) {
    std::vector<int> order(types);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    std::vector<int> type_rank(types);
    for (int r = 0; r < types; ++r) type_rank[order[r]] = r;
    std::vector<int> row(n);
    for (int o = 0; o < n; ++o) row[o] = type_rank[t.type_of[o]];
    ranks.push_back(std::move(row));
  }
  std::vector<int> endowment(n);
  std::iota(endowment.begin(), endowment.end(), 0);
  Market m(std::move(endowment), std::move(ranks));

  typed::PriorityStructure p;
  for (int x = 0; x < types; ++x) {
    std::vector<int> owners = t.owners(m, x).to_vector();
    rng.shuffle(owners);
    p.orders.push_back(std::move(owners));
  }
  return {std::move(m), std::move(t), std::move(p)};
}

std::vector<std::vector<int>> all_weak_orders(int n) {
  if (n < 1 || n > 8) throw Error(ErrorCode::kInstanceTooLarge, "weak orders enumerated for n <= 8");
  std::vector<std::vector<int>> out;
  std::vector<int> ranks(n, 0);
  for (;;) {
    if (normalize_ranks(ranks) == ranks) out.push_back(ranks);
    int k = n - 1;
    while (k >= 0 && ranks[k] == n - 1) ranks[k--] = 0;
    if (k < 0) break;
    ++ranks[k];
  }
  return out;
}

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace hmkt
