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

#include "hmkt/market.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "hmkt/error.hpp"

namespace hmkt {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kEmptyPool: return "empty-pool";
    case ErrorCode::kInstanceTooLarge: return "instance-too-large";
    case ErrorCode::kDeparturePending: return "departure-pending";
    case ErrorCode::kTypeInconsistent: return "type-inconsistent";
    case ErrorCode::kBudgetExceeded: return "budget-exceeded";
    case ErrorCode::kParse: return "parse-error";
  }
  return "unknown";
}

namespace {

bool is_permutation_of_range(const std::vector<int>& v) {
  std::vector<bool> seen(v.size(), false);
  for (int x : v) {
    if (x < 0 || x >= static_cast<int>(v.size()) || seen[x]) return false;
    seen[x] = true;
  }
  return true;
}

}  // namespace

Allocation::Allocation(std::vector<int> assign) : assign_(std::move(assign)) {
  if (!is_permutation_of_range(assign_)) {
    throw Error(ErrorCode::kInvalidArgument,
                "allocation is not a bijection on 0.." +
                    std::to_string(static_cast<int>(assign_.size()) - 1));
  }
}

Allocation Allocation::identity(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  return Allocation(std::move(v));
}

ObjectSet Allocation::image(AgentSet agents) const {
  ObjectSet out;
  for (int i : agents) out.insert(assign_[i]);
  return out;
}

std::vector<int> normalize_ranks(std::span<const int> ranks) {
  std::vector<int> values(ranks.begin(), ranks.end());
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  std::vector<int> out;
  out.reserve(ranks.size());
  for (int r : ranks) {
    out.push_back(static_cast<int>(
        std::lower_bound(values.begin(), values.end(), r) - values.begin()));
  }
  return out;
}

Market::Market(std::vector<int> endowment, std::vector<std::vector<int>> ranks)
    : n_(static_cast<int>(endowment.size())), endow_(std::move(endowment)) {
  if (n_ < 1 || n_ > kMaxIndices) {
    throw Error(ErrorCode::kInvalidArgument,
                "market size must be in [1, " + std::to_string(kMaxIndices) +
                    "], got " + std::to_string(n_));
  }
  if (!is_permutation_of_range(endow_)) {
    throw Error(ErrorCode::kInvalidArgument, "endowment is not a bijection");
  }
  if (static_cast<int>(ranks.size()) != n_) {
    throw Error(ErrorCode::kInvalidArgument,
                "expected one preference row per agent");
  }
  owner_.assign(n_, 0);
  for (int i = 0; i < n_; ++i) owner_[endow_[i]] = i;

  rank_.reserve(n_);
  classes_.resize(n_);
  at_least_.resize(n_);
  for (int i = 0; i < n_; ++i) {
    if (static_cast<int>(ranks[i].size()) != n_) {
      throw Error(ErrorCode::kInvalidArgument,
                  "preference row of agent " + std::to_string(i) +
                      " does not rank every object");
    }
    rank_.push_back(normalize_ranks(ranks[i]));
    const int k = *std::max_element(rank_[i].begin(), rank_[i].end()) + 1;
    classes_[i].assign(k, ObjectSet());
    for (int o = 0; o < n_; ++o) classes_[i][rank_[i][o]].insert(o);
    at_least_[i].assign(k, ObjectSet());
    ObjectSet acc;
    for (int r = 0; r < k; ++r) {
      acc |= classes_[i][r];
      at_least_[i][r] = acc;
    }
  }
}

ObjectSet Market::owned_by(AgentSet agents) const {
  ObjectSet out;
  for (int i : agents) out.insert(endow_[i]);
  return out;
}

AgentSet Market::owners_of(ObjectSet objects) const {
  AgentSet out;
  for (int o : objects) out.insert(owner_[o]);
  return out;
}

Preference Market::compare(int agent, int object, int other) const {
  const int a = rank_[agent][object];
  const int b = rank_[agent][other];
  if (a < b) return Preference::kBetter;
  if (a > b) return Preference::kWorse;
  return Preference::kIndifferent;
}

ObjectSet Market::favorites(int agent, ObjectSet pool) const {
  if (pool.empty()) {
    throw Error(ErrorCode::kEmptyPool,
                "favorites requested for agent " + std::to_string(agent) +
                    " over an empty pool");
  }
  for (const ObjectSet& cls : classes_[agent]) {
    const ObjectSet hit = cls & pool;
    if (!hit.empty()) return hit;
  }
  return ObjectSet();  // unreachable: pool is a non-empty subset of objects
}

bool is_individually_rational(const Market& m, const Allocation& mu) {
  for (int i = 0; i < m.size(); ++i) {
    if (m.rank(i, mu[i]) > m.rank(i, m.endowment(i))) return false;
  }
  return true;
}

bool equivalent(const Market& m, const Allocation& mu, const Allocation& other) {
  for (int i = 0; i < m.size(); ++i) {
    if (m.rank(i, mu[i]) != m.rank(i, other[i])) return false;
  }
  return true;
}

std::vector<int> welfare_signature(const Market& m, const Allocation& mu) {
  std::vector<int> sig(m.size());
  for (int i = 0; i < m.size(); ++i) sig[i] = m.rank(i, mu[i]);
  return sig;
}

namespace {

// Depth-first search for the lexicographically smallest weak improvement
// with at least one strict gain.
class ImprovementSearch {
 public:
  ImprovementSearch(const Market& m, const Allocation& mu)
      : m_(m), mu_(mu), assign_(m.size(), -1), can_gain_after_(m.size() + 1) {
    // can_gain_after_[i]: some agent j >= i is not yet at his top class.
    can_gain_after_[m.size()] = false;
    for (int i = m.size() - 1; i >= 0; --i) {
      can_gain_after_[i] = can_gain_after_[i + 1] || m.rank(i, mu[i]) > 0;
    }
  }

  std::optional<Allocation> run() {
    if (descend(0, ObjectSet(), false)) return Allocation(assign_);
    return std::nullopt;
  }

 private:
  bool descend(int agent, ObjectSet used, bool gained) {
    if (agent == m_.size()) return gained;
    if (!gained && !can_gain_after_[agent]) return false;
    const ObjectSet options = m_.weakly_better(agent, mu_[agent]) - used;
    const int own_rank = m_.rank(agent, mu_[agent]);
    for (int o : options) {
      assign_[agent] = o;
      ObjectSet next = used;
      next.insert(o);
      if (descend(agent + 1, next, gained || m_.rank(agent, o) < own_rank)) {
        return true;
      }
    }
    return false;
  }

  const Market& m_;
  const Allocation& mu_;
  std::vector<int> assign_;
  std::vector<bool> can_gain_after_;
};

}  // namespace

std::optional<Allocation> pareto_improvement(const Market& m,
                                             const Allocation& mu) {
  return ImprovementSearch(m, mu).run();
}

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int k = 2; k <= n; ++k) f *= static_cast<std::uint64_t>(k);
  return f;
}

Allocation allocation_at(int n, std::uint64_t index) {
  std::vector<int> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<int> out;
  out.reserve(n);
  for (int k = n; k >= 1; --k) {
    const std::uint64_t block = factorial(k - 1);
    const auto pick = static_cast<std::size_t>(index / block);
    index %= block;
    out.push_back(pool[pick]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return Allocation(std::move(out));
}

bool for_each_allocation(int n,
                         const std::function<bool(const Allocation&)>& visit) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    if (!visit(Allocation(perm))) return false;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return true;
}

std::vector<Allocation> all_allocations(int n) {
  std::vector<Allocation> out;
  out.reserve(factorial(n));
  for_each_allocation(n, [&](const Allocation& a) {
    out.push_back(a);
    return true;
  });
  return out;
}

std::vector<AgentSet> cycle_groups(const Market& m, const Allocation& mu) {
  std::vector<AgentSet> groups;
  AgentSet seen;
  for (int start = 0; start < m.size(); ++start) {
    if (seen.contains(start)) continue;
    AgentSet group;
    for (int i = start; !group.contains(i); i = m.owner(mu[i])) group.insert(i);
    seen |= group;
    groups.push_back(group);
  }
  return groups;
}

}  // namespace hmkt
