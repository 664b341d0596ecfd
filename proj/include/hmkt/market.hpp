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

#ifndef HMKT_MARKET_HPP
#define HMKT_MARKET_HPP

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "hmkt/index_set.hpp"

namespace hmkt {

// A one-to-one assignment of objects to agents: assign[agent] = object.
class Allocation {
 public:
  Allocation() = default;
  // Throws Error(kInvalidArgument) unless `assign` is a permutation of 0..n-1.
  explicit Allocation(std::vector<int> assign);

  static Allocation identity(int n);

  int size() const { return static_cast<int>(assign_.size()); }
  int operator[](int agent) const { return assign_[agent]; }
  const std::vector<int>& objects() const { return assign_; }
  // The set of objects assigned to members of `agents`.
  ObjectSet image(AgentSet agents) const;

  auto operator<=>(const Allocation&) const = default;

 private:
  std::vector<int> assign_;
};

enum class Preference { kBetter, kWorse, kIndifferent };

// A housing market: n agents, n objects, an endowment bijection and one weak
// order per agent. Agent and object ids are dense indices in [0, n).
//
// Each weak order is stored as a rank vector (lower is better, equal ranks are
// indifferent). Ranks are normalized on construction so that every value in
// 0..k is used, which makes profile equality a plain comparison.
class Market {
 public:
  // Throws Error(kInvalidArgument) when the endowment is not a bijection, a
  // rank row does not cover every object, or n is outside [1, kMaxIndices].
  Market(std::vector<int> endowment, std::vector<std::vector<int>> ranks);

  int size() const { return n_; }
  int endowment(int agent) const { return endow_[agent]; }
  int owner(int object) const { return owner_[object]; }
  const std::vector<int>& endowments() const { return endow_; }
  Allocation endowment_allocation() const { return Allocation(endow_); }

  int rank(int agent, int object) const { return rank_[agent][object]; }
  const std::vector<int>& ranks(int agent) const { return rank_[agent]; }
  // Number of indifference classes of `agent`.
  int class_count(int agent) const {
    return static_cast<int>(classes_[agent].size());
  }
  // The objects of rank `r` for `agent`.
  ObjectSet rank_class(int agent, int r) const { return classes_[agent][r]; }

  ObjectSet all_objects() const { return ObjectSet::first_n(n_); }
  AgentSet all_agents() const { return AgentSet::first_n(n_); }

  // omega(C).
  ObjectSet owned_by(AgentSet agents) const;
  // The owners of `objects`.
  AgentSet owners_of(ObjectSet objects) const;

  Preference compare(int agent, int object, int other) const;
  // The objects `agent` likes at least as much as `object`.
  ObjectSet weakly_better(int agent, int object) const {
    return at_least_[agent][rank_[agent][object]];
  }
  ObjectSet strictly_better(int agent, int object) const {
    const int r = rank_[agent][object];
    return r == 0 ? ObjectSet() : at_least_[agent][r - 1];
  }
  // The indifference class of `object` for `agent`; always contains `object`.
  ObjectSet indiff_set(int agent, int object) const {
    return classes_[agent][rank_[agent][object]];
  }
  // All objects of minimal rank within `pool`. Throws Error(kEmptyPool).
  ObjectSet favorites(int agent, ObjectSet pool) const;

  bool operator==(const Market& other) const {
    return endow_ == other.endow_ && rank_ == other.rank_;
  }

 private:
  int n_;
  std::vector<int> endow_;
  std::vector<int> owner_;
  std::vector<std::vector<int>> rank_;
  std::vector<std::vector<ObjectSet>> classes_;   // [agent][rank]
  std::vector<std::vector<ObjectSet>> at_least_;  // [agent][rank]: rank <= r
};

// Rewrites a rank row so that its values are exactly 0..k, preserving order.
std::vector<int> normalize_ranks(std::span<const int> ranks);

bool is_individually_rational(const Market& m, const Allocation& mu);

// True when every agent is indifferent between mu(i) and other(i).
bool equivalent(const Market& m, const Allocation& mu, const Allocation& other);

// The per-agent ranks of an allocation; equal signatures <=> equivalent.
std::vector<int> welfare_signature(const Market& m, const Allocation& mu);

// An allocation that makes nobody worse off and somebody strictly better off,
// or nullopt when mu is Pareto efficient. The witness is the lexicographically
// smallest such allocation.
std::optional<Allocation> pareto_improvement(const Market& m,
                                             const Allocation& mu);

inline bool is_pareto_efficient(const Market& m, const Allocation& mu) {
  return !pareto_improvement(m, mu).has_value();
}

// n! for n <= 20.
std::uint64_t factorial(int n);

// The index-th permutation of 0..n-1 in lexicographic order.
Allocation allocation_at(int n, std::uint64_t index);

// Calls `visit` with each of the n! allocations in lexicographic order, stopping
// early when `visit` returns false. Returns false iff stopped early.
bool for_each_allocation(int n, const std::function<bool(const Allocation&)>& visit);

std::vector<Allocation> all_allocations(int n);

// Decomposes the permutation i -> owner(mu(i)) into its cycles. Each group T
// satisfies mu(T) = omega(T) minimally. Groups are ordered by smallest member.
std::vector<AgentSet> cycle_groups(const Market& m, const Allocation& mu);

}  // namespace hmkt

#endif  // HMKT_MARKET_HPP
