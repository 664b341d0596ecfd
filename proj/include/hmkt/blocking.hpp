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

#ifndef HMKT_BLOCKING_HPP
#define HMKT_BLOCKING_HPP

#include <array>
#include <optional>
#include <string_view>

#include "hmkt/index_set.hpp"
#include "hmkt/market.hpp"

namespace hmkt {

// How a coalition acquires indirect control over other agents' endowments.
//  kBk:        an agent is captured once his assignment is controlled.
//  kRectified: an agent is captured once his whole indifference class at his
//              assignment is controlled.
enum class ControlMode { kBk, kRectified };

enum class CoreConcept {
  kStrong,              // no weak block
  kExclusion,           // no exclusion block
  kRectifiedExclusion,  // no rectified exclusion block
  kRectifiedStrong,     // no rectification block
  kWeak,                // no strong block
};

// Ordered from the smallest core to the largest.
inline constexpr std::array<CoreConcept, 5> kAllConcepts = {
    CoreConcept::kStrong, CoreConcept::kExclusion,
    CoreConcept::kRectifiedExclusion, CoreConcept::kRectifiedStrong,
    CoreConcept::kWeak};

const char* concept_name(CoreConcept c);
std::optional<CoreConcept> parse_concept(std::string_view name);

// Members of C who strictly gain (better) or are unaffected (same) when mu is
// replaced by sigma. Throws Error(kInvalidArgument) if a member of C is worse.
struct WelfareSplit {
  AgentSet better;
  AgentSet same;
};
WelfareSplit better_and_same(const Market& m, const Allocation& mu,
                             const Allocation& sigma, Coalition c);

// The objects C controls under mu: omega of the least fixed point of the
// capture rule selected by `mode`, starting from C.
ObjectSet control_set(const Market& m, Coalition c, const Allocation& mu,
                      ControlMode mode);

// Members of C weakly gain, one strictly, and sigma(C) = omega(C).
bool weakly_blocks(const Market& m, const Allocation& mu, Coalition c,
                   const Allocation& sigma);
// Every member of C strictly gains and sigma(C) = omega(C).
bool strongly_blocks(const Market& m, const Allocation& mu, Coalition c,
                     const Allocation& sigma);
// Every member of C strictly gains; every outsider made worse off held an
// object in control_set(C, mu, kBk).
bool exclusion_blocks(const Market& m, const Allocation& mu, Coalition c,
                      const Allocation& sigma);
// Members of C weakly gain, one strictly; harmed outsiders held objects in
// control_set(C, mu, kRectified); every unaffected member's indifference class
// at mu is owned by C.
bool rectified_exclusion_blocks(const Market& m, const Allocation& mu,
                                Coalition c, const Allocation& sigma);
// weakly_blocks plus the indifference-class ownership condition.
bool rectification_blocks(const Market& m, const Allocation& mu, Coalition c,
                          const Allocation& sigma);

// Dispatches to the blocking relation whose absence defines `concept`.
bool blocks(const Market& m, CoreConcept core, const Allocation& mu,
            Coalition c, const Allocation& sigma);

// Proof that an allocation lies outside a core. Construction re-checks the
// blocking relation and throws Error(kInvalidArgument) if it does not hold.
class BlockWitness {
 public:
  BlockWitness(const Market& m, const Allocation& challenged, CoreConcept core,
               Coalition coalition, Allocation counter);

  CoreConcept core_concept() const { return core_; }
  Coalition coalition() const { return coalition_; }
  const Allocation& counter() const { return counter_; }

  bool operator==(const BlockWitness&) const = default;

 private:
  CoreConcept core_;
  Coalition coalition_;
  Allocation counter_;
};

// Largest market find_block accepts.
inline constexpr int kMaxBlockSearchAgents = 20;

// Searches for a block of mu under `core`. Coalitions are tried by size, then
// lexicographically; within a coalition the lexicographically smallest counter
// allocation is returned. For the endowment-reallocation concepts (strong,
// weak, rectified strong) the counter allocation is a permutation of omega(C)
// over C, extended to outsiders by handing O \ omega(C) out in index order.
std::optional<BlockWitness> find_block(const Market& m, const Allocation& mu,
                                       CoreConcept core);

// All non-empty coalitions of n agents in search order.
const std::vector<Coalition>& coalitions_in_search_order(int n);

}  // namespace hmkt

#endif  // HMKT_BLOCKING_HPP
