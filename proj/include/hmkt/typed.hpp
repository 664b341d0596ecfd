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

#ifndef HMKT_TYPED_HPP
#define HMKT_TYPED_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "hmkt/index_set.hpp"
#include "hmkt/market.hpp"

// Markets whose indifferences come from identical copies of object types, and
// top trading cycles driven by artificial priorities over each type's owners.
namespace hmkt::typed {

// type_of[object] is a dense type id in [0, type_count).
struct TypeStructure {
  std::vector<int> type_of;
  int type_count = 0;

  ObjectSet copies(int type) const;
  // The owners of the copies of `type`.
  AgentSet owners(const Market& m, int type) const;
};

// orders[type] ranks the owners of that type's copies, highest first.
struct PriorityStructure {
  std::vector<std::vector<int>> orders;
};

struct TypeViolation {
  int agent;
  int object;
  int other;
  std::string message;
};

// Every agent must be indifferent between two objects exactly when they are
// copies of the same type. Returns all violations; empty means consistent.
std::vector<TypeViolation> validate_types(const Market& m, const TypeStructure& t);

// Groups objects by the indifference relation shared by all agents. Throws
// Error(kTypeInconsistent) when agents disagree.
TypeStructure infer_types(const Market& m);

// Throws Error(kInvalidArgument) unless each order lists exactly the owners of
// its type.
void validate_priorities(const Market& m, const TypeStructure& t,
                         const PriorityStructure& p);

struct TtcRun {
  Allocation outcome;
  // deepest[type]: the largest priority position the type ever pointed at.
  std::vector<int> deepest;
  int steps = 0;
};

// Each step: remaining agents point to their favorite remaining type, each type
// points to its highest-priority remaining owner, and every cycle clears with
// each agent taking the endowment of the owner his type points to. Throws
// Error(kTypeInconsistent) if the types do not match the preferences.
TtcRun typed_ttc_run(const Market& m, const TypeStructure& t,
                     const PriorityStructure& p);

inline Allocation typed_ttc(const Market& m, const TypeStructure& t,
                            const PriorityStructure& p) {
  return typed_ttc_run(m, t, p).outcome;
}

// Number of priority structures: product over types of |owners|!.
std::uint64_t priority_structure_count(const Market& m, const TypeStructure& t);

// The typed TTC outcomes over all priority structures, deduplicated and sorted.
// Throws Error(kBudgetExceeded) if there are more than `budget` structures.
std::vector<Allocation> exclusion_core_typed(const Market& m,
                                             const TypeStructure& t,
                                             std::uint64_t budget = 1'000'000);

// Adds every allocation equivalent to a member of `s`; sorted.
std::vector<Allocation> equivalence_closure(const Market& m,
                                            const std::vector<Allocation>& s);

}  // namespace hmkt::typed

#endif  // HMKT_TYPED_HPP
