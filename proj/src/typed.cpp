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

#include "hmkt/typed.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "hmkt/error.hpp"

namespace hmkt::typed {

ObjectSet TypeStructure::copies(int type) const {
  ObjectSet out;
  for (std::size_t o = 0; o < type_of.size(); ++o) {
    if (type_of[o] == type) out.insert(static_cast<int>(o));
  }
  return out;
}

AgentSet TypeStructure::owners(const Market& m, int type) const {
  return m.owners_of(copies(type));
}

std::vector<TypeViolation> validate_types(const Market& m,
                                          const TypeStructure& t) {
  std::vector<TypeViolation> out;
  if (static_cast<int>(t.type_of.size()) != m.size()) {
    out.push_back({-1, -1, -1, "type map does not cover every object"});
    return out;
  }
  for (int i = 0; i < m.size(); ++i) {
    for (int o = 0; o < m.size(); ++o) {
      for (int o2 = o + 1; o2 < m.size(); ++o2) {
        const bool same_type = t.type_of[o] == t.type_of[o2];
        const bool indifferent = m.rank(i, o) == m.rank(i, o2);
        if (same_type != indifferent) {
          out.push_back({i, o, o2,
                         same_type ? "copies of one type ranked apart"
                                   : "objects of different types tied"});
        }
      }
    }
  }
  return out;
}

TypeStructure infer_types(const Market& m) {
  TypeStructure t;
  t.type_of.assign(m.size(), -1);
  for (int o = 0; o < m.size(); ++o) {
    if (t.type_of[o] >= 0) continue;
    const int id = t.type_count++;
    for (int o2 : m.indiff_set(0, o)) t.type_of[o2] = id;
  }
  if (!validate_types(m, t).empty()) {
    throw Error(ErrorCode::kTypeInconsistent,
                "agents disagree on which objects are indifferent");
  }
  return t;
}

void validate_priorities(const Market& m, const TypeStructure& t,
                         const PriorityStructure& p) {
  if (static_cast<int>(p.orders.size()) != t.type_count) {
    throw Error(ErrorCode::kInvalidArgument, "one priority order per type expected");
  }
  for (int x = 0; x < t.type_count; ++x) {
    const auto& order = p.orders[x];
    const AgentSet listed = AgentSet::of(order);
    if (listed.size() != static_cast<int>(order.size()) ||
        listed != t.owners(m, x)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "priority order of type " + std::to_string(x) +
                      " must rank exactly the owners of its copies");
    }
  }
}

TtcRun typed_ttc_run(const Market& m, const TypeStructure& t,
                     const PriorityStructure& p) {
  if (!validate_types(m, t).empty()) {
    throw Error(ErrorCode::kTypeInconsistent,
                "type structure does not match the preferences");
  }
  validate_priorities(m, t, p);

  TtcRun run{Allocation(), std::vector<int>(t.type_count, -1), 0};
  std::vector<int> assign(m.size(), -1);
  AgentSet remaining = m.all_agents();
  while (!remaining.empty()) {
    ++run.steps;
    const ObjectSet pool = m.owned_by(remaining);
    // Agent -> type -> agent. Favorites are one type's remaining copies.
    std::vector<int> wants(m.size(), -1);
    std::vector<int> top_owner(t.type_count, -1);
    for (int i : remaining) wants[i] = t.type_of[m.favorites(i, pool).first()];
    for (int x = 0; x < t.type_count; ++x) {
      const auto& order = p.orders[x];
      for (std::size_t k = 0; k < order.size(); ++k) {
        if (remaining.contains(order[k])) {
          top_owner[x] = order[k];
          run.deepest[x] = std::max(run.deepest[x], static_cast<int>(k));
          break;
        }
      }
    }
    // i's successor in the agent graph is the top owner of his wanted type.
    const auto successor = [&](int i) { return top_owner[wants[i]]; };
    AgentSet cleared;
    for (int start : remaining) {
      if (cleared.contains(start)) continue;
      // Walk until a node repeats; the repeated suffix is a cycle.
      std::vector<int> walk;
      AgentSet seen;
      int v = start;
      while (!seen.contains(v) && !cleared.contains(v)) {
        seen.insert(v);
        walk.push_back(v);
        v = successor(v);
      }
      if (cleared.contains(v)) continue;
      auto it = std::find(walk.begin(), walk.end(), v);
      for (; it != walk.end(); ++it) {
        assign[*it] = m.endowment(successor(*it));
        cleared.insert(*it);
      }
    }
    remaining -= cleared;
  }
  run.outcome = Allocation(std::move(assign));
  return run;
}

std::uint64_t priority_structure_count(const Market& m, const TypeStructure& t) {
  std::uint64_t count = 1;
  for (int x = 0; x < t.type_count; ++x) {
    const std::uint64_t f = factorial(t.owners(m, x).size());
    if (count > UINT64_MAX / f) return UINT64_MAX;
    count *= f;
  }
  return count;
}

std::vector<Allocation> exclusion_core_typed(const Market& m,
                                             const TypeStructure& t,
                                             std::uint64_t budget) {
  if (priority_structure_count(m, t) > budget) {
    throw Error(ErrorCode::kBudgetExceeded,
                "more than " + std::to_string(budget) + " priority structures");
  }
  PriorityStructure p;
  for (int x = 0; x < t.type_count; ++x) p.orders.push_back(t.owners(m, x).to_vector());
  std::set<Allocation> outcomes;
  // Odometer over per-type permutations, each starting sorted.
  for (;;) {
    outcomes.insert(typed_ttc(m, t, p));
    int x = 0;
    for (; x < t.type_count; ++x) {
      if (std::next_permutation(p.orders[x].begin(), p.orders[x].end())) break;
    }
    if (x == t.type_count) break;
  }
  return {outcomes.begin(), outcomes.end()};
}

std::vector<Allocation> equivalence_closure(const Market& m,
                                            const std::vector<Allocation>& s) {
  std::set<std::vector<int>> signatures;
  for (const Allocation& a : s) signatures.insert(welfare_signature(m, a));
  std::vector<Allocation> out;
  if (signatures.empty()) return out;
  for_each_allocation(m.size(), [&](const Allocation& a) {
    if (signatures.contains(welfare_signature(m, a))) out.push_back(a);
    return true;
  });
  return out;
}

}  // namespace hmkt::typed
