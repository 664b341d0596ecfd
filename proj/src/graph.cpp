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

#include "hmkt/graph.hpp"

#include <array>

namespace hmkt::graph {

AgentSet reachable_from(std::span<const AgentSet> succ, int start,
                        AgentSet within) {
  AgentSet seen = AgentSet::singleton(start);
  AgentSet frontier = seen;
  while (!frontier.empty()) {
    AgentSet next;
    for (int v : frontier) next |= succ[v] & within;
    frontier = next - seen;
    seen |= frontier;
  }
  return seen;
}

std::vector<AgentSet> strongly_connected_components(
    std::span<const AgentSet> succ, AgentSet nodes) {
  std::array<AgentSet, kMaxIndices> reach{};
  for (int v : nodes) reach[v] = reachable_from(succ, v, nodes);
  std::vector<AgentSet> out;
  AgentSet assigned;
  for (int v : nodes) {
    if (assigned.contains(v)) continue;
    AgentSet comp;
    for (int w : reach[v]) {
      if (reach[w].contains(v)) comp.insert(w);
    }
    assigned |= comp;
    out.push_back(comp);
  }
  return out;
}

std::vector<AgentSet> sink_components(std::span<const AgentSet> succ,
                                      AgentSet nodes) {
  std::vector<AgentSet> out;
  for (AgentSet comp : strongly_connected_components(succ, nodes)) {
    bool closed = true;
    for (int v : comp) {
      if (!(succ[v] & nodes).subset_of(comp)) {
        closed = false;
        break;
      }
    }
    if (closed) out.push_back(comp);
  }
  return out;
}

namespace {

// Kuhn's augmenting path search. holder[o] is the agent matched to o or -1.
bool augment(int agent, std::span<const ObjectSet> allowed, ObjectSet objects,
             ObjectSet& visited, std::array<int, kMaxIndices>& holder) {
  for (int o : (allowed[agent] & objects) - visited) {
    visited.insert(o);
    if (holder[o] < 0 || augment(holder[o], allowed, objects, visited, holder)) {
      holder[o] = agent;
      return true;
    }
  }
  return false;
}

}  // namespace

bool has_perfect_matching(std::span<const ObjectSet> allowed, AgentSet agents,
                          ObjectSet objects) {
  if (agents.size() != objects.size()) return false;
  std::array<int, kMaxIndices> holder;
  holder.fill(-1);
  for (int a : agents) {
    ObjectSet visited;
    if (!augment(a, allowed, objects, visited, holder)) return false;
  }
  return true;
}

std::optional<std::vector<int>> lex_first_perfect_matching(
    std::span<const ObjectSet> allowed, AgentSet agents, ObjectSet objects) {
  if (!has_perfect_matching(allowed, agents, objects)) return std::nullopt;
  std::vector<int> out(allowed.size(), -1);
  AgentSet rest = agents;
  ObjectSet pool = objects;
  for (int a : agents) {
    rest.erase(a);
    for (int o : allowed[a] & pool) {
      if (has_perfect_matching(allowed, rest, pool - ObjectSet::singleton(o))) {
        out[a] = o;
        pool.erase(o);
        break;
      }
    }
  }
  return out;
}

namespace {

bool enumerate(std::span<const ObjectSet> allowed, AgentSet rest,
               ObjectSet pool, std::vector<int>& current,
               const std::function<bool(const std::vector<int>&)>& visit) {
  if (rest.empty()) return visit(current);
  const int a = rest.first();
  const AgentSet after = rest - AgentSet::singleton(a);
  for (int o : allowed[a] & pool) {
    const ObjectSet left = pool - ObjectSet::singleton(o);
    if (!has_perfect_matching(allowed, after, left)) continue;
    current[a] = o;
    if (!enumerate(allowed, after, left, current, visit)) return false;
  }
  current[a] = -1;
  return true;
}

}  // namespace

void for_each_perfect_matching(
    std::span<const ObjectSet> allowed, AgentSet agents, ObjectSet objects,
    const std::function<bool(const std::vector<int>&)>& visit) {
  if (!has_perfect_matching(allowed, agents, objects)) return;
  std::vector<int> current(allowed.size(), -1);
  enumerate(allowed, agents, objects, current, visit);
}

}  // namespace hmkt::graph
