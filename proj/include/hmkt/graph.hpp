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

#ifndef HMKT_GRAPH_HPP
#define HMKT_GRAPH_HPP

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "hmkt/index_set.hpp"

// Small-graph kernels over bit-mask adjacency: reachability, strongly
// connected components, and agent/object perfect matchings.
namespace hmkt::graph {

// succ[v] is the set of successors of node v. Only nodes in `within` and edges
// between them are considered.
AgentSet reachable_from(std::span<const AgentSet> succ, int start,
                        AgentSet within);

// The strongly connected components of the subgraph induced by `nodes`,
// ordered by smallest member.
std::vector<AgentSet> strongly_connected_components(
    std::span<const AgentSet> succ, AgentSet nodes);

// Components with no edge leaving them (inside `nodes`), ordered by smallest
// member.
std::vector<AgentSet> sink_components(std::span<const AgentSet> succ,
                                      AgentSet nodes);

// allowed[agent] is the set of objects the agent may take.
bool has_perfect_matching(std::span<const ObjectSet> allowed, AgentSet agents,
                          ObjectSet objects);

// The perfect matching that is lexicographically smallest when read as the
// object sequence of `agents` in increasing order. Result is indexed by agent,
// -1 outside `agents`.
std::optional<std::vector<int>> lex_first_perfect_matching(
    std::span<const ObjectSet> allowed, AgentSet agents, ObjectSet objects);

// Visits every perfect matching in lexicographic order. Stops when `visit`
// returns false.
void for_each_perfect_matching(
    std::span<const ObjectSet> allowed, AgentSet agents, ObjectSet objects,
    const std::function<bool(const std::vector<int>&)>& visit);

}  // namespace hmkt::graph

#endif  // HMKT_GRAPH_HPP
