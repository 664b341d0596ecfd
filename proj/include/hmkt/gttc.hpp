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

#ifndef HMKT_GTTC_HPP
#define HMKT_GTTC_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hmkt/index_set.hpp"
#include "hmkt/market.hpp"
#include "hmkt/random.hpp"

// Generalized top trading cycles: alternate departure of groups that can gain
// nothing more, and trading of one beneficial cycle among the favorite-holder
// pointers of the remaining agents.
namespace hmkt::gttc {

struct DepartedGroup {
  Coalition group;
  std::vector<std::pair<int, int>> fragment;  // (agent, object), by agent
};

struct State {
  AgentSet remaining;
  ObjectSet remaining_objects;
  // holding[i] is the object agent i holds now (or left with, once departed).
  std::vector<int> holding;
  std::vector<DepartedGroup> departed;
  int step = 0;

  static State initial(const Market& m);
};

// The agent holds one of his favorites among the remaining objects.
bool satisfied(const Market& m, const State& s, int agent);

// The largest set X of remaining agents whose members are all satisfied and
// whose favorites among the remaining objects are all held inside X. This is
// the union of every group that could depart right now.
Coalition departure_fixed_point(const Market& m, const State& s);

// Removes `group` with the objects it holds.
void depart(State& s, Coalition group);

// Every remaining agent points at the holders of each of his favorite
// remaining objects. Indexed by agent; empty for departed agents.
std::vector<AgentSet> favorite_holder_graph(const Market& m, const State& s);

using Cycle = std::vector<int>;  // agents; each takes the next one's object

// What a pointing rule gets to choose from.
struct CycleContext {
  std::vector<AgentSet> graph;
  AgentSet unsatisfied;
  // Sink components of `graph` that contain an unsatisfied agent, ordered by
  // smallest member. Never empty once departures are exhausted.
  std::vector<AgentSet> qualifying;
};

class PointingRule {
 public:
  virtual ~PointingRule() = default;
  virtual std::string name() const = 0;
  // Returns a cycle of `ctx.graph` inside one qualifying component that
  // passes through at least one unsatisfied agent.
  virtual Cycle select(const Market& m, const State& s,
                       const CycleContext& ctx) = 0;
};

// Lexicographically smallest cycle through the lowest-indexed unsatisfied
// agent that lies in a qualifying component.
class MinCycleRule : public PointingRule {
 public:
  std::string name() const override { return "min-cycle"; }
  Cycle select(const Market& m, const State& s, const CycleContext& ctx) override;
};

// Uniform over all simple cycles of the qualifying components that contain an
// unsatisfied agent.
class SeededRandomRule : public PointingRule {
 public:
  explicit SeededRandomRule(std::uint64_t seed) : rng_(seed) {}
  std::string name() const override { return "seeded-random"; }
  Cycle select(const Market& m, const State& s, const CycleContext& ctx) override;

 private:
  Rng rng_;
};

// Accepts "min-cycle" and "seeded-random". Throws Error(kInvalidArgument).
std::unique_ptr<PointingRule> make_rule(std::string_view name,
                                        std::uint64_t seed);

// Lexicographically smallest simple cycle of `graph` that starts at `start`
// and stays inside `component`.
Cycle smallest_cycle_through(const std::vector<AgentSet>& graph, int start,
                             AgentSet component);

// All simple cycles inside `component`, each starting at its smallest member,
// in lexicographic order. Throws Error(kBudgetExceeded) past `limit` cycles.
std::vector<Cycle> simple_cycles(const std::vector<AgentSet>& graph,
                                 AgentSet component, std::size_t limit);

CycleContext cycle_context(const Market& m, const State& s);

// Requires remaining agents and an exhausted departure stage, else throws
// Error(kDeparturePending).
Cycle find_beneficial_cycle(const Market& m, const State& s, PointingRule& rule);

// Every remaining agent on the cycle takes the next agent's object.
void trade(State& s, const Cycle& cycle);

struct DepartureRecord {
  Coalition group;
  std::vector<int> held;             // per member, ascending agent order
  std::vector<ObjectSet> favorites;  // per member, among remaining objects
};

struct TradeRecord {
  std::vector<AgentSet> graph;
  AgentSet unsatisfied;
  Cycle cycle;
  std::vector<int> holding_after;  // -1 for departed agents
};

struct Step {
  std::vector<DepartureRecord> departures;
  std::optional<TradeRecord> trade;  // absent on the final step
};

struct Trace {
  std::string rule;
  std::vector<Step> steps;
};

struct Result {
  Allocation outcome;
  Trace trace;
};

Result run(const Market& m, PointingRule& rule);

// Re-applies a trace from the endowment, checking every departure and trade
// against the rules. Throws Error(kInvalidArgument) on an inconsistent trace.
Allocation replay(const Market& m, const Trace& trace);

}  // namespace hmkt::gttc

#endif  // HMKT_GTTC_HPP
