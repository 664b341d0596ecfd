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

#include "hmkt/gttc.hpp"

#include <stdexcept>
#include <string>

#include "hmkt/error.hpp"
#include "hmkt/graph.hpp"

namespace hmkt::gttc {

namespace {

// Upper bound on enumerated cycles for the seeded-random rule.
constexpr std::size_t kCycleLimit = 2'000'000;

}  // namespace

State State::initial(const Market& m) {
  return State{m.all_agents(), m.all_objects(), m.endowments(), {}, 0};
}

bool satisfied(const Market& m, const State& s, int agent) {
  return m.favorites(agent, s.remaining_objects).contains(s.holding[agent]);
}

namespace {

// holder[o] for every remaining object.
std::vector<int> holders(const Market& m, const State& s) {
  std::vector<int> out(m.size(), -1);
  for (int i : s.remaining) out[s.holding[i]] = i;
  return out;
}

AgentSet holders_of(const std::vector<int>& holder, ObjectSet objects) {
  AgentSet out;
  for (int o : objects) out.insert(holder[o]);
  return out;
}

}  // namespace

Coalition departure_fixed_point(const Market& m, const State& s) {
  const std::vector<int> holder = holders(m, s);
  AgentSet survivors;
  for (int i : s.remaining) {
    if (satisfied(m, s, i)) survivors.insert(i);
  }
  // Peel agents whose favorites are held outside the survivor set.
  for (bool changed = true; changed;) {
    changed = false;
    for (int i : survivors) {
      if (!holders_of(holder, m.favorites(i, s.remaining_objects))
               .subset_of(survivors)) {
        survivors.erase(i);
        changed = true;
      }
    }
  }
  return survivors;
}

void depart(State& s, Coalition group) {
  DepartedGroup d{group, {}};
  for (int i : group) {
    d.fragment.emplace_back(i, s.holding[i]);
    s.remaining_objects.erase(s.holding[i]);
  }
  s.remaining -= group;
  s.departed.push_back(std::move(d));
}

std::vector<AgentSet> favorite_holder_graph(const Market& m, const State& s) {
  const std::vector<int> holder = holders(m, s);
  std::vector<AgentSet> g(m.size());
  for (int i : s.remaining) {
    g[i] = holders_of(holder, m.favorites(i, s.remaining_objects));
  }
  return g;
}

Cycle smallest_cycle_through(const std::vector<AgentSet>& graph, int start,
                             AgentSet component) {
  Cycle path{start};
  AgentSet on_path = AgentSet::singleton(start);
  int current = start;
  // Closing the cycle beats any extension (a prefix sorts first); otherwise
  // take the smallest successor from which start is still reachable.
  for (;;) {
    if (graph[current].contains(start)) return path;
    bool moved = false;
    for (int next : (graph[current] & component) - on_path) {
      const AgentSet within = (component - on_path) | AgentSet::singleton(start);
      if (graph::reachable_from(graph, next, within).contains(start)) {
        path.push_back(next);
        on_path.insert(next);
        current = next;
        moved = true;
        break;
      }
    }
    if (!moved) {
      throw std::logic_error("no cycle through the start agent in its component");
    }
  }
}

namespace {

void extend_cycles(const std::vector<AgentSet>& graph, AgentSet allowed,
                   int start, Cycle& path, AgentSet on_path,
                   std::vector<Cycle>& out, std::size_t limit) {
  const int current = path.back();
  // Successors in increasing order; `start` is the smallest allowed index, so
  // closing the cycle is visited first, matching lexicographic order.
  for (int next : graph[current] & allowed) {
    if (next == start) {
      if (out.size() >= limit) {
        throw Error(ErrorCode::kBudgetExceeded, "too many trading cycles");
      }
      out.push_back(path);
    } else if (!on_path.contains(next)) {
      path.push_back(next);
      on_path.insert(next);
      extend_cycles(graph, allowed, start, path, on_path, out, limit);
      on_path.erase(next);
      path.pop_back();
    }
  }
}

}  // namespace

std::vector<Cycle> simple_cycles(const std::vector<AgentSet>& graph,
                                 AgentSet component, std::size_t limit) {
  std::vector<Cycle> out;
  AgentSet allowed = component;
  for (int start : component) {
    Cycle path{start};
    extend_cycles(graph, allowed, start, path, AgentSet::singleton(start), out,
                  limit);
    allowed.erase(start);
  }
  return out;
}

Cycle MinCycleRule::select(const Market&, const State&, const CycleContext& ctx) {
  int best = -1;
  AgentSet best_comp;
  for (AgentSet comp : ctx.qualifying) {
    const int u = (comp & ctx.unsatisfied).first();
    if (best < 0 || u < best) {
      best = u;
      best_comp = comp;
    }
  }
  return smallest_cycle_through(ctx.graph, best, best_comp);
}

Cycle SeededRandomRule::select(const Market&, const State&,
                               const CycleContext& ctx) {
  std::vector<Cycle> candidates;
  for (AgentSet comp : ctx.qualifying) {
    for (Cycle& c : simple_cycles(ctx.graph, comp, kCycleLimit)) {
      bool beneficial = false;
      for (int i : c) beneficial = beneficial || ctx.unsatisfied.contains(i);
      if (beneficial) candidates.push_back(std::move(c));
    }
  }
  return candidates[static_cast<std::size_t>(rng_.below(candidates.size()))];
}

std::unique_ptr<PointingRule> make_rule(std::string_view name,
                                        std::uint64_t seed) {
  if (name == "min-cycle") return std::make_unique<MinCycleRule>();
  if (name == "seeded-random") return std::make_unique<SeededRandomRule>(seed);
  throw Error(ErrorCode::kInvalidArgument, "unknown pointing rule '" + std::string(name) + "'");
}

CycleContext cycle_context(const Market& m, const State& s) {
  CycleContext ctx;
  ctx.graph = favorite_holder_graph(m, s);
  for (int i : s.remaining) {
    if (!satisfied(m, s, i)) ctx.unsatisfied.insert(i);
  }
  for (AgentSet comp : graph::sink_components(ctx.graph, s.remaining)) {
    if (comp.intersects(ctx.unsatisfied)) ctx.qualifying.push_back(comp);
  }
  return ctx;
}

Cycle find_beneficial_cycle(const Market& m, const State& s, PointingRule& rule) {
  if (s.remaining.empty() || !departure_fixed_point(m, s).empty()) {
    throw Error(ErrorCode::kDeparturePending,
                "beneficial cycles are searched only after departures");
  }
  const CycleContext ctx = cycle_context(m, s);
  // A sink component of satisfied agents would be a departable group.
  if (ctx.qualifying.empty()) {
    throw std::logic_error("no sink component holds an unsatisfied agent");
  }
  Cycle c = rule.select(m, s, ctx);
  bool beneficial = false;
  for (int i : c) beneficial = beneficial || ctx.unsatisfied.contains(i);
  if (c.empty() || !beneficial) {
    throw std::logic_error("pointing rule returned a non-beneficial cycle");
  }
  return c;
}

void trade(State& s, const Cycle& cycle) {
  std::vector<int> next(cycle.size());
  for (std::size_t k = 0; k < cycle.size(); ++k) {
    next[k] = s.holding[cycle[(k + 1) % cycle.size()]];
  }
  for (std::size_t k = 0; k < cycle.size(); ++k) s.holding[cycle[k]] = next[k];
  ++s.step;
}

namespace {

DepartureRecord record_departure(const Market& m, const State& s,
                                 Coalition group) {
  DepartureRecord r{group, {}, {}};
  for (int i : group) {
    r.held.push_back(s.holding[i]);
    r.favorites.push_back(m.favorites(i, s.remaining_objects));
  }
  return r;
}

std::vector<int> visible_holdings(const State& s) {
  std::vector<int> out(s.holding.size(), -1);
  for (int i : s.remaining) out[i] = s.holding[i];
  return out;
}

}  // namespace

Result run(const Market& m, PointingRule& rule) {
  State s = State::initial(m);
  Trace trace{rule.name(), {}};
  // Each trade moves one agent to a strictly better class and nobody down.
  int budget = 1;
  for (int i = 0; i < m.size(); ++i) budget += m.class_count(i);
  for (;;) {
    Step step;
    for (Coalition x = departure_fixed_point(m, s); !x.empty();
         x = departure_fixed_point(m, s)) {
      step.departures.push_back(record_departure(m, s, x));
      depart(s, x);
    }
    if (s.remaining.empty()) {
      trace.steps.push_back(std::move(step));
      break;
    }
    if (--budget < 0) throw std::logic_error("GTTC failed to terminate");
    const CycleContext ctx = cycle_context(m, s);
    Cycle c = find_beneficial_cycle(m, s, rule);
    trade(s, c);
    step.trade = TradeRecord{ctx.graph, ctx.unsatisfied, std::move(c),
                             visible_holdings(s)};
    trace.steps.push_back(std::move(step));
  }
  return Result{Allocation(s.holding), std::move(trace)};
}

Allocation replay(const Market& m, const Trace& trace) {
  const auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kInvalidArgument, "trace replay: " + what);
  };
  State s = State::initial(m);
  for (const Step& step : trace.steps) {
    for (const DepartureRecord& d : step.departures) {
      if (d.group.empty() || !d.group.subset_of(s.remaining)) fail("bad group");
      const std::vector<int> holder = holders(m, s);
      std::size_t k = 0;
      for (int i : d.group) {
        if (k >= d.held.size() || s.holding[i] != d.held[k]) fail("held object mismatch");
        if (!satisfied(m, s, i)) fail("departing agent unsatisfied");
        const ObjectSet fav = m.favorites(i, s.remaining_objects);
        if (k < d.favorites.size() && d.favorites[k] != fav) fail("favorites mismatch");
        if (!holders_of(holder, fav).subset_of(d.group)) {
          fail("favorite held outside the departing group");
        }
        ++k;
      }
      depart(s, d.group);
    }
    if (!step.trade) continue;
    if (s.remaining.empty() || !departure_fixed_point(m, s).empty()) {
      fail("trade before departures were exhausted");
    }
    const Cycle& c = step.trade->cycle;
    bool gain = false;
    for (std::size_t k = 0; k < c.size(); ++k) {
      const int i = c[k];
      const int next = c[(k + 1) % c.size()];
      if (!s.remaining.contains(i) || !s.remaining.contains(next)) fail("cycle leaves market");
      if (!m.favorites(i, s.remaining_objects).contains(s.holding[next])) {
        fail("cycle edge is not a favorite pointer");
      }
      gain = gain || !satisfied(m, s, i);
    }
    if (!gain) fail("cycle is not beneficial");
    trade(s, c);
    if (visible_holdings(s) != step.trade->holding_after) fail("holdings mismatch");
  }
  if (!s.remaining.empty()) fail("agents left in the market");
  return Allocation(s.holding);
}

}  // namespace hmkt::gttc
