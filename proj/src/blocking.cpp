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

#include "hmkt/blocking.hpp"

#include <array>
#include <mutex>
#include <string>

#include "hmkt/error.hpp"
#include "hmkt/graph.hpp"

namespace hmkt {

const char* concept_name(CoreConcept c) {
  switch (c) {
    case CoreConcept::kStrong: return "strong";
    case CoreConcept::kExclusion: return "exclusion";
    case CoreConcept::kRectifiedExclusion: return "rectified-exclusion";
    case CoreConcept::kRectifiedStrong: return "rectified-strong";
    case CoreConcept::kWeak: return "weak";
  }
  return "unknown";
}

std::optional<CoreConcept> parse_concept(std::string_view name) {
  for (CoreConcept c : kAllConcepts) {
    if (name == concept_name(c)) return c;
  }
  return std::nullopt;
}

namespace {

// Classifies the members of C. Returns false if some member is worse off.
bool split_welfare(const Market& m, const Allocation& mu,
                   const Allocation& sigma, Coalition c, WelfareSplit& out) {
  out = {};
  for (int i : c) {
    switch (m.compare(i, sigma[i], mu[i])) {
      case Preference::kBetter: out.better.insert(i); break;
      case Preference::kIndifferent: out.same.insert(i); break;
      case Preference::kWorse: return false;
    }
  }
  return true;
}

// Outsiders made strictly worse off hold, under mu, only objects in `control`.
bool harmed_outsiders_evicted(const Market& m, const Allocation& mu, Coalition c,
                              const Allocation& sigma, ObjectSet control) {
  for (int j : m.all_agents() - c) {
    if (m.compare(j, mu[j], sigma[j]) == Preference::kBetter &&
        !control.contains(mu[j])) {
      return false;
    }
  }
  return true;
}

bool unaffected_classes_owned(const Market& m, const Allocation& mu,
                              AgentSet same, ObjectSet owned) {
  for (int i : same) {
    if (!m.indiff_set(i, mu[i]).subset_of(owned)) return false;
  }
  return true;
}

}  // namespace

WelfareSplit better_and_same(const Market& m, const Allocation& mu,
                             const Allocation& sigma, Coalition c) {
  WelfareSplit split;
  if (!split_welfare(m, mu, sigma, c, split)) {
    throw Error(ErrorCode::kInvalidArgument,
                "a coalition member is worse off under the counter allocation");
  }
  return split;
}

ObjectSet control_set(const Market& m, Coalition c, const Allocation& mu,
                      ControlMode mode) {
  AgentSet closed = c;
  ObjectSet controlled = m.owned_by(closed);
  // Each round captures at least one agent or stops, so at most n rounds.
  for (;;) {
    AgentSet captured;
    for (int i : m.all_agents() - closed) {
      const bool hit = mode == ControlMode::kBk
                           ? controlled.contains(mu[i])
                           : m.indiff_set(i, mu[i]).subset_of(controlled);
      if (hit) captured.insert(i);
    }
    if (captured.empty()) return controlled;
    closed |= captured;
    controlled |= m.owned_by(captured);
  }
}

bool weakly_blocks(const Market& m, const Allocation& mu, Coalition c,
                   const Allocation& sigma) {
  WelfareSplit split;
  return !c.empty() && split_welfare(m, mu, sigma, c, split) &&
         !split.better.empty() && sigma.image(c) == m.owned_by(c);
}

bool strongly_blocks(const Market& m, const Allocation& mu, Coalition c,
                     const Allocation& sigma) {
  WelfareSplit split;
  return !c.empty() && split_welfare(m, mu, sigma, c, split) &&
         split.better == c && sigma.image(c) == m.owned_by(c);
}

bool exclusion_blocks(const Market& m, const Allocation& mu, Coalition c,
                      const Allocation& sigma) {
  WelfareSplit split;
  if (c.empty() || !split_welfare(m, mu, sigma, c, split) || split.better != c) {
    return false;
  }
  return harmed_outsiders_evicted(m, mu, c, sigma,
                                  control_set(m, c, mu, ControlMode::kBk));
}

bool rectified_exclusion_blocks(const Market& m, const Allocation& mu,
                                Coalition c, const Allocation& sigma) {
  WelfareSplit split;
  if (c.empty() || !split_welfare(m, mu, sigma, c, split) ||
      split.better.empty()) {
    return false;
  }
  return unaffected_classes_owned(m, mu, split.same, m.owned_by(c)) &&
         harmed_outsiders_evicted(m, mu, c, sigma,
                                  control_set(m, c, mu, ControlMode::kRectified));
}

bool rectification_blocks(const Market& m, const Allocation& mu, Coalition c,
                          const Allocation& sigma) {
  WelfareSplit split;
  if (c.empty() || !split_welfare(m, mu, sigma, c, split) ||
      split.better.empty()) {
    return false;
  }
  const ObjectSet owned = m.owned_by(c);
  return sigma.image(c) == owned &&
         unaffected_classes_owned(m, mu, split.same, owned);
}

bool blocks(const Market& m, CoreConcept core, const Allocation& mu,
            Coalition c, const Allocation& sigma) {
  switch (core) {
    case CoreConcept::kStrong: return weakly_blocks(m, mu, c, sigma);
    case CoreConcept::kExclusion: return exclusion_blocks(m, mu, c, sigma);
    case CoreConcept::kRectifiedExclusion:
      return rectified_exclusion_blocks(m, mu, c, sigma);
    case CoreConcept::kRectifiedStrong:
      return rectification_blocks(m, mu, c, sigma);
    case CoreConcept::kWeak: return strongly_blocks(m, mu, c, sigma);
  }
  return false;
}

BlockWitness::BlockWitness(const Market& m, const Allocation& challenged,
                           CoreConcept core, Coalition coalition,
                           Allocation counter)
    : core_(core), coalition_(coalition), counter_(std::move(counter)) {
  if (counter_.size() != m.size() || challenged.size() != m.size() ||
      !blocks(m, core_, challenged, coalition_, counter_)) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string("witness does not satisfy the ") +
                    concept_name(core_) + " blocking relation");
  }
}

namespace {

void append_combinations(int n, int k, int next, Coalition current,
                         std::vector<Coalition>& out) {
  if (k == 0) {
    out.push_back(current);
    return;
  }
  for (int i = next; i <= n - k; ++i) {
    Coalition with = current;
    with.insert(i);
    append_combinations(n, k - 1, i + 1, with, out);
  }
}

// Admissible agent/object edges for one (mu, C, concept) triple. A counter
// allocation blocks via C iff it is a perfect matching of `participants` onto
// `pool` inside `allowed`, and, when `need_gain` is set, at least one member
// of C uses an edge from `strict`.
struct BlockProblem {
  std::array<ObjectSet, kMaxIndices> allowed{};
  std::array<ObjectSet, kMaxIndices> strict{};
  AgentSet participants;
  ObjectSet pool;
  Coalition gainers;
  bool need_gain = false;
};

bool endowment_concept(CoreConcept core) {
  return core == CoreConcept::kStrong || core == CoreConcept::kWeak ||
         core == CoreConcept::kRectifiedStrong;
}

BlockProblem build_problem(const Market& m, const Allocation& mu,
                           CoreConcept core, Coalition c) {
  BlockProblem p;
  const ObjectSet owned = m.owned_by(c);
  p.gainers = c;
  if (endowment_concept(core)) {
    p.participants = c;
    p.pool = owned;
    for (int i : c) {
      p.strict[i] = m.strictly_better(i, mu[i]) & owned;
      switch (core) {
        case CoreConcept::kWeak:  // strong blocking
          p.allowed[i] = p.strict[i];
          break;
        case CoreConcept::kStrong:  // weak blocking
          p.allowed[i] = m.weakly_better(i, mu[i]) & owned;
          p.need_gain = true;
          break;
        default: {  // rectification blocking
          const ObjectSet cls = m.indiff_set(i, mu[i]);
          p.allowed[i] = p.strict[i] | (cls.subset_of(owned) ? cls : ObjectSet());
          p.need_gain = true;
        }
      }
    }
    return p;
  }

  const bool rectified = core == CoreConcept::kRectifiedExclusion;
  const ObjectSet control = control_set(
      m, c, mu, rectified ? ControlMode::kRectified : ControlMode::kBk);
  p.participants = m.all_agents();
  p.pool = m.all_objects();
  p.need_gain = rectified;
  for (int i = 0; i < m.size(); ++i) {
    if (c.contains(i)) {
      p.strict[i] = m.strictly_better(i, mu[i]);
      p.allowed[i] = p.strict[i];
      if (rectified) {
        const ObjectSet cls = m.indiff_set(i, mu[i]);
        if (cls.subset_of(owned)) p.allowed[i] |= cls;
      }
    } else {
      p.allowed[i] = control.contains(mu[i]) ? m.all_objects()
                                             : m.weakly_better(i, mu[i]);
    }
  }
  return p;
}

bool feasible(const BlockProblem& p, AgentSet rest, ObjectSet pool,
              bool gained) {
  if (!p.need_gain || gained) {
    return graph::has_perfect_matching(p.allowed, rest, pool);
  }
  for (int g : rest & p.gainers) {
    if ((p.strict[g] & pool).empty()) continue;
    std::array<ObjectSet, kMaxIndices> forced = p.allowed;
    forced[g] = p.strict[g];
    if (graph::has_perfect_matching(forced, rest, pool)) return true;
  }
  return false;
}

// Lexicographically smallest admissible counter allocation over the
// participants, or nullopt.
std::optional<std::vector<int>> solve(const BlockProblem& p, int n) {
  for (int i : p.participants) {
    if ((p.allowed[i] & p.pool).empty()) return std::nullopt;
  }
  if (p.need_gain) {
    bool any = false;
    for (int g : p.gainers) any = any || !(p.strict[g] & p.pool).empty();
    if (!any) return std::nullopt;
  }
  if (!feasible(p, p.participants, p.pool, false)) return std::nullopt;

  std::vector<int> assign(n, -1);
  AgentSet rest = p.participants;
  ObjectSet pool = p.pool;
  bool gained = false;
  for (int i : p.participants) {
    rest.erase(i);
    bool placed = false;
    for (int o : p.allowed[i] & pool) {
      const bool gains = p.gainers.contains(i) && p.strict[i].contains(o);
      if (feasible(p, rest, pool - ObjectSet::singleton(o), gained || gains)) {
        assign[i] = o;
        pool.erase(o);
        gained = gained || gains;
        placed = true;
        break;
      }
    }
    if (!placed) return std::nullopt;  // unreachable after the root check
  }
  return assign;
}

}  // namespace

const std::vector<Coalition>& coalitions_in_search_order(int n) {
  static std::mutex mu;
  static std::array<std::vector<Coalition>, kMaxBlockSearchAgents + 1> cache;
  if (n < 1 || n > kMaxBlockSearchAgents) {
    throw Error(ErrorCode::kInstanceTooLarge,
                "coalition search supports at most " +
                    std::to_string(kMaxBlockSearchAgents) + " agents");
  }
  std::lock_guard<std::mutex> lock(mu);
  if (cache[n].empty()) {
    for (int k = 1; k <= n; ++k) append_combinations(n, k, 0, Coalition(), cache[n]);
  }
  return cache[n];
}

std::optional<BlockWitness> find_block(const Market& m, const Allocation& mu,
                                       CoreConcept core) {
  const int n = m.size();
  for (Coalition c : coalitions_in_search_order(n)) {
    // Strong blocking needs every member to gain; top-ranked members cannot.
    if (core == CoreConcept::kWeak) {
      bool hopeless = false;
      for (int i : c) hopeless = hopeless || m.rank(i, mu[i]) == 0;
      if (hopeless) continue;
    }
    const BlockProblem p = build_problem(m, mu, core, c);
    std::optional<std::vector<int>> assign = solve(p, n);
    if (!assign) continue;
    if (endowment_concept(core)) {
      ObjectSet rest = m.all_objects() - p.pool;
      for (int j : m.all_agents() - c) {
        (*assign)[j] = rest.first();
        rest.erase(rest.first());
      }
    }
    return BlockWitness(m, mu, core, c, Allocation(std::move(*assign)));
  }
  return std::nullopt;
}

}  // namespace hmkt
