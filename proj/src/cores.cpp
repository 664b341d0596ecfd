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

#include "hmkt/cores.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_map>

#include "hmkt/error.hpp"
#include "hmkt/graph.hpp"

namespace hmkt {

bool CoreReport::contains(const Allocation& mu) const {
  return std::binary_search(members.begin(), members.end(), mu);
}

BlockWitness individual_rationality_witness(const Market& m,
                                            const Allocation& mu,
                                            CoreConcept core) {
  for (int i = 0; i < m.size(); ++i) {
    if (m.compare(i, mu[i], m.endowment(i)) != Preference::kWorse) continue;
    std::vector<int> counter = mu.objects();
    const auto holder = static_cast<int>(
        std::find(counter.begin(), counter.end(), m.endowment(i)) -
        counter.begin());
    std::swap(counter[i], counter[holder]);
    return BlockWitness(m, mu, core, Coalition::singleton(i),
                        Allocation(std::move(counter)));
  }
  throw Error(ErrorCode::kInvalidArgument,
              "allocation is individually rational");
}

namespace {

void check_bound(const Market& m, const CoreOptions& options) {
  if (m.size() > options.max_agents) {
    throw Error(ErrorCode::kInstanceTooLarge,
                "market has " + std::to_string(m.size()) +
                    " agents; the core enumeration bound is " +
                    std::to_string(options.max_agents));
  }
}

}  // namespace

CoreReport compute_core(const Market& m, CoreConcept core,
                        const CoreOptions& options) {
  return compute_all_cores(m, options)[static_cast<std::size_t>(
      std::find(kAllConcepts.begin(), kAllConcepts.end(), core) -
      kAllConcepts.begin())];
}

std::vector<CoreReport> compute_all_cores(const Market& m,
                                          const CoreOptions& options) {
  check_bound(m, options);
  std::vector<CoreReport> reports;
  for (CoreConcept c : kAllConcepts) reports.push_back(CoreReport{c, {}, {}});
  for_each_allocation(m.size(), [&](const Allocation& mu) {
    const bool rational = is_individually_rational(m, mu);
    for (CoreReport& r : reports) {
      if (!rational) {
        r.witnesses.emplace(mu, individual_rationality_witness(m, mu, r.core));
      } else if (auto w = find_block(m, mu, r.core)) {
        r.witnesses.emplace(mu, std::move(*w));
      } else {
        r.members.push_back(mu);
      }
    }
    return true;
  });
  return reports;
}

// --- PMSS and TTS ---------------------------------------------------------

PointingGraph pmss_pointing_graph(const Market& m, AgentSet remaining) {
  PointingGraph g{remaining, std::vector<AgentSet>(m.size())};
  const ObjectSet pool = m.owned_by(remaining);
  for (int i : remaining) g.pointing[i] = m.owners_of(m.favorites(i, pool));
  return g;
}

bool is_self_mapped(const PointingGraph& g, AgentSet t) {
  AgentSet image;
  for (int i : t) image |= g.pointing[i];
  return !t.empty() && image == t;
}

PmssPartition pmss(const Market& m) {
  PmssPartition p;
  AgentSet remaining = m.all_agents();
  while (!remaining.empty()) {
    PointingGraph g = pmss_pointing_graph(m, remaining);
    // A sink component is closed, and each member has a pointer inside it
    // (a singleton sink points to itself), so it is self-mapped. A proper
    // self-mapped subset would be closed, which strong connectivity forbids.
    const AgentSet group = graph::sink_components(g.pointing, remaining).front();
    p.groups.push_back(group);
    p.graphs.push_back(std::move(g));
    remaining -= group;
  }
  return p;
}

Allocation TtsCertificate::allocation() const {
  std::vector<int> out(matchings.empty() ? 0 : matchings.front().size(), -1);
  for (const auto& mk : matchings) {
    for (std::size_t i = 0; i < mk.size(); ++i) {
      if (mk[i] >= 0) out[i] = mk[i];
    }
  }
  return Allocation(std::move(out));
}

namespace {

// Admissible edges for group t when `remaining` agents are left: favorites
// among the remaining endowments that t itself owns.
std::vector<ObjectSet> group_edges(const Market& m, AgentSet remaining,
                                   AgentSet t) {
  std::vector<ObjectSet> allowed(m.size());
  const ObjectSet pool = m.owned_by(remaining);
  const ObjectSet own = m.owned_by(t);
  for (int i : t) allowed[i] = m.favorites(i, pool) & own;
  return allowed;
}

std::optional<std::vector<int>> group_matching(const Market& m,
                                               AgentSet remaining, AgentSet t) {
  const std::vector<ObjectSet> allowed = group_edges(m, remaining, t);
  return graph::lex_first_perfect_matching(allowed, t, m.owned_by(t));
}

bool is_sink_component(const PointingGraph& g, AgentSet t) {
  const auto sinks = graph::sink_components(g.pointing, g.remaining);
  return std::find(sinks.begin(), sinks.end(), t) != sinks.end();
}

class TtsSearch {
 public:
  TtsSearch(const Market& m, long budget) : m_(m), budget_(budget) {}

  std::optional<TtsCertificate> run() {
    TtsCertificate cert;
    if (descend(m_.all_agents(), cert)) return cert;
    return std::nullopt;
  }

 private:
  bool descend(AgentSet remaining, TtsCertificate& cert) {
    if (remaining.empty()) return true;
    if (failed_.contains(remaining.bits())) return false;
    if (--budget_ < 0) {
      throw Error(ErrorCode::kBudgetExceeded,
                  "TTS branching budget exhausted");
    }
    PointingGraph g = pmss_pointing_graph(m_, remaining);
    for (AgentSet t : graph::sink_components(g.pointing, remaining)) {
      std::optional<std::vector<int>> mk = group_matching(m_, remaining, t);
      if (!mk) continue;
      cert.partition.groups.push_back(t);
      cert.partition.graphs.push_back(g);
      cert.matchings.push_back(std::move(*mk));
      if (descend(remaining - t, cert)) return true;
      cert.partition.groups.pop_back();
      cert.partition.graphs.pop_back();
      cert.matchings.pop_back();
    }
    failed_.insert(remaining.bits());
    return false;
  }

  const Market& m_;
  long budget_;
  std::set<std::uint32_t> failed_;
};

}  // namespace

std::optional<TtsCertificate> is_tts(const Market& m, const PmssPartition& p) {
  TtsCertificate cert;
  AgentSet remaining = m.all_agents();
  for (AgentSet t : p.groups) {
    if (t.empty() || !t.subset_of(remaining)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "groups do not partition the agents");
    }
    PointingGraph g = pmss_pointing_graph(m, remaining);
    if (!is_self_mapped(g, t) || !is_sink_component(g, t)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "group is not a minimal self-mapped set at its step");
    }
    std::optional<std::vector<int>> mk = group_matching(m, remaining, t);
    if (!mk) return std::nullopt;
    cert.partition.groups.push_back(t);
    cert.partition.graphs.push_back(std::move(g));
    cert.matchings.push_back(std::move(*mk));
    remaining -= t;
  }
  if (!remaining.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "groups do not partition the agents");
  }
  return cert;
}

std::optional<TtsCertificate> find_tts(const Market& m,
                                       const TtsSearchOptions& options) {
  if (auto cert = is_tts(m, pmss(m))) return cert;
  return TtsSearch(m, options.branch_budget).run();
}

std::vector<Allocation> strong_core_via_tts(const Market& m) {
  // partial[V]: assignments of the agents in V produced by some TTS of the
  // submarket left once the complement of V has been removed.
  std::unordered_map<std::uint32_t, std::vector<std::vector<int>>> memo;
  const std::function<const std::vector<std::vector<int>>&(AgentSet)> solve =
      [&](AgentSet remaining) -> const std::vector<std::vector<int>>& {
    if (auto it = memo.find(remaining.bits()); it != memo.end()) return it->second;
    std::set<std::vector<int>> out;
    if (remaining.empty()) {
      out.insert(std::vector<int>(m.size(), -1));
    } else {
      const PointingGraph g = pmss_pointing_graph(m, remaining);
      for (AgentSet t : graph::sink_components(g.pointing, remaining)) {
        const std::vector<ObjectSet> allowed = group_edges(m, remaining, t);
        std::vector<std::vector<int>> local;
        graph::for_each_perfect_matching(allowed, t, m.owned_by(t),
                                         [&](const std::vector<int>& mk) {
                                           local.push_back(mk);
                                           return true;
                                         });
        if (local.empty()) continue;
        for (const std::vector<int>& tail : solve(remaining - t)) {
          for (const std::vector<int>& mk : local) {
            std::vector<int> combined = tail;
            for (int i : t) combined[i] = mk[i];
            out.insert(std::move(combined));
          }
        }
      }
    }
    return memo.emplace(remaining.bits(),
                        std::vector<std::vector<int>>(out.begin(), out.end()))
        .first->second;
  };

  std::vector<Allocation> result;
  for (const std::vector<int>& a : solve(m.all_agents())) result.emplace_back(a);
  return result;
}

std::optional<std::vector<AgentSet>> characterize_exclusion(
    const Market& m, const Allocation& mu) {
  if (!is_pareto_efficient(m, mu)) return std::nullopt;
  std::vector<AgentSet> pending = cycle_groups(m, mu);
  std::vector<AgentSet> order;
  ObjectSet pool = m.all_objects();
  // Greedy is complete: a group whose members all hold favorites of the pool
  // keeps that property as the pool shrinks, because each member's object
  // stays in the pool until his own group is emitted. So emitting any
  // eligible group never destroys a valid ordering of the others.
  while (!pending.empty()) {
    auto eligible = std::find_if(pending.begin(), pending.end(), [&](AgentSet t) {
      for (int i : t) {
        if (!m.favorites(i, pool).contains(mu[i])) return false;
      }
      return true;
    });
    if (eligible == pending.end()) return std::nullopt;
    pool -= m.owned_by(*eligible);
    order.push_back(*eligible);
    pending.erase(eligible);
  }
  return order;
}

// --- Theorem harness ------------------------------------------------------

bool TheoremReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const TheoremCheck& c) { return c.passed; });
}

const CoreReport& TheoremReport::core(CoreConcept c) const {
  for (const CoreReport& r : cores) {
    if (r.core == c) return r;
  }
  throw Error(ErrorCode::kInvalidArgument, "core not computed");
}

namespace {

std::string describe(const Allocation& mu) {
  std::ostringstream os;
  os << '(';
  for (int i = 0; i < mu.size(); ++i) os << (i ? "," : "") << mu[i];
  os << ')';
  return os.str();
}

// First element of `a` missing from `b` (both sorted), if any.
std::optional<Allocation> first_missing(const std::vector<Allocation>& a,
                                        const std::vector<Allocation>& b) {
  for (const Allocation& x : a) {
    if (!std::binary_search(b.begin(), b.end(), x)) return x;
  }
  return std::nullopt;
}

class Harness {
 public:
  explicit Harness(TheoremReport& report) : report_(report) {}

  void check(std::string name, bool ok, std::string detail = {}) {
    report_.checks.push_back(
        TheoremCheck{std::move(name), ok, ok ? std::string() : std::move(detail)});
  }

 private:
  TheoremReport& report_;
};

}  // namespace

TheoremReport verify_theorems(const Market& m, const CoreOptions& options) {
  TheoremReport report;
  report.cores = compute_all_cores(m, options);
  Harness h(report);
  const auto& strong = report.core(CoreConcept::kStrong).members;
  const auto& exclusion = report.core(CoreConcept::kExclusion).members;
  const auto& rect_excl = report.core(CoreConcept::kRectifiedExclusion).members;
  const auto& rect_strong = report.core(CoreConcept::kRectifiedStrong).members;

  // (a) inclusion chain
  for (std::size_t k = 0; k + 1 < report.cores.size(); ++k) {
    const CoreReport& small = report.cores[k];
    const CoreReport& large = report.cores[k + 1];
    const auto miss = first_missing(small.members, large.members);
    h.check(std::string("inclusion:") + concept_name(small.core) + "<=" +
                concept_name(large.core),
            !miss, miss ? describe(*miss) + " only in the smaller core" : "");
  }

  // (b) nonemptiness
  h.check("nonempty:rectified-exclusion", !rect_excl.empty(), "empty");
  h.check("nonempty:rectified-strong", !rect_strong.empty(), "empty");

  // (c) efficiency, plus individual rationality of every core
  std::map<Allocation, bool> efficient;
  const auto is_efficient = [&](const Allocation& mu) {
    auto [it, fresh] = efficient.try_emplace(mu, false);
    if (fresh) it->second = is_pareto_efficient(m, mu);
    return it->second;
  };
  for (const CoreReport& r : report.cores) {
    const auto irr = std::find_if(
        r.members.begin(), r.members.end(),
        [&](const Allocation& mu) { return !is_individually_rational(m, mu); });
    h.check(std::string("rational:") + concept_name(r.core),
            irr == r.members.end(),
            irr == r.members.end() ? "" : describe(*irr));
    if (r.core == CoreConcept::kWeak) continue;
    const auto bad = std::find_if(r.members.begin(), r.members.end(),
                                  [&](const Allocation& mu) { return !is_efficient(mu); });
    h.check(std::string("efficient:") + concept_name(r.core),
            bad == r.members.end(),
            bad == r.members.end() ? "" : describe(*bad) + " is dominated");
  }

  // (d) equivalence-closedness, by welfare signature classes
  std::map<std::vector<int>, std::vector<Allocation>> classes;
  for_each_allocation(m.size(), [&](const Allocation& mu) {
    classes[welfare_signature(m, mu)].push_back(mu);
    return true;
  });
  for (const CoreReport& r : report.cores) {
    std::string detail;
    for (const auto& [sig, allocs] : classes) {
      const auto in = std::count_if(allocs.begin(), allocs.end(),
                                    [&](const Allocation& a) { return r.contains(a); });
      if (in != 0 && in != static_cast<long>(allocs.size())) {
        for (const Allocation& a : allocs) {
          if (!r.contains(a)) {
            detail = describe(a) + " is equivalent to a member but rejected";
            break;
          }
        }
        break;
      }
    }
    if (r.core == CoreConcept::kExclusion) {
      if (!detail.empty()) {
        report.notes.push_back("exclusion core is not equivalence-closed: " + detail);
      }
      continue;
    }
    h.check(std::string("equivalence-closed:") + concept_name(r.core),
            detail.empty(), detail);
  }

  // (e) coincidence when the strong core is nonempty
  if (!strong.empty()) {
    h.check("coincidence:strong-nonempty",
            strong == exclusion && strong == rect_excl && strong == rect_strong,
            "strong core differs from a refinement");
    bool pairwise = true;
    for (const Allocation& mu : strong) pairwise = pairwise && equivalent(m, mu, strong.front());
    h.check("strong-core:pairwise-equivalent", pairwise, "inequivalent members");
  }

  // (f) characterizations
  const std::vector<Allocation> via_tts = strong_core_via_tts(m);
  h.check("characterization:tts-equals-strong-core", via_tts == strong,
          std::to_string(via_tts.size()) + " TTS allocations vs " +
              std::to_string(strong.size()) + " in the strong core");
  const bool has_tts = find_tts(m).has_value();
  h.check("characterization:tts-exists-iff-strong-nonempty",
          has_tts == !strong.empty(),
          has_tts ? "TTS found but strong core empty"
                  : "no TTS but strong core nonempty");
  std::string unordered, blocked;
  for_each_allocation(m.size(), [&](const Allocation& mu) {
    const bool ordered = characterize_exclusion(m, mu).has_value();
    const bool member = std::binary_search(exclusion.begin(), exclusion.end(), mu);
    if (member && !ordered && unordered.empty()) unordered = describe(mu) + " unordered but unblocked";
    if (ordered && !member && blocked.empty()) blocked = describe(mu) + " ordered but blocked";
    return unordered.empty() || blocked.empty();
  });
  h.check("characterization:exclusion-members-ordered", unordered.empty(), unordered);
  h.check("characterization:ordered-in-exclusion-core", blocked.empty(), blocked);
  return report;
}

}  // namespace hmkt
