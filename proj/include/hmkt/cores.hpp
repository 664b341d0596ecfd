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

#ifndef HMKT_CORES_HPP
#define HMKT_CORES_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hmkt/blocking.hpp"
#include "hmkt/market.hpp"

namespace hmkt {

struct CoreOptions {
  // compute_core refuses larger markets with Error(kInstanceTooLarge).
  int max_agents = 8;
};

// Members of one core, plus a block witness for every rejected allocation.
// Allocations that are not individually rational are rejected by the
// singleton coalition of an agent who is worse off than at his endowment.
struct CoreReport {
  CoreConcept core = CoreConcept::kStrong;
  std::vector<Allocation> members;  // lexicographic order
  std::map<Allocation, BlockWitness> witnesses;

  bool contains(const Allocation& mu) const;
};

CoreReport compute_core(const Market& m, CoreConcept core,
                        const CoreOptions& options = {});

// One report per concept, in kAllConcepts order.
std::vector<CoreReport> compute_all_cores(const Market& m,
                                          const CoreOptions& options = {});

// The witness used for allocations that are not individually rational: the
// lowest-indexed agent i worse off than at omega(i) takes omega(i) back from
// whoever holds it, who receives mu(i) instead. It blocks under every concept.
BlockWitness individual_rationality_witness(const Market& m,
                                            const Allocation& mu,
                                            CoreConcept core);

// --- Partition by minimal self-mapped sets --------------------------------

// pointing[i]: the owners of i's favorite objects among the endowments of the
// remaining agents (i itself included when his own endowment is a favorite).
// Empty for agents that are not remaining.
struct PointingGraph {
  AgentSet remaining;
  std::vector<AgentSet> pointing;
};

PointingGraph pmss_pointing_graph(const Market& m, AgentSet remaining);

// A set T is self-mapped in g when the union of its members' pointees is T.
bool is_self_mapped(const PointingGraph& g, AgentSet t);

struct PmssPartition {
  std::vector<AgentSet> groups;       // T_1, ..., T_t*
  std::vector<PointingGraph> graphs;  // graph of the step that removed T_k
};

// Each step removes the minimal self-mapped set that is the sink strongly
// connected component of the pointing graph with the smallest member.
PmssPartition pmss(const Market& m);

struct TtsCertificate {
  PmssPartition partition;
  // matchings[k][i] is the object of i in T_k; -1 for agents outside T_k.
  std::vector<std::vector<int>> matchings;

  Allocation allocation() const;
};

// Checks that `p` is a PMSS of m and, if every group can be matched onto its
// own endowments with each member getting a favorite among the objects not
// owned by earlier groups, returns the lexicographically first such matchings.
// Throws Error(kInvalidArgument) if `p` is not a PMSS of m.
std::optional<TtsCertificate> is_tts(const Market& m, const PmssPartition& p);

struct TtsSearchOptions {
  // Upper bound on the number of PMSS choice points explored after the
  // deterministic partition fails.
  long branch_budget = 1'000'000;
};

// Tries the deterministic PMSS first, then other sink-component choices.
// Throws Error(kBudgetExceeded) when the budget runs out before an answer.
std::optional<TtsCertificate> find_tts(const Market& m,
                                       const TtsSearchOptions& options = {});

// Every allocation that follows some TTS group by group. Equals the strong
// core. Sorted lexicographically.
std::vector<Allocation> strong_core_via_tts(const Market& m);

// If mu is Pareto efficient and its trading cycles can be ordered T_1..T_t so
// that each member of T_k receives a favorite among the objects not owned by
// T_1..T_{k-1}, returns that order; otherwise nullopt. Every exclusion core
// member has such an order; under indifference the converse can fail.
std::optional<std::vector<AgentSet>> characterize_exclusion(
    const Market& m, const Allocation& mu);

// --- Theorem harness ------------------------------------------------------

struct TheoremCheck {
  std::string name;
  bool passed = true;
  std::string detail;  // counterexample description when failed
};

struct TheoremReport {
  std::vector<CoreReport> cores;  // kAllConcepts order
  std::vector<TheoremCheck> checks;
  // Expected facts that are not failures, e.g. the exclusion core not being
  // equivalence-closed.
  std::vector<std::string> notes;

  bool passed() const;
  const CoreReport& core(CoreConcept c) const;
};

// Computes every core and checks the inclusion chain, nonemptiness and
// efficiency of both rectified cores, equivalence-closedness, coincidence
// when the strong core is nonempty, and both characterizations against the
// enumerated cores.
TheoremReport verify_theorems(const Market& m, const CoreOptions& options = {});

}  // namespace hmkt

#endif  // HMKT_CORES_HPP
