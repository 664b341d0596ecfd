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

#include "hmkt/sweep.hpp"

#include <algorithm>

#include "hmkt/gttc.hpp"

namespace hmkt {

namespace {

void add_check(InstanceVerdict& v, std::string name, bool ok, std::string detail = "") {
  v.checks.push_back({std::move(name), ok, ok ? std::string() : std::move(detail)});
}

void check_gttc(const Market& m, const CoreReport& rect_excl, gttc::PointingRule& rule,
                const std::string& run, InstanceVerdict& v) {
  const gttc::Result r = gttc::run(m, rule);
  const std::string label = rule.name();
  add_check(v, "gttc:" + label + ":rectified-exclusion", rect_excl.contains(r.outcome),
            run + ": outcome outside the rectified exclusion core");
  add_check(v, "gttc:" + label + ":efficient", is_pareto_efficient(m, r.outcome),
            run + ": outcome is Pareto dominated");
  bool replayed = false;
  try {
    replayed = gttc::replay(m, r.trace) == r.outcome;
  } catch (const std::exception&) {
  }
  add_check(v, "gttc:" + label + ":replay", replayed, run + ": trace does not replay");
}

}  // namespace

bool InstanceVerdict::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const TheoremCheck& c) { return c.passed; });
}

InstanceVerdict verify_instance(const Market& m, const VerifyOptions& options) {
  const TheoremReport report = verify_theorems(m, options.cores);
  InstanceVerdict v{report.checks, report.notes};
  const CoreReport& rect_excl = report.core(CoreConcept::kRectifiedExclusion);
  gttc::MinCycleRule min_cycle;
  check_gttc(m, rect_excl, min_cycle, "min-cycle", v);
  for (std::uint64_t seed : options.gttc_seeds) {
    gttc::SeededRandomRule rule(seed);
    check_gttc(m, rect_excl, rule, "seed " + std::to_string(seed), v);
  }
  return v;
}

InstanceVerdict verify_typed_instance(const Market& m, const typed::TypeStructure& t,
                                      const typed::PriorityStructure& p,
                                      const VerifyOptions& options) {
  InstanceVerdict v = verify_instance(m, options);
  const CoreReport exclusion = compute_core(m, CoreConcept::kExclusion, options.cores);
  const CoreReport rect_excl =
      compute_core(m, CoreConcept::kRectifiedExclusion, options.cores);
  const std::vector<Allocation> outcomes = typed::exclusion_core_typed(m, t);
  add_check(v, "typed:ttc-outcomes-equal-exclusion-core", outcomes == exclusion.members,
            std::to_string(outcomes.size()) + " outcomes vs " +
                std::to_string(exclusion.members.size()) + " core members");
  add_check(v, "typed:given-priorities-in-exclusion-core",
            exclusion.contains(typed::typed_ttc(m, t, p)), "outcome rejected");
  add_check(v, "typed:ttc-outcomes-within-exclusion-core",
            std::all_of(outcomes.begin(), outcomes.end(),
                        [&](const Allocation& a) { return exclusion.contains(a); }),
            "outcome outside the exclusion core");
  const std::vector<Allocation> closure = typed::equivalence_closure(m, outcomes);
  add_check(v, "typed:exclusion-core-within-closure",
            std::includes(closure.begin(), closure.end(), exclusion.members.begin(),
                          exclusion.members.end()),
            "core member not equivalent to any outcome");
  add_check(v, "typed:closure-within-rectified-exclusion",
            std::all_of(closure.begin(), closure.end(),
                        [&](const Allocation& a) { return rect_excl.contains(a); }),
            "closure member outside the rectified exclusion core");
  return v;
}

void SweepTally::add(const InstanceVerdict& v, const std::string& document) {
  ++instances_;
  if (!v.passed()) ++failed_instances_;
  for (const TheoremCheck& c : v.checks) {
    CheckTally& t = checks_[c.name];
    if (c.passed) {
      ++t.passed;
    } else {
      ++t.failed;
      if (!t.first_failure) t.first_failure = document + "# " + c.detail + "\n";
    }
  }
}

}  // namespace hmkt
