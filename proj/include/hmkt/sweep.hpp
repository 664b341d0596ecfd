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

#ifndef HMKT_SWEEP_HPP
#define HMKT_SWEEP_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hmkt/cores.hpp"
#include "hmkt/market.hpp"
#include "hmkt/typed.hpp"

namespace hmkt {

struct VerifyOptions {
  CoreOptions cores;
  std::vector<std::uint64_t> gttc_seeds = {1, 2, 3};
};

struct InstanceVerdict {
  std::vector<TheoremCheck> checks;
  std::vector<std::string> notes;

  bool passed() const;
};

// Theorem suite plus GTTC cross-checks: every rule's outcome lies in the
// rectified exclusion core, is Pareto efficient and replays from its trace.
InstanceVerdict verify_instance(const Market& m, const VerifyOptions& options = {});

// verify_instance plus the typed checks: TTC outcomes over all priority
// structures equal the exclusion core, the given structure's outcome is a
// member, and the equivalence closure stays inside the rectified exclusion
// core.
InstanceVerdict verify_typed_instance(const Market& m, const typed::TypeStructure& t,
                                      const typed::PriorityStructure& p,
                                      const VerifyOptions& options = {});

struct CheckTally {
  long passed = 0;
  long failed = 0;
  // Canonical document and detail of the first failing instance.
  std::optional<std::string> first_failure;
};

class SweepTally {
 public:
  void add(const InstanceVerdict& v, const std::string& document);

  long instances() const { return instances_; }
  long failed_instances() const { return failed_instances_; }
  const std::map<std::string, CheckTally>& checks() const { return checks_; }
  bool passed() const { return failed_instances_ == 0; }

 private:
  long instances_ = 0;
  long failed_instances_ = 0;
  std::map<std::string, CheckTally> checks_;
};

}  // namespace hmkt

#endif  // HMKT_SWEEP_HPP
