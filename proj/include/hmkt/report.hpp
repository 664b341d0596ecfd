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

#ifndef HMKT_REPORT_HPP
#define HMKT_REPORT_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hmkt/blocking.hpp"
#include "hmkt/cores.hpp"
#include "hmkt/document.hpp"
#include "hmkt/gttc.hpp"
#include "hmkt/sweep.hpp"

namespace hmkt::report {

using Json = nlohmann::ordered_json;

// "sha256:" followed by the hex digest of the canonical document text.
std::string market_digest(const MarketDoc& doc);

Json envelope(const MarketDoc* doc, const std::string& command, Json results);

Json labels(const std::vector<std::string>& names, unsigned bits);
Json allocation(const MarketDoc& doc, const Allocation& mu);
Json witness(const MarketDoc& doc, const BlockWitness& w);
Json core(const MarketDoc& doc, const CoreReport& r);
Json check(const MarketDoc& doc, const Allocation& mu, CoreConcept c,
           const std::optional<BlockWitness>& w);
Json trace(const MarketDoc& doc, const gttc::Trace& t);
Json partition(const MarketDoc& doc, const PmssPartition& p);
Json tts(const MarketDoc& doc, const std::optional<TtsCertificate>& cert);
Json tally(const SweepTally& t);

// Aligned plain-text tables.
std::string allocation_row(const MarketDoc& doc, const Allocation& mu);
std::string market_table(const MarketDoc& doc);
std::string allocation_table(const MarketDoc& doc, const std::vector<Allocation>& rows,
                             const std::vector<std::string>& names);
std::string coalition_text(const MarketDoc& doc, AgentSet c);

}  // namespace hmkt::report

#endif  // HMKT_REPORT_HPP
