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

#include "hmkt/report.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "hmkt/error.hpp"

namespace hmkt::report {

std::string market_digest(const MarketDoc& doc) {
  const std::string text = emit_market_doc(doc);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(text.data(), text.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  std::string hex = "sha256:";
  char buf[3];
  for (unsigned int k = 0; k < length; ++k) {
    std::snprintf(buf, sizeof buf, "%02x", digest[k]);
    hex += buf;
  }
  return hex;
}

Json envelope(const MarketDoc* doc, const std::string& command, Json results) {
  Json j;
  j["market_digest"] = doc != nullptr ? Json(market_digest(*doc)) : Json(nullptr);
  j["command"] = command;
  j["results"] = std::move(results);
  return j;
}

Json labels(const std::vector<std::string>& names, unsigned bits) {
  Json j = Json::array();
  for (int k = 0; k < static_cast<int>(names.size()); ++k) {
    if (bits & (1u << k)) j.push_back(names[k]);
  }
  return j;
}

Json allocation(const MarketDoc& doc, const Allocation& mu) {
  Json j = Json::object();
  for (int i = 0; i < mu.size(); ++i) j[doc.agents[i]] = doc.objects[mu[i]];
  return j;
}

Json witness(const MarketDoc& doc, const BlockWitness& w) {
  Json j;
  j["coalition"] = labels(doc.agents, w.coalition().bits());
  j["counter"] = allocation(doc, w.counter());
  return j;
}

Json core(const MarketDoc& doc, const CoreReport& r) {
  Json j;
  j["concept"] = concept_name(r.core);
  Json members = Json::array();
  for (const Allocation& mu : r.members) members.push_back(allocation(doc, mu));
  j["members"] = std::move(members);
  Json rejected = Json::array();
  for (const auto& [mu, w] : r.witnesses) {
    Json entry;
    entry["allocation"] = allocation(doc, mu);
    entry["witness"] = witness(doc, w);
    rejected.push_back(std::move(entry));
  }
  j["rejected"] = std::move(rejected);
  return j;
}

Json check(const MarketDoc& doc, const Allocation& mu, CoreConcept c,
           const std::optional<BlockWitness>& w) {
  Json j;
  j["concept"] = concept_name(c);
  j["allocation"] = allocation(doc, mu);
  j["member"] = !w.has_value();
  j["witness"] = w ? witness(doc, *w) : Json(nullptr);
  return j;
}

namespace {

Json graph_json(const MarketDoc& doc, const std::vector<AgentSet>& graph, AgentSet nodes) {
  Json j = Json::object();
  for (int i : nodes) j[doc.agents[i]] = labels(doc.agents, graph[i].bits());
  return j;
}

Json cycle_json(const MarketDoc& doc, const gttc::Cycle& cycle) {
  Json j = Json::array();
  for (int i : cycle) j.push_back(doc.agents[i]);
  return j;
}

}  // namespace

Json trace(const MarketDoc& doc, const gttc::Trace& t) {
  Json steps = Json::array();
  for (const gttc::Step& s : t.steps) {
    Json step;
    Json departures = Json::array();
    for (const gttc::DepartureRecord& d : s.departures) {
      Json members = Json::array();
      std::size_t k = 0;
      for (int i : d.group) {
        Json mem;
        mem["agent"] = doc.agents[i];
        mem["holds"] = doc.objects[d.held[k]];
        mem["favorites"] = labels(doc.objects, d.favorites[k].bits());
        members.push_back(std::move(mem));
        ++k;
      }
      departures.push_back(std::move(members));
    }
    step["departures"] = std::move(departures);
    if (s.trade) {
      const gttc::TradeRecord& tr = *s.trade;
      AgentSet nodes;
      for (int i = 0; i < static_cast<int>(tr.graph.size()); ++i) {
        if (tr.holding_after[i] >= 0) nodes.insert(i);
      }
      Json trade;
      trade["pointing"] = graph_json(doc, tr.graph, nodes);
      trade["unsatisfied"] = labels(doc.agents, tr.unsatisfied.bits());
      trade["cycle"] = cycle_json(doc, tr.cycle);
      Json holding = Json::object();
      for (int i : nodes) holding[doc.agents[i]] = doc.objects[tr.holding_after[i]];
      trade["holding_after"] = std::move(holding);
      step["trade"] = std::move(trade);
    } else {
      step["trade"] = nullptr;
    }
    steps.push_back(std::move(step));
  }
  Json j;
  j["rule"] = t.rule;
  j["steps"] = std::move(steps);
  return j;
}

Json partition(const MarketDoc& doc, const PmssPartition& p) {
  Json groups = Json::array();
  for (std::size_t k = 0; k < p.groups.size(); ++k) {
    Json g;
    g["agents"] = labels(doc.agents, p.groups[k].bits());
    g["pointing"] = graph_json(doc, p.graphs[k].pointing, p.graphs[k].remaining);
    groups.push_back(std::move(g));
  }
  return groups;
}

Json tts(const MarketDoc& doc, const std::optional<TtsCertificate>& cert) {
  if (!cert) return nullptr;
  Json j;
  j["partition"] = partition(doc, cert->partition);
  j["allocation"] = allocation(doc, cert->allocation());
  return j;
}

Json tally(const SweepTally& t) {
  Json j;
  j["instances"] = t.instances();
  j["failed_instances"] = t.failed_instances();
  Json checks = Json::object();
  for (const auto& [name, c] : t.checks()) {
    Json e;
    e["passed"] = c.passed;
    e["failed"] = c.failed;
    if (c.first_failure) e["first_failure"] = *c.first_failure;
    checks[name] = std::move(e);
  }
  j["checks"] = std::move(checks);
  j["passed"] = t.passed();
  return j;
}

namespace {

std::string class_text(const MarketDoc& doc, const std::vector<int>& cls) {
  std::vector<int> sorted = cls;
  std::sort(sorted.begin(), sorted.end());
  std::string s;
  for (int o : sorted) {
    if (!s.empty()) s += ',';
    s += doc.objects[o];
  }
  return s;
}

// Left column plus one column per agent, padded to the widest cell.
std::string render(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows) {
    if (width.size() < row.size()) width.resize(row.size(), 0);
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::ostringstream os;
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      std::string cell = row[c];
      cell.resize(width[c], ' ');
      line += (c == 0 ? "" : "  ") + cell;
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    os << line << '\n';
  }
  return os.str();
}

}  // namespace

std::string allocation_row(const MarketDoc& doc, const Allocation& mu) {
  std::string s;
  for (int i = 0; i < mu.size(); ++i) {
    if (i > 0) s += ',';
    s += doc.agents[i] + "=" + doc.objects[mu[i]];
  }
  return s;
}

std::string market_table(const MarketDoc& doc) {
  const int n = static_cast<int>(doc.agents.size());
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> head{""};
  for (const auto& a : doc.agents) head.push_back(a);
  rows.push_back(head);
  std::vector<std::string> endow{"endow"};
  for (int i = 0; i < n; ++i) endow.push_back(doc.objects[doc.endow[i]]);
  rows.push_back(endow);
  std::size_t depth = 0;
  for (const auto& p : doc.prefs) depth = std::max(depth, p.size());
  for (std::size_t r = 0; r < depth; ++r) {
    std::vector<std::string> row{r == 0 ? "pref" : ""};
    for (int i = 0; i < n; ++i) {
      row.push_back(r < doc.prefs[i].size() ? class_text(doc, doc.prefs[i][r]) : "");
    }
    rows.push_back(row);
  }
  return render(rows);
}

std::string allocation_table(const MarketDoc& doc, const std::vector<Allocation>& allocs,
                             const std::vector<std::string>& names) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> head{""};
  for (const auto& a : doc.agents) head.push_back(a);
  rows.push_back(head);
  for (std::size_t k = 0; k < allocs.size(); ++k) {
    std::vector<std::string> row{k < names.size() ? names[k] : ""};
    for (int i = 0; i < allocs[k].size(); ++i) row.push_back(doc.objects[allocs[k][i]]);
    rows.push_back(row);
  }
  return render(rows);
}

std::string coalition_text(const MarketDoc& doc, AgentSet c) {
  std::string s = "{";
  bool first = true;
  for (int i : c) {
    s += (first ? "" : ",") + doc.agents[i];
    first = false;
  }
  return s + "}";
}

}  // namespace hmkt::report
