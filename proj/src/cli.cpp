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

#include "hmkt/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hmkt/cores.hpp"
#include "hmkt/document.hpp"
#include "hmkt/error.hpp"
#include "hmkt/generate.hpp"
#include "hmkt/gttc.hpp"
#include "hmkt/report.hpp"
#include "hmkt/sweep.hpp"
#include "hmkt/typed.hpp"

namespace hmkt {

namespace {

using report::Json;

struct Options {
  std::string file;
  std::string format = "human";
  std::string concept_choice = "all";
  std::string allocation;
  std::string rule = "min-cycle";
  std::uint64_t seed = 1;
  bool trace = false;
  bool tts = false;
  std::string priorities = "from-doc";
  bool infer_types = false;
  int agents = 4;
  double indiff = 0.5;
  bool typed = false;
  long count = 100;
  bool exhaustive_n3 = false;
};

struct Loaded {
  MarketDoc doc;
  Market market;
};

std::string read_input(const std::string& path, std::istream& in) {
  std::ostringstream ss;
  if (path == "-") {
    ss << in.rdbuf();
  } else {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorCode::kInvalidArgument, "cannot read '" + path + "'");
    ss << f.rdbuf();
  }
  return ss.str();
}

Loaded load(const Options& o, std::istream& in) {
  MarketDoc doc = parse_market_doc(read_input(o.file, in));
  Market m = to_market(doc);
  return {std::move(doc), std::move(m)};
}

std::vector<CoreConcept> selected_concepts(const std::string& choice) {
  if (choice == "all") return {kAllConcepts.begin(), kAllConcepts.end()};
  const auto c = parse_concept(choice);
  if (!c) throw Error(ErrorCode::kInvalidArgument, "unknown concept '" + choice + "'");
  return {*c};
}

void emit_json(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

std::string core_title(CoreConcept c) { return std::string(concept_name(c)) + " core"; }

int cmd_cores(const Options& o, std::istream& in, std::ostream& out) {
  const Loaded l = load(o, in);
  std::vector<CoreReport> reports;
  if (o.concept_choice == "all") {
    reports = compute_all_cores(l.market);
  } else {
    reports.push_back(compute_core(l.market, selected_concepts(o.concept_choice).front()));
  }
  if (o.format == "json") {
    Json results = Json::array();
    for (const CoreReport& r : reports) results.push_back(report::core(l.doc, r));
    emit_json(out, report::envelope(&l.doc, "cores", std::move(results)));
    return kExitOk;
  }
  out << report::market_table(l.doc);
  for (const CoreReport& r : reports) {
    out << '\n' << core_title(r.core) << ": ";
    if (r.members.empty()) {
      out << "empty\n";
      continue;
    }
    out << r.members.size() << (r.members.size() == 1 ? " member\n" : " members\n");
    out << report::allocation_table(l.doc, r.members, {});
  }
  return kExitOk;
}

int cmd_check(const Options& o, std::istream& in, std::ostream& out) {
  const Loaded l = load(o, in);
  const Allocation mu = parse_allocation(l.doc, o.allocation);
  Json results = Json::array();
  for (CoreConcept c : selected_concepts(o.concept_choice)) {
    const std::optional<BlockWitness> w = find_block(l.market, mu, c);
    if (o.format == "json") {
      results.push_back(report::check(l.doc, mu, c, w));
    } else if (!w) {
      out << core_title(c) << ": member\n";
    } else {
      out << core_title(c) << ": rejected, " << report::coalition_text(l.doc, w->coalition())
          << " blocks via " << report::allocation_row(l.doc, w->counter()) << '\n';
    }
  }
  if (o.format == "json") emit_json(out, report::envelope(&l.doc, "check", std::move(results)));
  return kExitOk;
}

std::string cycle_text(const MarketDoc& doc, const gttc::Cycle& c) {
  std::string s;
  for (int i : c) s += doc.agents[i] + " -> ";
  return s + doc.agents[c.front()];
}

int cmd_gttc(const Options& o, std::istream& in, std::ostream& out) {
  const Loaded l = load(o, in);
  const auto rule = gttc::make_rule(o.rule, o.seed);
  const gttc::Result r = gttc::run(l.market, *rule);
  if (o.format == "json") {
    Json results;
    results["rule"] = rule->name();
    results["seed"] = o.rule == "seeded-random" ? Json(o.seed) : Json(nullptr);
    results["outcome"] = report::allocation(l.doc, r.outcome);
    if (o.trace) results["trace"] = report::trace(l.doc, r.trace);
    emit_json(out, report::envelope(&l.doc, "gttc", std::move(results)));
    return kExitOk;
  }
  if (o.trace) {
    int k = 0;
    for (const gttc::Step& s : r.trace.steps) {
      out << "step " << ++k << '\n';
      for (const gttc::DepartureRecord& d : s.departures) {
        out << "  depart " << report::coalition_text(l.doc, d.group) << '\n';
      }
      if (s.trade) {
        out << "  unsatisfied " << report::coalition_text(l.doc, s.trade->unsatisfied) << '\n';
        out << "  trade " << cycle_text(l.doc, s.trade->cycle) << '\n';
      }
    }
  }
  out << "outcome " << report::allocation_row(l.doc, r.outcome) << '\n';
  return kExitOk;
}

int cmd_pmss(const Options& o, std::istream& in, std::ostream& out) {
  const Loaded l = load(o, in);
  const PmssPartition p = pmss(l.market);
  std::optional<TtsCertificate> cert;
  if (o.tts) cert = find_tts(l.market);
  if (o.format == "json") {
    Json results;
    results["partition"] = report::partition(l.doc, p);
    if (o.tts) results["tts"] = report::tts(l.doc, cert);
    emit_json(out, report::envelope(&l.doc, "pmss", std::move(results)));
    return kExitOk;
  }
  for (std::size_t k = 0; k < p.groups.size(); ++k) {
    out << "T" << k + 1 << " " << report::coalition_text(l.doc, p.groups[k]) << '\n';
  }
  if (o.tts) {
    if (!cert) {
      out << "tts none\n";
    } else {
      for (std::size_t k = 0; k < cert->partition.groups.size(); ++k) {
        out << "tts T" << k + 1 << " " << report::coalition_text(l.doc, cert->partition.groups[k])
            << '\n';
      }
      out << "tts allocation " << report::allocation_row(l.doc, cert->allocation()) << '\n';
    }
  }
  return kExitOk;
}

// Document types take precedence over inferred ones.
typed::TypeStructure load_types(const Options& o, const Loaded& l, MarketDoc& labelled) {
  labelled = l.doc;
  if (const auto t = doc_types(l.doc)) {
    const auto violations = typed::validate_types(l.market, *t);
    if (!violations.empty()) throw Error(ErrorCode::kTypeInconsistent, violations.front().message);
    return *t;
  }
  if (!o.infer_types) {
    throw Error(ErrorCode::kInvalidArgument, "document has no type lines (try --infer-types)");
  }
  const typed::TypeStructure t = typed::infer_types(l.market);
  attach_types(labelled, t);
  return t;
}

Json types_json(const MarketDoc& doc, const typed::TypeStructure& t) {
  Json j = Json::object();
  for (int x = 0; x < t.type_count; ++x) j[doc.type_labels[x]] = report::labels(doc.objects, t.copies(x).bits());
  return j;
}

int cmd_typed_ttc(const Options& o, std::istream& in, std::ostream& out) {
  const Loaded l = load(o, in);
  MarketDoc labelled;
  const typed::TypeStructure t = load_types(o, l, labelled);
  Json results;
  results["types"] = types_json(labelled, t);
  if (o.priorities == "from-doc") {
    const typed::PriorityStructure p = doc_priorities(l.doc, l.market, t);
    const typed::TtcRun r = typed::typed_ttc_run(l.market, t, p);
    if (o.format == "json") {
      Json pri = Json::object();
      for (int x = 0; x < t.type_count; ++x) {
        Json order = Json::array();
        for (int i : p.orders[x]) order.push_back(l.doc.agents[i]);
        pri[labelled.type_labels[x]] = std::move(order);
      }
      results["priorities"] = std::move(pri);
      results["steps"] = r.steps;
      results["outcome"] = report::allocation(l.doc, r.outcome);
    } else {
      out << "outcome " << report::allocation_row(l.doc, r.outcome) << '\n';
    }
  } else if (o.priorities == "enumerate") {
    const std::vector<Allocation> outcomes = typed::exclusion_core_typed(l.market, t);
    if (o.format == "json") {
      results["priority_structures"] = typed::priority_structure_count(l.market, t);
      Json list = Json::array();
      for (const Allocation& mu : outcomes) list.push_back(report::allocation(l.doc, mu));
      results["outcomes"] = std::move(list);
    } else {
      out << typed::priority_structure_count(l.market, t) << " priority structures, "
          << outcomes.size() << " distinct outcomes\n";
      out << report::allocation_table(l.doc, outcomes, {});
    }
  } else {
    throw Error(ErrorCode::kInvalidArgument, "unknown priorities mode '" + o.priorities + "'");
  }
  if (o.format == "json") emit_json(out, report::envelope(&l.doc, "typed-ttc", std::move(results)));
  return kExitOk;
}

int cmd_gen(const Options& o, std::ostream& out) {
  if (o.typed) {
    const TypedInstance inst = random_typed_market(o.agents, o.seed);
    MarketDoc doc = doc_from_market(inst.market);
    attach_types(doc, inst.types, &inst.priorities);
    out << emit_market_doc(doc);
  } else {
    out << emit_market_doc(doc_from_market(random_market(o.agents, o.indiff, o.seed)));
  }
  return kExitOk;
}

int cmd_verify(const Options& o, std::istream& in, std::ostream& out) {
  SweepTally tally;
  Json params;
  std::optional<MarketDoc> single;
  if (!o.file.empty()) {
    const Loaded l = load(o, in);
    const auto t = doc_types(l.doc);
    const InstanceVerdict v =
        t ? verify_typed_instance(l.market, *t, doc_priorities(l.doc, l.market, *t))
          : verify_instance(l.market);
    tally.add(v, emit_market_doc(l.doc));
    single = l.doc;
    params["mode"] = "file";
  } else if (o.exhaustive_n3) {
    const auto orders = all_weak_orders(3);
    for (const auto& r1 : orders) {
      for (const auto& r2 : orders) {
        for (const auto& r3 : orders) {
          const Market m({0, 1, 2}, {r1, r2, r3});
          tally.add(verify_instance(m), emit_market_doc(doc_from_market(m)));
        }
      }
    }
    params["mode"] = "exhaustive-n3";
  } else {
    params["mode"] = o.typed ? "random-typed" : "random";
    params["agents"] = o.agents;
    params["count"] = o.count;
    params["seed"] = o.seed;
    if (!o.typed) params["indiff"] = o.indiff;
    for (long k = 0; k < o.count; ++k) {
      const std::uint64_t seed = mix_seed(o.seed, static_cast<std::uint64_t>(k));
      if (o.typed) {
        const TypedInstance inst = random_typed_market(o.agents, seed);
        MarketDoc doc = doc_from_market(inst.market);
        attach_types(doc, inst.types, &inst.priorities);
        tally.add(verify_typed_instance(inst.market, inst.types, inst.priorities),
                  emit_market_doc(doc));
      } else {
        const Market m = random_market(o.agents, o.indiff, seed);
        tally.add(verify_instance(m), emit_market_doc(doc_from_market(m)));
      }
    }
  }
  if (o.format == "json") {
    Json results;
    results["parameters"] = std::move(params);
    results["summary"] = report::tally(tally);
    emit_json(out, report::envelope(single ? &*single : nullptr, "verify", std::move(results)));
  } else {
    std::size_t width = 0;
    for (const auto& [name, c] : tally.checks()) width = std::max(width, name.size());
    for (const auto& [name, c] : tally.checks()) {
      std::string padded = name;
      padded.resize(width, ' ');
      out << padded << "  passed " << c.passed << "  failed " << c.failed << '\n';
    }
    out << "instances " << tally.instances() << ", failed " << tally.failed_instances() << '\n';
    for (const auto& [name, c] : tally.checks()) {
      if (c.first_failure) out << "\nfirst failure of " << name << ":\n" << *c.first_failure;
    }
    out << (tally.passed() ? "PASS\n" : "FAIL\n");
  }
  return tally.passed() ? kExitOk : kExitAssertion;
}

void add_format(CLI::App* cmd, Options& o) {
  cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"human", "json"}))
      ->capture_default_str();
}

const std::vector<std::string> kConceptChoices = {
    "all", "weak", "strong", "exclusion", "rectified-exclusion", "rectified-strong"};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Core solutions for housing markets with weak preferences", "hmkt"};
  app.require_subcommand(1);
  Options o;

  auto* cores = app.add_subcommand("cores", "Enumerate core solutions");
  cores->add_option("file", o.file, "Market document, or - for standard input")->required();
  cores->add_option("--concept", o.concept_choice)->check(CLI::IsMember(kConceptChoices))->capture_default_str();
  add_format(cores, o);

  auto* check = app.add_subcommand("check", "Test an allocation for core membership");
  check->add_option("file", o.file, "Market document, or - for standard input")->required();
  check->add_option("--allocation", o.allocation, "e.g. 1=b,2=a,3=c")->required();
  check->add_option("--concept", o.concept_choice)->check(CLI::IsMember(kConceptChoices))->capture_default_str();
  add_format(check, o);

  auto* gttc_cmd = app.add_subcommand("gttc", "Run generalized top trading cycles");
  gttc_cmd->add_option("file", o.file, "Market document, or - for standard input")->required();
  gttc_cmd->add_option("--rule", o.rule)->check(CLI::IsMember({"min-cycle", "seeded-random"}))->capture_default_str();
  gttc_cmd->add_option("--seed", o.seed, "Seed for seeded-random")->capture_default_str();
  gttc_cmd->add_flag("--trace", o.trace, "Include the step trace");
  add_format(gttc_cmd, o);

  auto* pmss_cmd = app.add_subcommand("pmss", "Partition by minimal self-mapped sets");
  pmss_cmd->add_option("file", o.file, "Market document, or - for standard input")->required();
  pmss_cmd->add_flag("--tts", o.tts, "Search for a top trading segmentation");
  add_format(pmss_cmd, o);

  auto* typed_cmd = app.add_subcommand("typed-ttc", "Priority-based TTC on a typed market");
  typed_cmd->add_option("file", o.file, "Market document, or - for standard input")->required();
  typed_cmd->add_option("--priorities", o.priorities)->check(CLI::IsMember({"from-doc", "enumerate"}))->capture_default_str();
  typed_cmd->add_flag("--infer-types", o.infer_types, "Derive types from indifference classes");
  add_format(typed_cmd, o);

  auto* gen = app.add_subcommand("gen", "Print a random market document");
  gen->add_option("--agents", o.agents)->check(CLI::Range(1, kMaxIndices))->capture_default_str();
  gen->add_option("--indiff", o.indiff, "Merge probability for adjacent ranks")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  gen->add_option("--seed", o.seed)->capture_default_str();
  gen->add_flag("--typed", o.typed, "Generate a typed market with priorities");

  auto* verify = app.add_subcommand("verify", "Run the theorem suite");
  verify->add_option("file", o.file, "Market document, or - for standard input");
  verify->add_option("--agents", o.agents)->check(CLI::Range(1, 8))->capture_default_str();
  verify->add_option("--count", o.count)->check(CLI::NonNegativeNumber)->capture_default_str();
  verify->add_option("--seed", o.seed)->capture_default_str();
  verify->add_option("--indiff", o.indiff)->check(CLI::Range(0.0, 1.0))->capture_default_str();
  verify->add_flag("--typed", o.typed, "Random typed markets");
  verify->add_flag("--exhaustive-n3", o.exhaustive_n3, "Every 3-agent weak preference profile");
  add_format(verify, o);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*cores) return cmd_cores(o, in, out);
    if (*check) return cmd_check(o, in, out);
    if (*gttc_cmd) return cmd_gttc(o, in, out);
    if (*pmss_cmd) return cmd_pmss(o, in, out);
    if (*typed_cmd) return cmd_typed_ttc(o, in, out);
    if (*gen) return cmd_gen(o, out);
    if (*verify) return cmd_verify(o, in, out);
  } catch (const ParseError& e) {
    err << "hmkt: " << o.file << ":" << e.what() << '\n';
    return kExitParse;
  } catch (const Error& e) {
    err << "hmkt: " << e.what() << '\n';
    const bool too_large =
        e.code() == ErrorCode::kInstanceTooLarge || e.code() == ErrorCode::kBudgetExceeded;
    return too_large ? kExitTooLarge : kExitUsage;
  }
  return kExitUsage;
}

}  // namespace hmkt
