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

#include <gtest/gtest.h>

#include <set>

#include "hmkt/cores.hpp"
#include "hmkt/error.hpp"
#include "hmkt/generate.hpp"
#include "oracle.hpp"
#include "test_util.hpp"

namespace hmkt {
namespace {

using testing_util::Fixture;
using testing_util::load_fixture;

std::vector<Allocation> allocs(const Fixture& f, std::initializer_list<const char*> texts) {
  std::vector<Allocation> out;
  for (const char* t : texts) out.push_back(f.alloc(t));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Allocation> members(const Fixture& f, CoreConcept c) {
  return compute_core(f.market, c).members;
}

TEST(ComputeCore, Example1) {
  const auto f = load_fixture("example1");
  EXPECT_EQ(members(f, CoreConcept::kWeak), allocs(f, {"1=b,2=a,3=c", "1=c,2=a,3=b"}));
  EXPECT_EQ(members(f, CoreConcept::kStrong), allocs(f, {"1=c,2=a,3=b"}));
}

TEST(ComputeCore, Example1Prime) {
  const auto f = load_fixture("example1-prime");
  EXPECT_TRUE(members(f, CoreConcept::kStrong).empty());
  EXPECT_EQ(members(f, CoreConcept::kExclusion), allocs(f, {"1=b,2=a,3=c", "1=a,2=c,3=b"}));
  EXPECT_EQ(members(f, CoreConcept::kWeak),
            allocs(f, {"1=a,2=b,3=c", "1=b,2=a,3=c", "1=a,2=c,3=b"}));
}

TEST(ComputeCore, Example2And3) {
  const auto ex2 = load_fixture("example2");
  EXPECT_TRUE(members(ex2, CoreConcept::kExclusion).empty());
  const auto ex3 = load_fixture("example3");
  EXPECT_EQ(members(ex3, CoreConcept::kExclusion), allocs(ex3, {"1=a,2=c,3=b", "1=b,2=a,3=c"}));
  EXPECT_EQ(members(ex3, CoreConcept::kRectifiedExclusion),
            allocs(ex3, {"1=a,2=c,3=b", "1=b,2=a,3=c", "1=b,2=c,3=a", "1=c,2=a,3=b"}));
}

TEST(ComputeCore, Examples4And5) {
  const auto ex4 = load_fixture("example4");
  EXPECT_EQ(members(ex4, CoreConcept::kStrong), allocs(ex4, {"1=b,2=a,3=c"}));
  EXPECT_EQ(members(ex4, CoreConcept::kExclusion), allocs(ex4, {"1=b,2=a,3=c"}));
  const auto ex5 = load_fixture("example5");
  const auto sigma = allocs(ex5, {"1=b,2=a,3=d,4=c,5=e"});
  EXPECT_EQ(members(ex5, CoreConcept::kStrong), sigma);
  EXPECT_EQ(members(ex5, CoreConcept::kExclusion), sigma);
  EXPECT_FALSE(compute_core(ex5.market, CoreConcept::kRectifiedExclusion)
                   .contains(ex5.alloc("1=b,2=c,3=d,4=e,5=a")));
}

TEST(ComputeCore, Example6And7) {
  const auto ex6 = load_fixture("example6");
  const Allocation mu = ex6.alloc("1=b,2=a,3=d,4=c");
  EXPECT_TRUE(compute_core(ex6.market, CoreConcept::kRectifiedStrong).contains(mu));
  EXPECT_FALSE(compute_core(ex6.market, CoreConcept::kRectifiedExclusion).contains(mu));
  const auto ex7 = load_fixture("example7");
  EXPECT_TRUE(compute_core(ex7.market, CoreConcept::kRectifiedExclusion)
                  .contains(ex7.alloc("1=b,2=c,2'=c',3=a,3'=b'")));
}

TEST(ComputeCore, FixturesMatchOracle) {
  for (const char* name : {"example1", "example1-prime", "example2", "example3", "example4",
                           "example6"}) {
    const auto f = load_fixture(name);
    for (const CoreReport& r : compute_all_cores(f.market)) {
      std::vector<oracle::Perm> got;
      for (const Allocation& mu : r.members) got.push_back(oracle::to_perm(mu));
      EXPECT_EQ(got, oracle::core(f.market, r.core)) << name << " " << concept_name(r.core);
    }
  }
}

TEST(ComputeCore, RandomMarketsMatchOracle) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const Market m = random_market(2 + static_cast<int>(seed % 3), (seed % 5) / 4.0, seed);
    for (CoreConcept c : kAllConcepts) {
      std::vector<oracle::Perm> got;
      for (const Allocation& mu : compute_core(m, c).members) got.push_back(oracle::to_perm(mu));
      ASSERT_EQ(got, oracle::core(m, c)) << concept_name(c) << " seed " << seed;
    }
  }
}

TEST(ComputeCore, ReportCoversEveryAllocation) {
  const auto f = load_fixture("example6");
  for (const CoreReport& r : compute_all_cores(f.market)) {
    EXPECT_TRUE(std::is_sorted(r.members.begin(), r.members.end()));
    EXPECT_EQ(r.members.size() + r.witnesses.size(), factorial(4));
    for (const Allocation& mu : r.members) EXPECT_EQ(r.witnesses.count(mu), 0u);
    for (const auto& [mu, w] : r.witnesses) {
      EXPECT_TRUE(blocks(f.market, r.core, mu, w.coalition(), w.counter()));
      if (!is_individually_rational(f.market, mu)) EXPECT_EQ(w.coalition().size(), 1);
    }
  }
}

TEST(ComputeCore, EveryoneOwnsFavorite) {
  const Market m({0, 1, 2, 3}, {{0, 1, 2, 3}, {1, 0, 2, 3}, {3, 2, 0, 1}, {1, 1, 1, 0}});
  for (const CoreReport& r : compute_all_cores(m)) {
    EXPECT_EQ(r.members, std::vector<Allocation>{m.endowment_allocation()}) << concept_name(r.core);
  }
}

TEST(ComputeCore, SizeBound) {
  const Market m = random_market(9, 0.5, 1);
  try {
    compute_core(m, CoreConcept::kStrong);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInstanceTooLarge);
    EXPECT_NE(std::string(e.what()).find('8'), std::string::npos);
  }
  EXPECT_NO_THROW(compute_core(random_market(3, 0.5, 1), CoreConcept::kStrong, CoreOptions{3}));
}

TEST(IndividualRationalityWitness, SingletonTakesEndowmentBack) {
  const auto f = load_fixture("example1");
  const Allocation bad = f.alloc("1=a,2=c,3=b");
  for (CoreConcept c : kAllConcepts) {
    const BlockWitness w = individual_rationality_witness(f.market, bad, c);
    EXPECT_EQ(w.coalition(), f.agents("2"));
    EXPECT_EQ(w.counter()[1], f.object("b"));
  }
}

TEST(Pmss, Example1IsOneCycle) {
  const auto f = load_fixture("example1");
  const PmssPartition p = pmss(f.market);
  EXPECT_EQ(p.groups, std::vector<AgentSet>{f.agents("1 2 3")});
  EXPECT_EQ(p.graphs[0].pointing[0], f.agents("3"));
  EXPECT_EQ(p.graphs[0].pointing[2], f.agents("2"));
  EXPECT_EQ(p.graphs[0].pointing[1], f.agents("1"));
  const auto minimal = oracle::minimal_self_mapped_sets(f.market, oracle::Group(3, true));
  EXPECT_EQ(minimal, std::vector<oracle::Group>{oracle::to_group(f.agents("1 2 3"), 3)});
}

TEST(Pmss, Example1PrimeEmitsAMinimalSelfMappedSet) {
  const auto f = load_fixture("example1-prime");
  const PmssPartition p = pmss(f.market);
  const auto minimal = oracle::minimal_self_mapped_sets(f.market, oracle::Group(3, true));
  ASSERT_FALSE(p.groups.empty());
  EXPECT_NE(std::find(minimal.begin(), minimal.end(), oracle::to_group(p.groups[0], 3)),
            minimal.end());
  EXPECT_TRUE(is_self_mapped(p.graphs[0], p.groups[0]));
}

TEST(Pmss, SelfLoopsGiveSingletons) {
  const Market m({0, 1, 2}, {{0, 1, 2}, {2, 0, 1}, {1, 2, 0}});
  EXPECT_EQ(pmss(m).groups.size(), 3u);
}

TEST(Pmss, GroupsAreMinimalSelfMappedOnRandomMarkets) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Market m = random_market(5, (seed % 5) / 4.0, seed);
    const PmssPartition p = pmss(m);
    oracle::Group remaining(5, true);
    AgentSet covered;
    for (AgentSet t : p.groups) {
      const auto minimal = oracle::minimal_self_mapped_sets(m, remaining);
      EXPECT_NE(std::find(minimal.begin(), minimal.end(), oracle::to_group(t, 5)), minimal.end())
          << "seed " << seed;
      for (int i : t) remaining[i] = false;
      EXPECT_FALSE(covered.intersects(t));
      covered |= t;
    }
    EXPECT_EQ(covered, m.all_agents());
  }
}

TEST(Tts, Example1Certificate) {
  const auto f = load_fixture("example1");
  const auto cert = is_tts(f.market, pmss(f.market));
  ASSERT_TRUE(cert.has_value());
  EXPECT_EQ(cert->allocation(), f.alloc("1=c,2=a,3=b"));
  EXPECT_EQ(members(f, CoreConcept::kStrong), std::vector<Allocation>{cert->allocation()});
}

TEST(Tts, Example1PrimeHasNone) {
  const auto f = load_fixture("example1-prime");
  EXPECT_FALSE(is_tts(f.market, pmss(f.market)).has_value());
  EXPECT_FALSE(find_tts(f.market).has_value());
}

TEST(Tts, SingleAgent) {
  const Market m({0}, {{0}});
  const auto cert = find_tts(m);
  ASSERT_TRUE(cert.has_value());
  EXPECT_EQ(cert->allocation(), Allocation::identity(1));
}

TEST(Tts, RejectsNonPartition) {
  const auto f = load_fixture("example1");
  PmssPartition bogus = pmss(f.market);
  bogus.groups[0] = f.agents("1 2");
  EXPECT_THROW(is_tts(f.market, bogus), Error);
}

TEST(StrongCoreViaTts, MatchesCoreScan) {
  for (const char* name : {"example1", "example1-prime", "example3", "example4", "example5"}) {
    const auto f = load_fixture(name);
    EXPECT_EQ(strong_core_via_tts(f.market), members(f, CoreConcept::kStrong)) << name;
  }
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const Market m = random_market(2 + static_cast<int>(seed % 4), (seed % 5) / 4.0, seed);
    ASSERT_EQ(strong_core_via_tts(m), compute_core(m, CoreConcept::kStrong).members)
        << "seed " << seed;
    EXPECT_EQ(find_tts(m).has_value(), !strong_core_via_tts(m).empty());
  }
}

TEST(CharacterizeExclusion, Examples) {
  const auto ex1p = load_fixture("example1-prime");
  const auto order = characterize_exclusion(ex1p.market, ex1p.alloc("1=b,2=a,3=c"));
  ASSERT_TRUE(order.has_value());
  EXPECT_EQ(*order, (std::vector<AgentSet>{ex1p.agents("1 2"), ex1p.agents("3")}));
  const auto ex2 = load_fixture("example2");
  EXPECT_FALSE(characterize_exclusion(ex2.market, ex2.alloc("1=b,2=c,3=a")).has_value());
  const auto ex3 = load_fixture("example3");
  EXPECT_FALSE(characterize_exclusion(ex3.market, ex3.alloc("1=b,2=c,3=a")).has_value());
  EXPECT_FALSE(characterize_exclusion(ex1p.market, ex1p.market.endowment_allocation()).has_value());
}

// Agent 1 is indifferent between a and b, so 2 can take a from him without
// harm while 3, who holds 2's endowment, is evicted. The ordering test still
// accepts (a, c, b) with groups {1} then {2, 3}.
TEST(CharacterizeExclusion, OrderingDoesNotRuleOutHarmlessEviction) {
  const Market m({0, 1, 2}, {{0, 0, 1}, {0, 1, 1}, {0, 0, 1}});
  const Allocation mu({0, 2, 1});
  const auto order = characterize_exclusion(m, mu);
  ASSERT_TRUE(order.has_value());
  EXPECT_EQ(order->size(), 2u);
  const auto w = find_block(m, mu, CoreConcept::kExclusion);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->coalition(), AgentSet::singleton(1));
  EXPECT_EQ(w->counter(), Allocation({1, 0, 2}));
  EXPECT_TRUE(oracle::find_block(m, oracle::to_perm(mu), CoreConcept::kExclusion).has_value());
}

TEST(CharacterizeExclusion, NoneImpliesOutsideExclusionCore) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Market m = random_market(4, (seed % 5) / 4.0, seed);
    const CoreReport core = compute_core(m, CoreConcept::kExclusion);
    for_each_allocation(4, [&](const Allocation& mu) {
      if (core.contains(mu)) EXPECT_TRUE(characterize_exclusion(m, mu).has_value());
      return true;
    });
  }
}

TEST(VerifyTheorems, Fixtures) {
  for (const char* name : {"example1", "example1-prime", "example2", "example3", "example4",
                           "example5", "example6", "example7"}) {
    const auto f = load_fixture(name);
    const TheoremReport r = verify_theorems(f.market);
    for (const TheoremCheck& c : r.checks) EXPECT_TRUE(c.passed) << name << " " << c.name << " " << c.detail;
  }
  const TheoremReport ex3 = verify_theorems(load_fixture("example3").market);
  ASSERT_EQ(ex3.notes.size(), 1u);
  EXPECT_NE(ex3.notes[0].find("not equivalence-closed"), std::string::npos);
  const TheoremReport ex1p = verify_theorems(load_fixture("example1-prime").market);
  EXPECT_TRUE(ex1p.core(CoreConcept::kStrong).members.empty());
  EXPECT_EQ(ex1p.core(CoreConcept::kExclusion).members.size(), 2u);
}

TEST(VerifyTheorems, CheckNames) {
  const TheoremReport r = verify_theorems(load_fixture("example1").market);
  std::set<std::string> names;
  for (const TheoremCheck& c : r.checks) names.insert(c.name);
  for (const char* expected :
       {"inclusion:strong<=exclusion", "inclusion:rectified-strong<=weak",
        "nonempty:rectified-exclusion", "nonempty:rectified-strong", "efficient:strong",
        "equivalence-closed:weak", "coincidence:strong-nonempty",
        "characterization:tts-equals-strong-core", "characterization:exclusion-members-ordered",
        "characterization:ordered-in-exclusion-core"}) {
    EXPECT_EQ(names.count(expected), 1u) << expected;
  }
  EXPECT_EQ(names.count("efficient:weak"), 0u);
  EXPECT_EQ(names.count("equivalence-closed:exclusion"), 0u);
}

}  // namespace
}  // namespace hmkt
