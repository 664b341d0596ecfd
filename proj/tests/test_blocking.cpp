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

#include "hmkt/blocking.hpp"
#include "hmkt/error.hpp"
#include "hmkt/generate.hpp"
#include "oracle.hpp"
#include "test_util.hpp"

namespace hmkt {
namespace {

using testing_util::load_fixture;

TEST(BetterAndSame, Examples) {
  const auto ex1 = load_fixture("example1");
  const WelfareSplit s = better_and_same(ex1.market, ex1.alloc("1=b,2=a,3=c"),
                                         ex1.alloc("1=c,2=a,3=b"), ex1.agents("1 2 3"));
  EXPECT_EQ(s.better, ex1.agents("1 3"));
  EXPECT_EQ(s.same, ex1.agents("2"));

  const Allocation mu = ex1.alloc("1=b,2=a,3=c");
  const WelfareSplit t = better_and_same(ex1.market, mu, mu, ex1.agents("1 3"));
  EXPECT_TRUE(t.better.empty());
  EXPECT_EQ(t.same, ex1.agents("1 3"));

  const auto ex6 = load_fixture("example6");
  const WelfareSplit u = better_and_same(ex6.market, ex6.alloc("1=b,2=a,3=d,4=c"),
                                         ex6.alloc("1=c,2=a,3=b,4=d"), ex6.agents("1 3"));
  EXPECT_EQ(u.better, ex6.agents("1 3"));
  EXPECT_TRUE(u.same.empty());

  EXPECT_THROW(better_and_same(ex6.market, ex6.alloc("1=b,2=a,3=d,4=c"),
                               ex6.alloc("1=c,2=a,3=b,4=d"), ex6.agents("4")),
               Error);
}

TEST(ControlSet, Examples) {
  const auto ex2 = load_fixture("example2");
  const Allocation mu = ex2.alloc("1=b,2=c,3=a");
  EXPECT_EQ(control_set(ex2.market, ex2.agents("3"), mu, ControlMode::kBk), ex2.objects("a b c"));
  EXPECT_EQ(control_set(ex2.market, ex2.agents("3"), mu, ControlMode::kRectified), ex2.objects("c"));
  for (ControlMode mode : {ControlMode::kBk, ControlMode::kRectified}) {
    EXPECT_EQ(control_set(ex2.market, ex2.market.all_agents(), mu, mode), ex2.market.all_objects());
  }
}

// Agent 4 holds c and ranks c alone on top, so once c is controlled the
// closure also captures d.
TEST(ControlSet, RectifiedClosureCapturesThroughStrictClass) {
  const auto ex6 = load_fixture("example6");
  const Allocation mu = ex6.alloc("1=b,2=a,3=d,4=c");
  EXPECT_EQ(control_set(ex6.market, ex6.agents("1 3"), mu, ControlMode::kRectified),
            ex6.objects("a c d"));
  EXPECT_TRUE(control_set(ex6.market, ex6.agents("1 3"), mu, ControlMode::kRectified)
                  .contains(mu[ex6.agent("4")]));
}

TEST(ControlSet, BkIsNotEquivalenceInvariant) {
  const auto ex3 = load_fixture("example3");
  const Allocation sigma = ex3.alloc("1=b,2=a,3=c");
  const Allocation delta = ex3.alloc("1=b,2=c,3=a");
  ASSERT_TRUE(equivalent(ex3.market, sigma, delta));
  EXPECT_NE(control_set(ex3.market, ex3.agents("3"), sigma, ControlMode::kBk),
            control_set(ex3.market, ex3.agents("3"), delta, ControlMode::kBk));
}

TEST(ControlSet, PropertiesOnRandomMarkets) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Market m = random_market(4, 0.5, seed);
    const auto allocs = all_allocations(4);
    for (const Allocation& mu : allocs) {
      for (unsigned bits = 1; bits < 16; ++bits) {
        const Coalition c = Coalition::from_bits(bits);
        const ObjectSet bk = control_set(m, c, mu, ControlMode::kBk);
        const ObjectSet rect = control_set(m, c, mu, ControlMode::kRectified);
        const auto to_set = [](const std::vector<bool>& v) {
          ObjectSet s;
          for (std::size_t o = 0; o < v.size(); ++o) {
            if (v[o]) s.insert(static_cast<int>(o));
          }
          return s;
        };
        const oracle::Group g = oracle::to_group(c, 4);
        ASSERT_EQ(bk, to_set(oracle::control(m, g, oracle::to_perm(mu), false)));
        ASSERT_EQ(rect, to_set(oracle::control(m, g, oracle::to_perm(mu), true)));
        EXPECT_TRUE(rect.subset_of(bk));
        EXPECT_TRUE(m.owned_by(c).subset_of(rect));
        for (unsigned more = bits; more < 16; more = (more + 1) | bits) {
          const Coalition d = Coalition::from_bits(more);
          EXPECT_TRUE(bk.subset_of(control_set(m, d, mu, ControlMode::kBk)));
          EXPECT_TRUE(rect.subset_of(control_set(m, d, mu, ControlMode::kRectified)));
        }
        for (const Allocation& nu : allocs) {
          if (equivalent(m, mu, nu)) {
            EXPECT_EQ(rect, control_set(m, c, nu, ControlMode::kRectified));
          }
        }
      }
    }
  }
}

TEST(WeaklyBlocks, Examples) {
  const auto ex1 = load_fixture("example1");
  EXPECT_TRUE(weakly_blocks(ex1.market, ex1.alloc("1=b,2=a,3=c"), ex1.agents("1 2 3"),
                            ex1.alloc("1=c,2=a,3=b")));
  const Allocation omega = ex1.market.endowment_allocation();
  EXPECT_FALSE(weakly_blocks(ex1.market, omega, ex1.agents("2"), omega));
  const auto ex1p = load_fixture("example1-prime");
  EXPECT_TRUE(weakly_blocks(ex1p.market, ex1p.alloc("1=b,2=a,3=c"), ex1p.agents("2 3"),
                            ex1p.alloc("1=a,2=c,3=b")));
  EXPECT_TRUE(weakly_blocks(ex1p.market, ex1p.alloc("1=a,2=c,3=b"), ex1p.agents("1 2"),
                            ex1p.alloc("1=b,2=a,3=c")));
}

TEST(StronglyBlocks, Examples) {
  const auto ex1p = load_fixture("example1-prime");
  const Allocation omega = ex1p.market.endowment_allocation();
  for (const Allocation& sigma : all_allocations(3)) {
    for (unsigned bits = 1; bits < 8; ++bits) {
      const Coalition c = Coalition::from_bits(bits);
      if (c.contains(ex1p.agent("2"))) EXPECT_FALSE(strongly_blocks(ex1p.market, omega, c, sigma));
    }
  }
  const auto ex1 = load_fixture("example1");
  EXPECT_TRUE(strongly_blocks(ex1.market, ex1.market.endowment_allocation(), ex1.agents("1 2"),
                              ex1.alloc("1=b,2=a,3=c")));
  // 2 already holds his top object a under sigma.
  EXPECT_FALSE(strongly_blocks(ex1.market, ex1.alloc("1=c,2=a,3=b"), ex1.agents("1 2"),
                               ex1.alloc("1=b,2=a,3=c")));
  EXPECT_FALSE(find_block(ex1.market, ex1.alloc("1=b,2=a,3=c"), CoreConcept::kWeak).has_value());
}

TEST(ExclusionBlocks, Examples) {
  const auto ex2 = load_fixture("example2");
  const Allocation mu = ex2.alloc("1=b,2=c,3=a");
  const Allocation sigma = ex2.alloc("1=c,2=a,3=b");
  EXPECT_TRUE(exclusion_blocks(ex2.market, mu, ex2.agents("3"), sigma));
  EXPECT_TRUE(exclusion_blocks(ex2.market, sigma, ex2.agents("1"), mu));
  EXPECT_FALSE(exclusion_blocks(ex2.market, mu, ex2.agents("3"), mu));

  const auto ex3 = load_fixture("example3");
  EXPECT_TRUE(exclusion_blocks(ex3.market, ex3.alloc("1=b,2=c,3=a"), ex3.agents("3"),
                               ex3.alloc("1=a,2=c,3=b")));
  EXPECT_TRUE(exclusion_blocks(ex3.market, ex3.alloc("1=c,2=a,3=b"), ex3.agents("1"),
                               ex3.alloc("1=b,2=a,3=c")));

  const auto w = find_block(ex2.market, mu, CoreConcept::kExclusion);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->coalition(), ex2.agents("3"));
  // Lexicographically first counter; (a, c, b) also works for agent 3.
  EXPECT_EQ(w->counter(), ex2.alloc("1=a,2=c,3=b"));
  EXPECT_LE(w->counter(), sigma);
}

TEST(RectifiedExclusionBlocks, Examples) {
  const auto ex6 = load_fixture("example6");
  const Allocation mu = ex6.alloc("1=b,2=a,3=d,4=c");
  EXPECT_TRUE(rectified_exclusion_blocks(ex6.market, mu, ex6.agents("1 3"),
                                         ex6.alloc("1=c,2=a,3=b,4=d")));
  EXPECT_FALSE(rectified_exclusion_blocks(ex6.market, mu, ex6.agents("1 3"), mu));

  const auto ex7 = load_fixture("example7");
  EXPECT_FALSE(find_block(ex7.market, ex7.alloc("1=b,2=c,2'=c',3=a,3'=b'"),
                          CoreConcept::kRectifiedExclusion)
                   .has_value());
}

TEST(RectificationBlocks, Examples) {
  const auto ex1p = load_fixture("example1-prime");
  EXPECT_FALSE(rectification_blocks(ex1p.market, ex1p.alloc("1=b,2=a,3=c"), ex1p.agents("2 3"),
                                    ex1p.alloc("1=a,2=c,3=b")));
  const auto ex6 = load_fixture("example6");
  EXPECT_FALSE(find_block(ex6.market, ex6.alloc("1=b,2=a,3=d,4=c"), CoreConcept::kRectifiedStrong)
                   .has_value());
}

// Keeps sigma on C, returns outsiders to their mu objects where C's
// endowments allow, and hands the freed objects to the evicted outsiders.
Allocation surgery(const Market& m, const Allocation& mu, Coalition c, const Allocation& sigma) {
  std::vector<int> out = sigma.objects();
  ObjectSet freed = mu.image(c) - m.owned_by(c);
  for (int j : m.all_agents() - c) {
    if (!m.owned_by(c).contains(mu[j])) {
      out[j] = mu[j];
    } else {
      out[j] = freed.first();
      freed.erase(out[j]);
    }
  }
  return Allocation(out);
}

TEST(BlockingPredicates, MatchOracleAndImplications) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const double p = (seed % 4) / 4.0;
    const Market m = random_market(3 + static_cast<int>(seed % 2), p, seed);
    const int n = m.size();
    const auto allocs = all_allocations(n);
    for (const Allocation& mu : allocs) {
      for (const Allocation& sigma : allocs) {
        for (unsigned bits = 1; bits < (1u << n); ++bits) {
          const Coalition c = Coalition::from_bits(bits);
          const oracle::Group g = oracle::to_group(c, n);
          for (CoreConcept core : kAllConcepts) {
            ASSERT_EQ(blocks(m, core, mu, c, sigma),
                      oracle::blocks(m, core, oracle::to_perm(mu), g, oracle::to_perm(sigma)))
                << concept_name(core) << " seed " << seed;
          }
          if (strongly_blocks(m, mu, c, sigma)) {
            EXPECT_TRUE(weakly_blocks(m, mu, c, sigma));
            EXPECT_TRUE(rectified_exclusion_blocks(m, mu, c, surgery(m, mu, c, sigma)));
          }
          if (p == 0.0) {
            EXPECT_EQ(rectification_blocks(m, mu, c, sigma), weakly_blocks(m, mu, c, sigma));
          }
        }
        EXPECT_FALSE(blocks(m, CoreConcept::kStrong, mu, Coalition(), sigma));
      }
    }
  }
}

TEST(FindBlock, AgreesWithOracleWitness) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const Market m = random_market(2 + static_cast<int>(seed % 3), (seed % 5) / 4.0, seed);
    for (const Allocation& mu : all_allocations(m.size())) {
      for (CoreConcept core : kAllConcepts) {
        const auto got = find_block(m, mu, core);
        const auto want = oracle::find_block(m, oracle::to_perm(mu), core);
        ASSERT_EQ(got.has_value(), want.has_value()) << concept_name(core) << " seed " << seed;
        if (!got) continue;
        EXPECT_EQ(oracle::to_group(got->coalition(), m.size()), want->coalition);
        EXPECT_EQ(oracle::to_perm(got->counter()), want->counter);
        EXPECT_EQ(got->core_concept(), core);
      }
    }
  }
}

TEST(BlockWitness, RevalidatesOnConstruction) {
  const auto ex2 = load_fixture("example2");
  const Allocation mu = ex2.alloc("1=b,2=c,3=a");
  EXPECT_NO_THROW(BlockWitness(ex2.market, mu, CoreConcept::kExclusion, ex2.agents("3"),
                               ex2.alloc("1=c,2=a,3=b")));
  EXPECT_THROW(BlockWitness(ex2.market, mu, CoreConcept::kExclusion, ex2.agents("3"), mu), Error);
}

TEST(ConceptNames, RoundTrip) {
  for (CoreConcept c : kAllConcepts) EXPECT_EQ(parse_concept(concept_name(c)), c);
  EXPECT_FALSE(parse_concept("nonsense").has_value());
}

}  // namespace
}  // namespace hmkt
