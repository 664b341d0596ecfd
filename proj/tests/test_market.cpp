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

#include "hmkt/error.hpp"
#include "hmkt/generate.hpp"
#include "hmkt/market.hpp"
#include "oracle.hpp"
#include "test_util.hpp"

namespace hmkt {
namespace {

using testing_util::load_fixture;

TEST(Favorites, IndifferentAgentLikesEverything) {
  const auto f = load_fixture("example1-prime");
  EXPECT_EQ(f.market.favorites(f.agent("2"), f.market.all_objects()), f.objects("a b c"));
}

TEST(Favorites, SingletonPool) {
  const auto f = load_fixture("example1");
  for (int i = 0; i < 3; ++i) {
    for (int o = 0; o < 3; ++o) {
      EXPECT_EQ(f.market.favorites(i, ObjectSet::singleton(o)), ObjectSet::singleton(o));
    }
  }
}

TEST(Favorites, RestrictedPool) {
  const auto f = load_fixture("example3");
  EXPECT_EQ(f.market.favorites(f.agent("1"), f.objects("a c")), f.objects("a c"));
}

TEST(Favorites, EmptyPoolThrows) {
  const auto f = load_fixture("example1");
  try {
    f.market.favorites(0, ObjectSet());
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyPool);
  }
}

TEST(IndiffSet, Classes) {
  EXPECT_EQ(load_fixture("example3").market.indiff_set(0, 0), load_fixture("example3").objects("a c"));
  const auto strict = load_fixture("example1");
  for (int i = 0; i < 3; ++i) {
    for (int o = 0; o < 3; ++o) EXPECT_EQ(strict.market.indiff_set(i, o), ObjectSet::singleton(o));
  }
  const auto ex6 = load_fixture("example6");
  EXPECT_EQ(ex6.market.indiff_set(ex6.agent("2"), ex6.object("a")), ex6.objects("a b c d"));
}

TEST(Compare, Examples) {
  const auto ex1 = load_fixture("example1");
  EXPECT_EQ(ex1.market.compare(0, ex1.object("c"), ex1.object("b")), Preference::kBetter);
  EXPECT_EQ(ex1.market.compare(0, ex1.object("b"), ex1.object("c")), Preference::kWorse);
  EXPECT_EQ(ex1.market.compare(1, 2, 2), Preference::kIndifferent);
  const auto ex2 = load_fixture("example2");
  EXPECT_EQ(ex2.market.compare(1, ex2.object("a"), ex2.object("c")), Preference::kIndifferent);
}

TEST(Compare, TotalPreorderOnRandomMarkets) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Market m = random_market(5, 0.5, seed);
    for (int i = 0; i < 5; ++i) {
      for (int a = 0; a < 5; ++a) {
        for (int b = 0; b < 5; ++b) {
          const Preference ab = m.compare(i, a, b);
          const Preference ba = m.compare(i, b, a);
          EXPECT_EQ(ab == Preference::kBetter, ba == Preference::kWorse);
          EXPECT_EQ(ab == Preference::kIndifferent, ba == Preference::kIndifferent);
          for (int c = 0; c < 5; ++c) {
            if (ab != Preference::kWorse && m.compare(i, b, c) != Preference::kWorse) {
              EXPECT_NE(m.compare(i, a, c), Preference::kWorse);
            }
          }
        }
        ObjectSet pool = ObjectSet::from_bits(static_cast<unsigned>(seed % 31) + 1);
        ObjectSet expected;
        for (int o : pool) {
          bool best = true;
          for (int p : pool) best = best && m.compare(i, o, p) != Preference::kWorse;
          if (best) expected.insert(o);
        }
        EXPECT_EQ(m.favorites(i, pool), expected);
      }
    }
  }
}

TEST(IndividualRationality, Examples) {
  const auto f = load_fixture("example1");
  EXPECT_TRUE(is_individually_rational(f.market, f.market.endowment_allocation()));
  EXPECT_TRUE(is_individually_rational(f.market, f.alloc("1=b,2=a,3=c")));
  EXPECT_FALSE(is_individually_rational(f.market, f.alloc("1=a,2=c,3=b")));
}

TEST(Equivalent, Examples) {
  const auto f = load_fixture("example3");
  const Allocation mu = f.alloc("1=a,2=c,3=b");
  const Allocation sigma = f.alloc("1=b,2=a,3=c");
  const Allocation delta = f.alloc("1=b,2=c,3=a");
  EXPECT_TRUE(equivalent(f.market, sigma, delta));
  EXPECT_TRUE(equivalent(f.market, mu, mu));
  EXPECT_FALSE(equivalent(f.market, mu, sigma));
}

TEST(ParetoEfficiency, Examples) {
  const auto ex1 = load_fixture("example1");
  EXPECT_TRUE(is_pareto_efficient(ex1.market, ex1.alloc("1=c,2=a,3=b")));
  const auto ex1p = load_fixture("example1-prime");
  const auto improvement = pareto_improvement(ex1p.market, ex1p.market.endowment_allocation());
  ASSERT_TRUE(improvement.has_value());
  const oracle::Perm omega = oracle::to_perm(ex1p.market.endowment_allocation());
  const oracle::Gains g = oracle::gains(ex1p.market, oracle::Group(3, true), omega,
                                        oracle::to_perm(*improvement));
  EXPECT_TRUE(g.weak && g.some);
  const Market happy({0, 1, 2}, {{0, 1, 2}, {1, 0, 2}, {2, 1, 0}});
  EXPECT_TRUE(is_pareto_efficient(happy, happy.endowment_allocation()));
}

TEST(ParetoEfficiency, MatchesOracleAndEquivalenceInvariant) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Market m = random_market(4, 0.5, seed);
    const auto all = all_allocations(4);
    for (const Allocation& mu : all) {
      const bool pe = is_pareto_efficient(m, mu);
      ASSERT_EQ(pe, oracle::pareto_efficient(m, oracle::to_perm(mu))) << "seed " << seed;
      for (const Allocation& nu : all) {
        if (equivalent(m, mu, nu)) EXPECT_EQ(pe, is_pareto_efficient(m, nu));
      }
    }
  }
}

TEST(Enumeration, LexicographicAndComplete) {
  std::vector<Allocation> seen;
  for_each_allocation(4, [&](const Allocation& a) {
    seen.push_back(a);
    return true;
  });
  ASSERT_EQ(seen.size(), 24u);
  EXPECT_TRUE(std::is_sorted(seen.begin(), seen.end()));
  EXPECT_EQ(std::set<Allocation>(seen.begin(), seen.end()).size(), 24u);
  for (std::uint64_t k = 0; k < 24; ++k) EXPECT_EQ(allocation_at(4, k), seen[k]);
  EXPECT_EQ(factorial(6), 720u);
}

TEST(CycleGroups, Examples) {
  const auto ex6 = load_fixture("example6");
  EXPECT_EQ(cycle_groups(ex6.market, ex6.alloc("1=b,2=a,3=d,4=c")),
            (std::vector<AgentSet>{ex6.agents("1 2"), ex6.agents("3 4")}));
  const auto ex2 = load_fixture("example2");
  EXPECT_EQ(cycle_groups(ex2.market, ex2.alloc("1=b,2=c,3=a")),
            (std::vector<AgentSet>{ex2.agents("1 2 3")}));
  const auto groups = cycle_groups(ex2.market, ex2.market.endowment_allocation());
  EXPECT_EQ(groups.size(), 3u);
}

TEST(CycleGroups, PartitionAndInvariant) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Market m = random_market(5, 0.3, seed);
    for_each_allocation(5, [&](const Allocation& mu) {
      AgentSet covered;
      for (AgentSet t : cycle_groups(m, mu)) {
        EXPECT_FALSE(covered.intersects(t));
        covered |= t;
        EXPECT_EQ(mu.image(t), m.owned_by(t));
      }
      EXPECT_EQ(covered, m.all_agents());
      return true;
    });
  }
}

TEST(Market, RejectsInvalidInput) {
  EXPECT_THROW(Market({0, 0}, {{0, 1}, {0, 1}}), Error);
  EXPECT_THROW(Market({0, 1}, {{0, 1}}), Error);
  EXPECT_THROW(Market({0, 1}, {{0, 1}, {0}}), Error);
  EXPECT_THROW(Allocation({0, 2}), Error);
}

TEST(Market, NormalizesRanks) {
  const Market m({0, 1, 2}, {{5, 5, 9}, {0, 1, 2}, {3, 0, 3}});
  EXPECT_EQ(m.ranks(0), (std::vector<int>{0, 0, 1}));
  EXPECT_EQ(m.ranks(2), (std::vector<int>{1, 0, 1}));
  EXPECT_EQ(m.class_count(1), 3);
}

}  // namespace
}  // namespace hmkt
