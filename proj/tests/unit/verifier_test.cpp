// Copyright 2026 The QuotaMatch Authors.
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

#include <algorithm>
#include <set>
#include <vector>

#include <boost/random/uniform_int_distribution.hpp>
#include <gtest/gtest.h>

#include "quotamatch/error.hpp"
#include "quotamatch/harness.hpp"
#include "quotamatch/matching.hpp"
#include "quotamatch/rng.hpp"
#include "quotamatch/verifier.hpp"
#include "reference.hpp"

namespace quotamatch {
namespace {

Matching SingleType(int n_firms, int n_workers,
                    const std::vector<std::pair<int, int>>& pairs) {
  const std::vector<int> k{n_workers};
  Matching m(n_firms, k);
  for (auto [f, w] : pairs) m.assign(f, 0, w);
  return m;
}

FirmRankings Truth(const Market& market) {
  return FirmRankings::from_scores(market.prefs().firm_scores);
}

Market OneByOne() {
  MarketConfig c;
  c.n_firms = 1;
  c.workers_per_type = {1};
  c.type_quota = {{1}};
  c.total_quota = {1};
  return Market(c, TruePreferences{{{{0.3}}}, {{{0}}}});
}

TEST(FindBlockingPairsTest, ExplorationMarketUnstableMatching) {
  const Market market = builtin_market(BuiltinExample::kUcbVsTs);
  const Matching m = SingleType(3, 3, {{0, 1}, {1, 2}, {2, 0}});
  const auto report = find_blocking_pairs(m, Truth(market), market);
  EXPECT_FALSE(report.stable());
  const bool has_p3_a3 =
      std::any_of(report.pairs.begin(), report.pairs.end(), [](const auto& bp) {
        return bp.firm == 2 && bp.type == 0 && bp.worker == 2;
      });
  EXPECT_TRUE(has_p3_a3);
}

TEST(FindBlockingPairsTest, ExplorationMarketSecondStableMatching) {
  const Market market = builtin_market(BuiltinExample::kUcbVsTs);
  const Matching m = SingleType(3, 3, {{0, 1}, {1, 0}, {2, 2}});
  EXPECT_TRUE(find_blocking_pairs(m, Truth(market), market).stable());
}

TEST(FindBlockingPairsTest, VacancyBlocks) {
  const Market market = OneByOne();
  const Matching empty = SingleType(1, 1, {});
  const auto report = find_blocking_pairs(empty, Truth(market), market);
  ASSERT_EQ(report.pairs.size(), 1u);
  EXPECT_FALSE(report.pairs[0].displaced.has_value());
}

TEST(FindBlockingPairsTest, RejectsOverfullFirm) {
  const Market market = builtin_market(BuiltinExample::kUcbVsTs);
  const Matching m = SingleType(3, 3, {{0, 0}, {0, 1}});
  try {
    find_blocking_pairs(m, Truth(market), market);
    FAIL() << "expected an exception";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
  }
}

TEST(FirmOptimalOracleTest, ExampleOne) {
  const Market market = builtin_market(BuiltinExample::kOne);
  const Matching oracle = firm_optimal_oracle(market);
  EXPECT_EQ(oracle.workers(0, 0), (std::vector<int>{1, 3}));
  EXPECT_EQ(oracle.workers(0, 1), (std::vector<int>{0, 2, 4}));
  EXPECT_EQ(oracle.workers(1, 0), (std::vector<int>{0, 2, 4}));
  EXPECT_EQ(oracle.workers(1, 1), (std::vector<int>{1, 3}));
  EXPECT_TRUE(find_blocking_pairs(oracle, Truth(market), market).stable());
}

TEST(FirmOptimalOracleTest, ExplorationMarket) {
  const Market market = builtin_market(BuiltinExample::kUcbVsTs);
  EXPECT_EQ(firm_optimal_oracle(market), SingleType(3, 3, {{0, 0}, {1, 1}, {2, 2}}));
}

TEST(FirmOptimalOracleTest, LoneFirmTakesEveryone) {
  MarketConfig c;
  c.n_firms = 1;
  c.workers_per_type = {2, 3};
  c.type_quota = {{2, 3}};
  c.total_quota = {5};
  const Market market(c, generate_random_instance(2, c));
  EXPECT_EQ(firm_optimal_oracle(market).matched_workers(), 5);
}

TEST(EnumerateTest, ExplorationMarketHasTwoStableMatchings) {
  const Market market = builtin_market(BuiltinExample::kUcbVsTs);
  const auto all = enumerate_stable_matchings(market);
  ASSERT_EQ(all.size(), 2u);
  const std::set<Matching> got(all.begin(), all.end());
  const std::set<Matching> want{SingleType(3, 3, {{0, 0}, {1, 1}, {2, 2}}),
                                SingleType(3, 3, {{0, 1}, {1, 0}, {2, 2}})};
  EXPECT_EQ(got, want);
  EXPECT_FALSE(is_unique_stable(market));
}

TEST(EnumerateTest, OneByOne) {
  const Market market = OneByOne();
  const auto all = enumerate_stable_matchings(market);
  ASSERT_EQ(all.size(), 1u);
  EXPECT_EQ(all[0], SingleType(1, 1, {{0, 0}}));
  EXPECT_TRUE(is_unique_stable(market));
}

TEST(EnumerateTest, CapRefusesLargeInstances) {
  const Market market = builtin_market(BuiltinExample::kOne);
  try {
    enumerate_stable_matchings(market, 1000);
    FAIL() << "expected an exception";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInstanceTooLarge);
  }
}

TEST(EnumerateTest, ExampleOneOracleIsEnumerated) {
  const Market market = builtin_market(BuiltinExample::kOne);
  const auto all = enumerate_stable_matchings(market);
  ASSERT_FALSE(all.empty());
  EXPECT_NE(std::find(all.begin(), all.end(), firm_optimal_oracle(market)),
            all.end());
}

// Random markets with one type where the stage split is trivial, so the
// classical definition applies and can be checked by an independent search.
class ClassicalCrossCheck : public ::testing::TestWithParam<bool> {};

TEST_P(ClassicalCrossCheck, EnumerationMatchesIndependentSearch) {
  const bool all_floor = GetParam();
  Rng rng = make_stream(all_floor ? 21 : 22, 0, Stream::kInstance);
  auto draw = [&](int lo, int hi) {
    return boost::random::uniform_int_distribution<int>(lo, hi)(rng);
  };
  for (int rep = 0; rep < 60; ++rep) {
    MarketConfig c;
    c.n_firms = draw(1, 3);
    const int k = draw(1, 5);
    c.workers_per_type = {k};
    for (int i = 0; i < c.n_firms; ++i) {
      const int cap = draw(1, 2);
      c.type_quota.push_back({all_floor ? cap : 0});
      c.total_quota.push_back(cap);
    }
    const Market market(c, generate_random_instance(500 + rep, c));

    std::vector<std::vector<int>> rank(k, std::vector<int>(c.n_firms));
    for (int w = 0; w < k; ++w) {
      const auto& list = market.prefs().worker_ranks[0][w];
      for (int r = 0; r < c.n_firms; ++r) rank[w][list[r]] = r;
    }
    std::vector<std::vector<double>> score;
    for (int f = 0; f < c.n_firms; ++f) score.push_back(market.prefs().firm_scores[f][0]);

    std::set<Matching> expected;
    std::vector<int> code(k, 0);
    while (true) {
      std::vector<std::vector<int>> assignment(c.n_firms);
      for (int w = 0; w < k; ++w) {
        if (code[w] > 0) assignment[code[w] - 1].push_back(w);
      }
      bool fits = true;
      for (int f = 0; f < c.n_firms; ++f) {
        fits &= static_cast<int>(assignment[f].size()) <= c.total_quota[f];
      }
      if (fits && reference::college_stable(assignment, score, rank, c.total_quota)) {
        std::vector<std::pair<int, int>> pairs;
        for (int f = 0; f < c.n_firms; ++f) {
          for (int w : assignment[f]) pairs.emplace_back(f, w);
        }
        expected.insert(SingleType(c.n_firms, k, pairs));
      }
      int pos = 0;
      while (pos < k && ++code[pos] > c.n_firms) code[pos++] = 0;
      if (pos == k) break;
    }
    const auto all = enumerate_stable_matchings(market);
    EXPECT_EQ(std::set<Matching>(all.begin(), all.end()), expected) << "rep " << rep;
  }
}

INSTANTIATE_TEST_SUITE_P(FloorsOrLeftover, ClassicalCrossCheck, ::testing::Bool());

MarketConfig RandomSmallConfig(Rng& rng) {
  auto draw = [&](int lo, int hi) {
    return boost::random::uniform_int_distribution<int>(lo, hi)(rng);
  };
  MarketConfig c;
  c.n_firms = draw(1, 3);
  const int types = draw(1, 2);
  for (int m = 0; m < types; ++m) c.workers_per_type.push_back(draw(1, 4));
  for (int i = 0; i < c.n_firms; ++i) {
    std::vector<int> q;
    int sum = 0;
    for (int m = 0; m < types; ++m) {
      q.push_back(draw(0, 2));
      sum += q.back();
    }
    c.type_quota.push_back(q);
    c.total_quota.push_back(std::max(1, sum + draw(0, 2)));
  }
  return c;
}

TEST(CrossOracleTest, DoubleMatchIsStableAndFirmOptimal) {
  Rng rng = make_stream(31, 0, Stream::kInstance);
  for (int rep = 0; rep < 100; ++rep) {
    const MarketConfig c = RandomSmallConfig(rng);
    const Market market(c, generate_random_instance(900 + rep, c));
    const Matching oracle = firm_optimal_oracle(market);
    const auto all = enumerate_stable_matchings(market);
    ASSERT_NE(std::find(all.begin(), all.end(), oracle), all.end()) << "rep " << rep;
    for (int f = 0; f < c.n_firms; ++f) {
      const auto best = assigned_score_profile(oracle, market, f);
      for (const auto& other : all) {
        EXPECT_GE(best, assigned_score_profile(other, market, f))
            << "rep " << rep << " firm " << f;
      }
    }
  }
}

TEST(CrossOracleTest, TwoFirmTwoTypeUnitFloors) {
  MarketConfig c;
  c.n_firms = 2;
  c.workers_per_type = {3, 3};
  c.type_quota = {{1, 1}, {1, 1}};
  c.total_quota = {2, 2};
  for (int seed = 0; seed < 100; ++seed) {
    const Market market(c, generate_random_instance(seed, c));
    const auto all = enumerate_stable_matchings(market);
    EXPECT_NE(std::find(all.begin(), all.end(), firm_optimal_oracle(market)),
              all.end())
        << "seed " << seed;
  }
}

TEST(EnumerateTest, IndependentOfWorkerLabels) {
  Rng rng = make_stream(41, 0, Stream::kInstance);
  for (int rep = 0; rep < 30; ++rep) {
    const MarketConfig c = RandomSmallConfig(rng);
    const Market market(c, generate_random_instance(1300 + rep, c));

    // Reverse worker labels within each type.
    TruePreferences relabeled = market.prefs();
    for (auto& firm : relabeled.firm_scores) {
      for (auto& row : firm) std::reverse(row.begin(), row.end());
    }
    for (auto& per_type : relabeled.worker_ranks) {
      std::reverse(per_type.begin(), per_type.end());
    }
    const Market mirror(c, relabeled);

    std::set<Matching> back;
    for (const auto& m : enumerate_stable_matchings(mirror)) {
      Matching restored(c.n_firms, c.workers_per_type);
      for (int f = 0; f < c.n_firms; ++f) {
        for (int t = 0; t < c.n_types(); ++t) {
          for (int w : m.workers(f, t)) {
            restored.assign(f, t, c.workers_per_type[t] - 1 - w);
          }
        }
      }
      back.insert(restored);
    }
    const auto direct = enumerate_stable_matchings(market);
    EXPECT_EQ(std::set<Matching>(direct.begin(), direct.end()), back) << "rep " << rep;
  }
}

TEST(AssignedScoreProfileTest, SortedDescending) {
  const Market market = builtin_market(BuiltinExample::kOne);
  const auto profile = assigned_score_profile(firm_optimal_oracle(market), market, 0);
  EXPECT_EQ(profile, (std::vector<double>{0.970, 0.956, 0.932, 0.289, 0.040}));
}

}  // namespace
}  // namespace quotamatch
