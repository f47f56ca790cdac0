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

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "quotamatch/error.hpp"
#include "quotamatch/harness.hpp"
#include "quotamatch/metrics.hpp"
#include "quotamatch/verifier.hpp"

namespace quotamatch {
namespace {

class ExampleOneMetrics : public ::testing::Test {
 protected:
  const Market market = builtin_market(BuiltinExample::kOne);
  const Matching oracle = firm_optimal_oracle(market);
};

TEST_F(ExampleOneMetrics, OracleHasZeroRegret) {
  for (int i = 0; i < 2; ++i) {
    for (int m = 0; m < 2; ++m) {
      EXPECT_EQ(instantaneous_regret(market, oracle, oracle, i, m), 0.0);
    }
  }
}

TEST_F(ExampleOneMetrics, FirmOneHoldingD5InsteadOfS3) {
  Matching actual(2, market.config().workers_per_type);
  for (int w : {1, 3, 4}) actual.assign(0, 0, w);  // D2, D4, D5
  for (int w : {0, 4}) actual.assign(0, 1, w);     // S1, S5
  for (int w : {0, 2}) actual.assign(1, 0, w);     // D1, D3
  for (int w : {1, 2, 3}) actual.assign(1, 1, w);  // S2, S3, S4
  EXPECT_NEAR(instantaneous_regret(market, oracle, actual, 0, 0), -0.695, 1e-12);
  EXPECT_NEAR(instantaneous_regret(market, oracle, actual, 0, 1), 0.040, 1e-12);
}

TEST_F(ExampleOneMetrics, SuperRewardGap) {
  EXPECT_NEAR(super_reward_gap(market, oracle, 0, 1, 3), 0.275, 1e-12);
  EXPECT_NEAR(super_reward_gap(market, oracle, 0, 0, 2), 0.970 - 0.738, 1e-12);
  try {
    super_reward_gap(market, oracle, 0, 1, 2);
    FAIL() << "expected an exception";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kWorkerInOracleSet);
  }
}

TEST(SuperRewardGapTest, ZeroScoreWorkerGivesOracleMaximum) {
  MarketConfig c;
  c.n_firms = 1;
  c.workers_per_type = {2};
  c.type_quota = {{1}};
  c.total_quota = {1};
  const Market market(c, TruePreferences{{{{0.8, 0.0}}}, {{{0}, {0}}}});
  EXPECT_DOUBLE_EQ(super_reward_gap(market, firm_optimal_oracle(market), 0, 0, 1), 0.8);
}

TEST(RegretLedgerTest, PrefixSums) {
  RegretLedger ledger(2, 1);
  ledger.record(std::vector<double>{0.5, -0.25});
  ledger.record(std::vector<double>{0.25, 0.0});
  ledger.record(std::vector<double>{0.0, 1.0});
  EXPECT_EQ(ledger.rounds(), 3);
  EXPECT_DOUBLE_EQ(ledger.cumulative(0, 0, 2), 0.75);
  EXPECT_DOUBLE_EQ(ledger.cumulative_firm(1, 1), -0.25);
  EXPECT_DOUBLE_EQ(ledger.cumulative_market(2), 1.5);
  EXPECT_EQ(ledger.market_curve(), (std::vector<double>{0.25, 0.5, 1.5}));
  EXPECT_DOUBLE_EQ(ledger.instantaneous(1, 0, 2), 1.0);
}

TEST(BswgTest, MeanOfMarketCurves) {
  RegretLedger a(1, 1), b(1, 1);
  a.record(std::vector<double>{1.0});
  a.record(std::vector<double>{1.0});
  b.record(std::vector<double>{3.0});
  b.record(std::vector<double>{0.0});
  const std::vector<RegretLedger> one{a};
  EXPECT_EQ(bswg(one), a.market_curve());
  const std::vector<RegretLedger> two{a, b};
  EXPECT_EQ(bswg(two), (std::vector<double>{2.0, 2.5}));
}

TEST(RegretBoundTest, ClosedForm) {
  const double first = 8.0 * 10 * std::log(10.0 * 2000) * std::sqrt(5.0 * 2000);
  EXPECT_NEAR(regret_bound(10, 5, 2, 10, 2000), first + 2.0, 1e-9);
  EXPECT_NEAR(first, 7.923e4, 5.0);
  EXPECT_NEAR(regret_bound(10, 5, 2, 10, 1),
              8.0 * 10 * std::log(10.0) * std::sqrt(5.0) + 2.0, 1e-9);
}

TEST(RegretBoundTest, MonotoneInHorizon) {
  double prev = 0.0;
  for (int t = 1; t <= 4096; t *= 2) {
    const double v = regret_bound(10, 5, 2, 10, t);
    EXPECT_GT(v, prev);
    prev = v;
  }
  EXPECT_THROW(regret_bound(0, 5, 2, 10, 10), Error);
}

TEST(RegretBoundTest, FromConfig) {
  const Market market = builtin_market(BuiltinExample::kOne);
  EXPECT_DOUBLE_EQ(regret_bound(market.config(), 2000), regret_bound(10, 5, 2, 10, 2000));
}

TEST(MatchingRateTest, Extremes) {
  const Market market = builtin_market(BuiltinExample::kUcbVsTs);
  const Matching oracle = firm_optimal_oracle(market);
  const Matching other(3, market.config().workers_per_type);
  const std::vector<Matching> hit(5, oracle), miss(5, other);
  EXPECT_EQ(matching_rate(hit, oracle), 1.0);
  EXPECT_EQ(matching_rate(miss, oracle), 0.0);
  const std::vector<Matching> half{oracle, other};
  EXPECT_EQ(matching_rate(half, oracle), 0.5);
}

TEST(SublinearTest, Shapes) {
  std::vector<double> linear, sqrt_curve, negative_flat;
  for (int t = 1; t <= 2000; ++t) {
    linear.push_back(0.3 * t);
    sqrt_curve.push_back(10 * std::sqrt(t));
    negative_flat.push_back(t < 100 ? -t : -100.0);
  }
  EXPECT_FALSE(is_sublinear(linear));
  // sqrt(2) - 1 is about 0.41 of the first half's growth.
  EXPECT_TRUE(is_sublinear(sqrt_curve));
  EXPECT_TRUE(is_sublinear(negative_flat));
}

TEST(StatisticsTest, MeanStderrAndFits) {
  const std::vector<double> v{1, 2, 3, 4};
  const auto ms = mean_stderr(v);
  EXPECT_DOUBLE_EQ(ms.mean, 2.5);
  EXPECT_NEAR(ms.stderr_, std::sqrt(5.0 / 3.0 / 4.0), 1e-12);

  const std::vector<double> x{1, 2, 3, 4, 5};
  const std::vector<double> y{3, 5, 7, 9, 11};
  const auto fit = fit_line(x, y);
  EXPECT_NEAR(fit.slope, 2.0, 1e-12);
  EXPECT_NEAR(fit.intercept, 1.0, 1e-12);
  EXPECT_NEAR(fit.slope_stderr, 0.0, 1e-12);

  std::vector<double> lx, ly;
  for (int t = 1; t <= 100; ++t) {
    lx.push_back(t);
    ly.push_back(3.0 * std::log(t));
  }
  EXPECT_NEAR(fit_log_coefficient(lx, ly), 3.0, 1e-12);
}

}  // namespace
}  // namespace quotamatch
