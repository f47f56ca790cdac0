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

#ifndef QUOTAMATCH_METRICS_HPP_
#define QUOTAMATCH_METRICS_HPP_

#include <span>
#include <vector>

#include "quotamatch/market.hpp"

namespace quotamatch {

// Sum of true scores of the oracle's type-m workers for `firm` minus the same
// sum over the actual assignment. Missing slots score 0, so the value can be
// negative when the firm holds better-than-oracle workers.
double instantaneous_regret(const Market& market, const Matching& oracle,
                            const Matching& actual, int firm, int type);

// Per (firm, type, round) regret with exact prefix sums.
class RegretLedger {
 public:
  RegretLedger() = default;
  RegretLedger(int n_firms, int n_types);

  // Appends one round: regret of every (firm, type) cell against the oracle.
  void record(const Market& market, const Matching& oracle,
              const Matching& actual);
  // Appends one round from precomputed values indexed [firm * n_types + type].
  void record(std::span<const double> cell_regret);

  int rounds() const { return rounds_; }
  int n_firms() const { return n_firms_; }
  int n_types() const { return n_types_; }

  double instantaneous(int firm, int type, int round) const;
  // Cumulative through `round` (0-based, inclusive).
  double cumulative(int firm, int type, int round) const;
  double cumulative_firm(int firm, int round) const;
  double cumulative_market(int round) const;

  std::vector<double> cumulative_curve(int firm, int type) const;
  std::vector<double> firm_curve(int firm) const;
  std::vector<double> market_curve() const;

 private:
  std::size_t cell(int firm, int type, int round) const {
    return (static_cast<std::size_t>(round) * n_firms_ + firm) * n_types_ +
           type;
  }

  int n_firms_ = 0;
  int n_types_ = 0;
  int rounds_ = 0;
  std::vector<double> inst_;
  std::vector<double> cum_;
};

// Bayesian social welfare gap: mean over trials of the market-wide
// cumulative regret, per round. Ledgers must share a length.
std::vector<double> bswg(std::span<const RegretLedger> trials);

// 8 Q log(Q T) sqrt(K_max T) + N K / Q, natural log.
double regret_bound(double total_quota, double max_workers_per_type,
                    double n_firms, double total_workers, double horizon);

double regret_bound(const MarketConfig& config, int round);

// Fraction of rounds whose whole matching equals the oracle.
double matching_rate(std::span<const Matching> rounds, const Matching& oracle);

// Best oracle-assigned type-m score of `firm` minus the score of `worker`.
// Throws kWorkerInOracleSet if the worker is oracle-assigned to the firm.
double super_reward_gap(const Market& market, const Matching& oracle, int firm,
                        int type, int worker);

// Growth of a cumulative curve over the second half stays under 60% of the
// first half's growth, compared in magnitude so negative curves qualify.
inline constexpr double kSublinearRatio = 0.6;
bool is_sublinear(std::span<const double> cumulative);

struct MeanStderr {
  double mean = 0.0;
  double stderr_ = 0.0;
};

MeanStderr mean_stderr(std::span<const double> values);

struct LinearFit {
  double intercept = 0.0;
  double slope = 0.0;
  double slope_stderr = 0.0;
  int n = 0;
};

// Ordinary least squares y = a + b x.
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

// Least squares y = c log(x), x > 0.
double fit_log_coefficient(std::span<const double> x, std::span<const double> y);

}  // namespace quotamatch

#endif  // QUOTAMATCH_METRICS_HPP_
