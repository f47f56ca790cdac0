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

#include "quotamatch/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <numeric>

namespace quotamatch {

double instantaneous_regret(const Market& market, const Matching& oracle,
                            const Matching& actual, int firm, int type) {
  // Both lists are sorted; shared workers cancel exactly.
  const auto& want = oracle.workers(firm, type);
  const auto& got = actual.workers(firm, type);
  std::vector<int> missing, extra;
  std::set_difference(want.begin(), want.end(), got.begin(), got.end(),
                      std::back_inserter(missing));
  std::set_difference(got.begin(), got.end(), want.begin(), want.end(),
                      std::back_inserter(extra));
  double regret = 0.0;
  for (int j : missing) regret += market.score(firm, type, j);
  for (int j : extra) regret -= market.score(firm, type, j);
  return regret;
}

RegretLedger::RegretLedger(int n_firms, int n_types)
    : n_firms_(n_firms), n_types_(n_types) {}

void RegretLedger::record(const Market& market, const Matching& oracle,
                          const Matching& actual) {
  std::vector<double> cells(static_cast<std::size_t>(n_firms_) * n_types_);
  for (int i = 0; i < n_firms_; ++i) {
    for (int m = 0; m < n_types_; ++m) {
      cells[i * n_types_ + m] = instantaneous_regret(market, oracle, actual, i, m);
    }
  }
  record(cells);
}

void RegretLedger::record(std::span<const double> cell_regret) {
  const std::size_t width = static_cast<std::size_t>(n_firms_) * n_types_;
  if (cell_regret.size() != width) {
    throw Error(ErrorCode::kInvalidArgument, "regret row has the wrong width");
  }
  const std::size_t base = inst_.size();
  inst_.insert(inst_.end(), cell_regret.begin(), cell_regret.end());
  cum_.resize(inst_.size());
  for (std::size_t c = 0; c < width; ++c) {
    cum_[base + c] = (rounds_ == 0 ? 0.0 : cum_[base - width + c]) + cell_regret[c];
  }
  ++rounds_;
}

double RegretLedger::instantaneous(int firm, int type, int round) const {
  return inst_[cell(firm, type, round)];
}

double RegretLedger::cumulative(int firm, int type, int round) const {
  return cum_[cell(firm, type, round)];
}

double RegretLedger::cumulative_firm(int firm, int round) const {
  double total = 0.0;
  for (int m = 0; m < n_types_; ++m) total += cumulative(firm, m, round);
  return total;
}

double RegretLedger::cumulative_market(int round) const {
  double total = 0.0;
  for (int i = 0; i < n_firms_; ++i) total += cumulative_firm(i, round);
  return total;
}

std::vector<double> RegretLedger::cumulative_curve(int firm, int type) const {
  std::vector<double> out(rounds_);
  for (int t = 0; t < rounds_; ++t) out[t] = cumulative(firm, type, t);
  return out;
}

std::vector<double> RegretLedger::firm_curve(int firm) const {
  std::vector<double> out(rounds_);
  for (int t = 0; t < rounds_; ++t) out[t] = cumulative_firm(firm, t);
  return out;
}

std::vector<double> RegretLedger::market_curve() const {
  std::vector<double> out(rounds_);
  for (int t = 0; t < rounds_; ++t) out[t] = cumulative_market(t);
  return out;
}

std::vector<double> bswg(std::span<const RegretLedger> trials) {
  if (trials.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "bswg needs at least one trial");
  }
  const int rounds = trials.front().rounds();
  std::vector<double> out(rounds, 0.0);
  for (const auto& ledger : trials) {
    if (ledger.rounds() != rounds) {
      throw Error(ErrorCode::kInvalidArgument, "trial lengths differ");
    }
    for (int t = 0; t < rounds; ++t) out[t] += ledger.cumulative_market(t);
  }
  for (double& v : out) v /= static_cast<double>(trials.size());
  return out;
}

double regret_bound(double total_quota, double max_workers_per_type,
                    double n_firms, double total_workers, double horizon) {
  if (!(total_quota > 0 && max_workers_per_type > 0 && n_firms > 0 &&
        total_workers > 0 && horizon > 0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "regret_bound arguments must be positive");
  }
  return 8.0 * total_quota * std::log(total_quota * horizon) *
             std::sqrt(max_workers_per_type * horizon) +
         n_firms * total_workers / total_quota;
}

double regret_bound(const MarketConfig& config, int round) {
  return regret_bound(config.total_capacity(), config.max_workers_per_type(),
                      config.n_firms, config.total_workers(), round);
}

double matching_rate(std::span<const Matching> rounds, const Matching& oracle) {
  if (rounds.empty()) return 0.0;
  const auto hits = std::count(rounds.begin(), rounds.end(), oracle);
  return static_cast<double>(hits) / static_cast<double>(rounds.size());
}

double super_reward_gap(const Market& market, const Matching& oracle, int firm,
                        int type, int worker) {
  const auto& set = oracle.workers(firm, type);
  if (std::find(set.begin(), set.end(), worker) != set.end()) {
    throw Error(ErrorCode::kWorkerInOracleSet,
                "worker " + std::to_string(worker + 1) +
                    " is in the oracle assignment of firm " +
                    std::to_string(firm + 1));
  }
  if (set.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "oracle assigns no workers of this type to the firm");
  }
  double best = market.score(firm, type, set.front());
  for (int j : set) best = std::max(best, market.score(firm, type, j));
  return best - market.score(firm, type, worker);
}

bool is_sublinear(std::span<const double> cumulative) {
  const std::size_t t = cumulative.size();
  if (t < 2) return true;
  const double half = cumulative[t / 2 - 1];
  const double first = half;
  const double second = cumulative[t - 1] - half;
  return std::abs(second) < kSublinearRatio * std::abs(first);
}

MeanStderr mean_stderr(std::span<const double> values) {
  MeanStderr out;
  if (values.empty()) return out;
  const double n = static_cast<double>(values.size());
  out.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() < 2) return out;
  double ss = 0.0;
  for (double v : values) ss += (v - out.mean) * (v - out.mean);
  out.stderr_ = std::sqrt(ss / (n - 1.0) / n);
  return out;
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 3) {
    throw Error(ErrorCode::kInvalidArgument, "fit_line needs >= 3 paired points");
  }
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxx += (x[k] - mx) * (x[k] - mx);
    sxy += (x[k] - mx) * (y[k] - my);
  }
  LinearFit fit;
  fit.n = static_cast<int>(x.size());
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double sse = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double r = y[k] - fit.intercept - fit.slope * x[k];
    sse += r * r;
  }
  fit.slope_stderr = std::sqrt(sse / (n - 2.0) / sxx);
  return fit;
}

double fit_log_coefficient(std::span<const double> x, std::span<const double> y) {
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double l = std::log(x[k]);
    num += l * y[k];
    den += l * l;
  }
  return den > 0.0 ? num / den : 0.0;
}

}  // namespace quotamatch
