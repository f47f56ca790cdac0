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

#include "quotamatch/verifier.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace quotamatch {

namespace {

// Floor/leftover split of a matching under the submitted orders.
struct StageSplit {
  std::vector<int> floor_owner;    // by global id, -1 if none
  std::vector<int> leftover_owner; // by global id, -1 if none
  // [firm][type] floor workers (local index), best first.
  std::vector<std::vector<std::vector<int>>> floors;
  std::vector<std::vector<int>> leftovers;  // [firm] global ids
};

// Position of each worker in each firm's per-type order.
std::vector<std::vector<std::vector<int>>> positions(
    const FirmRankings& submitted) {
  std::vector<std::vector<std::vector<int>>> pos(submitted.order.size());
  for (std::size_t i = 0; i < pos.size(); ++i) {
    pos[i].resize(submitted.order[i].size());
    for (std::size_t m = 0; m < pos[i].size(); ++m) {
      const auto& order = submitted.order[i][m];
      pos[i][m].resize(order.size());
      for (std::size_t p = 0; p < order.size(); ++p) {
        pos[i][m][order[p]] = static_cast<int>(p);
      }
    }
  }
  return pos;
}

std::optional<StageSplit> split_stages(
    const Matching& matching, const Market& market,
    const std::vector<std::vector<std::vector<int>>>& pos,
    std::string* why) {
  const auto& config = market.config();
  const auto& index = market.workers();
  StageSplit s;
  s.floor_owner.assign(index.size(), -1);
  s.leftover_owner.assign(index.size(), -1);
  s.floors.resize(config.n_firms);
  s.leftovers.resize(config.n_firms);
  for (int i = 0; i < config.n_firms; ++i) {
    if (matching.count(i) > config.total_quota[i]) {
      if (why) *why = "firm " + std::to_string(i + 1) + " exceeds its total quota";
      return std::nullopt;
    }
    s.floors[i].resize(config.n_types());
    for (int m = 0; m < config.n_types(); ++m) {
      std::vector<int> held = matching.workers(i, m);
      std::sort(held.begin(), held.end(),
                [&](int a, int b) { return pos[i][m][a] < pos[i][m][b]; });
      const std::size_t q = static_cast<std::size_t>(config.type_quota[i][m]);
      for (std::size_t k = 0; k < held.size(); ++k) {
        const int g = index.global(m, held[k]);
        if (k < q) {
          s.floors[i][m].push_back(held[k]);
          s.floor_owner[g] = i;
        } else {
          s.leftovers[i].push_back(g);
          s.leftover_owner[g] = i;
        }
      }
    }
    if (static_cast<int>(s.leftovers[i].size()) > config.leftover_quota(i)) {
      if (why) {
        *why = "firm " + std::to_string(i + 1) +
               " holds more workers beyond its type floors than its leftover "
               "quota allows";
      }
      return std::nullopt;
    }
  }
  return s;
}

BlockingReport blocking_pairs(const StageSplit& s, const FirmRankings& submitted,
                              const Market& market,
                              const std::vector<std::vector<std::vector<int>>>& pos,
                              bool stop_at_first) {
  const auto& config = market.config();
  const auto& index = market.workers();
  const auto& wp = market.worker_prefs();
  BlockingReport report;

  for (int m = 0; m < config.n_types(); ++m) {
    for (int i = 0; i < config.n_firms; ++i) {
      const int q = config.type_quota[i][m];
      if (q == 0) continue;
      const auto& floor = s.floors[i][m];
      const bool vacancy = static_cast<int>(floor.size()) < q;
      const int worst = vacancy ? -1 : floor.back();
      for (int j = 0; j < index.count(m); ++j) {
        const int g = index.global(m, j);
        if (s.floor_owner[g] == i || s.leftover_owner[g] == i) continue;
        if (!vacancy && pos[i][m][j] > pos[i][m][worst]) continue;
        const int owner = s.floor_owner[g];
        if (owner != -1 && !wp.prefers(g, i, owner)) continue;
        BlockingPair bp{i, m, j, std::nullopt, BlockStage::kFloor};
        if (!vacancy) bp.displaced = WorkerId{m, worst};
        report.pairs.push_back(bp);
        if (stop_at_first) return report;
      }
    }
  }

  auto mean_of = [&](int firm, int g) {
    const WorkerId w = index.local(g);
    return submitted.means[firm][w.type][w.index];
  };
  // True when firm ranks a above b in the cross-type order.
  auto ranks_above = [&](int firm, int a, int b) {
    const double ma = mean_of(firm, a), mb = mean_of(firm, b);
    return ma > mb || (ma == mb && a < b);
  };

  for (int i = 0; i < config.n_firms; ++i) {
    const int leftover = config.leftover_quota(i);
    if (leftover <= 0) continue;
    const auto& held = s.leftovers[i];
    const bool vacancy = static_cast<int>(held.size()) < leftover;
    int worst = -1;
    for (int g : held) {
      if (worst == -1 || ranks_above(i, worst, g)) worst = g;
    }
    for (int g = 0; g < index.size(); ++g) {
      if (s.floor_owner[g] != -1 || s.leftover_owner[g] == i) continue;
      if (!vacancy && !ranks_above(i, g, worst)) continue;
      const int owner = s.leftover_owner[g];
      if (owner != -1 && !wp.prefers(g, i, owner)) continue;
      const WorkerId w = index.local(g);
      BlockingPair bp{i, w.type, w.index, std::nullopt, BlockStage::kLeftover};
      if (!vacancy) bp.displaced = index.local(worst);
      report.pairs.push_back(bp);
      if (stop_at_first) return report;
    }
  }
  return report;
}

std::uint64_t candidate_count(int n_firms, int n_workers, std::uint64_t cap) {
  std::uint64_t total = 1;
  for (int k = 0; k < n_workers; ++k) {
    total *= static_cast<std::uint64_t>(n_firms) + 1;
    if (total > cap) return cap + 1;
  }
  return total;
}

}  // namespace

BlockingReport find_blocking_pairs(const Matching& matching,
                                   const FirmRankings& submitted,
                                   const Market& market) {
  const auto& config = market.config();
  if (matching.n_firms() != config.n_firms ||
      matching.n_types() != config.n_types()) {
    throw Error(ErrorCode::kInvalidArgument,
                "matching does not fit the market dimensions");
  }
  const auto pos = positions(submitted);
  std::string why;
  const auto split = split_stages(matching, market, pos, &why);
  if (!split) {
    throw Error(ErrorCode::kInvalidArgument,
                "matching is not a two-stage outcome: " + why);
  }
  return blocking_pairs(*split, submitted, market, pos, false);
}

Matching firm_optimal_oracle(const Market& market) {
  return double_match(FirmRankings::from_scores(market.prefs().firm_scores),
                      market);
}

std::vector<Matching> enumerate_stable_matchings(const FirmRankings& submitted,
                                                 const Market& market,
                                                 std::uint64_t cap) {
  const auto& config = market.config();
  const auto& index = market.workers();
  const int n = config.n_firms;
  const int k = index.size();
  if (candidate_count(n, k, cap) > cap) {
    std::ostringstream msg;
    msg << "enumeration needs (" << n + 1 << ")^" << k
        << " candidates, above the cap of " << cap;
    throw Error(ErrorCode::kInstanceTooLarge, msg.str());
  }
  const auto pos = positions(submitted);

  std::vector<int> choice(k, -1);
  std::vector<int> load(n, 0);
  std::vector<Matching> stable;

  std::function<void(int)> visit = [&](int g) {
    if (g == k) {
      Matching candidate(n, config.workers_per_type);
      for (int w = 0; w < k; ++w) {
        if (choice[w] < 0) continue;
        const WorkerId id = index.local(w);
        candidate.assign(choice[w], id.type, id.index);
      }
      const auto split = split_stages(candidate, market, pos, nullptr);
      if (split && blocking_pairs(*split, submitted, market, pos, true).stable()) {
        stable.push_back(std::move(candidate));
      }
      return;
    }
    choice[g] = -1;
    visit(g + 1);
    for (int f = 0; f < n; ++f) {
      if (load[f] >= config.total_quota[f]) continue;
      choice[g] = f;
      ++load[f];
      visit(g + 1);
      --load[f];
    }
    choice[g] = -1;
  };
  visit(0);
  std::sort(stable.begin(), stable.end());
  return stable;
}

std::vector<Matching> enumerate_stable_matchings(const Market& market,
                                                 std::uint64_t cap) {
  return enumerate_stable_matchings(
      FirmRankings::from_scores(market.prefs().firm_scores), market, cap);
}

bool is_unique_stable(const Market& market, std::uint64_t cap) {
  return enumerate_stable_matchings(market, cap).size() == 1;
}

std::vector<double> assigned_score_profile(const Matching& matching,
                                           const Market& market, int firm) {
  std::vector<double> scores;
  for (int m = 0; m < market.n_types(); ++m) {
    for (int j : matching.workers(firm, m)) {
      scores.push_back(market.score(firm, m, j));
    }
  }
  std::sort(scores.begin(), scores.end(), std::greater<>());
  return scores;
}

}  // namespace quotamatch
