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

#ifndef QUOTAMATCH_VERIFIER_HPP_
#define QUOTAMATCH_VERIFIER_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "quotamatch/market.hpp"
#include "quotamatch/matching.hpp"

namespace quotamatch {

// Stability follows the two stages of double matching. A firm's type-m floor
// is its best min(q_i^m, held) type-m workers under the submitted order; the
// remaining workers fill its leftover quota.
//
//  * floor block: worker k of type m prefers firm i to the firm holding k in a
//    floor (or k sits in no floor), and firm i has a vacant type-m floor slot
//    or prefers k to its worst type-m floor worker.
//  * leftover block: k sits in no floor, prefers i to its current firm (or is
//    unmatched), and i has leftover capacity that is vacant or whose worst
//    occupant it ranks below k across types.
//
// Floor workers are never contestable through leftover slots.
enum class BlockStage { kFloor, kLeftover };

struct BlockingPair {
  int firm = 0;
  int type = 0;
  int worker = 0;
  std::optional<WorkerId> displaced;  // nullopt: vacancy
  BlockStage stage = BlockStage::kFloor;

  friend bool operator==(const BlockingPair&, const BlockingPair&) = default;
};

struct BlockingReport {
  std::vector<BlockingPair> pairs;
  bool stable() const { return pairs.empty(); }
};

// Throws kInvalidArgument if the matching is not representable as a
// two-stage outcome (a firm holds more than Q_i or more leftover workers
// than Q_i - sum_m q_i^m).
BlockingReport find_blocking_pairs(const Matching& matching,
                                   const FirmRankings& submitted,
                                   const Market& market);

// Double matching on the true scores: the regret benchmark.
Matching firm_optimal_oracle(const Market& market);

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

// Brute force over every assignment of workers to firms (or to nobody),
// keeping the stable ones. Sorted, deterministic. Throws kInstanceTooLarge
// when (N+1)^K exceeds `cap`.
std::vector<Matching> enumerate_stable_matchings(
    const FirmRankings& submitted, const Market& market,
    std::uint64_t cap = kDefaultEnumerationCap);

std::vector<Matching> enumerate_stable_matchings(
    const Market& market, std::uint64_t cap = kDefaultEnumerationCap);

bool is_unique_stable(const Market& market,
                      std::uint64_t cap = kDefaultEnumerationCap);

// Per-firm true scores of the assigned workers, sorted descending.
std::vector<double> assigned_score_profile(const Matching& matching,
                                           const Market& market, int firm);

}  // namespace quotamatch

#endif  // QUOTAMATCH_VERIFIER_HPP_
