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

#ifndef QUOTAMATCH_RNG_HPP_
#define QUOTAMATCH_RNG_HPP_

#include <cstdint>

#include <boost/random/mersenne_twister.hpp>

namespace quotamatch {

// Boost's engine and distributions are implemented in headers, so a seed
// produces the same stream on every platform and standard library.
using Rng = boost::random::mt19937_64;

// Independent sub-streams of one trial.
enum class Stream : std::uint64_t {
  kInstance = 1,
  kSampling = 2,
  kReward = 3,
};

// splitmix64 finaliser.
std::uint64_t mix64(std::uint64_t x);

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t trial,
                          Stream stream);

Rng make_stream(std::uint64_t master_seed, std::uint64_t trial, Stream stream);

// Uniform on [0, 1).
double uniform01(Rng& rng);

// Beta(alpha, beta) draw clamped into the open interval (0, 1); with tiny
// shape parameters the gamma ratio can round to exactly 0 or 1.
double sample_beta(Rng& rng, double alpha, double beta);

double sample_normal(Rng& rng, double mean, double stddev);

bool sample_bernoulli(Rng& rng, double p);

}  // namespace quotamatch

#endif  // QUOTAMATCH_RNG_HPP_
