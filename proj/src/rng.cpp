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

#include "quotamatch/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/random/bernoulli_distribution.hpp>
#include <boost/random/gamma_distribution.hpp>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_01.hpp>

namespace quotamatch {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t trial,
                          Stream stream) {
  std::uint64_t h = mix64(master_seed);
  h = mix64(h ^ (trial * 0xd1b54a32d192ed03ULL));
  return mix64(h ^ static_cast<std::uint64_t>(stream));
}

Rng make_stream(std::uint64_t master_seed, std::uint64_t trial, Stream stream) {
  return Rng(derive_seed(master_seed, trial, stream));
}

double uniform01(Rng& rng) {
  boost::random::uniform_01<double> dist;
  return dist(rng);
}

double sample_beta(Rng& rng, double alpha, double beta) {
  boost::random::gamma_distribution<double> ga(alpha);
  boost::random::gamma_distribution<double> gb(beta);
  const double x = ga(rng);
  const double y = gb(rng);
  constexpr double kLo = std::numeric_limits<double>::min();
  constexpr double kHi = 1.0 - std::numeric_limits<double>::epsilon() / 2;
  if (!(x + y > 0.0)) return 0.5;  // both underflowed
  return std::clamp(x / (x + y), kLo, kHi);
}

double sample_normal(Rng& rng, double mean, double stddev) {
  boost::random::normal_distribution<double> dist(mean, stddev);
  return dist(rng);
}

bool sample_bernoulli(Rng& rng, double p) {
  boost::random::bernoulli_distribution<double> dist(p);
  return dist(rng);
}

}  // namespace quotamatch
