// Copyright 2026 The privrec Authors.
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

#ifndef PRIVREC_SYNTH_HPP_
#define PRIVREC_SYNTH_HPP_

#include <cstdint>

#include "privrec/dataset.hpp"

namespace privrec {

/// Parameters for the synthetic rating generator. Items carry one to three
/// binary genre flags; users carry latent genre affinities; ratings follow
/// affinity plus noise, rounded to the 1..5 scale. The result has the same
/// shape as a genre-flag movie dataset and enough item-similarity structure
/// for item-based CF to beat the global mean.
struct SynthConfig {
  int n_users = 200;
  int n_items = 400;
  int n_genres = 18;
  double density = 0.15;   // expected fraction of (user,item) pairs rated
  double noise = 0.6;      // rating noise deviation before rounding
  std::uint64_t seed = 1;
};

Dataset synth_dataset(const SynthConfig& config);

}  // namespace privrec

#endif  // PRIVREC_SYNTH_HPP_
