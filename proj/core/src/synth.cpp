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

#include "privrec/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "privrec/util.hpp"

namespace privrec {

Dataset synth_dataset(const SynthConfig& config) {
  if (config.n_users < 1 || config.n_items < 1 || config.n_genres < 1) {
    throw std::invalid_argument("synth dimensions must be positive");
  }
  std::mt19937_64 rng(mix64(config.seed, 0x73796eULL));
  std::uniform_int_distribution<int> genre_count(1, 3);
  std::uniform_int_distribution<int> genre_pick(0, config.n_genres - 1);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> u01(0.0, 1.0);

  Dataset ds;
  ds.features = ItemFeatureTable(config.n_genres);
  std::vector<std::vector<double>> flags(config.n_items);
  for (int i = 0; i < config.n_items; ++i) {
    std::vector<double> f(config.n_genres, 0.0);
    const int n = genre_count(rng);
    for (int g = 0; g < n; ++g) f[genre_pick(rng)] = 1.0;
    flags[i] = f;
    ds.features.set(i + 1, f);
  }

  for (int u = 0; u < config.n_users; ++u) {
    std::vector<double> affinity(config.n_genres);
    for (double& a : affinity) a = gauss(rng);
    const double bias = 0.3 * gauss(rng);
    const PseudonymId user = "u" + std::to_string(u + 1);
    for (int i = 0; i < config.n_items; ++i) {
      if (u01(rng) >= config.density) continue;
      double dot = 0.0, norm = 0.0;
      for (int g = 0; g < config.n_genres; ++g) {
        dot += affinity[g] * flags[i][g];
        norm += flags[i][g];
      }
      const double score = 3.0 + bias + 1.3 * dot / std::sqrt(norm) +
                           config.noise * gauss(rng);
      const int value = std::clamp(static_cast<int>(std::lround(score)), 1, 5);
      ds.ratings.push_back({user, i + 1, value});
    }
  }
  if (ds.ratings.empty()) throw std::runtime_error("synthetic dataset came out empty");
  return ds;
}

}  // namespace privrec
