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

#ifndef PRIVREC_EXPERIMENT_HPP_
#define PRIVREC_EXPERIMENT_HPP_

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "privrec/dataset.hpp"

namespace privrec {

/// Parameter grid for the accuracy/privacy sweeps.
struct SweepGrid {
  std::vector<int> d_dims{100, 200, 300, 400, 500, 600};
  double noise_sigma0 = 0.5;
  std::vector<int> orders{3, 6, 9};
  std::vector<int> steps{10, 20, 30, 40, 50, 60, 70, 80};
  std::vector<std::uint64_t> seeds{1};
  double test_fraction = 0.2;
  int max_users = 200;
  int max_items = 400;
  int k_neighbors = 10;
  int vi_clusters = 8;
  std::size_t vi_max_points = 2000;  // VI clustering subsample cap

  void validate() const;
};

struct CtaSweepRow {
  int d_dim = 0;
  std::uint64_t seed = 0;
  double mae_plain = 0.0;
  double mae_concealed = 0.0;
  double vi = 0.0;
};

struct EvsSweepRow {
  int order = 0;
  int step = 0;
  std::uint64_t seed = 0;
  double mae = 0.0;
  double vi = 0.0;
};

/// Local-concealment sweep: for each (d_dim, seed), runs the plain and the
/// locally concealed pipeline on the dataset (already subsampled by the
/// caller) and reports prediction MAE plus the clustering-distortion VI of
/// the concealed point set. Rows come back sorted by (d_dim, seed).
std::vector<CtaSweepRow> sweep_cta(const Dataset& dataset, const SweepGrid& grid);

/// Global-concealment sweep over (order, step, seed); the group profile is
/// the noise-free channel, so rows isolate the substitution's effect.
std::vector<EvsSweepRow> sweep_evs(const Dataset& dataset, const SweepGrid& grid);

/// CSV with header and a trailing `# seed=..., version=...` metadata comment.
void write_cta_csv(const std::vector<CtaSweepRow>& rows, const SweepGrid& grid,
                   std::ostream& out);
void write_evs_csv(const std::vector<EvsSweepRow>& rows, const SweepGrid& grid,
                   std::ostream& out);

}  // namespace privrec

#endif  // PRIVREC_EXPERIMENT_HPP_
