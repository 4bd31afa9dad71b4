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

#ifndef PRIVREC_METRICS_HPP_
#define PRIVREC_METRICS_HPP_

#include <cstdint>
#include <vector>

namespace privrec {

struct EvaluationReport {
  double mae = 0.0;
  double vi = 0.0;
  std::size_t n_predictions = 0;
  int d_dim = 0;
  double noise_sigma0 = 0.0;
  int order = 0;
  int step = 0;
  std::uint64_t seed = 0;
};

/// Mean absolute error; throws on empty or mismatched lengths.
double mae(const std::vector<double>& predictions, const std::vector<double>& truths);

/// Variation of information between two labelings of the same points,
/// natural log: VI = H(A) + H(B) - 2 I(A;B). Zero iff the partitions are
/// identical up to relabeling; at most ln(n).
double variation_of_information(const std::vector<int>& labels_a,
                                const std::vector<int>& labels_b);

/// Privacy as structural distortion: cluster both point sets with the same
/// algorithm, k, and seed, then return the VI of the two labelings. Higher
/// means the concealment changed the point-set structure more.
double privacy_vi(const std::vector<std::vector<double>>& original_points,
                  const std::vector<std::vector<double>>& concealed_points, int k,
                  std::uint64_t seed);

}  // namespace privrec

#endif  // PRIVREC_METRICS_HPP_
