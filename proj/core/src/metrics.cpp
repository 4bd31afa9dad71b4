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

#include "privrec/metrics.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "privrec/clustering.hpp"
#include "privrec/util.hpp"

namespace privrec {

namespace {

double clustering_sse(const std::vector<std::vector<double>>& points, const Clustering& c) {
  double total = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    total += squared_distance(points[i], c.centroids[c.labels[i]]);
  }
  return total;
}

// Lloyd iterations land in seed-dependent local optima; restarting and
// keeping the lowest-cost partition makes the comparison reflect the point
// sets, not the initialization.
Clustering best_of_restarts(const std::vector<std::vector<double>>& points, int k,
                            std::uint64_t seed) {
  constexpr int kRestarts = 8;
  Clustering best;
  double best_cost = 0.0;
  for (int r = 0; r < kRestarts; ++r) {
    Clustering c = cluster_points(points, k, mix64(seed, static_cast<std::uint64_t>(r)));
    const double cost = clustering_sse(points, c);
    if (r == 0 || cost < best_cost) {
      best_cost = cost;
      best = std::move(c);
    }
  }
  return best;
}

}  // namespace

double mae(const std::vector<double>& predictions, const std::vector<double>& truths) {
  if (predictions.empty()) throw std::invalid_argument("empty prediction list");
  if (predictions.size() != truths.size()) throw std::invalid_argument("length mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    sum += std::abs(predictions[i] - truths[i]);
  }
  return sum / predictions.size();
}

double variation_of_information(const std::vector<int>& labels_a,
                                const std::vector<int>& labels_b) {
  if (labels_a.empty()) throw std::invalid_argument("empty labelings");
  if (labels_a.size() != labels_b.size()) throw std::invalid_argument("length mismatch");
  const double n = static_cast<double>(labels_a.size());

  std::map<int, int> count_a, count_b;
  std::map<std::pair<int, int>, int> joint;
  for (std::size_t i = 0; i < labels_a.size(); ++i) {
    ++count_a[labels_a[i]];
    ++count_b[labels_b[i]];
    ++joint[{labels_a[i], labels_b[i]}];
  }

  auto entropy = [n](const std::map<int, int>& counts) {
    double h = 0.0;
    for (const auto& [label, c] : counts) {
      const double p = c / n;
      h -= p * std::log(p);
    }
    return h;
  };
  const double h_a = entropy(count_a);
  const double h_b = entropy(count_b);

  double mi = 0.0;
  for (const auto& [ab, c] : joint) {
    const double p_ab = c / n;
    const double p_a = count_a.at(ab.first) / n;
    const double p_b = count_b.at(ab.second) / n;
    mi += p_ab * std::log(p_ab / (p_a * p_b));
  }

  double vi = h_a + h_b - 2.0 * mi;
  return (vi < 0.0) ? 0.0 : vi;  // guard tiny negative round-off
}

double privacy_vi(const std::vector<std::vector<double>>& original_points,
                  const std::vector<std::vector<double>>& concealed_points, int k,
                  std::uint64_t seed) {
  if (original_points.size() != concealed_points.size()) {
    throw std::invalid_argument("point count mismatch");
  }
  if (k < 2) throw std::invalid_argument("k < 2");
  Clustering a = best_of_restarts(original_points, k, seed);
  Clustering b = best_of_restarts(concealed_points, k, seed);
  return variation_of_information(a.labels, b.labels);
}

}  // namespace privrec
