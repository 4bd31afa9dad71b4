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

#include "privrec/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "privrec/util.hpp"

namespace privrec {

double squared_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

int auto_cluster_count(std::size_t n_points) {
  return static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n_points))));
}

namespace {

// Relabels clusters so that labels appear in first-point order and are
// contiguous from 0; drops empty clusters.
void canonicalize(Clustering& c, const std::vector<std::vector<double>>& points) {
  std::vector<int> remap(c.centroids.size(), -1);
  int next = 0;
  for (int& l : c.labels) {
    if (remap[l] == -1) remap[l] = next++;
  }
  std::vector<std::vector<double>> centroids(next);
  std::vector<std::size_t> counts(next, 0);
  for (std::size_t i = 0; i < c.labels.size(); ++i) {
    c.labels[i] = remap[c.labels[i]];
    int l = c.labels[i];
    if (centroids[l].empty()) centroids[l].assign(points[i].size(), 0.0);
    for (std::size_t j = 0; j < points[i].size(); ++j) centroids[l][j] += points[i][j];
    ++counts[l];
  }
  for (int l = 0; l < next; ++l) {
    for (double& v : centroids[l]) v /= static_cast<double>(counts[l]);
  }
  c.centroids = std::move(centroids);
}

}  // namespace

Clustering KMeansClusterer::cluster(const std::vector<std::vector<double>>& points, int k,
                                    std::uint64_t seed) const {
  const std::size_t n = points.size();
  if (n == 0) throw std::invalid_argument("empty point list");
  if (k < 1 || static_cast<std::size_t>(k) > n) {
    throw std::invalid_argument("cluster count out of range");
  }

  std::mt19937_64 rng(mix64(seed, 0x6b6d65616e73ULL));

  // k-means++ seeding.
  std::vector<std::vector<double>> centroids;
  centroids.reserve(k);
  std::uniform_int_distribution<std::size_t> first(0, n - 1);
  centroids.push_back(points[first(rng)]);
  std::vector<double> min_d2(n, std::numeric_limits<double>::infinity());
  while (centroids.size() < static_cast<std::size_t>(k)) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      min_d2[i] = std::min(min_d2[i], squared_distance(points[i], centroids.back()));
      total += min_d2[i];
    }
    std::size_t chosen = 0;
    if (total <= 0.0) {
      // all remaining points coincide with a centroid
      std::uniform_int_distribution<std::size_t> any(0, n - 1);
      chosen = any(rng);
    } else {
      std::uniform_real_distribution<double> u(0.0, total);
      double target = u(rng);
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        acc += min_d2[i];
        if (acc >= target) {
          chosen = i;
          break;
        }
      }
    }
    centroids.push_back(points[chosen]);
  }

  // Lloyd iterations.
  std::vector<int> labels(n, 0);
  constexpr int kMaxIter = 100;
  constexpr double kTol = 1e-6;
  for (int iter = 0; iter < kMaxIter; ++iter) {
    for (std::size_t i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      int best_l = 0;
      for (int l = 0; l < k; ++l) {
        const double d2 = squared_distance(points[i], centroids[l]);
        if (d2 < best) {  // strict: ties keep the lowest label
          best = d2;
          best_l = l;
        }
      }
      labels[i] = best_l;
    }

    std::vector<std::vector<double>> next(k);
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      int l = labels[i];
      if (next[l].empty()) next[l].assign(points[i].size(), 0.0);
      for (std::size_t j = 0; j < points[i].size(); ++j) next[l][j] += points[i][j];
      ++counts[l];
    }
    double movement = 0.0;
    for (int l = 0; l < k; ++l) {
      if (counts[l] == 0) {
        next[l] = centroids[l];  // empty cluster keeps its centroid
        continue;
      }
      for (double& v : next[l]) v /= static_cast<double>(counts[l]);
      movement = std::max(movement, squared_distance(next[l], centroids[l]));
    }
    centroids = std::move(next);
    if (movement < kTol * kTol) break;
  }

  Clustering c{std::move(labels), std::move(centroids)};
  canonicalize(c, points);
  return c;
}

Clustering cluster_points(const std::vector<std::vector<double>>& points, int k,
                          std::uint64_t seed) {
  if (points.empty()) throw std::invalid_argument("empty point list");
  if (k <= 0) k = auto_cluster_count(points.size());
  return KMeansClusterer{}.cluster(points, k, seed);
}

}  // namespace privrec
