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

#ifndef PRIVREC_CLUSTERING_HPP_
#define PRIVREC_CLUSTERING_HPP_

#include <cstdint>
#include <memory>
#include <vector>

namespace privrec {

/// A hard partition of a point set. Labels are contiguous integers from 0.
struct Clustering {
  std::vector<int> labels;                      // one per point
  std::vector<std::vector<double>> centroids;   // one per label

  std::size_t num_clusters() const { return centroids.size(); }
};

/// Pluggable partitioner; implementations must be deterministic given seed.
class Clusterer {
 public:
  virtual ~Clusterer() = default;
  virtual Clustering cluster(const std::vector<std::vector<double>>& points, int k,
                             std::uint64_t seed) const = 0;
};

/// Default partitioner: k-means++ seeding plus Lloyd iterations (max 100,
/// centroid-movement tolerance 1e-6, assignment ties broken by lowest label).
class KMeansClusterer : public Clusterer {
 public:
  Clustering cluster(const std::vector<std::vector<double>>& points, int k,
                     std::uint64_t seed) const override;
};

/// k = "auto" resolves to ceil(sqrt(n)).
int auto_cluster_count(std::size_t n_points);

/// Clusters with the default partitioner; k <= 0 means auto.
Clustering cluster_points(const std::vector<std::vector<double>>& points, int k,
                          std::uint64_t seed);

double squared_distance(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace privrec

#endif  // PRIVREC_CLUSTERING_HPP_
