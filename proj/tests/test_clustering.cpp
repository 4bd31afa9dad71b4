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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "privrec/clustering.hpp"
#include "support/oracles.hpp"

using namespace privrec;

namespace {

std::vector<std::vector<double>> random_points(std::size_t n, std::size_t dim,
                                               std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::vector<double>> points(n, std::vector<double>(dim));
  for (auto& p : points)
    for (double& v : p) v = u(rng);
  return points;
}

}  // namespace

TEST_CASE("k=1 puts everything in one cluster") {
  auto points = random_points(12, 3, 1);
  Clustering c = cluster_points(points, 1, 7);
  for (int l : c.labels) CHECK(l == 0);
  CHECK(c.num_clusters() == 1);
}

TEST_CASE("k=n separates distinct points") {
  auto points = random_points(6, 2, 2);
  Clustering c = cluster_points(points, 6, 7);
  std::set<int> labels(c.labels.begin(), c.labels.end());
  CHECK(labels.size() == 6);
}

TEST_CASE("two well-separated blobs recover the brute-force partition") {
  // intra-blob spread ~0.1, inter-blob distance 10: purity must be exact
  std::mt19937_64 rng(11);
  std::normal_distribution<double> gauss(0.0, 0.05);
  std::vector<std::vector<double>> points;
  for (int i = 0; i < 6; ++i) points.push_back({0.0 + gauss(rng), 0.0 + gauss(rng)});
  for (int i = 0; i < 6; ++i) points.push_back({10.0 + gauss(rng), 10.0 + gauss(rng)});

  Clustering c = cluster_points(points, 2, 5);
  std::vector<int> oracle = test_oracle::best_two_partition(points);

  // same partition up to relabeling
  std::set<std::pair<int, int>> pairing;
  for (std::size_t i = 0; i < points.size(); ++i) pairing.insert({c.labels[i], oracle[i]});
  CHECK(pairing.size() == 2);
}

TEST_CASE("deterministic given seed") {
  auto points = random_points(40, 4, 3);
  Clustering a = cluster_points(points, 5, 99);
  Clustering b = cluster_points(points, 5, 99);
  CHECK(a.labels == b.labels);
  CHECK(a.centroids == b.centroids);
}

TEST_CASE("auto k is ceil(sqrt(n))") {
  CHECK(auto_cluster_count(1) == 1);
  CHECK(auto_cluster_count(10) == 4);
  CHECK(auto_cluster_count(100) == 10);
  auto points = random_points(10, 2, 4);
  Clustering c = cluster_points(points, 0, 1);
  CHECK(c.num_clusters() <= 4);
}

TEST_CASE("labels are contiguous from zero") {
  auto points = random_points(25, 3, 5);
  Clustering c = cluster_points(points, 6, 17);
  std::set<int> labels(c.labels.begin(), c.labels.end());
  int expected = 0;
  for (int l : labels) CHECK(l == expected++);
  CHECK(c.num_clusters() == labels.size());
}

TEST_CASE("error paths") {
  CHECK_THROWS_AS(cluster_points({}, 1, 1), std::invalid_argument);
  auto points = random_points(3, 2, 6);
  CHECK_THROWS_AS(cluster_points(points, 4, 1), std::invalid_argument);
}
