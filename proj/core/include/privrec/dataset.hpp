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

#ifndef PRIVREC_DATASET_HPP_
#define PRIVREC_DATASET_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace privrec {

using PseudonymId = std::string;
using ItemId = std::int64_t;

/// One explicit rating on the 1..5 scale.
struct Rating {
  PseudonymId user;
  ItemId item = 0;
  int value = 0;  // in [1,5]

  bool operator==(const Rating&) const = default;
};

/// Fixed-length real feature vector per item, all coordinates in [0,1].
class ItemFeatureTable {
 public:
  ItemFeatureTable() = default;
  explicit ItemFeatureTable(std::size_t feature_dim) : feature_dim_(feature_dim) {}

  void set(ItemId item, std::vector<double> features);
  const std::vector<double>& at(ItemId item) const;
  bool contains(ItemId item) const { return table_.count(item) > 0; }
  std::size_t feature_dim() const { return feature_dim_; }
  std::size_t size() const { return table_.size(); }
  const std::map<ItemId, std::vector<double>>& entries() const { return table_; }

 private:
  std::size_t feature_dim_ = 0;
  std::map<ItemId, std::vector<double>> table_;
};

/// A pseudonymous user's sparse item->rating map.
struct RatingProfile {
  PseudonymId owner;
  std::map<ItemId, int> ratings;

  std::size_t size() const { return ratings.size(); }
  bool empty() const { return ratings.empty(); }
};

/// One rated item as a point in [0,1]^m: the item features followed by the
/// rating rescaled via (value - 1) / 4.
struct ProfilePoint {
  ItemId item = 0;
  std::vector<double> coords;
};

struct Dataset {
  std::vector<Rating> ratings;
  ItemFeatureTable features;

  /// Point dimensionality: feature length + 1 (the rating coordinate).
  std::size_t point_dim() const { return features.feature_dim() + 1; }

  /// Per-user profiles, keyed and iterated in owner order.
  std::map<PseudonymId, RatingProfile> profiles() const;
};

/// Loads MovieLens-format data: `u.data` is tab-separated
/// user/item/rating/timestamp, `u.item` is pipe-separated with the trailing
/// 19 fields being binary genre flags. Timestamps are discarded; the genre
/// flags become the item feature vector.
Dataset load_movielens(const std::string& ratings_path, const std::string& items_path);

/// Generic CSV loader: ratings file has header `user,item,rating`; item file
/// has header `item,f1,...,fk` with numeric features already in [0,1].
Dataset load_csv(const std::string& ratings_path, const std::string& items_path);

/// Deterministic disjoint split; |test| = round(test_fraction * |ratings|).
std::pair<Dataset, Dataset> split_holdout(const Dataset& dataset, double test_fraction,
                                          std::uint64_t seed);

/// One point per rated item, sorted by item id. Throws if a rated item has no
/// feature vector.
std::vector<ProfilePoint> profile_points(const RatingProfile& profile,
                                         const ItemFeatureTable& features);

/// Inverse of the point layout's rating rescale: value = 1 + 4*coord, rounded
/// and clamped to [1,5].
int rating_from_coord(double coord);

/// Keeps the `max_users` most active users and the `max_items` most rated
/// items; drops everything else. Used to build desk-scale experiment subsets.
Dataset subsample(const Dataset& dataset, std::size_t max_users, std::size_t max_items);

}  // namespace privrec

#endif  // PRIVREC_DATASET_HPP_
