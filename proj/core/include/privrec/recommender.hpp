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

#ifndef PRIVREC_RECOMMENDER_HPP_
#define PRIVREC_RECOMMENDER_HPP_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "privrec/global_conceal.hpp"

namespace privrec {

/// Referrals sorted by predicted rating descending, ties by item id
/// ascending. Predictions are clamped to [1,5].
struct ReferralList {
  struct Entry {
    ItemId item = 0;
    double prediction = 0.0;
  };
  std::vector<Entry> entries;
  PseudonymId sealed_to;
};

/// Item-based CF over the rating channel of a concealed group profile: the
/// last coordinate of each point, rescaled to [1,5] via r = 1 + 4c. Builds
/// member/item means and the adjusted-cosine similarity table up front.
class ItemBasedModel {
 public:
  explicit ItemBasedModel(const ConcealedGroupProfile& group);

  /// Adjusted cosine over members holding both items; nullopt with fewer
  /// than 2 co-holding members. Throws on unknown items.
  std::optional<double> similarity(ItemId a, ItemId b) const;

  /// Group-level prediction: similarity-weighted (absolute-value normalized)
  /// average of the mean group ratings of the K most similar items; falls
  /// back to the global mean rating when no neighbor qualifies.
  double predict(ItemId target_item, int k_neighbors) const;

  /// Member-aware prediction over the member's own held items; falls back to
  /// the target's item mean, then the global mean.
  double predict_for_member(const PseudonymId& member, ItemId target_item,
                            int k_neighbors) const;

  const std::vector<ItemId>& items() const { return items_; }
  const std::vector<PseudonymId>& members() const { return members_; }
  double global_mean() const { return global_mean_; }

  bool held_by_all(ItemId item) const;

 private:
  int item_index(ItemId item) const;

  std::vector<ItemId> items_;
  std::vector<PseudonymId> members_;
  std::vector<std::vector<double>> ratings_;  // members x items, NaN = missing
  std::vector<double> member_mean_;
  std::vector<double> item_mean_;
  std::vector<std::size_t> item_count_;
  double global_mean_ = 0.0;
  std::vector<std::vector<double>> sim_;       // NaN = undefined
};

std::optional<double> item_similarity(const ConcealedGroupProfile& group, ItemId a, ItemId b);
double predict_rating(const ConcealedGroupProfile& group, ItemId target_item, int k_neighbors);

/// Predicts every candidate item passing the filter that is not held by all
/// members; returns the top_n entries. An empty candidate set yields an
/// empty list.
ReferralList recommend(const ConcealedGroupProfile& group,
                       const std::function<bool(ItemId)>& genre_filter, int top_n,
                       int k_neighbors);

/// CSV `rank,item,prediction`; sidecar `<path>.meta` carries sealed_to.
void save_referrals(const ReferralList& referrals, const std::string& path);
ReferralList load_referrals(const std::string& path);

}  // namespace privrec

#endif  // PRIVREC_RECOMMENDER_HPP_
