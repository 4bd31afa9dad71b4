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

#ifndef PRIVREC_TRUST_HPP_
#define PRIVREC_TRUST_HPP_

#include <utility>
#include <vector>

#include "privrec/dataset.hpp"
#include "privrec/local_conceal.hpp"

namespace privrec {

struct TrustScore {
  double value = 0.0;          // in [0,1]
  int co_rated = 0;            // overlapping item count
  bool insufficient_overlap = false;
};

/// Consistency-based trust: over co-rated items, build the histogram of
/// rating differences d = r_released - r_participant in {-4..4}; trust is
/// 1 - H(histogram) / log(9). Perfect agreement gives 1, uniformly spread
/// differences give 0. Below `min_overlap` co-rated items the score is 0
/// with the insufficient_overlap flag set.
TrustScore trust_score(const RatingProfile& released, const RatingProfile& participant,
                       int min_overlap = 3);

/// Keeps profiles whose score value >= tau, preserving input order. Throws if
/// a profile has no score entry.
std::vector<std::pair<PseudonymId, ConcealedProfile>> filter_by_trust(
    const std::vector<std::pair<PseudonymId, ConcealedProfile>>& profiles,
    const std::map<PseudonymId, TrustScore>& scores, double tau);

}  // namespace privrec

#endif  // PRIVREC_TRUST_HPP_
