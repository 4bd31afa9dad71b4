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

#include "privrec/trust.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace privrec {

TrustScore trust_score(const RatingProfile& released, const RatingProfile& participant,
                       int min_overlap) {
  std::array<int, 9> histogram{};  // differences -4..4 shifted by +4
  int co_rated = 0;
  for (const auto& [item, value] : released.ratings) {
    auto it = participant.ratings.find(item);
    if (it == participant.ratings.end()) continue;
    ++co_rated;
    ++histogram[(value - it->second) + 4];
  }

  TrustScore score;
  score.co_rated = co_rated;
  if (co_rated < min_overlap) {
    score.insufficient_overlap = true;
    return score;
  }

  double entropy = 0.0;
  for (int c : histogram) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / co_rated;
    entropy -= p * std::log(p);
  }
  score.value = 1.0 - entropy / std::log(9.0);
  if (score.value < 0.0) score.value = 0.0;
  if (score.value > 1.0) score.value = 1.0;
  return score;
}

std::vector<std::pair<PseudonymId, ConcealedProfile>> filter_by_trust(
    const std::vector<std::pair<PseudonymId, ConcealedProfile>>& profiles,
    const std::map<PseudonymId, TrustScore>& scores, double tau) {
  std::vector<std::pair<PseudonymId, ConcealedProfile>> kept;
  for (const auto& entry : profiles) {
    auto it = scores.find(entry.first);
    if (it == scores.end()) {
      throw std::invalid_argument("missing trust score for profile " + entry.first);
    }
    if (it->second.value >= tau) kept.push_back(entry);
  }
  return kept;
}

}  // namespace privrec
