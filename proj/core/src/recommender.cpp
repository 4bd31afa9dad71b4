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

#include "privrec/recommender.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "privrec/util.hpp"

namespace privrec {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr std::size_t kMinCoHolders = 2;

double clamp_rating(double r) { return std::clamp(r, 1.0, 5.0); }

}  // namespace

ItemBasedModel::ItemBasedModel(const ConcealedGroupProfile& group) {
  if (group.points.empty()) throw std::invalid_argument("empty group");

  std::map<PseudonymId, int> member_idx;
  std::map<ItemId, int> item_idx;
  for (const auto& p : group.points) {
    member_idx.emplace(p.member, 0);
    item_idx.emplace(p.item, 0);
  }
  members_.reserve(member_idx.size());
  for (auto& [m, idx] : member_idx) {
    idx = static_cast<int>(members_.size());
    members_.push_back(m);
  }
  items_.reserve(item_idx.size());
  for (auto& [i, idx] : item_idx) {
    idx = static_cast<int>(items_.size());
    items_.push_back(i);
  }

  ratings_.assign(members_.size(), std::vector<double>(items_.size(), kNaN));
  for (const auto& p : group.points) {
    const double rating = clamp_rating(1.0 + 4.0 * p.coords.back());
    ratings_[member_idx[p.member]][item_idx[p.item]] = rating;
  }

  member_mean_.assign(members_.size(), 0.0);
  item_mean_.assign(items_.size(), 0.0);
  item_count_.assign(items_.size(), 0);
  double total = 0.0;
  std::size_t n_total = 0;
  for (std::size_t u = 0; u < members_.size(); ++u) {
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < items_.size(); ++i) {
      const double r = ratings_[u][i];
      if (std::isnan(r)) continue;
      sum += r;
      ++n;
      item_mean_[i] += r;
      ++item_count_[i];
    }
    member_mean_[u] = (n > 0) ? sum / n : 0.0;
    total += sum;
    n_total += n;
  }
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (item_count_[i] > 0) item_mean_[i] /= static_cast<double>(item_count_[i]);
  }
  global_mean_ = total / static_cast<double>(n_total);

  // Adjusted-cosine similarity over co-holding members.
  const std::size_t ni = items_.size();
  sim_.assign(ni, std::vector<double>(ni, kNaN));
  for (std::size_t a = 0; a < ni; ++a) {
    sim_[a][a] = 1.0;
    for (std::size_t b = a + 1; b < ni; ++b) {
      double num = 0.0, norm_a = 0.0, norm_b = 0.0;
      std::size_t co = 0;
      for (std::size_t u = 0; u < members_.size(); ++u) {
        const double ra = ratings_[u][a];
        const double rb = ratings_[u][b];
        if (std::isnan(ra) || std::isnan(rb)) continue;
        ++co;
        const double da = ra - member_mean_[u];
        const double db = rb - member_mean_[u];
        num += da * db;
        norm_a += da * da;
        norm_b += db * db;
      }
      if (co < kMinCoHolders) continue;
      double s;
      if (norm_a <= 0.0 || norm_b <= 0.0) {
        // all deviations vanish on at least one side: identical flat vectors
        // count as fully similar, otherwise uninformative
        s = (norm_a <= 0.0 && norm_b <= 0.0) ? 1.0 : 0.0;
      } else {
        s = num / std::sqrt(norm_a * norm_b);
        s = std::clamp(s, -1.0, 1.0);
      }
      sim_[a][b] = s;
      sim_[b][a] = s;
    }
  }
}

int ItemBasedModel::item_index(ItemId item) const {
  auto it = std::lower_bound(items_.begin(), items_.end(), item);
  if (it == items_.end() || *it != item) {
    throw std::invalid_argument("unknown item " + std::to_string(item));
  }
  return static_cast<int>(it - items_.begin());
}

std::optional<double> ItemBasedModel::similarity(ItemId a, ItemId b) const {
  const double s = sim_[item_index(a)][item_index(b)];
  if (std::isnan(s)) return std::nullopt;
  return s;
}

bool ItemBasedModel::held_by_all(ItemId item) const {
  return item_count_[item_index(item)] == members_.size();
}

namespace {

// K most similar neighbors by similarity descending, item index ascending.
std::vector<std::pair<double, std::size_t>> top_neighbors(
    const std::vector<double>& sims, std::size_t self, int k,
    const std::function<bool(std::size_t)>& eligible) {
  std::vector<std::pair<double, std::size_t>> cands;
  for (std::size_t j = 0; j < sims.size(); ++j) {
    if (j == self || std::isnan(sims[j])) continue;
    if (eligible && !eligible(j)) continue;
    cands.emplace_back(sims[j], j);
  }
  std::sort(cands.begin(), cands.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  if (cands.size() > static_cast<std::size_t>(k)) cands.resize(k);
  return cands;
}

}  // namespace

double ItemBasedModel::predict(ItemId target_item, int k_neighbors) const {
  if (k_neighbors < 1) throw std::invalid_argument("k_neighbors < 1");
  const auto target = static_cast<std::size_t>(item_index(target_item));
  auto neighbors = top_neighbors(sim_[target], target, k_neighbors, nullptr);

  double num = 0.0, denom = 0.0;
  for (const auto& [s, j] : neighbors) {
    num += s * item_mean_[j];
    denom += std::abs(s);
  }
  if (denom <= 0.0) return clamp_rating(global_mean_);
  return clamp_rating(num / denom);
}

double ItemBasedModel::predict_for_member(const PseudonymId& member, ItemId target_item,
                                          int k_neighbors) const {
  if (k_neighbors < 1) throw std::invalid_argument("k_neighbors < 1");
  auto mit = std::lower_bound(members_.begin(), members_.end(), member);
  if (mit == members_.end() || *mit != member) {
    throw std::invalid_argument("unknown member " + member);
  }
  const auto u = static_cast<std::size_t>(mit - members_.begin());
  const auto target = static_cast<std::size_t>(item_index(target_item));

  const std::vector<double>& row = ratings_[u];
  auto neighbors = top_neighbors(sim_[target], target, k_neighbors,
                                 [&row](std::size_t j) { return !std::isnan(row[j]); });

  double num = 0.0, denom = 0.0;
  for (const auto& [s, j] : neighbors) {
    num += s * row[j];
    denom += std::abs(s);
  }
  if (denom > 0.0) return clamp_rating(num / denom);
  if (item_count_[target] > 0) return clamp_rating(item_mean_[target]);
  return clamp_rating(global_mean_);
}

std::optional<double> item_similarity(const ConcealedGroupProfile& group, ItemId a, ItemId b) {
  return ItemBasedModel(group).similarity(a, b);
}

double predict_rating(const ConcealedGroupProfile& group, ItemId target_item, int k_neighbors) {
  return ItemBasedModel(group).predict(target_item, k_neighbors);
}

ReferralList recommend(const ConcealedGroupProfile& group,
                       const std::function<bool(ItemId)>& genre_filter, int top_n,
                       int k_neighbors) {
  if (top_n < 1) throw std::invalid_argument("top_n < 1");
  ItemBasedModel model(group);

  ReferralList out;
  for (ItemId item : model.items()) {
    if (genre_filter && !genre_filter(item)) continue;
    if (model.held_by_all(item)) continue;
    out.entries.push_back({item, model.predict(item, k_neighbors)});
  }
  std::sort(out.entries.begin(), out.entries.end(),
            [](const ReferralList::Entry& a, const ReferralList::Entry& b) {
              if (a.prediction != b.prediction) return a.prediction > b.prediction;
              return a.item < b.item;
            });
  if (out.entries.size() > static_cast<std::size_t>(top_n)) out.entries.resize(top_n);
  return out;
}

void save_referrals(const ReferralList& referrals, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open file for writing: " + path);
  out << "rank,item,prediction\n";
  for (std::size_t i = 0; i < referrals.entries.size(); ++i) {
    out << (i + 1) << "," << referrals.entries[i].item << ","
        << format_double(referrals.entries[i].prediction) << "\n";
  }
  std::ofstream meta(path + ".meta");
  if (!meta) throw std::runtime_error("cannot open file for writing: " + path + ".meta");
  meta << "sealed_to=" << referrals.sealed_to << "\n";
}

ReferralList load_referrals(const std::string& path) {
  ReferralList referrals;
  std::ifstream meta(path + ".meta");
  if (!meta) throw std::runtime_error("cannot open file: " + path + ".meta");
  std::string line;
  while (std::getline(meta, line)) {
    auto eq = line.find('=');
    if (eq != std::string::npos && line.substr(0, eq) == "sealed_to") {
      referrals.sealed_to = line.substr(eq + 1);
    }
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    std::istringstream ss(line);
    std::string field;
    std::getline(ss, field, ',');  // rank, implied by order
    ReferralList::Entry e;
    std::getline(ss, field, ',');
    e.item = std::stoll(field);
    std::getline(ss, field, ',');
    e.prediction = std::stod(field);
    referrals.entries.push_back(e);
  }
  return referrals;
}

}  // namespace privrec
