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

#include "privrec/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "privrec/util.hpp"

namespace privrec {

void ItemFeatureTable::set(ItemId item, std::vector<double> features) {
  if (table_.empty() && feature_dim_ == 0) feature_dim_ = features.size();
  if (features.size() != feature_dim_) {
    throw std::invalid_argument("feature vector length mismatch for item " +
                                std::to_string(item));
  }
  for (double f : features) {
    if (!std::isfinite(f) || f < 0.0 || f > 1.0) {
      throw std::invalid_argument("feature coordinate outside [0,1] for item " +
                                  std::to_string(item));
    }
  }
  table_[item] = std::move(features);
}

const std::vector<double>& ItemFeatureTable::at(ItemId item) const {
  auto it = table_.find(item);
  if (it == table_.end()) {
    throw std::out_of_range("no feature vector for item " + std::to_string(item));
  }
  return it->second;
}

std::map<PseudonymId, RatingProfile> Dataset::profiles() const {
  std::map<PseudonymId, RatingProfile> out;
  for (const Rating& r : ratings) {
    RatingProfile& p = out[r.user];
    p.owner = r.user;
    p.ratings[r.item] = r.value;
  }
  return out;
}

namespace {

std::vector<std::string> split_line(const std::string& line, char delim) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, delim)) fields.push_back(field);
  if (!line.empty() && line.back() == delim) fields.push_back("");
  return fields;
}

int parse_rating_value(const std::string& s, std::size_t line_no) {
  int v = 0;
  try {
    std::size_t pos = 0;
    v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
  } catch (const std::exception&) {
    throw std::runtime_error("line " + std::to_string(line_no) +
                             ": malformed rating field '" + s + "'");
  }
  if (v < 1 || v > 5) {
    throw std::runtime_error("line " + std::to_string(line_no) + ": rating out of scale");
  }
  return v;
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  return in;
}

void validate(Dataset& ds) {
  if (ds.ratings.empty()) throw std::runtime_error("no ratings");
  for (const Rating& r : ds.ratings) {
    if (!ds.features.contains(r.item)) {
      throw std::runtime_error("rated item " + std::to_string(r.item) +
                               " absent from item file");
    }
  }
}

}  // namespace

Dataset load_movielens(const std::string& ratings_path, const std::string& items_path) {
  Dataset ds;

  std::ifstream items = open_or_throw(items_path);
  std::string line;
  std::size_t line_no = 0;
  constexpr std::size_t kGenreCount = 19;
  while (std::getline(items, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto fields = split_line(line, '|');
    if (fields.size() < kGenreCount + 1) {
      throw std::runtime_error("items line " + std::to_string(line_no) +
                               ": wrong field count");
    }
    ItemId item = std::stoll(fields[0]);
    std::vector<double> flags(kGenreCount);
    for (std::size_t i = 0; i < kGenreCount; ++i) {
      const std::string& f = fields[fields.size() - kGenreCount + i];
      if (f != "0" && f != "1") {
        throw std::runtime_error("items line " + std::to_string(line_no) +
                                 ": genre flag not 0/1");
      }
      flags[i] = (f == "1") ? 1.0 : 0.0;
    }
    ds.features.set(item, std::move(flags));
  }

  std::ifstream ratings = open_or_throw(ratings_path);
  line_no = 0;
  while (std::getline(ratings, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto fields = split_line(line, '\t');
    if (fields.size() != 4) {
      throw std::runtime_error("ratings line " + std::to_string(line_no) +
                               ": wrong field count");
    }
    Rating r;
    r.user = fields[0];
    r.item = std::stoll(fields[1]);
    r.value = parse_rating_value(fields[2], line_no);
    ds.ratings.push_back(std::move(r));
  }

  validate(ds);
  return ds;
}

Dataset load_csv(const std::string& ratings_path, const std::string& items_path) {
  Dataset ds;

  std::ifstream items = open_or_throw(items_path);
  std::string line;
  std::size_t line_no = 0;
  bool header = true;
  while (std::getline(items, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (header) {
      header = false;
      continue;
    }
    auto fields = split_line(line, ',');
    if (fields.size() < 2) {
      throw std::runtime_error("items line " + std::to_string(line_no) +
                               ": wrong field count");
    }
    ItemId item = std::stoll(fields[0]);
    std::vector<double> features(fields.size() - 1);
    for (std::size_t i = 1; i < fields.size(); ++i) features[i - 1] = std::stod(fields[i]);
    ds.features.set(item, std::move(features));
  }

  std::ifstream ratings = open_or_throw(ratings_path);
  line_no = 0;
  header = true;
  while (std::getline(ratings, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (header) {
      header = false;
      continue;
    }
    auto fields = split_line(line, ',');
    if (fields.size() != 3) {
      throw std::runtime_error("ratings line " + std::to_string(line_no) +
                               ": wrong field count");
    }
    Rating r;
    r.user = fields[0];
    r.item = std::stoll(fields[1]);
    r.value = parse_rating_value(fields[2], line_no);
    ds.ratings.push_back(std::move(r));
  }

  validate(ds);
  return ds;
}

std::pair<Dataset, Dataset> split_holdout(const Dataset& dataset, double test_fraction,
                                          std::uint64_t seed) {
  if (test_fraction < 0.0 || test_fraction > 1.0) {
    throw std::invalid_argument("test_fraction outside [0,1]");
  }
  const std::size_t n = dataset.ratings.size();
  const auto n_test = static_cast<std::size_t>(std::llround(test_fraction * n));

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(mix64(seed, 0x5b17d0ULL));
  std::shuffle(order.begin(), order.end(), rng);

  Dataset train{{}, dataset.features};
  Dataset test{{}, dataset.features};
  std::vector<bool> in_test(n, false);
  for (std::size_t i = 0; i < n_test; ++i) in_test[order[i]] = true;
  for (std::size_t i = 0; i < n; ++i) {
    (in_test[i] ? test : train).ratings.push_back(dataset.ratings[i]);
  }
  return {std::move(train), std::move(test)};
}

std::vector<ProfilePoint> profile_points(const RatingProfile& profile,
                                         const ItemFeatureTable& features) {
  std::vector<ProfilePoint> points;
  points.reserve(profile.ratings.size());
  for (const auto& [item, value] : profile.ratings) {  // map iterates item-sorted
    const std::vector<double>& f = features.at(item);
    ProfilePoint p;
    p.item = item;
    p.coords = f;
    p.coords.push_back((value - 1) / 4.0);
    points.push_back(std::move(p));
  }
  return points;
}

int rating_from_coord(double coord) {
  int v = static_cast<int>(std::lround(1.0 + 4.0 * coord));
  return std::clamp(v, 1, 5);
}

Dataset subsample(const Dataset& dataset, std::size_t max_users, std::size_t max_items) {
  std::unordered_map<std::string, std::size_t> user_counts;
  std::unordered_map<ItemId, std::size_t> item_counts;
  for (const Rating& r : dataset.ratings) {
    ++user_counts[r.user];
    ++item_counts[r.item];
  }

  auto top_keys = [](auto& counts, std::size_t keep) {
    std::vector<std::pair<typename std::decay_t<decltype(counts)>::key_type, std::size_t>>
        sorted(counts.begin(), counts.end());
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
      if (a.second != b.second) return a.second > b.second;
      return a.first < b.first;
    });
    if (sorted.size() > keep) sorted.resize(keep);
    return sorted;
  };

  auto users = top_keys(user_counts, max_users);
  auto items = top_keys(item_counts, max_items);
  std::unordered_map<std::string, bool> keep_user;
  std::unordered_map<ItemId, bool> keep_item;
  for (const auto& [u, c] : users) keep_user[u] = true;
  for (const auto& [i, c] : items) keep_item[i] = true;

  Dataset out;
  ItemFeatureTable table(dataset.features.feature_dim());
  for (const auto& [item, f] : dataset.features.entries()) {
    if (keep_item.count(item)) table.set(item, f);
  }
  out.features = std::move(table);
  for (const Rating& r : dataset.ratings) {
    if (keep_user.count(r.user) && keep_item.count(r.item)) out.ratings.push_back(r);
  }
  if (out.ratings.empty()) throw std::runtime_error("subsample produced no ratings");
  return out;
}

}  // namespace privrec
