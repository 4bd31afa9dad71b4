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

#include "privrec/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "privrec/global_conceal.hpp"
#include "privrec/local_conceal.hpp"
#include "privrec/metrics.hpp"
#include "privrec/recommender.hpp"
#include "privrec/util.hpp"

namespace privrec {

void SweepGrid::validate() const {
  if (d_dims.empty() || orders.empty() || steps.empty() || seeds.empty()) {
    throw std::invalid_argument("sweep grid lists must be non-empty");
  }
  for (int d : d_dims)
    if (d < 1) throw std::invalid_argument("d_dim must be positive");
  for (int o : orders)
    if (o < 1) throw std::invalid_argument("order must be positive");
  for (int s : steps)
    if (s < 1) throw std::invalid_argument("step must be positive");
  if (noise_sigma0 < 0.0) throw std::invalid_argument("noise_sigma0 < 0");
  if (test_fraction < 0.0 || test_fraction > 1.0) {
    throw std::invalid_argument("test_fraction outside [0,1]");
  }
}

namespace {

struct PipelineData {
  Dataset train;
  Dataset test;
  std::map<PseudonymId, RatingProfile> profiles;
  GroupProfile raw_group;                          // noise-free channel
  std::vector<std::vector<double>> raw_points;     // same order as raw_group
};

PipelineData prepare(const Dataset& dataset, const SweepGrid& grid, std::uint64_t seed) {
  PipelineData data;
  auto [train, test] = split_holdout(dataset, grid.test_fraction, seed);
  data.train = std::move(train);
  data.test = std::move(test);
  data.profiles = data.train.profiles();
  for (const auto& [owner, profile] : data.profiles) {
    data.raw_group.members.push_back(owner);
    for (const ProfilePoint& pt : profile_points(profile, data.train.features)) {
      data.raw_group.points.push_back({owner, pt.item, pt.coords});
      data.raw_points.push_back(pt.coords);
    }
  }
  return data;
}

// Wraps points as a group-model input without any global substitution.
ConcealedGroupProfile as_model_input(const GroupProfile& group) {
  ConcealedGroupProfile out;
  out.points = group.points;
  return out;
}

double evaluate_mae(const ConcealedGroupProfile& group, const Dataset& test, int k_neighbors) {
  ItemBasedModel model(group);
  std::set<PseudonymId> members(model.members().begin(), model.members().end());
  std::set<ItemId> items(model.items().begin(), model.items().end());

  std::vector<double> predictions, truths;
  for (const Rating& r : test.ratings) {
    if (!members.count(r.user) || !items.count(r.item)) continue;  // cold start
    predictions.push_back(model.predict_for_member(r.user, r.item, k_neighbors));
    truths.push_back(static_cast<double>(r.value));
  }
  if (predictions.empty()) throw std::runtime_error("no evaluable test ratings");
  return mae(predictions, truths);
}

std::vector<std::vector<double>> capped(const std::vector<std::vector<double>>& points,
                                        std::size_t cap) {
  if (points.size() <= cap) return points;
  return {points.begin(), points.begin() + cap};
}

}  // namespace

std::vector<CtaSweepRow> sweep_cta(const Dataset& dataset, const SweepGrid& grid) {
  grid.validate();
  std::vector<CtaSweepRow> rows;

  for (int d_dim : grid.d_dims) {
    for (std::uint64_t seed : grid.seeds) {
      PipelineData data = prepare(dataset, grid, seed);
      const std::size_t m = dataset.point_dim();

      const double mae_plain =
          evaluate_mae(as_model_input(data.raw_group), data.test, grid.k_neighbors);

      ConcealmentParams params;
      params.d_dim = d_dim;
      params.noise_sigma0 = grid.noise_sigma0;
      const SessionKey key = SessionKey::from_seed(mix64(seed, 0x637461ULL));
      SessionMatrixCache cache(key, d_dim, m);

      GroupProfile reconstructed;
      reconstructed.members = data.raw_group.members;
      // privacy: per-profile structural distortion of the released channel.
      // The keyed reconstruction still carries the concealment noise; each
      // profile's own cluster structure is compared before and after, and the
      // row reports the profile average.
      double vi_sum = 0.0;
      std::size_t vi_profiles = 0;
      for (const auto& [owner, profile] : data.profiles) {
        ConcealedProfile cp = conceal_local(profile, data.train.features, params, cache,
                                            mix64(seed, fnv1a(owner)));
        std::vector<std::vector<double>> raw_coords, released_coords;
        for (const ProfilePoint& pt : profile_points(profile, data.train.features)) {
          raw_coords.push_back(pt.coords);
        }
        for (ProfilePoint& pt : keyed_reconstruct(cp, cache)) {
          for (double& v : pt.coords) v = std::clamp(v, 0.0, 1.0);
          released_coords.push_back(pt.coords);
          reconstructed.points.push_back({owner, pt.item, std::move(pt.coords)});
        }
        const int k = std::min<int>(grid.vi_clusters, static_cast<int>(raw_coords.size()) / 2);
        if (k >= 2) {
          vi_sum += privacy_vi(raw_coords, released_coords, k, mix64(seed, 0x7669ULL));
          ++vi_profiles;
        }
      }

      CtaSweepRow row;
      row.d_dim = d_dim;
      row.seed = seed;
      row.mae_plain = mae_plain;
      row.mae_concealed =
          evaluate_mae(as_model_input(reconstructed), data.test, grid.k_neighbors);
      row.vi = (vi_profiles > 0) ? vi_sum / static_cast<double>(vi_profiles) : 0.0;
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<EvsSweepRow> sweep_evs(const Dataset& dataset, const SweepGrid& grid) {
  grid.validate();
  std::vector<EvsSweepRow> rows;

  for (int order : grid.orders) {
    for (int step : grid.steps) {
      for (std::uint64_t seed : grid.seeds) {
        PipelineData data = prepare(dataset, grid, seed);

        HilbertParams params;
        params.order = order;
        params.step = step;
        ConcealedGroupProfile concealed = conceal_global(
            data.raw_group, params,
            mix64(seed, static_cast<std::uint64_t>(order), static_cast<std::uint64_t>(step)));

        std::vector<std::vector<double>> concealed_points;
        concealed_points.reserve(concealed.points.size());
        for (const auto& p : concealed.points) concealed_points.push_back(p.coords);

        EvsSweepRow row;
        row.order = order;
        row.step = step;
        row.seed = seed;
        row.mae = evaluate_mae(concealed, data.test, grid.k_neighbors);
        row.vi = privacy_vi(capped(data.raw_points, grid.vi_max_points),
                            capped(concealed_points, grid.vi_max_points), grid.vi_clusters,
                            mix64(seed, 0x7669ULL));
        rows.push_back(row);
      }
    }
  }
  return rows;
}

namespace {

std::string seeds_string(const SweepGrid& grid) {
  std::string s;
  for (std::size_t i = 0; i < grid.seeds.size(); ++i) {
    if (i) s += "|";
    s += std::to_string(grid.seeds[i]);
  }
  return s;
}

constexpr const char* kVersion = "0.1.0";

}  // namespace

void write_cta_csv(const std::vector<CtaSweepRow>& rows, const SweepGrid& grid,
                   std::ostream& out) {
  out << "d_dim,seed,mae_plain,mae_concealed,vi\n";
  for (const CtaSweepRow& r : rows) {
    out << r.d_dim << "," << r.seed << "," << format_double(r.mae_plain) << ","
        << format_double(r.mae_concealed) << "," << format_double(r.vi) << "\n";
  }
  out << "# seed=" << seeds_string(grid) << ", version=" << kVersion << "\n";
}

void write_evs_csv(const std::vector<EvsSweepRow>& rows, const SweepGrid& grid,
                   std::ostream& out) {
  out << "order,step,seed,mae,vi\n";
  for (const EvsSweepRow& r : rows) {
    out << r.order << "," << r.step << "," << r.seed << "," << format_double(r.mae) << ","
        << format_double(r.vi) << "\n";
  }
  out << "# seed=" << seeds_string(grid) << ", version=" << kVersion << "\n";
}

}  // namespace privrec
