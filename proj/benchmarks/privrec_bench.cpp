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

#include <random>

#include <benchmark/benchmark.h>

#include "privrec/clustering.hpp"
#include "privrec/global_conceal.hpp"
#include "privrec/hilbert.hpp"
#include "privrec/local_conceal.hpp"
#include "privrec/recommender.hpp"
#include "privrec/synth.hpp"

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

void BM_HilbertEncode(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  const int m = static_cast<int>(state.range(1));
  std::mt19937_64 rng(1);
  GridCell cell(m);
  for (auto& c : cell) c = static_cast<std::uint32_t>(rng() % (1u << order));
  for (auto _ : state) {
    benchmark::DoNotOptimize(hilbert_encode(cell, order));
  }
}
BENCHMARK(BM_HilbertEncode)->Args({6, 5})->Args({9, 19});

void BM_HilbertDecode(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  const int m = static_cast<int>(state.range(1));
  std::mt19937_64 rng(1);
  GridCell cell(m);
  for (auto& c : cell) c = static_cast<std::uint32_t>(rng() % (1u << order));
  const HilbertIndex idx = hilbert_encode(cell, order);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hilbert_decode(idx, order, m));
  }
}
BENCHMARK(BM_HilbertDecode)->Args({6, 5})->Args({9, 19});

void BM_KMeans(benchmark::State& state) {
  auto points = random_points(static_cast<std::size_t>(state.range(0)), 19, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cluster_points(points, 8, 1));
  }
}
BENCHMARK(BM_KMeans)->Arg(100)->Arg(1000);

void BM_ConcealLocal(benchmark::State& state) {
  SynthConfig cfg;
  cfg.n_users = 1;
  cfg.n_items = 100;
  cfg.density = 0.6;
  Dataset ds = synth_dataset(cfg);
  RatingProfile profile = ds.profiles().begin()->second;
  ConcealmentParams params;
  params.d_dim = static_cast<int>(state.range(0));
  params.noise_sigma0 = 0.5;
  SessionKey key = SessionKey::from_seed(1);
  SessionMatrixCache cache(key, params.d_dim, ds.point_dim());
  for (auto _ : state) {
    benchmark::DoNotOptimize(conceal_local(profile, ds.features, params, cache, 1));
  }
}
BENCHMARK(BM_ConcealLocal)->Arg(100)->Arg(400);

void BM_ConcealGlobal(benchmark::State& state) {
  SynthConfig cfg;
  cfg.n_users = 50;
  cfg.n_items = 100;
  cfg.density = 0.3;
  Dataset ds = synth_dataset(cfg);
  GroupProfile group;
  for (const auto& [owner, profile] : ds.profiles()) {
    group.members.push_back(owner);
    for (const ProfilePoint& pt : profile_points(profile, ds.features)) {
      group.points.push_back({owner, pt.item, pt.coords});
    }
  }
  HilbertParams params;
  params.order = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(conceal_global(group, params, 1));
  }
}
BENCHMARK(BM_ConcealGlobal)->Arg(3)->Arg(9);

void BM_RecommenderBuild(benchmark::State& state) {
  SynthConfig cfg;
  cfg.n_users = static_cast<int>(state.range(0));
  cfg.n_items = 100;
  cfg.density = 0.3;
  Dataset ds = synth_dataset(cfg);
  ConcealedGroupProfile group;
  for (const auto& [owner, profile] : ds.profiles()) {
    for (const ProfilePoint& pt : profile_points(profile, ds.features)) {
      group.points.push_back({owner, pt.item, pt.coords});
    }
  }
  for (auto _ : state) {
    ItemBasedModel model(group);
    benchmark::DoNotOptimize(model.predict(1, 10));
  }
}
BENCHMARK(BM_RecommenderBuild)->Arg(20)->Arg(100);

}  // namespace

BENCHMARK_MAIN();
