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

#include <algorithm>
#include <cstdio>
#include <random>

#include "privrec/global_conceal.hpp"
#include "privrec/hilbert.hpp"

using namespace privrec;

namespace {

GroupProfile random_group(std::size_t n_points, std::size_t m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  GroupProfile g;
  g.members = {"a", "b", "c"};
  for (std::size_t i = 0; i < n_points; ++i) {
    GroupProfile::Point p;
    p.member = g.members[i % g.members.size()];
    p.item = static_cast<ItemId>(i + 1);
    p.coords.resize(m);
    for (double& v : p.coords) v = u(rng);
    g.points.push_back(p);
  }
  return g;
}

std::vector<HilbertIndex> indices_of(const std::vector<GroupProfile::Point>& points,
                                     int order) {
  std::vector<HilbertIndex> out;
  for (const auto& p : points) out.push_back(hilbert_encode(quantize(p.coords, order), order));
  return out;
}

}  // namespace

TEST_CASE("step=1 reduces to plain quantization") {
  GroupProfile g = random_group(12, 3, 1);
  HilbertParams params;
  params.order = 5;
  params.step = 1;
  ConcealedGroupProfile out = conceal_global(g, params, 42);
  REQUIRE(out.points.size() == g.points.size());
  for (const auto& p : out.points) {
    // match the input point by (member, item)
    auto it = std::find_if(g.points.begin(), g.points.end(), [&p](const auto& q) {
      return q.member == p.member && q.item == p.item;
    });
    REQUIRE(it != g.points.end());
    CHECK(p.coords == dequantize(quantize(it->coords, params.order), params.order));
  }
}

TEST_CASE("substituted indices stay inside their run's range") {
  GroupProfile g = random_group(40, 4, 2);
  HilbertParams params;
  params.order = 4;
  params.step = 7;

  // reconstruct the sorted original indices to delimit runs
  std::vector<HilbertIndex> original = indices_of(g.points, params.order);
  std::sort(original.begin(), original.end());

  for (std::uint64_t seed : {1ull, 7ull, 123ull}) {
    ConcealedGroupProfile out = conceal_global(g, params, seed);
    std::vector<HilbertIndex> substituted = indices_of(out.points, params.order);
    std::sort(substituted.begin(), substituted.end());
    REQUIRE(substituted.size() == original.size());
    // run r covers sorted positions [r*step, (r+1)*step); a substituted value
    // from run r lies in [min_r, max_r], so when both lists are re-sorted the
    // i-th substituted index is bounded by its run's envelope
    for (std::size_t i = 0; i < substituted.size(); ++i) {
      const std::size_t run = i / params.step;
      const std::size_t lo = run * params.step;
      const std::size_t hi = std::min(lo + params.step, original.size()) - 1;
      CHECK(substituted[i] >= original[lo]);
      CHECK(substituted[i] <= original[hi]);
    }
  }
}

TEST_CASE("one run spanning all points bounds output by global range") {
  GroupProfile g = random_group(15, 3, 3);
  HilbertParams params;
  params.order = 6;
  params.step = 100;  // larger than the group
  std::vector<HilbertIndex> original = indices_of(g.points, params.order);
  const HilbertIndex lo = *std::min_element(original.begin(), original.end());
  const HilbertIndex hi = *std::max_element(original.begin(), original.end());
  ConcealedGroupProfile out = conceal_global(g, params, 5);
  for (const HilbertIndex& idx : indices_of(out.points, params.order)) {
    CHECK(idx >= lo);
    CHECK(idx <= hi);
  }
}

TEST_CASE("identical inputs collapse to an identical substitution") {
  // four copies of the same point form a run of width zero
  GroupProfile g;
  g.members = {"a", "b"};
  for (int i = 0; i < 4; ++i) {
    g.points.push_back({i % 2 ? "a" : "b", ItemId(i + 1), {0.3, 0.7}});
  }
  HilbertParams params;
  params.order = 8;
  params.step = 4;
  ConcealedGroupProfile out = conceal_global(g, params, 77);
  const std::vector<double> expect = dequantize(quantize({0.3, 0.7}, 8), 8);
  for (const auto& p : out.points) CHECK(p.coords == expect);
}

TEST_CASE("deterministic given seed, different across seeds") {
  GroupProfile g = random_group(30, 5, 4);
  HilbertParams params;
  params.order = 7;
  params.step = 5;
  ConcealedGroupProfile a = conceal_global(g, params, 9);
  ConcealedGroupProfile b = conceal_global(g, params, 9);
  REQUIRE(a.points.size() == b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) CHECK(a.points[i].coords == b.points[i].coords);

  ConcealedGroupProfile c = conceal_global(g, params, 10);
  bool any_diff = false;
  for (std::size_t i = 0; i < a.points.size(); ++i)
    if (a.points[i].coords != c.points[i].coords) any_diff = true;
  CHECK(any_diff);
}

TEST_CASE("membership and item assignments are preserved") {
  GroupProfile g = random_group(21, 3, 6);
  HilbertParams params;
  ConcealedGroupProfile out = conceal_global(g, params, 1);
  REQUIRE(out.points.size() == g.points.size());
  auto key = [](const GroupProfile::Point& p) { return std::make_pair(p.member, p.item); };
  std::vector<std::pair<PseudonymId, ItemId>> in, got;
  for (const auto& p : g.points) in.push_back(key(p));
  for (const auto& p : out.points) got.push_back(key(p));
  std::sort(in.begin(), in.end());
  std::sort(got.begin(), got.end());
  CHECK(in == got);
}

TEST_CASE("parameter validation") {
  GroupProfile g = random_group(4, 2, 7);
  HilbertParams params;
  params.order = 0;
  CHECK_THROWS_AS(conceal_global(g, params, 1), std::invalid_argument);
  params.order = 6;
  params.step = 0;
  CHECK_THROWS_AS(conceal_global(g, params, 1), std::invalid_argument);
  params.step = 10;
  CHECK_THROWS_AS(conceal_global(GroupProfile{}, params, 1), std::invalid_argument);
}

TEST_CASE("group CSV round-trip") {
  GroupProfile g = random_group(10, 4, 8);
  HilbertParams params;
  params.order = 9;
  params.step = 3;
  ConcealedGroupProfile out = conceal_global(g, params, 31);

  const std::string path = "/tmp/privrec_group_roundtrip.csv";
  save_concealed_group(out, path);
  ConcealedGroupProfile back = load_concealed_group(path);
  std::remove(path.c_str());
  std::remove((path + ".meta").c_str());

  CHECK(back.params.order == out.params.order);
  CHECK(back.params.step == out.params.step);
  CHECK(back.seed == out.seed);
  REQUIRE(back.points.size() == out.points.size());
  for (std::size_t i = 0; i < out.points.size(); ++i) {
    CHECK(back.points[i].member == out.points[i].member);
    CHECK(back.points[i].item == out.points[i].item);
    CHECK(back.points[i].coords == out.points[i].coords);
  }
}
