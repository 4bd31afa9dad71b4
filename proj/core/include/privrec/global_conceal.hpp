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

#ifndef PRIVREC_GLOBAL_CONCEAL_HPP_
#define PRIVREC_GLOBAL_CONCEAL_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "privrec/dataset.hpp"
#include "privrec/hilbert.hpp"

namespace privrec {

/// Curve order (bits per dimension) and partition step (points per run).
struct HilbertParams {
  int order = 6;
  int step = 10;

  void validate() const;
};

/// Aggregated member points before global concealment. Vectors live in
/// [0,1]^m on the recommender-facing channel.
struct GroupProfile {
  struct Point {
    PseudonymId member;
    ItemId item = 0;
    std::vector<double> coords;
  };
  std::vector<PseudonymId> members;
  std::vector<Point> points;
};

/// Output of the global stage: every coordinate is a cell center of the
/// 2^order grid, (c + 0.5) / 2^order.
struct ConcealedGroupProfile {
  std::vector<GroupProfile::Point> points;
  HilbertParams params;
  std::uint64_t seed = 0;
};

/// Quantize -> Hilbert-encode -> sort by index (ties by member, item) ->
/// partition into runs of `step` -> substitute each index uniformly within
/// its run's [min,max] -> decode -> dequantize. Deterministic given seed;
/// each run draws from its own (seed, run-index) stream.
ConcealedGroupProfile conceal_global(const GroupProfile& group, const HilbertParams& params,
                                     std::uint64_t seed);

/// CSV `member,item,c0,...,c{m-1}`; sidecar `<path>.meta` carries order,
/// step, seed.
void save_concealed_group(const ConcealedGroupProfile& group, const std::string& path);
ConcealedGroupProfile load_concealed_group(const std::string& path);

/// Regression vectors for the curve: `order,m,index,cell...` rows.
void write_hilbert_test_vectors(const std::string& path, int max_order, int max_m);
/// Re-encodes every row; returns false on the first mismatch.
bool verify_hilbert_test_vectors(const std::string& path);

}  // namespace privrec

#endif  // PRIVREC_GLOBAL_CONCEAL_HPP_
