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

#include <cmath>
#include <cstdio>
#include <set>

#include "privrec/global_conceal.hpp"
#include "privrec/hilbert.hpp"

using namespace privrec;

TEST_CASE("order-1 two-dimensional curve visits the known order") {
  CHECK(hilbert_encode({0, 0}, 1) == 0);
  CHECK(hilbert_encode({0, 1}, 1) == 1);
  CHECK(hilbert_encode({1, 1}, 1) == 2);
  CHECK(hilbert_encode({1, 0}, 1) == 3);
}

TEST_CASE("index zero decodes to the origin") {
  for (int order = 1; order <= 6; ++order) {
    for (int m = 1; m <= 4; ++m) {
      GridCell cell = hilbert_decode(HilbertIndex(0), order, m);
      for (std::uint32_t c : cell) CHECK(c == 0);
    }
  }
}

TEST_CASE("encode and decode are mutually inverse bijections") {
  for (int m = 1; m <= 3; ++m) {
    for (int order = 1; order <= 4; ++order) {
      const std::uint32_t side = 1u << order;
      HilbertIndex total = HilbertIndex(1) << (m * order);
      std::set<HilbertIndex> seen;
      // enumerate every cell of the grid
      std::vector<std::uint32_t> cell(m, 0);
      HilbertIndex count = 0;
      bool done = false;
      while (!done) {
        HilbertIndex idx = hilbert_encode(cell, order);
        CHECK(idx >= 0);
        CHECK(idx < total);
        CHECK(seen.insert(idx).second);
        CHECK(hilbert_decode(idx, order, m) == cell);
        ++count;
        // odometer increment
        done = true;
        for (int i = 0; i < m; ++i) {
          if (++cell[i] < side) {
            done = false;
            break;
          }
          cell[i] = 0;
        }
      }
      CHECK(count == total);
    }
  }
}

TEST_CASE("consecutive indices are grid neighbors") {
  for (int m = 2; m <= 3; ++m) {
    for (int order = 1; order <= 3; ++order) {
      HilbertIndex total = HilbertIndex(1) << (m * order);
      GridCell prev = hilbert_decode(HilbertIndex(0), order, m);
      for (HilbertIndex i = 1; i < total; ++i) {
        GridCell cur = hilbert_decode(i, order, m);
        long l1 = 0;
        for (int d = 0; d < m; ++d)
          l1 += std::labs(static_cast<long>(cur[d]) - static_cast<long>(prev[d]));
        CHECK(l1 == 1);
        prev = cur;
      }
    }
  }
}

TEST_CASE("indices above 64 bits stay consistent") {
  // m=19, order=9: 171-bit index space
  GridCell cell(19, 0);
  for (int i = 0; i < 19; ++i) cell[i] = static_cast<std::uint32_t>((i * 37) % 512);
  HilbertIndex idx = hilbert_encode(cell, 9);
  CHECK(hilbert_decode(idx, 9, 19) == cell);
  HilbertIndex limit = HilbertIndex(1) << (19 * 9);
  CHECK(idx < limit);
}

TEST_CASE("argument validation") {
  CHECK_THROWS_AS(hilbert_encode({0, 0}, 0), std::invalid_argument);
  CHECK_THROWS_AS(hilbert_encode({0, 0}, 21), std::invalid_argument);
  CHECK_THROWS_AS(hilbert_encode({}, 3), std::invalid_argument);
  CHECK_THROWS_AS(hilbert_encode({4, 0}, 2), std::invalid_argument);  // 4 >= 2^2
  CHECK_THROWS_AS(hilbert_decode(HilbertIndex(-1), 2, 2), std::invalid_argument);
  CHECK_THROWS_AS(hilbert_decode(HilbertIndex(16), 2, 2), std::invalid_argument);
}

TEST_CASE("quantize maps [0,1] onto the grid") {
  CHECK(quantize({0.0, 1.0}, 3) == GridCell{0, 7});
  CHECK(quantize({0.5}, 1) == GridCell{1});
  CHECK(quantize({0.49}, 1) == GridCell{0});
  CHECK(quantize({0.999999}, 4) == GridCell{15});
  CHECK_THROWS_AS(quantize({-0.01}, 3), std::invalid_argument);
  CHECK_THROWS_AS(quantize({1.01}, 3), std::invalid_argument);
}

TEST_CASE("dequantize returns cell centers within half-cell error") {
  CHECK(dequantize({0}, 1) == std::vector<double>{0.25});
  CHECK(dequantize({1}, 1) == std::vector<double>{0.75});
  for (int order = 1; order <= 8; ++order) {
    const double half_cell = std::ldexp(1.0, -(order + 1));
    for (double x : {0.0, 0.1, 0.37, 0.62, 0.95, 1.0}) {
      const double back = dequantize(quantize({x}, order), order)[0];
      CHECK(std::abs(back - x) <= half_cell + 1e-15);
    }
  }
}

TEST_CASE("test vector file round-trips through verification") {
  const std::string path = "/tmp/privrec_hilbert_vectors.csv";
  write_hilbert_test_vectors(path, 4, 3);
  CHECK(verify_hilbert_test_vectors(path));
  std::remove(path.c_str());
}
