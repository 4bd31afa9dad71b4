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

#include "privrec/hilbert.hpp"

#include <cmath>
#include <stdexcept>

namespace privrec {

namespace {

void check_order(int order) {
  if (order < 1 || order > 20) throw std::invalid_argument("order outside [1,20]");
}

// In-place conversion between axis coordinates and the transposed Hilbert
// representation (Skilling's algorithm). `b` is bits per dimension, `n` the
// number of dimensions.
void axes_to_transpose(std::uint32_t* x, int b, int n) {
  std::uint32_t m = 1u << (b - 1), p, q, t;
  for (q = m; q > 1; q >>= 1) {
    p = q - 1;
    for (int i = 0; i < n; ++i) {
      if (x[i] & q) {
        x[0] ^= p;
      } else {
        t = (x[0] ^ x[i]) & p;
        x[0] ^= t;
        x[i] ^= t;
      }
    }
  }
  for (int i = 1; i < n; ++i) x[i] ^= x[i - 1];
  t = 0;
  for (q = m; q > 1; q >>= 1) {
    if (x[n - 1] & q) t ^= q - 1;
  }
  for (int i = 0; i < n; ++i) x[i] ^= t;
}

void transpose_to_axes(std::uint32_t* x, int b, int n) {
  std::uint32_t nmax = 2u << (b - 1), p, q, t;
  t = x[n - 1] >> 1;
  for (int i = n - 1; i > 0; --i) x[i] ^= x[i - 1];
  x[0] ^= t;
  for (q = 2; q != nmax; q <<= 1) {
    p = q - 1;
    for (int i = n - 1; i >= 0; --i) {
      if (x[i] & q) {
        x[0] ^= p;
      } else {
        t = (x[0] ^ x[i]) & p;
        x[0] ^= t;
        x[i] ^= t;
      }
    }
  }
}

}  // namespace

HilbertIndex hilbert_encode(const GridCell& cell, int order) {
  check_order(order);
  const int m = static_cast<int>(cell.size());
  if (m < 1) throw std::invalid_argument("empty cell");
  const std::uint32_t side = 1u << order;
  for (std::uint32_t c : cell) {
    if (c >= side) throw std::invalid_argument("cell coordinate out of grid");
  }

  GridCell x = cell;
  axes_to_transpose(x.data(), order, m);

  // Interleave: most significant index bit is the top bit of dimension 0.
  HilbertIndex index = 0;
  for (int j = order - 1; j >= 0; --j) {
    for (int i = 0; i < m; ++i) {
      index <<= 1;
      if ((x[i] >> j) & 1u) index |= 1;
    }
  }
  return index;
}

GridCell hilbert_decode(const HilbertIndex& index, int order, int m) {
  check_order(order);
  if (m < 1) throw std::invalid_argument("m < 1");
  if (index < 0) throw std::invalid_argument("negative index");
  HilbertIndex limit = HilbertIndex(1) << (static_cast<unsigned>(m) * order);
  if (index >= limit) throw std::invalid_argument("index out of range");

  GridCell x(m, 0);
  int pos = m * order - 1;
  for (int j = order - 1; j >= 0; --j) {
    for (int i = 0; i < m; ++i, --pos) {
      if (boost::multiprecision::bit_test(index, pos)) x[i] |= 1u << j;
    }
  }
  transpose_to_axes(x.data(), order, m);
  return x;
}

GridCell quantize(const std::vector<double>& point, int order) {
  check_order(order);
  const std::uint32_t side = 1u << order;
  GridCell cell(point.size());
  for (std::size_t i = 0; i < point.size(); ++i) {
    const double v = point[i];
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("coordinate outside [0,1]");
    auto c = static_cast<std::uint32_t>(v * side);
    cell[i] = (c >= side) ? side - 1 : c;
  }
  return cell;
}

std::vector<double> dequantize(const GridCell& cell, int order) {
  check_order(order);
  const double side = static_cast<double>(1u << order);
  std::vector<double> point(cell.size());
  for (std::size_t i = 0; i < cell.size(); ++i) point[i] = (cell[i] + 0.5) / side;
  return point;
}

}  // namespace privrec
