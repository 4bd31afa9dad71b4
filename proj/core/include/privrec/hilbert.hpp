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

#ifndef PRIVREC_HILBERT_HPP_
#define PRIVREC_HILBERT_HPP_

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace privrec {

/// Hilbert index; arbitrary precision so m * order may exceed 64 bits
/// (supported up to m * order <= 128 and beyond).
using HilbertIndex = boost::multiprecision::cpp_int;

/// Grid cell coordinates, one per dimension, each in [0, 2^order).
using GridCell = std::vector<std::uint32_t>;

/// Bijective map from the m-dimensional 2^order grid onto [0, 2^(m*order)).
/// Consecutive indices are at L1 grid distance exactly 1.
HilbertIndex hilbert_encode(const GridCell& cell, int order);

/// Inverse of hilbert_encode.
GridCell hilbert_decode(const HilbertIndex& index, int order, int m);

/// cell[i] = min(floor(x[i] * 2^order), 2^order - 1); throws if any
/// coordinate is outside [0,1].
GridCell quantize(const std::vector<double>& point, int order);

/// Cell centers: (c + 0.5) / 2^order. Round-trip error per coordinate is at
/// most 2^-(order+1).
std::vector<double> dequantize(const GridCell& cell, int order);

}  // namespace privrec

#endif  // PRIVREC_HILBERT_HPP_
