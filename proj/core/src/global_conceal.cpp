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

#include "privrec/global_conceal.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "privrec/util.hpp"

namespace privrec {

void HilbertParams::validate() const {
  if (order < 1 || order > 20) throw std::invalid_argument("order outside [1,20]");
  if (step < 1) throw std::invalid_argument("step < 1");
}

ConcealedGroupProfile conceal_global(const GroupProfile& group, const HilbertParams& params,
                                     std::uint64_t seed) {
  params.validate();
  if (group.points.empty()) throw std::invalid_argument("empty group");

  struct Tagged {
    HilbertIndex index;
    std::size_t src;
  };
  std::vector<Tagged> tagged;
  tagged.reserve(group.points.size());
  for (std::size_t i = 0; i < group.points.size(); ++i) {
    tagged.push_back({hilbert_encode(quantize(group.points[i].coords, params.order),
                                     params.order),
                      i});
  }
  std::sort(tagged.begin(), tagged.end(), [&](const Tagged& a, const Tagged& b) {
    if (a.index != b.index) return a.index < b.index;
    const auto& pa = group.points[a.src];
    const auto& pb = group.points[b.src];
    return std::tie(pa.member, pa.item) < std::tie(pb.member, pb.item);
  });

  const int m = static_cast<int>(group.points[0].coords.size());
  ConcealedGroupProfile out;
  out.params = params;
  out.seed = seed;
  out.points.resize(group.points.size());

  const std::size_t n = tagged.size();
  const auto step = static_cast<std::size_t>(params.step);
  std::size_t run_index = 0;
  for (std::size_t begin = 0; begin < n; begin += step, ++run_index) {
    const std::size_t end = std::min(begin + step, n);
    std::mt19937_64 rng(mix64(seed, run_index, 0x657673ULL));
    // draw from the run's empirical index distribution; stays inside the
    // run's [min,max] by construction
    std::uniform_int_distribution<std::size_t> dist(begin, end - 1);
    for (std::size_t i = begin; i < end; ++i) {
      const HilbertIndex& substituted = tagged[dist(rng)].index;
      const GroupProfile::Point& src = group.points[tagged[i].src];
      GroupProfile::Point& dst = out.points[tagged[i].src];
      dst.member = src.member;
      dst.item = src.item;
      dst.coords = dequantize(hilbert_decode(substituted, params.order, m), params.order);
    }
  }
  return out;
}

void save_concealed_group(const ConcealedGroupProfile& group, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open file for writing: " + path);
  const std::size_t m = group.points.empty() ? 0 : group.points[0].coords.size();
  out << "member,item";
  for (std::size_t j = 0; j < m; ++j) out << ",c" << j;
  out << "\n";
  for (const auto& p : group.points) {
    out << p.member << "," << p.item;
    for (double v : p.coords) out << "," << format_double(v);
    out << "\n";
  }
  std::ofstream meta(path + ".meta");
  if (!meta) throw std::runtime_error("cannot open file for writing: " + path + ".meta");
  meta << "order=" << group.params.order << "\n"
       << "step=" << group.params.step << "\n"
       << "seed=" << group.seed << "\n";
}

ConcealedGroupProfile load_concealed_group(const std::string& path) {
  ConcealedGroupProfile group;
  std::ifstream meta(path + ".meta");
  if (!meta) throw std::runtime_error("cannot open file: " + path + ".meta");
  std::string line;
  while (std::getline(meta, line)) {
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string k = line.substr(0, eq), v = line.substr(eq + 1);
    if (k == "order") group.params.order = std::stoi(v);
    else if (k == "step") group.params.step = std::stoi(v);
    else if (k == "seed") group.seed = std::stoull(v);
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
    GroupProfile::Point p;
    std::getline(ss, field, ',');
    p.member = field;
    std::getline(ss, field, ',');
    p.item = std::stoll(field);
    while (std::getline(ss, field, ',')) p.coords.push_back(std::stod(field));
    group.points.push_back(std::move(p));
  }
  return group;
}

void write_hilbert_test_vectors(const std::string& path, int max_order, int max_m) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open file for writing: " + path);
  out << "order,m,index,cell\n";
  for (int order = 1; order <= max_order; ++order) {
    for (int m = 1; m <= max_m; ++m) {
      const HilbertIndex total = HilbertIndex(1) << (static_cast<unsigned>(m) * order);
      // keep files small at high orders
      const HilbertIndex stride = (total > 4096) ? HilbertIndex(total / 4096) : HilbertIndex(1);
      for (HilbertIndex i = 0; i < total; i += stride) {
        GridCell cell = hilbert_decode(i, order, m);
        out << order << "," << m << "," << i;
        for (std::uint32_t c : cell) out << "," << c;
        out << "\n";
      }
    }
  }
}

bool verify_hilbert_test_vectors(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    std::istringstream ss(line);
    std::string field;
    std::getline(ss, field, ',');
    int order = std::stoi(field);
    std::getline(ss, field, ',');
    int m = std::stoi(field);
    std::getline(ss, field, ',');
    HilbertIndex index(field);
    GridCell cell;
    while (std::getline(ss, field, ',')) cell.push_back(std::stoul(field));
    if (static_cast<int>(cell.size()) != m) return false;
    if (hilbert_encode(cell, order) != index) return false;
    if (hilbert_decode(index, order, m) != cell) return false;
  }
  return true;
}

}  // namespace privrec
