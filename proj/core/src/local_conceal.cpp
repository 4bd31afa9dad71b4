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

#include "privrec/local_conceal.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include <Eigen/QR>

#include "privrec/util.hpp"

namespace privrec {

void ConcealmentParams::validate(std::size_t m) const {
  if (d_dim < static_cast<int>(m)) throw std::invalid_argument("d_dim < point dimension");
  if (noise_sigma0 < 0.0) throw std::invalid_argument("noise_sigma0 < 0");
  if (reference_clusters < 1) throw std::invalid_argument("reference_clusters < 1");
}

SessionKey SessionKey::from_seed(std::uint64_t seed) {
  SessionKey k;
  for (std::size_t i = 0; i < k.words.size(); ++i) k.words[i] = mix64(seed, 0xabcd + i);
  return k;
}

std::uint64_t SessionKey::stream(std::uint64_t salt) const {
  std::uint64_t h = salt;
  for (std::uint64_t w : words) h = mix64(h, w);
  return h;
}

namespace {

constexpr std::uint64_t kEmbedSalt = 0x656d626564ULL;
constexpr std::uint64_t kRotateSalt = 0x726f74ULL;
constexpr std::uint64_t kRefSalt = 0x726566ULL;

// Gaussian matrix -> QR -> sign-corrected Q. Sign correction makes the result
// Haar-distributed and independent of the QR implementation's sign choices.
Eigen::MatrixXd random_orthonormal(int rows, int cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd a(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) a(i, j) = gauss(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(rows, cols);
  Eigen::MatrixXd r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  for (int j = 0; j < cols; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

Eigen::MatrixXd derive_embedding(const SessionKey& key, int label, int d, int m) {
  return random_orthonormal(d, m, key.stream(mix64(kEmbedSalt, static_cast<std::uint64_t>(label))));
}

Eigen::MatrixXd derive_rotation(const SessionKey& key, int label, int d) {
  return random_orthonormal(d, d, key.stream(mix64(kRotateSalt, static_cast<std::uint64_t>(label))));
}

Eigen::MatrixXd to_matrix(const std::vector<std::vector<double>>& points) {
  if (points.empty()) throw std::invalid_argument("empty point list");
  const std::size_t dim = points[0].size();
  Eigen::MatrixXd x(dim, points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != dim) throw std::invalid_argument("ragged point dimensions");
    for (std::size_t j = 0; j < dim; ++j) x(j, i) = points[i][j];
  }
  return x;
}

std::vector<std::vector<double>> from_matrix(const Eigen::MatrixXd& x) {
  std::vector<std::vector<double>> points(x.cols(), std::vector<double>(x.rows()));
  for (Eigen::Index i = 0; i < x.cols(); ++i)
    for (Eigen::Index j = 0; j < x.rows(); ++j) points[i][j] = x(j, i);
  return points;
}

}  // namespace

SessionMatrixCache::SessionMatrixCache(SessionKey key, int d_dim, std::size_t m)
    : key_(key), d_dim_(d_dim), m_(m) {
  if (d_dim_ < static_cast<int>(m_)) throw std::invalid_argument("d_dim < point dimension");
}

const SessionMatrixCache::Entry& SessionMatrixCache::entry(int label) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = cache_.find(label);
  if (it == cache_.end()) {
    Entry e;
    e.embed = derive_embedding(key_, label, d_dim_, static_cast<int>(m_));
    e.rotate = derive_rotation(key_, label, d_dim_);
    e.forward = e.rotate * e.embed;
    it = cache_.emplace(label, std::move(e)).first;
  }
  return it->second;
}

const Eigen::MatrixXd& SessionMatrixCache::embedding(int label) const {
  return entry(label).embed;
}
const Eigen::MatrixXd& SessionMatrixCache::rotation(int label) const {
  return entry(label).rotate;
}
const Eigen::MatrixXd& SessionMatrixCache::forward(int label) const {
  return entry(label).forward;
}

const std::vector<std::vector<double>>& SessionMatrixCache::reference_centroids(
    int count) const {
  std::lock_guard<std::mutex> lock(mu_);
  if (refs_.size() != static_cast<std::size_t>(count)) {
    refs_.assign(count, std::vector<double>(m_));
    std::mt19937_64 rng(key_.stream(kRefSalt));
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (auto& c : refs_)
      for (double& v : c) v = u(rng);
  }
  return refs_;
}

std::vector<std::vector<double>> embed_cluster(
    const std::vector<std::vector<double>>& cluster_points, const ConcealmentParams& params,
    const SessionKey& key, int label, std::uint64_t noise_seed) {
  Eigen::MatrixXd x = to_matrix(cluster_points);
  const int m = static_cast<int>(x.rows());
  params.validate(m);

  Eigen::MatrixXd y = derive_embedding(key, label, params.d_dim, m) * x;
  if (params.noise_sigma0 > 0.0) {
    const double sigma = params.noise_sigma0 / std::sqrt(static_cast<double>(params.d_dim));
    std::mt19937_64 rng(mix64(noise_seed, static_cast<std::uint64_t>(label), 0x6e6fULL));
    std::normal_distribution<double> gauss(0.0, sigma);
    for (Eigen::Index i = 0; i < y.cols(); ++i)
      for (Eigen::Index j = 0; j < y.rows(); ++j) y(j, i) += gauss(rng);
  }
  return from_matrix(y);
}

std::vector<std::vector<double>> rotate_cluster(const std::vector<std::vector<double>>& points,
                                                const SessionKey& key, int label) {
  Eigen::MatrixXd x = to_matrix(points);
  const int d = static_cast<int>(x.rows());
  return from_matrix(derive_rotation(key, label, d) * x);
}

ConcealedProfile conceal_local(const RatingProfile& profile, const ItemFeatureTable& features,
                               const ConcealmentParams& params, const SessionKey& key,
                               std::uint64_t seed) {
  if (profile.empty()) throw std::invalid_argument("empty profile");
  const std::size_t m = features.feature_dim() + 1;
  SessionMatrixCache cache(key, params.d_dim, m);
  return conceal_local(profile, features, params, cache, seed);
}

ConcealedProfile conceal_local(const RatingProfile& profile, const ItemFeatureTable& features,
                               const ConcealmentParams& params, SessionMatrixCache& cache,
                               std::uint64_t seed) {
  if (profile.empty()) throw std::invalid_argument("empty profile");
  std::vector<ProfilePoint> pts = profile_points(profile, features);
  const std::size_t m = pts[0].coords.size();
  params.validate(m);
  if (m != cache.m()) throw std::invalid_argument("cache dimensionality mismatch");

  std::vector<std::vector<double>> coords;
  coords.reserve(pts.size());
  for (const ProfilePoint& p : pts) coords.push_back(p.coords);

  Clustering local = cluster_points(coords, params.k_clusters, seed);

  // Align each local cluster to the nearest session-global reference centroid
  // so that labels (and hence matrices) agree across participants.
  const auto& refs = cache.reference_centroids(params.reference_clusters);
  std::vector<int> aligned(local.num_clusters());
  for (std::size_t l = 0; l < local.num_clusters(); ++l) {
    double best = std::numeric_limits<double>::infinity();
    int best_r = 0;
    for (std::size_t r = 0; r < refs.size(); ++r) {
      const double d2 = squared_distance(local.centroids[l], refs[r]);
      if (d2 < best) {
        best = d2;
        best_r = static_cast<int>(r);
      }
    }
    aligned[l] = best_r;
  }

  // Group point indices by aligned label, then embed + rotate each group.
  std::map<int, std::vector<std::size_t>> by_label;
  for (std::size_t i = 0; i < coords.size(); ++i) by_label[aligned[local.labels[i]]].push_back(i);

  ConcealedProfile out;
  out.owner = profile.owner;
  out.params = params;
  out.m = m;
  out.points.resize(coords.size());
  const std::uint64_t noise_seed = mix64(seed, 0x6574ULL);
  for (const auto& [label, idxs] : by_label) {
    Eigen::MatrixXd x(m, idxs.size());
    for (std::size_t j = 0; j < idxs.size(); ++j) {
      for (std::size_t c = 0; c < m; ++c) x(c, j) = coords[idxs[j]][c];
    }
    Eigen::MatrixXd y = cache.embedding(label) * x;
    if (params.noise_sigma0 > 0.0) {
      const double sigma = params.noise_sigma0 / std::sqrt(static_cast<double>(params.d_dim));
      std::mt19937_64 rng(mix64(noise_seed, static_cast<std::uint64_t>(label), 0x6e6fULL));
      std::normal_distribution<double> gauss(0.0, sigma);
      for (Eigen::Index i = 0; i < y.cols(); ++i)
        for (Eigen::Index j = 0; j < y.rows(); ++j) y(j, i) += gauss(rng);
    }
    y = cache.rotation(label) * y;
    for (std::size_t j = 0; j < idxs.size(); ++j) {
      ConcealedPoint& cp = out.points[idxs[j]];
      cp.item = pts[idxs[j]].item;
      cp.cluster = label;
      cp.coords.assign(y.col(j).data(), y.col(j).data() + y.rows());
    }
  }
  return out;
}

std::vector<ProfilePoint> keyed_reconstruct(const ConcealedProfile& profile,
                                            const SessionKey& key) {
  if (profile.m == 0) throw std::invalid_argument("concealed profile missing dimensionality");
  SessionMatrixCache cache(key, profile.params.d_dim, profile.m);
  return keyed_reconstruct(profile, cache);
}

std::vector<ProfilePoint> keyed_reconstruct(const ConcealedProfile& profile,
                                            SessionMatrixCache& cache) {
  if (profile.m == 0) throw std::invalid_argument("concealed profile missing dimensionality");
  std::vector<ProfilePoint> out;
  out.reserve(profile.points.size());
  for (const ConcealedPoint& cp : profile.points) {
    const Eigen::MatrixXd& fwd = cache.forward(cp.cluster);
    Eigen::VectorXd y(cp.coords.size());
    for (std::size_t j = 0; j < cp.coords.size(); ++j) y(j) = cp.coords[j];
    Eigen::VectorXd x = fwd.transpose() * y;
    ProfilePoint p;
    p.item = cp.item;
    p.coords.assign(x.data(), x.data() + x.size());
    out.push_back(std::move(p));
  }
  return out;
}

void save_concealed_profile(const ConcealedProfile& profile, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open file for writing: " + path);
  const int d = profile.params.d_dim;
  out << "item,cluster";
  for (int j = 0; j < d; ++j) out << ",c" << j;
  out << "\n";
  for (const ConcealedPoint& p : profile.points) {
    out << p.item << "," << p.cluster;
    for (double v : p.coords) out << "," << format_double(v);
    out << "\n";
  }

  std::ofstream meta(path + ".meta");
  if (!meta) throw std::runtime_error("cannot open file for writing: " + path + ".meta");
  meta << "owner=" << profile.owner << "\n"
       << "d_dim=" << profile.params.d_dim << "\n"
       << "noise_sigma0=" << format_double(profile.params.noise_sigma0) << "\n"
       << "k=" << profile.params.k_clusters << "\n"
       << "reference_clusters=" << profile.params.reference_clusters << "\n"
       << "m=" << profile.m << "\n";
}

ConcealedProfile load_concealed_profile(const std::string& path) {
  std::ifstream meta(path + ".meta");
  if (!meta) throw std::runtime_error("cannot open file: " + path + ".meta");
  ConcealedProfile profile;
  std::string line;
  while (std::getline(meta, line)) {
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string k = line.substr(0, eq), v = line.substr(eq + 1);
    if (k == "owner") profile.owner = v;
    else if (k == "d_dim") profile.params.d_dim = std::stoi(v);
    else if (k == "noise_sigma0") profile.params.noise_sigma0 = std::stod(v);
    else if (k == "k") profile.params.k_clusters = std::stoi(v);
    else if (k == "reference_clusters") profile.params.reference_clusters = std::stoi(v);
    else if (k == "m") profile.m = std::stoul(v);
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
    ConcealedPoint p;
    std::getline(ss, field, ',');
    p.item = std::stoll(field);
    std::getline(ss, field, ',');
    p.cluster = std::stoi(field);
    while (std::getline(ss, field, ',')) p.coords.push_back(std::stod(field));
    if (static_cast<int>(p.coords.size()) != profile.params.d_dim) {
      throw std::runtime_error("concealed profile row width mismatch");
    }
    profile.points.push_back(std::move(p));
  }
  return profile;
}

}  // namespace privrec
