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

#ifndef PRIVREC_LOCAL_CONCEAL_HPP_
#define PRIVREC_LOCAL_CONCEAL_HPP_

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "privrec/clustering.hpp"
#include "privrec/dataset.hpp"

namespace privrec {

/// Parameters of the local concealment stage. `k_clusters <= 0` means auto
/// (ceil(sqrt(n)) per profile). `noise_sigma0` is the total noise energy: each
/// embedded coordinate receives Gaussian noise with deviation
/// noise_sigma0 / sqrt(d_dim), so the expected squared noise norm is
/// noise_sigma0^2 regardless of d_dim.
struct ConcealmentParams {
  int d_dim = 100;
  double noise_sigma0 = 0.0;
  int k_clusters = 0;          // <= 0: auto
  int reference_clusters = 8;  // session-global label alignment targets

  void validate(std::size_t m) const;
};

/// 256-bit session secret shared by one peer-group. All participants derive
/// identical per-cluster-label embedding and rotation matrices from it, which
/// keeps their concealed points mutually comparable.
struct SessionKey {
  std::array<std::uint64_t, 4> words{};

  static SessionKey from_seed(std::uint64_t seed);
  std::uint64_t stream(std::uint64_t salt) const;
};

/// One concealed rated item: the original item id, the session-aligned
/// cluster label, and the embedded-and-rotated d-dim vector.
struct ConcealedPoint {
  ItemId item = 0;
  int cluster = 0;
  std::vector<double> coords;
};

struct ConcealedProfile {
  PseudonymId owner;
  std::vector<ConcealedPoint> points;
  ConcealmentParams params;
  std::size_t m = 0;  // pre-embedding point dimensionality
};

/// Derives and caches the per-(key, label) matrix pair. Matrices are
/// deterministic functions of the key and label; after first derivation the
/// cache is read-only for that label.
class SessionMatrixCache {
 public:
  SessionMatrixCache(SessionKey key, int d_dim, std::size_t m);

  /// d_dim x m with orthonormal columns.
  const Eigen::MatrixXd& embedding(int label) const;
  /// d_dim x d_dim orthogonal, Haar-distributed over the derivation stream.
  const Eigen::MatrixXd& rotation(int label) const;
  /// rotation(label) * embedding(label); the full forward map.
  const Eigen::MatrixXd& forward(int label) const;

  const SessionKey& key() const { return key_; }
  int d_dim() const { return d_dim_; }
  std::size_t m() const { return m_; }

  /// Session-global reference centroids in [0,1]^m used to align cluster
  /// labels across participants without exchanging raw data.
  const std::vector<std::vector<double>>& reference_centroids(int count) const;

 private:
  struct Entry {
    Eigen::MatrixXd embed;
    Eigen::MatrixXd rotate;
    Eigen::MatrixXd forward;
  };
  const Entry& entry(int label) const;

  SessionKey key_;
  int d_dim_;
  std::size_t m_;
  mutable std::mutex mu_;
  mutable std::map<int, Entry> cache_;
  mutable std::vector<std::vector<double>> refs_;
};

/// y = E x + eta with E the orthonormal-column embedding for (key, label) and
/// eta ~ N(0, (noise_sigma0/sqrt(d))^2 I), noise drawn from `noise_seed`.
std::vector<std::vector<double>> embed_cluster(
    const std::vector<std::vector<double>>& cluster_points, const ConcealmentParams& params,
    const SessionKey& key, int label, std::uint64_t noise_seed);

/// y = Q x with Q the orthogonal rotation for (key, label); isometric.
std::vector<std::vector<double>> rotate_cluster(const std::vector<std::vector<double>>& points,
                                                const SessionKey& key, int label);

/// Full local stage: profile -> points -> clustering -> label alignment ->
/// per-cluster embed + rotate.
ConcealedProfile conceal_local(const RatingProfile& profile, const ItemFeatureTable& features,
                               const ConcealmentParams& params, const SessionKey& key,
                               std::uint64_t seed);

/// Same, but reusing an existing session cache so matrix derivation cost is
/// paid once per (key, label) across many participants.
ConcealedProfile conceal_local(const RatingProfile& profile, const ItemFeatureTable& features,
                               const ConcealmentParams& params, SessionMatrixCache& cache,
                               std::uint64_t seed);

/// Inverts the keyed isometry: x = E^T Q^T y per point. Exact when
/// noise_sigma0 was 0; otherwise the residual noise per coordinate has
/// deviation noise_sigma0 / sqrt(d_dim). Requires the session key.
std::vector<ProfilePoint> keyed_reconstruct(const ConcealedProfile& profile,
                                            const SessionKey& key);
std::vector<ProfilePoint> keyed_reconstruct(const ConcealedProfile& profile,
                                            SessionMatrixCache& cache);

/// CSV with header `item,cluster,c0,...,c{d-1}`; values round-trip exactly.
/// A sidecar file `<path>.meta` carries owner, d_dim, noise_sigma0, k.
void save_concealed_profile(const ConcealedProfile& profile, const std::string& path);
ConcealedProfile load_concealed_profile(const std::string& path);

}  // namespace privrec

#endif  // PRIVREC_LOCAL_CONCEAL_HPP_
