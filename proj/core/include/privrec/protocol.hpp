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

#ifndef PRIVREC_PROTOCOL_HPP_
#define PRIVREC_PROTOCOL_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "privrec/dataset.hpp"
#include "privrec/global_conceal.hpp"
#include "privrec/local_conceal.hpp"
#include "privrec/policy.hpp"
#include "privrec/recommender.hpp"

namespace privrec {

enum class PeerRole { kParticipant, kSuperPeer, kTargetUser };

struct Peer {
  PseudonymId pseudonym;
  RatingProfile profile;
  RuleSet rules;
  PeerRole role = PeerRole::kParticipant;
};

/// Pseudonym -> reputation in [0,1], held by the session authority.
struct Reputation {
  std::map<PseudonymId, double> scores;

  double get(const PseudonymId& p, double fallback = 0.5) const;
  void set(const PseudonymId& p, double value);  // clamps to [0,1]
};

struct SessionConfig {
  std::vector<Peer> peers;  // exactly one kTargetUser
  ItemFeatureTable features;
  int group_size = 3;
  ConcealmentParams conceal;
  HilbertParams hilbert;
  double tau = 0.5;
  int k_neighbors = 10;
  int top_n = 10;
  double alpha = 0.2;
  bool target_is_super_peer = false;
  ServicePolicy policy;
  std::string request_category;
  std::uint64_t seed = 0;

  void validate() const;
};

struct TranscriptEvent {
  int step = 0;  // interaction step 1..7
  int group = -1;
  PseudonymId sender;
  PseudonymId receiver;
  std::string kind;
  std::uint64_t digest = 0;
  /// Taint record: every raw rating value embedded in the payload. The leak
  /// guard checks that only the target's released ratings ever appear here.
  std::vector<Rating> raw_exposed;
};

struct SessionTranscript {
  std::vector<TranscriptEvent> events;
  std::map<int, ReferralList> referrals;  // by group index
  Reputation reputation;
  bool aborted = false;
  std::string abort_reason;

  std::uint64_t hash() const;
  /// Lines `step,group,sender,receiver,kind,digest` plus `hash=<hex>`.
  void save(const std::string& path) const;
};

/// Highest reputation wins; ties break to the lexically lowest pseudonym.
PseudonymId elect_super_peer(const std::vector<PseudonymId>& candidates,
                             const Reputation& reputation);

struct ReputationReport {
  PseudonymId reporter;
  PseudonymId subject;
  double score = 0.0;  // in [0,1]
};

/// Per subject: new = (1 - alpha) * old + alpha * mean(scores); untouched
/// subjects keep their value.
Reputation report_and_update(const std::vector<ReputationReport>& reports,
                             Reputation reputation, double alpha = 0.2);

/// Runs the full seven-step session deterministically: broadcast with session
/// key, election, policy announcement, per-participant policy check / audit /
/// query rewrite, trust scoring, local concealment + trust filtering +
/// aggregation + global concealment, recommendation and reputation reports.
SessionTranscript run_session(const SessionConfig& config);

/// Raw ratings exposed in any payload that do not belong to the target's
/// released preferences. Empty on a leak-free transcript.
std::vector<Rating> scan_for_leaks(const SessionTranscript& transcript,
                                   const PseudonymId& target);

}  // namespace privrec

#endif  // PRIVREC_PROTOCOL_HPP_
