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

#include "privrec/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "privrec/trust.hpp"
#include "privrec/util.hpp"

namespace privrec {

double Reputation::get(const PseudonymId& p, double fallback) const {
  auto it = scores.find(p);
  return (it == scores.end()) ? fallback : it->second;
}

void Reputation::set(const PseudonymId& p, double value) {
  scores[p] = std::clamp(value, 0.0, 1.0);
}

void SessionConfig::validate() const {
  int targets = 0;
  for (const Peer& p : peers) {
    if (p.role == PeerRole::kTargetUser) ++targets;
  }
  if (targets != 1) throw std::invalid_argument("exactly one target user required");
  if (group_size < 2) throw std::invalid_argument("group_size < 2");
  if (group_size > static_cast<int>(peers.size())) {
    throw std::invalid_argument("group_size exceeds peer count");
  }
  if (tau < 0.0 || tau > 1.0) throw std::invalid_argument("tau outside [0,1]");
  if (alpha <= 0.0 || alpha > 1.0) throw std::invalid_argument("alpha outside (0,1]");
}

PseudonymId elect_super_peer(const std::vector<PseudonymId>& candidates,
                             const Reputation& reputation) {
  if (candidates.empty()) throw std::invalid_argument("empty candidate list");
  PseudonymId best = candidates[0];
  double best_score = reputation.get(best);
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const double s = reputation.get(candidates[i]);
    if (s > best_score || (s == best_score && candidates[i] < best)) {
      best = candidates[i];
      best_score = s;
    }
  }
  return best;
}

Reputation report_and_update(const std::vector<ReputationReport>& reports,
                             Reputation reputation, double alpha) {
  if (alpha <= 0.0 || alpha > 1.0) throw std::invalid_argument("alpha outside (0,1]");
  std::map<PseudonymId, std::pair<double, int>> sums;
  for (const ReputationReport& r : reports) {
    if (r.score < 0.0 || r.score > 1.0) throw std::invalid_argument("report score outside [0,1]");
    auto& [sum, n] = sums[r.subject];
    sum += r.score;
    ++n;
  }
  for (const auto& [subject, acc] : sums) {
    const double mean = acc.first / acc.second;
    const double old = reputation.get(subject);
    reputation.set(subject, (1.0 - alpha) * old + alpha * mean);
  }
  return reputation;
}

std::uint64_t SessionTranscript::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const TranscriptEvent& e : events) {
    std::ostringstream line;
    line << e.step << "," << e.group << "," << e.sender << "," << e.receiver << "," << e.kind
         << "," << hex64(e.digest);
    h = fnv1a(line.str(), h);
  }
  return h;
}

void SessionTranscript::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open file for writing: " + path);
  out << "step,group,sender,receiver,kind,digest\n";
  for (const TranscriptEvent& e : events) {
    out << e.step << "," << e.group << "," << e.sender << "," << e.receiver << "," << e.kind
        << "," << hex64(e.digest) << "\n";
  }
  out << "hash=" << hex64(hash()) << "\n";
}

namespace {

struct EventBuilder {
  SessionTranscript& transcript;

  void add(int step, int group, const PseudonymId& sender, const PseudonymId& receiver,
           const std::string& kind, const std::string& payload,
           std::vector<Rating> raw_exposed = {}) {
    TranscriptEvent e;
    e.step = step;
    e.group = group;
    e.sender = sender;
    e.receiver = receiver;
    e.kind = kind;
    e.digest = fnv1a(payload);
    e.raw_exposed = std::move(raw_exposed);
    transcript.events.push_back(std::move(e));
  }
};

std::string profile_payload(const RatingProfile& profile) {
  std::ostringstream ss;
  ss << profile.owner;
  for (const auto& [item, value] : profile.ratings) ss << ";" << item << ":" << value;
  return ss.str();
}

std::vector<Rating> profile_taint(const RatingProfile& profile) {
  std::vector<Rating> taint;
  taint.reserve(profile.ratings.size());
  for (const auto& [item, value] : profile.ratings) {
    taint.push_back({profile.owner, item, value});
  }
  return taint;
}

std::string concealed_payload(const ConcealedProfile& profile) {
  // digests only carry the concealed coordinates, never raw ratings
  std::ostringstream ss;
  ss << profile.owner;
  for (const ConcealedPoint& p : profile.points) {
    ss << ";" << p.item << ":" << p.cluster;
    for (double v : p.coords) ss << ":" << format_double(v);
  }
  return ss.str();
}

}  // namespace

SessionTranscript run_session(const SessionConfig& config) {
  config.validate();

  SessionTranscript transcript;
  EventBuilder ev{transcript};

  const Peer* target = nullptr;
  std::vector<const Peer*> participants;
  for (const Peer& p : config.peers) {
    if (p.role == PeerRole::kTargetUser) target = &p;
    else participants.push_back(&p);
  }

  // Seed reputation entries for everyone the session touches.
  transcript.reputation.scores.clear();
  for (const Peer& p : config.peers) {
    transcript.reputation.set(p.pseudonym, 0.5);
  }

  const SessionKey key = SessionKey::from_seed(mix64(config.seed, 0x6b6579ULL));

  // Step 1: broadcast of the request, the released target preferences, and
  // the session key. The target's own ratings are the only raw values that
  // may travel.
  const RatingProfile& released = target->profile;
  ev.add(1, -1, target->pseudonym, "*", "broadcast_request",
         "category=" + config.request_category + ";" + profile_payload(released) +
             ";key=" + hex64(key.words[0]),
         profile_taint(released));

  if (participants.empty()) {
    transcript.aborted = true;
    transcript.abort_reason = "no participants joined";
    ev.add(1, -1, target->pseudonym, "*", "session_aborted", transcript.abort_reason);
    return transcript;
  }

  // Deterministic group formation.
  std::vector<const Peer*> shuffled = participants;
  std::mt19937_64 group_rng(mix64(config.seed, 0x67727075ULL));
  std::shuffle(shuffled.begin(), shuffled.end(), group_rng);
  std::vector<std::vector<const Peer*>> groups;
  for (std::size_t i = 0; i < shuffled.size(); i += config.group_size) {
    std::vector<const Peer*> g(shuffled.begin() + i,
                               shuffled.begin() + std::min(i + config.group_size, shuffled.size()));
    groups.push_back(std::move(g));
  }

  std::map<PseudonymId, RequestAuditor> auditors;  // one per participant
  std::vector<ReputationReport> reports;

  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    const int group = static_cast<int>(gi);
    const std::vector<const Peer*>& members = groups[gi];

    // Step 2: reputation-based election.
    std::vector<PseudonymId> candidates;
    for (const Peer* p : members) candidates.push_back(p->pseudonym);
    PseudonymId super_peer = config.target_is_super_peer
                                 ? target->pseudonym
                                 : elect_super_peer(candidates, transcript.reputation);
    ev.add(2, group, "SAC", super_peer, "super_peer_elected", "super=" + super_peer);

    // Step 3: the super-peer announces the service policy.
    {
      std::ostringstream payload;
      payload << "purpose=" << static_cast<int>(config.policy.purpose)
              << ";recipients=" << static_cast<int>(config.policy.recipients)
              << ";retention=" << config.policy.retention_days;
      ev.add(3, group, super_peer, "*", "policy_announcement", payload.str());
    }

    // Step 4: per-participant policy check, audit, query rewrite.
    struct Joined {
      const Peer* peer;
      RatingProfile rewritten;
      std::vector<RewriteResult::Dummy> dummies;
    };
    std::vector<Joined> joined;
    for (const Peer* p : members) {
      PolicyDecision decision = check_policy(config.policy, p->rules.match_rules);
      if (!decision.release) {
        ev.add(4, group, p->pseudonym, super_peer, "policy_blocked", p->pseudonym + ":block");
        continue;
      }
      CategoryRequest request{target->pseudonym, config.request_category, 0};
      RewriteResult rewrite =
          rewrite_query(request, p->profile, config.features, {}, {}, p->rules, {}, decision,
                        mix64(config.seed, fnv1a(p->pseudonym)));
      std::set<ItemId> released_items;
      for (const auto& [item, value] : rewrite.kept) released_items.insert(item);
      AuditDecision audit = auditors[p->pseudonym].audit(request, released_items, p->profile.size());
      if (!audit.allow) {
        ev.add(4, group, p->pseudonym, super_peer, "audit_denied", audit.reason);
        continue;
      }
      RatingProfile rewritten;
      rewritten.owner = p->pseudonym;
      rewritten.ratings = rewrite.kept;
      for (const auto& d : rewrite.dummies) rewritten.ratings[d.id] = d.rating;
      if (rewritten.empty()) {
        ev.add(4, group, p->pseudonym, super_peer, "rewrite_empty", p->pseudonym + ":empty");
        continue;
      }
      ev.add(4, group, p->pseudonym, super_peer, "request_rewritten",
             p->pseudonym + ":kept=" + std::to_string(rewrite.kept.size()));
      joined.push_back({p, std::move(rewritten), std::move(rewrite.dummies)});
    }

    // Step 5: local trust scores; only the scalar score travels.
    std::map<PseudonymId, TrustScore> scores;
    for (const Joined& j : joined) {
      TrustScore score = trust_score(released, j.peer->profile);
      scores[j.peer->pseudonym] = score;
      const std::string payload =
          j.peer->pseudonym + ":trust=" + format_double(score.value);
      ev.add(5, group, j.peer->pseudonym, super_peer, "trust_score", payload);
      ev.add(5, group, j.peer->pseudonym, "PRS", "trust_score_forwarded", payload);
    }

    // Step 6: local concealment, trust filtering, aggregation, global
    // concealment.
    std::vector<std::pair<PseudonymId, ConcealedProfile>> concealed;
    for (const Joined& j : joined) {
      ItemFeatureTable extended = config.features;
      for (const auto& d : j.dummies) extended.set(d.id, d.features);
      ConcealedProfile cp = conceal_local(j.rewritten, extended, config.conceal, key,
                                          mix64(config.seed, fnv1a(j.peer->pseudonym), 0x6cULL));
      ev.add(6, group, j.peer->pseudonym, super_peer, "concealed_profile",
             concealed_payload(cp));
      concealed.emplace_back(j.peer->pseudonym, std::move(cp));
    }
    auto kept = filter_by_trust(concealed, scores, config.tau);

    ReferralList referral;
    referral.sealed_to = target->pseudonym;
    if (!kept.empty()) {
      GroupProfile group_profile;
      for (const auto& [pseudonym, cp] : kept) {
        group_profile.members.push_back(pseudonym);
        for (ProfilePoint& pt : keyed_reconstruct(cp, key)) {
          GroupProfile::Point gp;
          gp.member = pseudonym;
          gp.item = pt.item;
          gp.coords = std::move(pt.coords);
          for (double& v : gp.coords) v = std::clamp(v, 0.0, 1.0);
          group_profile.points.push_back(std::move(gp));
        }
      }
      ConcealedGroupProfile concealed_group =
          conceal_global(group_profile, config.hilbert, mix64(config.seed, gi, 0x6576ULL));
      ev.add(6, group, super_peer, "PRS", "group_profile_submitted",
             "members=" + std::to_string(group_profile.members.size()));

      // Step 7: recommendation, referral distribution, reputation reports.
      referral = recommend(concealed_group, nullptr, config.top_n, config.k_neighbors);
      referral.sealed_to = target->pseudonym;
    } else {
      ev.add(6, group, super_peer, "PRS", "group_profile_empty", "members=0");
    }

    {
      std::ostringstream payload;
      payload << "sealed_to=" << referral.sealed_to;
      for (const auto& e : referral.entries) {
        payload << ";" << e.item << ":" << format_double(e.prediction);
      }
      ev.add(7, group, "PRS", super_peer, "referral_list", payload.str());
      ev.add(7, group, super_peer, target->pseudonym, "referral_delivered", payload.str());
    }
    for (const Joined& j : joined) {
      const double score = kept.empty() ? 0.5 : 1.0;
      reports.push_back({j.peer->pseudonym, super_peer, score});
      ev.add(7, group, j.peer->pseudonym, "SAC", "reputation_report",
             j.peer->pseudonym + ">" + super_peer + "=" + format_double(score));
    }
    transcript.referrals[group] = std::move(referral);
  }

  transcript.reputation = report_and_update(reports, transcript.reputation, config.alpha);
  return transcript;
}

std::vector<Rating> scan_for_leaks(const SessionTranscript& transcript,
                                   const PseudonymId& target) {
  std::vector<Rating> leaks;
  for (const TranscriptEvent& e : transcript.events) {
    for (const Rating& r : e.raw_exposed) {
      if (r.user != target) leaks.push_back(r);
    }
  }
  return leaks;
}

}  // namespace privrec
