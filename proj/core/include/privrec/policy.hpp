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

#ifndef PRIVREC_POLICY_HPP_
#define PRIVREC_POLICY_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "privrec/dataset.hpp"

namespace privrec {

enum class Purpose { kRecommendation, kMarketing, kAnalytics };
enum class Recipients { kSuperPeerOnly, kService, kThirdParties };

/// The service side's declared data-use practice.
struct ServicePolicy {
  Purpose purpose = Purpose::kRecommendation;
  Recipients recipients = Recipients::kSuperPeerOnly;
  int retention_days = 0;
};

enum class ConcealLevel { kNone, kStandard, kStrict };

struct PolicyDecision {
  bool release = true;
  ConcealLevel level = ConcealLevel::kStrict;
};

/// One IF/THEN preference rule: all present condition fields must match the
/// announced policy. Rules are ordered; the first match wins.
struct MatchRule {
  std::optional<Purpose> purpose;
  std::optional<Recipients> recipients;
  std::optional<int> retention_over_days;  // matches retention > N
  bool block = false;
  ConcealLevel level = ConcealLevel::kStrict;
};

/// Parsed preference rule file: ordered match rules plus rewrite directives.
struct RuleSet {
  std::vector<MatchRule> match_rules;
  std::set<ItemId> suppress;
  std::set<std::string> exclude_categories;
  std::map<std::string, std::string> generalize;  // term -> replacement
  std::optional<int> max_age_days;
  bool insert_dummy = false;
};

/// Line-oriented rule text, one rule per line:
///   IF purpose=marketing THEN block
///   IF recipients=third_parties THEN conceal=strict
///   SUPPRESS item:123
///   EXCLUDE category:horror
///   GENERALIZE "heavy metal"->"rock"
///   MAXAGE 365
///   DUMMY on
/// Blank lines and lines starting with '#' are ignored.
RuleSet parse_rules(const std::string& text);
RuleSet load_rules(const std::string& path);

/// `child -> parent` lines; must be acyclic.
using Taxonomy = std::map<std::string, std::string>;
Taxonomy parse_taxonomy(const std::string& text);
void check_acyclic(const Taxonomy& taxonomy);

/// First matching rule decides; no match defaults to Release at the
/// strictest level.
PolicyDecision check_policy(const ServicePolicy& policy, const std::vector<MatchRule>& rules);

struct CategoryRequest {
  PseudonymId requester;
  std::string category;  // empty = unrestricted
  int day = 0;           // days since epoch
};

struct RewriteResult {
  PolicyDecision decision;
  std::map<ItemId, int> kept;                      // item -> rating
  std::set<ItemId> suppressed;
  struct Dummy {
    ItemId id = 0;
    std::vector<double> features;
    int rating = 0;
  };
  std::vector<Dummy> dummies;
  std::map<std::string, std::string> substitutions;  // applied generalizations
};

/// Applies, in order: MaxAgeDays expiry, ExcludeCategory, SuppressItems,
/// Generalize, InsertDummy. Each dummy copies the feature vector of one
/// suppressed item and carries a seeded uniform rating in [1,5]. A Block
/// decision short-circuits to an empty result.
RewriteResult rewrite_query(const CategoryRequest& request, const RatingProfile& profile,
                            const ItemFeatureTable& features,
                            const std::map<ItemId, std::set<std::string>>& item_tags,
                            const std::map<ItemId, int>& item_days, const RuleSet& rules,
                            const Taxonomy& taxonomy, const PolicyDecision& decision,
                            std::uint64_t seed);

struct AuditDecision {
  bool allow = true;
  std::string reason;
};

/// Per-requester cumulative-disclosure audit: denies once the union of item
/// sets released to one requester within the window would exceed
/// `max_fraction` of the profile.
class RequestAuditor {
 public:
  RequestAuditor(double max_fraction = 0.5, int window_days = 30)
      : max_fraction_(max_fraction), window_days_(window_days) {}

  /// Decides and, when allowed, records the release.
  AuditDecision audit(const CategoryRequest& request, const std::set<ItemId>& items,
                      std::size_t profile_size);

 private:
  struct Record {
    int day = 0;
    std::set<ItemId> items;
  };
  double max_fraction_;
  int window_days_;
  std::map<PseudonymId, std::vector<Record>> history_;
};

}  // namespace privrec

#endif  // PRIVREC_POLICY_HPP_
