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

#include "privrec/policy.hpp"

using namespace privrec;

namespace {

const char* kRuleText = R"(# preference rules
IF purpose=marketing THEN block
IF recipients=third_parties THEN conceal=strict
IF purpose=analytics & retention>90 THEN block

SUPPRESS item:123
SUPPRESS item:7
EXCLUDE category:horror
GENERALIZE "heavy metal"->"rock"
MAXAGE 365
DUMMY on
)";

RatingProfile make_profile(std::initializer_list<std::pair<ItemId, int>> rs) {
  RatingProfile p;
  p.owner = "u";
  for (auto [item, r] : rs) p.ratings[item] = r;
  return p;
}

}  // namespace

TEST_CASE("rule text parses") {
  RuleSet rules = parse_rules(kRuleText);
  REQUIRE(rules.match_rules.size() == 3);
  CHECK(rules.match_rules[0].purpose == Purpose::kMarketing);
  CHECK(rules.match_rules[0].block);
  CHECK(rules.match_rules[1].recipients == Recipients::kThirdParties);
  CHECK_FALSE(rules.match_rules[1].block);
  CHECK(rules.match_rules[1].level == ConcealLevel::kStrict);
  CHECK(rules.match_rules[2].purpose == Purpose::kAnalytics);
  CHECK(rules.match_rules[2].retention_over_days == 90);
  CHECK(rules.suppress == std::set<ItemId>{7, 123});
  CHECK(rules.exclude_categories == std::set<std::string>{"horror"});
  CHECK(rules.generalize.at("heavy metal") == "rock");
  CHECK(rules.max_age_days == 365);
  CHECK(rules.insert_dummy);
}

TEST_CASE("malformed rule lines throw") {
  CHECK_THROWS_AS(parse_rules("IF nonsense THEN block\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rules("SUPPRESS 123\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rules("MAXAGE never\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rules("GENERALIZE rock\n"), std::invalid_argument);
}

TEST_CASE("check_policy applies the first matching rule") {
  RuleSet rules = parse_rules(kRuleText);

  SUBCASE("marketing purpose is blocked") {
    ServicePolicy policy{Purpose::kMarketing, Recipients::kSuperPeerOnly, 10};
    PolicyDecision d = check_policy(policy, rules.match_rules);
    CHECK_FALSE(d.release);
  }
  SUBCASE("third parties trigger strict concealment") {
    ServicePolicy policy{Purpose::kRecommendation, Recipients::kThirdParties, 10};
    PolicyDecision d = check_policy(policy, rules.match_rules);
    CHECK(d.release);
    CHECK(d.level == ConcealLevel::kStrict);
  }
  SUBCASE("conjunction requires all conditions") {
    ServicePolicy short_retention{Purpose::kAnalytics, Recipients::kService, 30};
    CHECK(check_policy(short_retention, rules.match_rules).release);
    ServicePolicy long_retention{Purpose::kAnalytics, Recipients::kService, 120};
    CHECK_FALSE(check_policy(long_retention, rules.match_rules).release);
  }
  SUBCASE("no match defaults to strict release") {
    ServicePolicy policy{Purpose::kRecommendation, Recipients::kSuperPeerOnly, 5};
    PolicyDecision d = check_policy(policy, rules.match_rules);
    CHECK(d.release);
    CHECK(d.level == ConcealLevel::kStrict);
  }
}

TEST_CASE("taxonomy parses and rejects cycles") {
  Taxonomy t = parse_taxonomy("heavy metal -> rock\nrock -> music\n");
  CHECK(t.at("heavy metal") == "rock");
  check_acyclic(t);
  CHECK_THROWS_AS(parse_taxonomy("a -> b\nb -> a\n"), std::invalid_argument);
}

TEST_CASE("rewrite_query") {
  RuleSet rules = parse_rules(kRuleText);
  Taxonomy taxonomy = parse_taxonomy("horror -> film\nheavy metal -> rock\n");
  ItemFeatureTable features(2);
  for (ItemId id : {1, 2, 7, 123, 200}) features.set(id, {0.5, 0.5});
  std::map<ItemId, std::set<std::string>> tags = {
      {1, {"heavy metal"}}, {2, {"horror"}}, {200, {"pop"}}};
  std::map<ItemId, int> item_days = {{1, 800}, {2, 800}, {7, 800}, {123, 800}, {200, 100}};
  RatingProfile profile = make_profile({{1, 5}, {2, 4}, {7, 3}, {123, 2}, {200, 1}});
  CategoryRequest request{"sp", "", 900};
  PolicyDecision release{true, ConcealLevel::kStrict};

  SUBCASE("block short-circuits to empty") {
    RewriteResult r = rewrite_query(request, profile, features, tags, item_days, rules,
                                    taxonomy, {false, ConcealLevel::kStrict}, 1);
    CHECK(r.kept.empty());
    CHECK(r.dummies.empty());
  }
  SUBCASE("suppression, age expiry, and category exclusion") {
    RewriteResult r =
        rewrite_query(request, profile, features, tags, item_days, rules, taxonomy, release, 1);
    CHECK(r.kept.count(1) == 1);            // kept, generalized tag
    CHECK(r.kept.count(2) == 0);            // horror excluded
    CHECK(r.kept.count(7) == 0);            // suppressed by rule
    CHECK(r.kept.count(123) == 0);          // suppressed by rule
    CHECK(r.kept.count(200) == 0);          // older than MAXAGE 365 at day 900
    CHECK(r.suppressed.count(7) == 1);
    CHECK(r.substitutions.count("heavy metal") == 1);
    CHECK(r.substitutions.at("heavy metal") == "rock");
  }
  SUBCASE("dummies copy suppressed item features with fresh ids") {
    RewriteResult r =
        rewrite_query(request, profile, features, tags, item_days, rules, taxonomy, release, 1);
    CHECK(!r.dummies.empty());
    for (const auto& d : r.dummies) {
      CHECK(d.id > 200);  // beyond every real id
      CHECK(d.features == std::vector<double>{0.5, 0.5});
      CHECK(d.rating >= 1);
      CHECK(d.rating <= 5);
      CHECK(profile.ratings.count(d.id) == 0);
    }
  }
  SUBCASE("deterministic given seed") {
    RewriteResult a =
        rewrite_query(request, profile, features, tags, item_days, rules, taxonomy, release, 9);
    RewriteResult b =
        rewrite_query(request, profile, features, tags, item_days, rules, taxonomy, release, 9);
    CHECK(a.kept == b.kept);
    REQUIRE(a.dummies.size() == b.dummies.size());
    for (std::size_t i = 0; i < a.dummies.size(); ++i) {
      CHECK(a.dummies[i].id == b.dummies[i].id);
      CHECK(a.dummies[i].rating == b.dummies[i].rating);
    }
  }
  SUBCASE("rewrite without directives is the identity") {
    RuleSet empty;
    RewriteResult r = rewrite_query(request, profile, features, tags, item_days, empty,
                                    taxonomy, release, 1);
    CHECK(r.kept.size() == profile.ratings.size());
    CHECK(r.dummies.empty());
    CHECK(r.suppressed.empty());
  }
}

TEST_CASE("request auditor budgets cumulative disclosure") {
  RatingProfile profile = make_profile({{1, 1}, {2, 2}, {3, 3}, {4, 4}, {5, 5}, {6, 1},
                                        {7, 2}, {8, 3}, {9, 4}, {10, 5}});
  SUBCASE("first request is always allowed") {
    RequestAuditor auditor(0.5, 30);
    AuditDecision d = auditor.audit({"sp", "", 0},
                                    {1, 2, 3, 4, 5, 6, 7, 8, 9, 10}, profile.size());
    CHECK(d.allow);
  }
  SUBCASE("repeat requests within the window are capped") {
    RequestAuditor auditor(0.5, 30);
    CHECK(auditor.audit({"sp", "", 0}, {1, 2, 3}, 10).allow);
    // union {1,2,3,4,5} = 5 items = exactly the budget: allowed
    CHECK(auditor.audit({"sp", "", 5}, {4, 5}, 10).allow);
    // union would grow to 6 > 5: denied
    AuditDecision d = auditor.audit({"sp", "", 6}, {6}, 10);
    CHECK_FALSE(d.allow);
    CHECK(d.reason.find("cumulative disclosure") != std::string::npos);
  }
  SUBCASE("re-requesting already released items is free") {
    RequestAuditor auditor(0.5, 30);
    CHECK(auditor.audit({"sp", "", 0}, {1, 2, 3, 4, 5}, 10).allow);
    CHECK(auditor.audit({"sp", "", 1}, {1, 2, 3}, 10).allow);
  }
  SUBCASE("the window forgets old releases") {
    RequestAuditor auditor(0.5, 30);
    CHECK(auditor.audit({"sp", "", 0}, {1, 2, 3, 4, 5}, 10).allow);
    CHECK_FALSE(auditor.audit({"sp", "", 10}, {6, 7}, 10).allow);
    CHECK(auditor.audit({"sp", "", 100}, {6, 7}, 10).allow);  // outside window
  }
  SUBCASE("budgets are tracked per requester") {
    RequestAuditor auditor(0.5, 30);
    CHECK(auditor.audit({"sp1", "", 0}, {1, 2, 3, 4, 5}, 10).allow);
    CHECK(auditor.audit({"sp2", "", 0}, {1, 2, 3, 4, 5}, 10).allow);
    CHECK_FALSE(auditor.audit({"sp1", "", 1}, {6}, 10).allow);
  }
}
