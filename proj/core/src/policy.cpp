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

#include "privrec/policy.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "privrec/util.hpp"

namespace privrec {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

Purpose parse_purpose(const std::string& s) {
  if (s == "recommendation") return Purpose::kRecommendation;
  if (s == "marketing") return Purpose::kMarketing;
  if (s == "analytics") return Purpose::kAnalytics;
  throw std::invalid_argument("unknown purpose: " + s);
}

Recipients parse_recipients(const std::string& s) {
  if (s == "super_peer_only") return Recipients::kSuperPeerOnly;
  if (s == "service") return Recipients::kService;
  if (s == "third_parties") return Recipients::kThirdParties;
  throw std::invalid_argument("unknown recipients: " + s);
}

ConcealLevel parse_level(const std::string& s) {
  if (s == "none") return ConcealLevel::kNone;
  if (s == "standard") return ConcealLevel::kStandard;
  if (s == "strict") return ConcealLevel::kStrict;
  throw std::invalid_argument("unknown concealment level: " + s);
}

std::string unquote(const std::string& s) {
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') return s.substr(1, s.size() - 2);
  return s;
}

MatchRule parse_if_rule(const std::string& line) {
  auto then_pos = line.find(" THEN ");
  if (then_pos == std::string::npos) throw std::invalid_argument("malformed rule: " + line);
  std::string cond_text = trim(line.substr(3, then_pos - 3));
  std::string action_text = trim(line.substr(then_pos + 6));

  MatchRule rule;
  std::istringstream conds(cond_text);
  std::string clause;
  while (std::getline(conds, clause, '&')) {
    clause = trim(clause);
    if (clause.empty()) continue;
    auto cmp = clause.find_first_of("=>");
    if (cmp == std::string::npos) throw std::invalid_argument("malformed condition: " + clause);
    std::string field = trim(clause.substr(0, cmp));
    std::string value = trim(clause.substr(cmp + 1));
    if (field == "purpose") rule.purpose = parse_purpose(value);
    else if (field == "recipients") rule.recipients = parse_recipients(value);
    else if (field == "retention") rule.retention_over_days = std::stoi(value);
    else throw std::invalid_argument("unknown condition field: " + field);
  }

  if (action_text == "block") {
    rule.block = true;
  } else if (action_text.rfind("conceal=", 0) == 0) {
    rule.block = false;
    rule.level = parse_level(action_text.substr(8));
  } else {
    throw std::invalid_argument("unknown action: " + action_text);
  }
  return rule;
}

}  // namespace

RuleSet parse_rules(const std::string& text) {
  RuleSet rules;
  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("IF ", 0) == 0) {
      rules.match_rules.push_back(parse_if_rule(line));
    } else if (line.rfind("SUPPRESS ", 0) == 0) {
      std::string arg = trim(line.substr(9));
      if (arg.rfind("item:", 0) != 0) throw std::invalid_argument("malformed SUPPRESS: " + line);
      rules.suppress.insert(std::stoll(arg.substr(5)));
    } else if (line.rfind("EXCLUDE ", 0) == 0) {
      std::string arg = trim(line.substr(8));
      if (arg.rfind("category:", 0) != 0)
        throw std::invalid_argument("malformed EXCLUDE: " + line);
      rules.exclude_categories.insert(unquote(arg.substr(9)));
    } else if (line.rfind("GENERALIZE ", 0) == 0) {
      std::string arg = trim(line.substr(11));
      auto arrow = arg.find("->");
      if (arrow == std::string::npos) throw std::invalid_argument("malformed GENERALIZE: " + line);
      std::string from = unquote(trim(arg.substr(0, arrow)));
      std::string to = unquote(trim(arg.substr(arrow + 2)));
      rules.generalize[from] = to;
    } else if (line.rfind("MAXAGE ", 0) == 0) {
      rules.max_age_days = std::stoi(trim(line.substr(7)));
    } else if (line.rfind("DUMMY ", 0) == 0) {
      std::string arg = trim(line.substr(6));
      if (arg == "on") rules.insert_dummy = true;
      else if (arg == "off") rules.insert_dummy = false;
      else throw std::invalid_argument("malformed DUMMY: " + line);
    } else {
      throw std::invalid_argument("unrecognized rule line: " + line);
    }
  }
  return rules;
}

RuleSet load_rules(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_rules(ss.str());
}

Taxonomy parse_taxonomy(const std::string& text) {
  Taxonomy taxonomy;
  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    auto arrow = line.find("->");
    if (arrow == std::string::npos) throw std::invalid_argument("malformed taxonomy line: " + line);
    std::string child = unquote(trim(line.substr(0, arrow)));
    std::string parent = unquote(trim(line.substr(arrow + 2)));
    taxonomy[child] = parent;
  }
  check_acyclic(taxonomy);
  return taxonomy;
}

void check_acyclic(const Taxonomy& taxonomy) {
  for (const auto& [start, first_parent] : taxonomy) {
    std::set<std::string> seen{start};
    std::string cur = first_parent;
    while (true) {
      if (seen.count(cur)) throw std::invalid_argument("cyclic taxonomy at term: " + cur);
      seen.insert(cur);
      auto it = taxonomy.find(cur);
      if (it == taxonomy.end()) break;
      cur = it->second;
    }
  }
}

PolicyDecision check_policy(const ServicePolicy& policy, const std::vector<MatchRule>& rules) {
  for (const MatchRule& rule : rules) {
    if (rule.purpose && *rule.purpose != policy.purpose) continue;
    if (rule.recipients && *rule.recipients != policy.recipients) continue;
    if (rule.retention_over_days && policy.retention_days <= *rule.retention_over_days) continue;
    if (rule.block) return {false, ConcealLevel::kStrict};
    return {true, rule.level};
  }
  return {true, ConcealLevel::kStrict};
}

RewriteResult rewrite_query(const CategoryRequest& request, const RatingProfile& profile,
                            const ItemFeatureTable& features,
                            const std::map<ItemId, std::set<std::string>>& item_tags,
                            const std::map<ItemId, int>& item_days, const RuleSet& rules,
                            const Taxonomy& taxonomy, const PolicyDecision& decision,
                            std::uint64_t seed) {
  RewriteResult result;
  result.decision = decision;
  if (!decision.release) return result;  // Block: nothing leaves the profile

  check_acyclic(taxonomy);
  for (const std::string& cat : rules.exclude_categories) {
    bool known = taxonomy.count(cat) > 0;
    for (const auto& [t, p] : taxonomy) {
      if (p == cat) known = true;
    }
    for (const auto& [item, tags] : item_tags) {
      if (tags.count(cat)) known = true;
    }
    if (!known) throw std::invalid_argument("unknown category name: " + cat);
  }

  result.kept = profile.ratings;

  // 1. expiry
  if (rules.max_age_days) {
    for (auto it = result.kept.begin(); it != result.kept.end();) {
      auto day = item_days.find(it->first);
      if (day != item_days.end() && request.day - day->second > *rules.max_age_days) {
        it = result.kept.erase(it);
      } else {
        ++it;
      }
    }
  }

  // 2. category exclusion
  if (!rules.exclude_categories.empty()) {
    for (auto it = result.kept.begin(); it != result.kept.end();) {
      auto tags = item_tags.find(it->first);
      bool excluded = false;
      if (tags != item_tags.end()) {
        for (const std::string& t : tags->second) {
          if (rules.exclude_categories.count(t)) {
            excluded = true;
            break;
          }
        }
      }
      it = excluded ? result.kept.erase(it) : std::next(it);
    }
  }

  // 3. item suppression
  for (ItemId item : rules.suppress) {
    auto it = result.kept.find(item);
    if (it != result.kept.end()) {
      result.suppressed.insert(item);
      result.kept.erase(it);
    }
  }

  // 4. term generalization: record the substitution for every generalized
  // term carried by a kept item; an explicit rule target wins over the
  // taxonomy parent
  for (const auto& [item, tags] : item_tags) {
    if (!result.kept.count(item)) continue;
    for (const std::string& t : tags) {
      auto rule = rules.generalize.find(t);
      if (rule != rules.generalize.end()) {
        result.substitutions[t] = rule->second;
        continue;
      }
      auto parent = taxonomy.find(t);
      if (parent != taxonomy.end()) result.substitutions[t] = parent->second;
    }
  }

  // 5. dummies: one per suppressed item, feature vector copied verbatim
  if (rules.insert_dummy && !result.suppressed.empty()) {
    ItemId next_id = 0;
    for (const auto& [item, f] : features.entries()) next_id = std::max(next_id, item);
    ++next_id;
    std::mt19937_64 rng(mix64(seed, 0x64756d6dULL));
    std::uniform_int_distribution<int> rating(1, 5);
    for (ItemId item : result.suppressed) {
      RewriteResult::Dummy d;
      d.id = next_id++;
      d.features = features.at(item);
      d.rating = rating(rng);
      result.dummies.push_back(std::move(d));
    }
  }

  return result;
}

AuditDecision RequestAuditor::audit(const CategoryRequest& request,
                                    const std::set<ItemId>& items, std::size_t profile_size) {
  if (profile_size == 0) return {true, ""};
  auto& records = history_[request.requester];

  // A requester's first release is always allowed; afterwards the windowed
  // union including the new request must stay within the budget.
  if (!records.empty()) {
    std::set<ItemId> window_union = items;
    for (const Record& r : records) {
      if (request.day - r.day > window_days_) continue;
      window_union.insert(r.items.begin(), r.items.end());
    }
    const double fraction =
        static_cast<double>(window_union.size()) / static_cast<double>(profile_size);
    if (fraction > max_fraction_) return {false, "cumulative disclosure"};
  }

  records.push_back({request.day, items});
  return {true, ""};
}

}  // namespace privrec
