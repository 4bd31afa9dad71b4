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

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "privrec/dataset.hpp"
#include "privrec/experiment.hpp"
#include "privrec/global_conceal.hpp"
#include "privrec/local_conceal.hpp"
#include "privrec/protocol.hpp"
#include "privrec/recommender.hpp"
#include "privrec/synth.hpp"
#include "privrec/util.hpp"

namespace {

using namespace privrec;

Dataset load_dataset(const std::string& data, const std::string& items,
                     const std::string& format) {
  if (format == "csv") return load_csv(data, items);
  return load_movielens(data, items);
}

Dataset load_or_synth(const std::string& data, const std::string& items,
                      const std::string& format, const SweepGrid& grid, std::uint64_t seed) {
  if (!data.empty()) {
    return subsample(load_dataset(data, items, format), grid.max_users, grid.max_items);
  }
  SynthConfig synth;
  synth.n_users = grid.max_users;
  synth.n_items = grid.max_items;
  synth.seed = seed;
  return synth_dataset(synth);
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open file for writing: " + path);
  out << text;
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw std::runtime_error("malformed config line: " + line);
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return kv;
}

SessionConfig build_session_config(const std::map<std::string, std::string>& kv,
                                   std::uint64_t seed) {
  SessionConfig config;
  config.seed = seed;

  auto geti = [&kv](const std::string& k, int fallback) {
    auto it = kv.find(k);
    return (it == kv.end()) ? fallback : std::stoi(it->second);
  };
  auto getd = [&kv](const std::string& k, double fallback) {
    auto it = kv.find(k);
    return (it == kv.end()) ? fallback : std::stod(it->second);
  };

  const int n_peers = geti("peers", 6);
  config.group_size = geti("group_size", 3);
  config.conceal.d_dim = geti("d_dim", 100);
  config.conceal.noise_sigma0 = getd("sigma0", 0.0);
  config.hilbert.order = geti("order", 6);
  config.hilbert.step = geti("step", 10);
  config.tau = getd("tau", 0.5);
  config.k_neighbors = geti("k", 10);
  config.top_n = geti("top_n", 10);
  config.alpha = getd("alpha", 0.2);
  config.target_is_super_peer = geti("target_is_super_peer", 0) != 0;
  config.policy.retention_days = geti("retention", 30);
  if (auto it = kv.find("category"); it != kv.end()) config.request_category = it->second;

  // Peers with synthetic profiles derived from the session seed.
  SynthConfig synth;
  synth.n_users = n_peers;
  synth.n_items = geti("n_items", 60);
  synth.density = getd("density", 0.4);
  synth.seed = mix64(seed, 0x706565ULL);
  Dataset ds = synth_dataset(synth);
  config.features = ds.features;
  std::size_t idx = 0;
  for (auto& [owner, profile] : ds.profiles()) {
    Peer peer;
    peer.pseudonym = owner;
    peer.profile = profile;
    peer.role = (idx == 0) ? PeerRole::kTargetUser : PeerRole::kParticipant;
    config.peers.push_back(std::move(peer));
    ++idx;
  }
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"privacy-preserving peer-group recommender toolkit"};
  app.require_subcommand(1);

  std::string data_path, items_path, out_path, config_path, format = "movielens";
  SweepGrid grid;
  std::uint64_t seed = 1;
  int top_n = 10;
  int order = 6, step = 10, d_dim = 200;
  double sigma0 = 0.0;

  auto add_data_flags = [&](CLI::App* cmd, bool required) {
    auto* d = cmd->add_option("--data", data_path, "ratings file");
    cmd->add_option("--items", items_path, "item feature file");
    cmd->add_option("--format", format, "movielens|csv")
        ->check(CLI::IsMember({"movielens", "csv"}));
    if (required) d->required();
  };

  auto* ingest = app.add_subcommand("ingest", "load a dataset and report its shape");
  add_data_flags(ingest, true);
  ingest->add_option("--out", out_path, "write canonical CSV pair to <out>.ratings.csv/.items.csv");

  auto* sweep_cta_cmd = app.add_subcommand("sweep-cta", "local-concealment accuracy/privacy sweep");
  add_data_flags(sweep_cta_cmd, false);
  sweep_cta_cmd->add_option("--out", out_path, "output CSV path (default stdout)");
  sweep_cta_cmd->add_option("--seeds", grid.seeds, "seeds");
  sweep_cta_cmd->add_option("--d-dim", grid.d_dims, "embedding dimensions");
  sweep_cta_cmd->add_option("--sigma0", grid.noise_sigma0, "noise energy");
  sweep_cta_cmd->add_option("--test-fraction", grid.test_fraction, "holdout fraction");
  sweep_cta_cmd->add_option("--k", grid.k_neighbors, "CF neighborhood size");
  sweep_cta_cmd->add_option("--max-users", grid.max_users, "subset user cap");
  sweep_cta_cmd->add_option("--max-items", grid.max_items, "subset item cap");

  auto* sweep_evs_cmd = app.add_subcommand("sweep-evs", "global-concealment accuracy/privacy sweep");
  add_data_flags(sweep_evs_cmd, false);
  sweep_evs_cmd->add_option("--out", out_path, "output CSV path (default stdout)");
  sweep_evs_cmd->add_option("--seeds", grid.seeds, "seeds");
  sweep_evs_cmd->add_option("--orders", grid.orders, "curve orders");
  sweep_evs_cmd->add_option("--steps", grid.steps, "partition step lengths");
  sweep_evs_cmd->add_option("--test-fraction", grid.test_fraction, "holdout fraction");
  sweep_evs_cmd->add_option("--k", grid.k_neighbors, "CF neighborhood size");
  sweep_evs_cmd->add_option("--max-users", grid.max_users, "subset user cap");
  sweep_evs_cmd->add_option("--max-items", grid.max_items, "subset item cap");

  auto* simulate = app.add_subcommand("simulate", "run one protocol session");
  simulate->add_option("--config", config_path, "key=value session config")->required();
  simulate->add_option("--seed", seed, "session seed");
  simulate->add_option("--out", out_path, "transcript output path");

  auto* recommend_cmd =
      app.add_subcommand("recommend", "end-to-end concealed recommendation on a dataset");
  add_data_flags(recommend_cmd, false);
  recommend_cmd->add_option("--out", out_path, "referral CSV path");
  recommend_cmd->add_option("--seed", seed, "pipeline seed");
  recommend_cmd->add_option("--top-n", top_n, "referral count");
  recommend_cmd->add_option("--k", grid.k_neighbors, "CF neighborhood size");
  recommend_cmd->add_option("--d-dim", d_dim, "embedding dimension");
  recommend_cmd->add_option("--sigma0", sigma0, "noise energy");
  recommend_cmd->add_option("--order", order, "curve order");
  recommend_cmd->add_option("--step", step, "partition step length");
  recommend_cmd->add_option("--max-users", grid.max_users, "subset user cap");
  recommend_cmd->add_option("--max-items", grid.max_items, "subset item cap");

  CLI11_PARSE(app, argc, argv);

  try {
    if (ingest->parsed()) {
      Dataset ds = load_dataset(data_path, items_path, format);
      std::map<PseudonymId, RatingProfile> profiles = ds.profiles();
      std::cout << "ratings=" << ds.ratings.size() << " users=" << profiles.size()
                << " items=" << ds.features.size() << " m=" << ds.point_dim() << "\n";
      if (!out_path.empty()) {
        std::ostringstream ratings;
        ratings << "user,item,rating\n";
        for (const Rating& r : ds.ratings) {
          ratings << r.user << "," << r.item << "," << r.value << "\n";
        }
        write_text(out_path + ".ratings.csv", ratings.str());
        std::ostringstream items;
        items << "item";
        for (std::size_t i = 0; i < ds.features.feature_dim(); ++i) items << ",f" << (i + 1);
        items << "\n";
        for (const auto& [item, f] : ds.features.entries()) {
          items << item;
          for (double v : f) items << "," << format_double(v);
          items << "\n";
        }
        write_text(out_path + ".items.csv", items.str());
      }
    } else if (sweep_cta_cmd->parsed()) {
      Dataset ds = load_or_synth(data_path, items_path, format, grid, grid.seeds.front());
      std::ostringstream csv;
      write_cta_csv(sweep_cta(ds, grid), grid, csv);
      write_text(out_path, csv.str());
    } else if (sweep_evs_cmd->parsed()) {
      Dataset ds = load_or_synth(data_path, items_path, format, grid, grid.seeds.front());
      std::ostringstream csv;
      write_evs_csv(sweep_evs(ds, grid), grid, csv);
      write_text(out_path, csv.str());
    } else if (simulate->parsed()) {
      SessionConfig config = build_session_config(parse_config_file(config_path), seed);
      SessionTranscript transcript = run_session(config);
      if (out_path.empty()) out_path = "transcript.txt";
      transcript.save(out_path);
      std::cout << "transcript=" << out_path << " hash=" << hex64(transcript.hash()) << "\n";
      if (transcript.aborted) {
        std::cerr << "session aborted: " << transcript.abort_reason << "\n";
        return 2;
      }
    } else if (recommend_cmd->parsed()) {
      Dataset ds = load_or_synth(data_path, items_path, format, grid, seed);
      const std::size_t m = ds.point_dim();
      ConcealmentParams params;
      params.d_dim = d_dim;
      params.noise_sigma0 = sigma0;
      const SessionKey key = SessionKey::from_seed(mix64(seed, 0x726563ULL));
      SessionMatrixCache cache(key, params.d_dim, m);

      GroupProfile group;
      for (const auto& [owner, profile] : ds.profiles()) {
        group.members.push_back(owner);
        ConcealedProfile cp =
            conceal_local(profile, ds.features, params, cache, mix64(seed, fnv1a(owner)));
        for (ProfilePoint& pt : keyed_reconstruct(cp, cache)) {
          for (double& v : pt.coords) v = std::min(std::max(v, 0.0), 1.0);
          group.points.push_back({owner, pt.item, std::move(pt.coords)});
        }
      }
      HilbertParams hparams{order, step};
      ConcealedGroupProfile concealed = conceal_global(group, hparams, mix64(seed, 0x6743ULL));
      ReferralList referrals = recommend(concealed, nullptr, top_n, grid.k_neighbors);
      if (out_path.empty()) {
        for (std::size_t i = 0; i < referrals.entries.size(); ++i) {
          std::cout << (i + 1) << "," << referrals.entries[i].item << ","
                    << format_double(referrals.entries[i].prediction) << "\n";
        }
      } else {
        save_referrals(referrals, out_path);
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
