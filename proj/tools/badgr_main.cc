// Copyright 2026 The badgr-sim Authors
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

// Command-line front end for the collect / label / train / deploy / eval
// pipeline.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "badgr/common/hash.h"
#include "badgr/common/rng.h"
#include "badgr/harness/experiments.h"
#include "badgr/harness/policies.h"
#include "badgr/harness/report.h"
#include "badgr/sim/map_gen.h"
#include "badgr/sim/map_io.h"

namespace {

using namespace badgr;
using namespace badgr::harness;
namespace fs = std::filesystem;

struct Globals {
  std::string config;
  std::string out_dir;
  int64_t seed = -1;
};

ExperimentConfig load(const Globals& g) {
  ExperimentConfig cfg = g.config.empty() ? default_config() : load_config(g.config);
  if (g.seed >= 0) cfg.seed = static_cast<uint64_t>(g.seed);
  cfg.validate();
  return cfg;
}

const DomainConfig& domain_of(const ExperimentConfig& cfg, const std::string& name) {
  if (name == "urban") return cfg.urban;
  if (name == "offroad") return cfg.offroad;
  throw std::invalid_argument("unknown domain '" + name + "' (urban|offroad)");
}

// "kind:seed" or a map JSON file.
sim::TerrainMap resolve_map(const std::string& arg) {
  const auto colon = arg.find(':');
  if (colon != std::string::npos && !fs::exists(arg)) {
    const auto kind = sim::map_kind_from_name(arg.substr(0, colon));
    if (!kind) throw std::invalid_argument("unknown map kind in '" + arg + "'");
    return sim::make_map(*kind, std::stoull(arg.substr(colon + 1)));
  }
  return sim::load_map(arg);
}

void print_suite(const SuiteResult& s) { std::cout << format_table(s) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"badgr: self-supervised navigation pipeline in a 2-D simulator"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config, "experiment config JSON");
  app.add_option("--seed", g.seed, "override the master seed");
  app.add_option("--out-dir", g.out_dir, "output root (default $BADGR_OUT_ROOT or ./badgr_out)");

  std::string domain = "urban";
  auto* collect = app.add_subcommand("collect", "collect raw experience for a domain");
  collect->add_option("--domain", domain, "urban|offroad");

  auto* label = app.add_subcommand("label", "label collected shards");
  label->add_option("--domain", domain, "urban|offroad");

  std::string finetune_from;
  auto* train = app.add_subcommand("train", "train a model on a domain dataset");
  train->add_option("--domain", domain, "urban|offroad");
  train->add_option("--finetune-from", finetune_from,
                    "domain whose model initializes training; its dataset is merged in");

  std::string policy = "badgr", map_arg = "urban:0", ckpt, traj_out;
  double alpha_pos = 1.0, alpha_bum = 0.5;
  std::vector<double> goal;
  int start_index = 0;
  uint64_t run_seed = 0;
  auto* deploy = app.add_subcommand("deploy", "run one episode and write its trajectory");
  deploy->add_option("--policy", policy, "badgr|lidar|naive|oracle")
      ->check(CLI::IsMember({"badgr", "lidar", "naive", "oracle"}));
  deploy->add_option("--map", map_arg, "kind:seed or map JSON file");
  deploy->add_option("--ckpt", ckpt, "model checkpoint (badgr policy)");
  deploy->add_option("--goal", goal, "goal x y (default: goal region center)")->expected(2);
  deploy->add_option("--alpha-pos", alpha_pos);
  deploy->add_option("--alpha-bum", alpha_bum);
  deploy->add_option("--start", start_index, "index into the sampled start poses");
  deploy->add_option("--run-seed", run_seed);
  deploy->add_option("--out", traj_out, "trajectory NDJSON (default stdout)");

  std::string suite = "urban";
  auto* eval = app.add_subcommand("eval", "run an evaluation suite");
  eval->add_option("--suite", suite, "urban|tallgrass|novel|oracle")
      ->check(CLI::IsMember({"urban", "tallgrass", "novel", "oracle"}));

  app.add_subcommand("selfimprove", "zero-shot vs target-only vs finetuned on OffRoad");
  app.add_subcommand("report", "rebuild tables and figures from eval outputs");
  app.add_subcommand("show-config", "print the effective experiment config as JSON");

  std::string maps_dir = "maps";
  std::vector<std::string> map_args;
  auto* make_maps = app.add_subcommand("make-maps", "write generated maps as JSON");
  make_maps->add_option("maps", map_args, "kind:seed ...")->required();
  make_maps->add_option("--dir", maps_dir);

  CLI11_PARSE(app, argc, argv);

  try {
    const fs::path root = resolve_out_dir(g.out_dir);
    auto* sub = app.get_subcommands().front();
    const std::string cmd = sub->get_name();
    if (cmd == "make-maps") {
      fs::create_directories(maps_dir);
      for (const std::string& s : map_args) {
        std::string file = s;
        for (char& c : file)
          if (c == ':') c = '_';
        const fs::path path = fs::path(maps_dir) / (file + ".json");
        sim::save_map(resolve_map(s), path);
        std::cout << path.string() << "\n";
      }
      return 0;
    }

    const ExperimentConfig cfg = load(g);
    if (cmd == "show-config") {
      std::cout << cfg.to_json().dump(2) << "\n";
      return 0;
    }
    Pipeline p(cfg, root, &std::cerr);
    if (cmd == "collect") {
      const StageResult r = p.collect(domain, domain_of(cfg, domain));
      for (const auto& f : r.outputs) std::cout << f.string() << "\n";
    } else if (cmd == "label") {
      const StageResult r = p.label(domain, p.collect(domain, domain_of(cfg, domain)));
      std::cout << r.outputs.at(0).string() << "\n";
    } else if (cmd == "train") {
      const StageResult l = p.label(domain, p.collect(domain, domain_of(cfg, domain)));
      StageResult r;
      if (finetune_from.empty()) {
        r = p.train(domain, {l});
      } else {
        const StageResult base_l =
            p.label(finetune_from, p.collect(finetune_from, domain_of(cfg, finetune_from)));
        const StageResult base = p.train(finetune_from, {base_l});
        r = p.train(domain + "_from_" + finetune_from, {base_l, l}, base);
      }
      std::cout << r.outputs.at(0).string() << "\n";
    } else if (cmd == "deploy") {
      const sim::TerrainMap map = resolve_map(map_arg);
      const Vec2 target = goal.size() == 2 ? Vec2{goal[0], goal[1]} : map.goal_region().center();
      const planner::RewardConfig rcfg{alpha_pos, alpha_bum, target};
      std::unique_ptr<Policy> pol;
      if (policy == "badgr") {
        if (ckpt.empty()) throw std::invalid_argument("--ckpt is required for the badgr policy");
        auto m = std::make_shared<const model::Model>(model::Model::load(ckpt));
        pol = make_learned_policy("badgr", m, rcfg, cfg.planner);
      } else if (policy == "oracle") {
        pol = make_oracle_policy("oracle", map, cfg.sim, cfg.label.bump_threshold, rcfg, cfg.planner);
      } else if (policy == "lidar") {
        pol = std::make_unique<LidarPolicy>(target, cfg.lidar_config(), cfg.sim.max_range);
      } else {
        pol = std::make_unique<NaivePolicy>(target, cfg.naive);
      }
      const auto starts = sim::sample_starts(map, start_index + 1, derive_seed(cfg.seed, hash_string(map_arg)));
      RunRecord r = run_episode(map, starts.at(static_cast<size_t>(start_index)), *pol, cfg.run_config(),
                                derive_seed(cfg.seed, run_seed));
      r.policy = policy;
      r.map = map_arg;
      r.start_index = start_index;
      if (traj_out.empty()) {
        write_run_ndjson(std::cout, r);
      } else {
        std::ofstream out(traj_out);
        write_run_ndjson(out, r);
      }
      std::cerr << "outcome: " << outcome_name(r.outcome) << " after " << r.steps.size() << " steps\n";
    } else if (cmd == "eval") {
      if (suite == "urban") {
        const UrbanSuite u = urban_suite(p);
        print_suite(u.eval);
        std::cout << "bumpiness sign test vs badgr_nobump: p=" << u.bump_vs_nobump.p_value
                  << "  vs lidar: p=" << u.bump_vs_lidar.p_value << "\n";
      } else if (suite == "oracle") {
        print_suite(oracle_suite(cfg, 8, cfg.eval.starts, root / "eval" / "oracle"));
      } else {
        const SelfImprovement s = self_improvement(p);
        print_suite(suite == "tallgrass" ? tallgrass_suite(p, s.finetuned) : generalization_suite(p, s.finetuned));
      }
    } else if (cmd == "selfimprove") {
      const SelfImprovement s = self_improvement(p);
      print_suite(s.eval);
      std::cout << "training records: target_only=" << s.target_only_records
                << " finetuned=" << s.finetuned_records << "\n";
    } else if (cmd == "report") {
      std::cout << write_report(root, cfg);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
