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

#include "badgr/harness/pipeline.h"

#include <fstream>

#include "badgr/collector/record_io.h"
#include "badgr/common/hash.h"
#include "badgr/common/rng.h"
#include "badgr/labeler/dataset_io.h"

namespace badgr::harness {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json hashes_json(const std::vector<uint64_t>& hs) {
  json a = json::array();
  for (uint64_t h : hs) a.push_back(hex64(h));
  return a;
}

template <typename F>
auto tagged(const std::string& stage, F&& f) {
  try {
    return f();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(stage, e.what());
  }
}

}  // namespace

Pipeline::Pipeline(ExperimentConfig cfg, fs::path root, std::ostream* log)
    : cfg_(std::move(cfg)), root_(std::move(root)), log_(log) {
  cfg_.validate();
}

fs::path Pipeline::stage_dir(const std::string& name, const std::string& stage) const {
  return root_ / name / stage;
}

std::optional<StageResult> Pipeline::cached(const fs::path& dir, uint64_t input_hash) const {
  const fs::path mpath = dir / "manifest.json";
  if (!fs::exists(mpath)) return std::nullopt;
  json m;
  try {
    std::ifstream in(mpath);
    m = json::parse(in);
  } catch (const std::exception&) {
    return std::nullopt;
  }
  if (m.value("input_hash", "") != hex64(input_hash)) return std::nullopt;
  StageResult r;
  r.input_hash = input_hash;
  r.cached = true;
  for (const json& o : m.at("outputs")) {
    const fs::path p = dir / o.at("file").get<std::string>();
    if (!fs::exists(p)) return std::nullopt;
    const uint64_t h = hash_file(p);
    if (hex64(h) != o.at("hash").get<std::string>()) return std::nullopt;
    r.outputs.push_back(p);
    r.output_hashes.push_back(h);
  }
  return r;
}

StageResult Pipeline::finish(const fs::path& dir, const std::string& stage, uint64_t input_hash,
                             const std::vector<fs::path>& outputs, const json& info) const {
  StageResult r;
  r.input_hash = input_hash;
  r.outputs = outputs;
  json outs = json::array();
  for (const fs::path& p : outputs) {
    r.output_hashes.push_back(hash_file(p));
    outs.push_back({{"file", p.filename().string()}, {"hash", hex64(r.output_hashes.back())}});
  }
  json m = {{"stage", stage}, {"input_hash", hex64(input_hash)}, {"outputs", outs}, {"info", info}};
  std::ofstream out(dir / "manifest.json");
  out << m.dump(2) << '\n';
  if (!out) throw StageError(stage, "cannot write manifest in " + dir.string());
  return r;
}

StageResult Pipeline::collect(const std::string& name, const DomainConfig& domain) {
  const std::string stage = "collect[" + name + "]";
  return tagged(stage, [&] {
    const collector::CollectConfig ccfg = cfg_.collect_config();
    const json inputs = {{"stage", "collect"},
                         {"seed", cfg_.seed},
                         {"sim", cfg_.to_json()["sim"]},
                         {"collect", cfg_.to_json()["collect"]},
                         {"domain", {{"kind", sim::map_kind_name(domain.kind)},
                                     {"map_seeds", domain.map_seeds},
                                     {"steps", domain.steps},
                                     {"detector", collector::detector_name(domain.detector)}}}};
    const uint64_t ih = config_hash(inputs);
    const fs::path dir = stage_dir(name, "collect");
    if (auto c = cached(dir, ih)) {
      if (log_) *log_ << stage << ": cached\n";
      return *c;
    }
    if (domain.map_seeds.empty()) throw std::invalid_argument("domain has no map seeds");
    fs::create_directories(dir);
    std::vector<fs::path> outs;
    json stats = json::array();
    const uint64_t per = domain.steps / domain.map_seeds.size();
    for (size_t i = 0; i < domain.map_seeds.size(); ++i) {
      const uint64_t ms = domain.map_seeds[i];
      const sim::TerrainMap map = sim::make_map(domain.kind, ms);
      const uint64_t steps = per + (i + 1 == domain.map_seeds.size() ? domain.steps % domain.map_seeds.size() : 0);
      const uint64_t seed = derive_seed(cfg_.seed, (static_cast<uint64_t>(domain.kind) << 32) ^ ms);
      collector::CollectResult r = collector::collect(map, steps, domain.detector, seed, ccfg);
      const fs::path p = dir / ("shard_" + std::to_string(i) + ".bin");
      collector::write_shard(r.records, p);
      outs.push_back(p);
      stats.push_back({{"map_seed", ms},
                       {"steps", r.stats.steps},
                       {"episodes", r.stats.episodes},
                       {"detector_firings", r.stats.detector_firings},
                       {"interventions", r.stats.interventions}});
      if (log_) {
        *log_ << stage << ": map " << ms << " " << r.stats.steps << " steps, " << r.stats.episodes
              << " episodes\n";
      }
    }
    return finish(dir, "collect", ih, outs, {{"shards", stats}});
  });
}

StageResult Pipeline::label(const std::string& name, const StageResult& collected) {
  const std::string stage = "label[" + name + "]";
  return tagged(stage, [&] {
    const json inputs = {{"stage", "label"},
                         {"label", cfg_.to_json()["label"]},
                         {"shards", hashes_json(collected.output_hashes)}};
    const uint64_t ih = config_hash(inputs);
    const fs::path dir = stage_dir(name, "label");
    if (auto c = cached(dir, ih)) {
      if (log_) *log_ << stage << ": cached\n";
      return *c;
    }
    fs::create_directories(dir);
    labeler::LabeledDataset ds;
    for (const fs::path& p : collected.outputs) {
      const auto records = collector::read_shard(p);
      labeler::append_shard(ds, records, cfg_.label);
    }
    const fs::path out = dir / "dataset.bin";
    labeler::write_dataset(ds, out);
    size_t coll = 0, bumpy = 0;
    for (size_t i = 0; i < ds.size(); ++i) {
      coll += ds.collision[i];
      bumpy += ds.bumpy[i];
    }
    if (log_) *log_ << stage << ": " << ds.size() << " records, " << ds.num_episodes() << " episodes\n";
    return finish(dir, "label", ih, {out},
                  {{"records", ds.size()},
                   {"episodes", ds.num_episodes()},
                   {"collision_records", coll},
                   {"bumpy_records", bumpy}});
  });
}

StageResult Pipeline::train(const std::string& name, const std::vector<StageResult>& datasets,
                            const std::optional<StageResult>& init) {
  const std::string stage = "train[" + name + "]";
  return tagged(stage, [&] {
    json data = json::array();
    for (const StageResult& d : datasets) data.push_back(hashes_json(d.output_hashes));
    const json inputs = {{"stage", "train"},
                         {"seed", cfg_.seed},
                         {"train", cfg_.train.to_json()},
                         {"datasets", data},
                         {"init", init ? hashes_json(init->output_hashes) : json()}};
    const uint64_t ih = config_hash(inputs);
    const fs::path dir = stage_dir(name, "train");
    if (auto c = cached(dir, ih)) {
      if (log_) *log_ << stage << ": cached\n";
      return *c;
    }
    fs::create_directories(dir);
    std::vector<labeler::LabeledDataset> parts;
    for (const StageResult& d : datasets) parts.push_back(labeler::read_dataset(d.outputs.at(0)));
    std::vector<const labeler::LabeledDataset*> ptrs;
    for (const auto& p : parts) ptrs.push_back(&p);
    const labeler::LabeledDataset ds = labeler::merge(ptrs);
    std::optional<model::Model> init_model;
    if (init) init_model = model::Model::load(init->outputs.at(0));
    model::TrainResult r =
        model::train(ds, cfg_.train, cfg_.seed, init_model ? &*init_model : nullptr, log_);
    const fs::path ckpt = dir / "model.ckpt";
    const fs::path curve = dir / "curve.csv";
    const json meta = {{"records", ds.size()},
                       {"best_epoch", r.best_epoch},
                       {"coll_pos_weight", r.coll_pos_weight},
                       {"train_config", cfg_.train.to_json()}};
    r.model.save(ckpt.string(), meta);
    model::write_curve_csv(curve.string(), r.curve);
    const auto& best = r.curve.at(static_cast<size_t>(r.best_epoch));
    return finish(dir, "train", ih, {ckpt, curve},
                  {{"records", ds.size()},
                   {"best_epoch", r.best_epoch},
                   {"epochs_run", static_cast<int>(r.curve.size()) - 1},
                   {"initial_val_loss", r.curve.front().val_loss},
                   {"best_val_loss", best.val_loss},
                   {"val_coll_auc", best.val_coll_auc},
                   {"val_coll_acc", best.val_coll_acc},
                   {"val_bump_auc", best.val_bump_auc},
                   {"seconds", r.curve.back().seconds}});
  });
}

StageResult Pipeline::run_training_pipeline(const std::string& name, const DomainConfig& domain) {
  const StageResult c = collect(name, domain);
  const StageResult l = label(name, c);
  return train(name, {l});
}

}  // namespace badgr::harness
