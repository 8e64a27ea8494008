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

#include "support/firewall.h"

#include <fstream>
#include <regex>

#include "badgr/model/trainer.h"
#include "badgr/sim/map_gen.h"
#include "support/fixtures.h"

namespace badgr::testing {

namespace fs = std::filesystem;

FirewallScan scan_learner_sources(const fs::path& source_root) {
  const std::regex gt(R"(\bgt_[a-z])");
  FirewallScan scan;
  for (const char* mod : {"collector", "labeler", "model", "planner", "baselines"}) {
    for (const fs::path& dir : {source_root / "src" / mod, source_root / "include" / "badgr" / mod}) {
      if (!fs::is_directory(dir)) {
        scan.hits.push_back(dir.string() + ": missing");
        continue;
      }
      for (const auto& e : fs::recursive_directory_iterator(dir)) {
        if (!e.is_regular_file()) continue;
        std::ifstream in(e.path());
        std::string line;
        for (int n = 1; std::getline(in, line); ++n)
          if (std::regex_search(line, gt)) scan.hits.push_back(e.path().string() + ":" + std::to_string(n) + ": " + line);
        ++scan.files;
      }
    }
  }
  return scan;
}

LearnedArtifacts learn_with_poison(bool poison, sim::MapKind kind, collector::DetectorMode mode) {
  collector::CollectConfig cc;
  cc.sim.poison_ground_truth = poison;
  const sim::TerrainMap map = sim::make_map(kind, 3);
  LearnedArtifacts r;
  r.records = collector::collect(map, 1500, mode, 11, cc).records;
  append_shard(r.ds, r.records, {});

  model::TrainConfig tc;
  tc.model = tiny_model_config();
  tc.model.cam_rays = r.ds.cam_rays;
  tc.model.ground_samples = r.ds.ground_samples;
  tc.model.horizon = 4;
  tc.max_epochs = 2;
  const model::TrainResult t = model::train(r.ds, tc, 5);
  const std::vector<Action> fwd(4, Action{1.0, 0.0}), turn(4, Action{0.5, 1.0});
  r.preds = t.model.predict_batch(r.ds.camera_frame(100), {fwd, turn});
  return r;
}

bool same_artifacts(const LearnedArtifacts& a, const LearnedArtifacts& b) {
  if (!(a.records == b.records)) return false;
  if (a.ds.collision != b.ds.collision || a.ds.bumpy != b.ds.bumpy || a.ds.episode != b.ds.episode) return false;
  if (a.preds.size() != b.preds.size()) return false;
  for (size_t i = 0; i < a.preds.size(); ++i)
    if (a.preds[i].p_coll != b.preds[i].p_coll || a.preds[i].p_bump != b.preds[i].p_bump) return false;
  return true;
}

}  // namespace badgr::testing
