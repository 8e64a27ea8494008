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

#ifndef BADGR_HARNESS_PIPELINE_H_
#define BADGR_HARNESS_PIPELINE_H_

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "badgr/harness/config.h"

namespace badgr::harness {

class StageError : public std::runtime_error {
 public:
  StageError(const std::string& stage, const std::string& what)
      : std::runtime_error(stage + ": " + what), stage(stage) {}
  std::string stage;
};

// Result of one stage: its output files and whether they were reused.
struct StageResult {
  std::vector<std::filesystem::path> outputs;
  uint64_t input_hash = 0;
  std::vector<uint64_t> output_hashes;
  bool cached = false;
};

// collect -> label -> train, each stage writing into its own directory with
// a manifest.json recording the stage input hash and output file hashes. A
// stage whose manifest matches its inputs and whose outputs are intact is
// skipped, so deleting one stage's directory reruns only that stage and
// whatever depends on it.
class Pipeline {
 public:
  Pipeline(ExperimentConfig cfg, std::filesystem::path root, std::ostream* log = nullptr);

  const ExperimentConfig& config() const { return cfg_; }
  const std::filesystem::path& root() const { return root_; }

  // One raw shard per map seed.
  StageResult collect(const std::string& name, const DomainConfig& domain);
  StageResult label(const std::string& name, const StageResult& collected);
  StageResult train(const std::string& name, const std::vector<StageResult>& datasets,
                    const std::optional<StageResult>& init = std::nullopt);

  // collect + label + train for one domain; returns the train stage.
  StageResult run_training_pipeline(const std::string& name, const DomainConfig& domain);

 private:
  std::filesystem::path stage_dir(const std::string& name, const std::string& stage) const;
  std::optional<StageResult> cached(const std::filesystem::path& dir, uint64_t input_hash) const;
  StageResult finish(const std::filesystem::path& dir, const std::string& stage, uint64_t input_hash,
                     const std::vector<std::filesystem::path>& outputs,
                     const nlohmann::json& info) const;

  ExperimentConfig cfg_;
  std::filesystem::path root_;
  std::ostream* log_;
};

}  // namespace badgr::harness

#endif  // BADGR_HARNESS_PIPELINE_H_
