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

#ifndef BADGR_DIFFNET_PARAM_STORE_H_
#define BADGR_DIFFNET_PARAM_STORE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "badgr/diffnet/tape.h"
#include "json.hpp"

namespace badgr::diffnet {

class NonFiniteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// Named parameters in insertion order with Adam moment accumulators.
class ParamStore {
 public:
  struct Entry {
    std::string name;
    Tensor value;
    Tensor m;
    Tensor v;
  };

  // Returns the index of the new parameter. Names must be unique.
  size_t add(const std::string& name, Tensor init);
  size_t index(const std::string& name) const;
  bool contains(const std::string& name) const;

  Tensor& value(size_t i) { return entries_.at(i).value; }
  const Tensor& value(size_t i) const { return entries_.at(i).value; }
  const Entry& entry(size_t i) const { return entries_.at(i); }
  size_t size() const { return entries_.size(); }
  size_t num_scalars() const;
  int64_t step() const { return step_; }

  // Registers every parameter on the tape, as variables or constants.
  std::vector<Var> bind(Tape& tape, bool trainable = true) const;
  // Gradients for bound parameters; zeros where nothing flowed.
  static std::vector<Tensor> gradients(const std::vector<Var>& bound);

  void reset_optimizer();
  // Copies values of identically named and shaped parameters from `other`.
  size_t copy_matching(const ParamStore& other);

  // Content hash over names, shapes and values.
  uint64_t hash() const;

  nlohmann::json to_json() const;
  static ParamStore from_json(const nlohmann::json& j);

 private:
  friend void adam_update(ParamStore&, const std::vector<Tensor>&, const AdamConfig&);
  std::vector<Entry> entries_;
  int64_t step_ = 0;
};

// Bias-corrected Adam step applied in place. Throws NonFiniteError on any
// non-finite gradient, before touching the store.
void adam_update(ParamStore& store, const std::vector<Tensor>& grads,
                 const AdamConfig& cfg = {});

// Checkpoint file: JSON object
//   {"format": "badgr-checkpoint", "version": 1, "metadata": {...},
//    "step": n, "params": [{"name", "shape", "values"}...]}
void save_checkpoint(const std::string& path, const ParamStore& store,
                     const nlohmann::json& metadata);
ParamStore load_checkpoint(const std::string& path, nlohmann::json* metadata = nullptr);

}  // namespace badgr::diffnet

#endif  // BADGR_DIFFNET_PARAM_STORE_H_
