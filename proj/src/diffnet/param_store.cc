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

#include "badgr/diffnet/param_store.h"

#include <cmath>
#include <cstring>
#include <fstream>

#include "badgr/common/hash.h"

namespace badgr::diffnet {

size_t ParamStore::add(const std::string& name, Tensor init) {
  if (contains(name)) throw std::invalid_argument("ParamStore: duplicate parameter " + name);
  Tensor zeros(init.shape(), 0.0);
  entries_.push_back({name, std::move(init), zeros, zeros});
  return entries_.size() - 1;
}

size_t ParamStore::index(const std::string& name) const {
  for (size_t i = 0; i < entries_.size(); ++i)
    if (entries_[i].name == name) return i;
  throw std::out_of_range("ParamStore: no parameter " + name);
}

bool ParamStore::contains(const std::string& name) const {
  for (const Entry& e : entries_)
    if (e.name == name) return true;
  return false;
}

size_t ParamStore::num_scalars() const {
  size_t n = 0;
  for (const Entry& e : entries_) n += e.value.size();
  return n;
}

std::vector<Var> ParamStore::bind(Tape& tape, bool trainable) const {
  std::vector<Var> out;
  out.reserve(entries_.size());
  for (const Entry& e : entries_) {
    out.push_back(trainable ? tape.variable(e.value) : tape.constant(e.value));
  }
  return out;
}

std::vector<Tensor> ParamStore::gradients(const std::vector<Var>& bound) {
  std::vector<Tensor> out;
  out.reserve(bound.size());
  for (const Var& v : bound) {
    const Tensor& g = v.grad();
    out.push_back(g.size() == v.value().size() ? g : Tensor(v.shape(), 0.0));
  }
  return out;
}

void ParamStore::reset_optimizer() {
  for (Entry& e : entries_) {
    e.m = Tensor(e.value.shape(), 0.0);
    e.v = Tensor(e.value.shape(), 0.0);
  }
  step_ = 0;
}

size_t ParamStore::copy_matching(const ParamStore& other) {
  size_t n = 0;
  for (Entry& e : entries_) {
    for (const Entry& o : other.entries_) {
      if (o.name == e.name && o.value.shape() == e.value.shape()) {
        e.value = o.value;
        ++n;
      }
    }
  }
  return n;
}

uint64_t ParamStore::hash() const {
  Fnv1a h;
  for (const Entry& e : entries_) {
    h.update(e.name);
    for (size_t d : e.value.shape()) h.update_pod(static_cast<uint64_t>(d));
    for (double v : e.value.values()) h.update_pod(v);
  }
  return h.digest();
}

nlohmann::json ParamStore::to_json() const {
  nlohmann::json params = nlohmann::json::array();
  for (const Entry& e : entries_) {
    params.push_back({{"name", e.name},
                      {"shape", e.value.shape()},
                      {"values", std::vector<double>(e.value.values().begin(), e.value.values().end())}});
  }
  return {{"step", step_}, {"params", params}};
}

ParamStore ParamStore::from_json(const nlohmann::json& j) {
  ParamStore s;
  for (const auto& p : j.at("params")) {
    s.add(p.at("name").get<std::string>(),
          Tensor(p.at("shape").get<Shape>(), p.at("values").get<std::vector<double>>()));
  }
  s.step_ = j.value("step", int64_t{0});
  return s;
}

void adam_update(ParamStore& store, const std::vector<Tensor>& grads, const AdamConfig& cfg) {
  if (grads.size() != store.entries_.size()) {
    throw ShapeError("adam_update: " + std::to_string(grads.size()) + " gradients for " +
                     std::to_string(store.entries_.size()) + " parameters");
  }
  for (size_t i = 0; i < grads.size(); ++i) {
    const ParamStore::Entry& e = store.entries_[i];
    if (grads[i].shape() != e.value.shape()) {
      throw ShapeError("adam_update: gradient " + shape_str(grads[i].shape()) + " for " + e.name +
                       " " + shape_str(e.value.shape()));
    }
    if (!grads[i].all_finite()) {
      throw NonFiniteError("adam_update: non-finite gradient for " + e.name);
    }
  }
  store.step_ += 1;
  const double t = static_cast<double>(store.step_);
  const double c1 = 1.0 - std::pow(cfg.beta1, t);
  const double c2 = 1.0 - std::pow(cfg.beta2, t);
  for (size_t i = 0; i < grads.size(); ++i) {
    ParamStore::Entry& e = store.entries_[i];
    const Tensor& g = grads[i];
    for (size_t k = 0; k < g.size(); ++k) {
      e.m[k] = cfg.beta1 * e.m[k] + (1.0 - cfg.beta1) * g[k];
      e.v[k] = cfg.beta2 * e.v[k] + (1.0 - cfg.beta2) * g[k] * g[k];
      e.value[k] -= cfg.lr * (e.m[k] / c1) / (std::sqrt(e.v[k] / c2) + cfg.eps);
    }
  }
}

void save_checkpoint(const std::string& path, const ParamStore& store,
                     const nlohmann::json& metadata) {
  nlohmann::json j = store.to_json();
  j["format"] = "badgr-checkpoint";
  j["version"] = 1;
  j["metadata"] = metadata;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_checkpoint: cannot open " + path);
  out << j.dump() << '\n';
  if (!out) throw std::runtime_error("save_checkpoint: write failed for " + path);
}

ParamStore load_checkpoint(const std::string& path, nlohmann::json* metadata) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_checkpoint: cannot open " + path);
  nlohmann::json j = nlohmann::json::parse(in);
  if (j.value("format", "") != "badgr-checkpoint" || j.value("version", 0) != 1) {
    throw std::runtime_error("load_checkpoint: " + path + " is not a version 1 checkpoint");
  }
  if (metadata) *metadata = j.value("metadata", nlohmann::json::object());
  return ParamStore::from_json(j);
}

}  // namespace badgr::diffnet
