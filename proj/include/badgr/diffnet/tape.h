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

#ifndef BADGR_DIFFNET_TAPE_H_
#define BADGR_DIFFNET_TAPE_H_

#include <functional>
#include <vector>

#include "badgr/diffnet/tensor.h"

namespace badgr::diffnet {

class Tape;

// Handle to a node on a Tape.
class Var {
 public:
  Var() = default;
  Var(Tape* tape, size_t id) : tape_(tape), id_(id) {}

  Tape* tape() const { return tape_; }
  size_t id() const { return id_; }
  const Tensor& value() const;
  const Tensor& grad() const;
  const Shape& shape() const { return value().shape(); }
  bool requires_grad() const;

 private:
  Tape* tape_ = nullptr;
  size_t id_ = 0;
};

// Records primitive operations in execution (hence topological) order.
// backward() walks the nodes once, newest first, accumulating gradients
// into every node that requires them. Forward values are never modified.
class Tape {
 public:
  using BackwardFn = std::function<void(Tape&, size_t self)>;

  // With record = false no backward closures are kept (inference).
  explicit Tape(bool record = true) : record_(record) {}
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  Var constant(Tensor value);
  Var variable(Tensor value);

  // Used by primitives: adds a node whose gradient flows to `inputs`.
  Var push(Tensor value, const std::vector<Var>& inputs, BackwardFn backward);

  void backward(Var root);

  const Tensor& value(size_t id) const { return nodes_[id].value; }
  // Gradient storage, allocated (zeroed) on first access.
  Tensor& grad(size_t id);
  const Tensor& grad_or_empty(size_t id) const { return nodes_[id].grad; }
  bool requires_grad(size_t id) const { return nodes_[id].requires_grad; }
  bool recording() const { return record_; }
  size_t size() const { return nodes_.size(); }

 private:
  struct Node {
    Tensor value;
    Tensor grad;
    bool requires_grad = false;
    BackwardFn backward;
  };
  std::vector<Node> nodes_;
  bool record_;
};

}  // namespace badgr::diffnet

#endif  // BADGR_DIFFNET_TAPE_H_
