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

#include "badgr/diffnet/tape.h"

namespace badgr::diffnet {

const Tensor& Var::value() const { return tape_->value(id_); }
const Tensor& Var::grad() const { return tape_->grad_or_empty(id_); }
bool Var::requires_grad() const { return tape_->requires_grad(id_); }

Var Tape::constant(Tensor value) {
  nodes_.push_back({std::move(value), {}, false, {}});
  return {this, nodes_.size() - 1};
}

Var Tape::variable(Tensor value) {
  nodes_.push_back({std::move(value), {}, true, {}});
  return {this, nodes_.size() - 1};
}

Var Tape::push(Tensor value, const std::vector<Var>& inputs, BackwardFn backward) {
  bool needs = false;
  for (const Var& v : inputs) needs = needs || nodes_[v.id()].requires_grad;
  Node n{std::move(value), {}, needs && record_, {}};
  if (n.requires_grad) n.backward = std::move(backward);
  nodes_.push_back(std::move(n));
  return {this, nodes_.size() - 1};
}

Tensor& Tape::grad(size_t id) {
  Node& n = nodes_[id];
  if (n.grad.size() != n.value.size() || n.grad.shape() != n.value.shape()) {
    n.grad = Tensor(n.value.shape(), 0.0);
  }
  return n.grad;
}

void Tape::backward(Var root) {
  if (root.tape() != this) throw std::invalid_argument("backward: Var from another tape");
  if (value(root.id()).size() != 1) {
    throw ShapeError("backward: root must be a scalar, got " + shape_str(value(root.id()).shape()));
  }
  if (!nodes_[root.id()].requires_grad) return;
  grad(root.id())[0] = 1.0;
  for (size_t i = root.id() + 1; i-- > 0;) {
    Node& n = nodes_[i];
    if (!n.requires_grad || !n.backward || n.grad.size() == 0) continue;
    n.backward(*this, i);
  }
}

}  // namespace badgr::diffnet
