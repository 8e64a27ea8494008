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

#ifndef BADGR_DIFFNET_OPS_H_
#define BADGR_DIFFNET_OPS_H_

#include "badgr/diffnet/tape.h"

namespace badgr::diffnet {

// All primitives throw ShapeError naming the primitive and the offending
// shapes. Rank-2 operands are [rows x cols].

// [n x k] * [k x m] -> [n x m]
Var matmul(Var a, Var b);
// Elementwise on identical shapes, or a [n x m] + [m] / [1 x m] row bias.
Var add(Var a, Var b);
Var sub(Var a, Var b);
Var mul(Var a, Var b);
Var scale(Var a, double s);
Var tanh(Var a);
Var sigmoid(Var a);
Var relu(Var a);
// Concatenate rank-2 (or rank-1 along axis 0) tensors.
Var concat(const std::vector<Var>& parts, size_t axis);
// Half-open range [begin, end) along axis.
Var slice(Var a, size_t axis, size_t begin, size_t end);
Var reshape(Var a, Shape shape);
Var reduce_sum(Var a);
Var reduce_mean(Var a);
// Row-wise softmax cross-entropy against target distributions -> [n].
Var softmax_cross_entropy(Var logits, Var targets);
// Elementwise binary cross-entropy on logits, numerically stable.
Var sigmoid_cross_entropy(Var logits, Var targets);
// Elementwise (a - b)^2.
Var squared_error(Var a, Var b);

}  // namespace badgr::diffnet

#endif  // BADGR_DIFFNET_OPS_H_
