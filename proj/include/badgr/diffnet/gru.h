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

#ifndef BADGR_DIFFNET_GRU_H_
#define BADGR_DIFFNET_GRU_H_

#include "badgr/diffnet/tape.h"

namespace badgr::diffnet {

// Gate order in every fused matrix is (reset, update, candidate).
struct GruParams {
  Var w_x;  // [input x 3*hidden]
  Var w_h;  // [hidden x 3*hidden]
  Var b_x;  // [3*hidden]
  Var b_h;  // [3*hidden]
};

size_t gru_hidden_size(const GruParams& p);
size_t gru_input_size(const GruParams& p);

// r = sigmoid(x W_xr + b_xr + h W_hr + b_hr)
// z = sigmoid(x W_xz + b_xz + h W_hz + b_hz)
// n = tanh(x W_xn + b_xn + r * (h W_hn + b_hn))
// h' = (1 - z) * n + z * h
// h is [batch x hidden] and x is [batch x input]; rank-1 h and x are
// treated as a batch of one and the result is rank-1 as well.
Var gru_cell(Var h, Var x, const GruParams& p);

}  // namespace badgr::diffnet

#endif  // BADGR_DIFFNET_GRU_H_
