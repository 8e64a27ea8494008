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

#include "badgr/diffnet/gru.h"

#include "badgr/diffnet/ops.h"

namespace badgr::diffnet {

size_t gru_hidden_size(const GruParams& p) { return p.w_h.value().dim(0); }
size_t gru_input_size(const GruParams& p) { return p.w_x.value().dim(0); }

Var gru_cell(Var h, Var x, const GruParams& p) {
  const Shape& ws = p.w_h.shape();
  if (ws.size() != 2 || ws[1] != 3 * ws[0] || p.w_x.shape().size() != 2 ||
      p.w_x.shape()[1] != ws[1] || p.b_x.value().size() != ws[1] ||
      p.b_h.value().size() != ws[1]) {
    throw ShapeError("gru_cell: inconsistent parameters w_x " + shape_str(p.w_x.shape()) +
                     " w_h " + shape_str(ws));
  }
  const size_t hid = ws[0];
  const size_t in = p.w_x.shape()[0];
  const bool vec = h.shape().size() == 1;
  if (vec != (x.shape().size() == 1)) {
    throw ShapeError("gru_cell: mixed rank h " + shape_str(h.shape()) + " x " +
                     shape_str(x.shape()));
  }
  if (vec) {
    if (h.shape()[0] != hid || x.shape()[0] != in) {
      throw ShapeError("gru_cell: expected h [" + std::to_string(hid) + "] x [" +
                       std::to_string(in) + "], got " + shape_str(h.shape()) + " " +
                       shape_str(x.shape()));
    }
    Var out = gru_cell(reshape(h, {1, hid}), reshape(x, {1, in}), p);
    return reshape(out, {hid});
  }
  if (h.shape().size() != 2 || x.shape().size() != 2 || h.shape()[1] != hid ||
      x.shape()[1] != in || h.shape()[0] != x.shape()[0]) {
    throw ShapeError("gru_cell: expected h [B x " + std::to_string(hid) + "] x [B x " +
                     std::to_string(in) + "], got " + shape_str(h.shape()) + " " +
                     shape_str(x.shape()));
  }
  Var gx = add(matmul(x, p.w_x), p.b_x);
  Var gh = add(matmul(h, p.w_h), p.b_h);
  Var r = sigmoid(add(slice(gx, 1, 0, hid), slice(gh, 1, 0, hid)));
  Var z = sigmoid(add(slice(gx, 1, hid, 2 * hid), slice(gh, 1, hid, 2 * hid)));
  Var n = tanh(add(slice(gx, 1, 2 * hid, 3 * hid), mul(r, slice(gh, 1, 2 * hid, 3 * hid))));
  return add(n, mul(z, sub(h, n)));
}

}  // namespace badgr::diffnet
