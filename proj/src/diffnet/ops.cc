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

#include "badgr/diffnet/ops.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>

namespace badgr::diffnet {
namespace {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MapC = Eigen::Map<const RowMat>;
using Map = Eigen::Map<RowMat>;

[[noreturn]] void shape_fail(const char* op, const Shape& a, const Shape& b) {
  throw ShapeError(std::string(op) + ": incompatible shapes " + shape_str(a) + " and " +
                   shape_str(b));
}

void check_same_tape(const char* op, Var a, Var b) {
  if (a.tape() != b.tape() || a.tape() == nullptr) {
    throw std::invalid_argument(std::string(op) + ": operands on different tapes");
  }
}

bool is_row_bias(const Shape& a, const Shape& b) {
  if (a.size() != 2) return false;
  if (b.size() == 1) return b[0] == a[1];
  if (b.size() == 2) return b[0] == 1 && b[1] == a[1] && a[0] != 1;
  return false;
}

template <typename F, typename G>
Var unary(Var a, F f, G dfdx_from_y_x) {
  Tape& t = *a.tape();
  Tensor y = a.value();
  for (double& v : y.values()) v = f(v);
  return t.push(std::move(y), {a}, [a, dfdx_from_y_x](Tape& tape, size_t self) {
    if (!tape.requires_grad(a.id())) return;
    const Tensor& g = tape.grad_or_empty(self);
    const Tensor& y = tape.value(self);
    const Tensor& x = tape.value(a.id());
    Tensor& ga = tape.grad(a.id());
    for (size_t i = 0; i < g.size(); ++i) ga[i] += g[i] * dfdx_from_y_x(y[i], x[i]);
  });
}

}  // namespace

Var matmul(Var a, Var b) {
  check_same_tape("matmul", a, b);
  const Tensor& av = a.value();
  const Tensor& bv = b.value();
  if (av.rank() != 2 || bv.rank() != 2 || av.dim(1) != bv.dim(0)) {
    shape_fail("matmul", av.shape(), bv.shape());
  }
  const size_t n = av.dim(0), k = av.dim(1), m = bv.dim(1);
  Tensor y({n, m});
  Map(y.data(), n, m).noalias() = MapC(av.data(), n, k) * MapC(bv.data(), k, m);
  return a.tape()->push(std::move(y), {a, b}, [a, b, n, k, m](Tape& t, size_t self) {
    MapC g(t.grad_or_empty(self).data(), n, m);
    if (t.requires_grad(a.id())) {
      Map(t.grad(a.id()).data(), n, k).noalias() += g * MapC(t.value(b.id()).data(), k, m).transpose();
    }
    if (t.requires_grad(b.id())) {
      Map(t.grad(b.id()).data(), k, m).noalias() += MapC(t.value(a.id()).data(), n, k).transpose() * g;
    }
  });
}

namespace {

Var add_like(const char* op, Var a, Var b, double sign) {
  check_same_tape(op, a, b);
  const Tensor& av = a.value();
  const Tensor& bv = b.value();
  Tensor y = av;
  if (av.shape() == bv.shape()) {
    for (size_t i = 0; i < y.size(); ++i) y[i] += sign * bv[i];
    return a.tape()->push(std::move(y), {a, b}, [a, b, sign](Tape& t, size_t self) {
      const Tensor& g = t.grad_or_empty(self);
      if (t.requires_grad(a.id())) {
        Tensor& ga = t.grad(a.id());
        for (size_t i = 0; i < g.size(); ++i) ga[i] += g[i];
      }
      if (t.requires_grad(b.id())) {
        Tensor& gb = t.grad(b.id());
        for (size_t i = 0; i < g.size(); ++i) gb[i] += sign * g[i];
      }
    });
  }
  if (!is_row_bias(av.shape(), bv.shape())) shape_fail(op, av.shape(), bv.shape());
  const size_t n = av.dim(0), m = av.dim(1);
  for (size_t r = 0; r < n; ++r)
    for (size_t c = 0; c < m; ++c) y[r * m + c] += sign * bv[c];
  return a.tape()->push(std::move(y), {a, b}, [a, b, sign, n, m](Tape& t, size_t self) {
    const Tensor& g = t.grad_or_empty(self);
    if (t.requires_grad(a.id())) {
      Tensor& ga = t.grad(a.id());
      for (size_t i = 0; i < g.size(); ++i) ga[i] += g[i];
    }
    if (t.requires_grad(b.id())) {
      Tensor& gb = t.grad(b.id());
      for (size_t r = 0; r < n; ++r)
        for (size_t c = 0; c < m; ++c) gb[c] += sign * g[r * m + c];
    }
  });
}

}  // namespace

Var add(Var a, Var b) { return add_like("add", a, b, 1.0); }
Var sub(Var a, Var b) { return add_like("sub", a, b, -1.0); }

Var mul(Var a, Var b) {
  check_same_tape("mul", a, b);
  const Tensor& av = a.value();
  const Tensor& bv = b.value();
  if (av.shape() != bv.shape()) shape_fail("mul", av.shape(), bv.shape());
  Tensor y = av;
  for (size_t i = 0; i < y.size(); ++i) y[i] *= bv[i];
  return a.tape()->push(std::move(y), {a, b}, [a, b](Tape& t, size_t self) {
    const Tensor& g = t.grad_or_empty(self);
    if (t.requires_grad(a.id())) {
      Tensor& ga = t.grad(a.id());
      const Tensor& bv = t.value(b.id());
      for (size_t i = 0; i < g.size(); ++i) ga[i] += g[i] * bv[i];
    }
    if (t.requires_grad(b.id())) {
      Tensor& gb = t.grad(b.id());
      const Tensor& av = t.value(a.id());
      for (size_t i = 0; i < g.size(); ++i) gb[i] += g[i] * av[i];
    }
  });
}

Var scale(Var a, double s) {
  return unary(a, [s](double x) { return s * x; }, [s](double, double) { return s; });
}

Var tanh(Var a) {
  return unary(a, [](double x) { return std::tanh(x); },
               [](double y, double) { return 1.0 - y * y; });
}

Var sigmoid(Var a) {
  return unary(
      a,
      [](double x) {
        if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
        const double e = std::exp(x);
        return e / (1.0 + e);
      },
      [](double y, double) { return y * (1.0 - y); });
}

Var relu(Var a) {
  return unary(a, [](double x) { return x > 0 ? x : 0.0; },
               [](double, double x) { return x > 0 ? 1.0 : 0.0; });
}

Var concat(const std::vector<Var>& parts, size_t axis) {
  if (parts.empty()) throw ShapeError("concat: no inputs");
  Tape& t = *parts[0].tape();
  const Shape& s0 = parts[0].shape();
  if (s0.empty() || axis >= s0.size()) {
    throw ShapeError("concat: axis " + std::to_string(axis) + " invalid for " + shape_str(s0));
  }
  Shape out = s0;
  out[axis] = 0;
  for (const Var& p : parts) {
    if (p.tape() != &t) throw std::invalid_argument("concat: operands on different tapes");
    const Shape& s = p.shape();
    bool ok = s.size() == s0.size();
    for (size_t d = 0; ok && d < s.size(); ++d) ok = d == axis || s[d] == s0[d];
    if (!ok) shape_fail("concat", s0, s);
    out[axis] += s[axis];
  }
  // View every operand as [outer x inner] blocks split along the axis.
  const size_t outer = axis == 0 ? 1 : s0[0];
  std::vector<size_t> widths;
  for (const Var& p : parts) widths.push_back(p.value().size() / outer);
  const size_t total = std::accumulate(widths.begin(), widths.end(), size_t{0});
  Tensor y(out);
  size_t off = 0;
  for (size_t p = 0; p < parts.size(); ++p) {
    const Tensor& v = parts[p].value();
    for (size_t r = 0; r < outer; ++r)
      std::copy_n(v.data() + r * widths[p], widths[p], y.data() + r * total + off);
    off += widths[p];
  }
  return t.push(std::move(y), parts, [parts, widths, outer, total](Tape& tape, size_t self) {
    const Tensor& g = tape.grad_or_empty(self);
    size_t off = 0;
    for (size_t p = 0; p < parts.size(); ++p) {
      if (tape.requires_grad(parts[p].id())) {
        Tensor& gp = tape.grad(parts[p].id());
        for (size_t r = 0; r < outer; ++r)
          for (size_t c = 0; c < widths[p]; ++c) gp[r * widths[p] + c] += g[r * total + off + c];
      }
      off += widths[p];
    }
  });
}

Var slice(Var a, size_t axis, size_t begin, size_t end) {
  const Shape& s = a.shape();
  if (s.empty() || axis >= s.size() || s.size() > 2 || begin > end || end > s[axis]) {
    throw ShapeError("slice: range [" + std::to_string(begin) + "," + std::to_string(end) +
                     ") on axis " + std::to_string(axis) + " invalid for " + shape_str(s));
  }
  Shape out = s;
  out[axis] = end - begin;
  const size_t outer = axis == 0 ? 1 : s[0];
  const size_t inner = s.size() == 2 && axis == 0 ? s[1] : 1;
  const size_t width = a.value().size() / outer;  // elements per outer row
  const size_t lo = begin * inner, n = (end - begin) * inner;
  Tensor y(out);
  for (size_t r = 0; r < outer; ++r)
    std::copy_n(a.value().data() + r * width + lo, n, y.data() + r * n);
  return a.tape()->push(std::move(y), {a}, [a, outer, width, lo, n](Tape& t, size_t self) {
    if (!t.requires_grad(a.id())) return;
    const Tensor& g = t.grad_or_empty(self);
    Tensor& ga = t.grad(a.id());
    for (size_t r = 0; r < outer; ++r)
      for (size_t c = 0; c < n; ++c) ga[r * width + lo + c] += g[r * n + c];
  });
}

Var reshape(Var a, Shape shape) {
  Tensor y = a.value().reshaped(std::move(shape));
  return a.tape()->push(std::move(y), {a}, [a](Tape& t, size_t self) {
    if (!t.requires_grad(a.id())) return;
    const Tensor& g = t.grad_or_empty(self);
    Tensor& ga = t.grad(a.id());
    for (size_t i = 0; i < g.size(); ++i) ga[i] += g[i];
  });
}

Var reduce_sum(Var a) {
  double s = 0.0;
  for (double v : a.value().values()) s += v;
  return a.tape()->push(Tensor::scalar(s), {a}, [a](Tape& t, size_t self) {
    if (!t.requires_grad(a.id())) return;
    const double g = t.grad_or_empty(self)[0];
    for (double& v : t.grad(a.id()).values()) v += g;
  });
}

Var reduce_mean(Var a) {
  const size_t n = a.value().size();
  if (n == 0) throw ShapeError("reduce_mean: empty tensor " + shape_str(a.shape()));
  return scale(reduce_sum(a), 1.0 / static_cast<double>(n));
}

Var softmax_cross_entropy(Var logits, Var targets) {
  check_same_tape("softmax_cross_entropy", logits, targets);
  const Tensor& x = logits.value();
  const Tensor& y = targets.value();
  if (x.shape() != y.shape() || x.rank() == 0 || x.rank() > 2) {
    shape_fail("softmax_cross_entropy", x.shape(), y.shape());
  }
  const size_t n = x.rows(), c = x.cols();
  auto probs = std::make_shared<std::vector<double>>(x.size());
  Tensor out({n});
  for (size_t r = 0; r < n; ++r) {
    const double* row = x.data() + r * c;
    const double mx = *std::max_element(row, row + c);
    double z = 0.0;
    for (size_t j = 0; j < c; ++j) z += std::exp(row[j] - mx);
    const double lse = mx + std::log(z);
    double loss = 0.0;
    for (size_t j = 0; j < c; ++j) {
      (*probs)[r * c + j] = std::exp(row[j] - lse);
      loss -= y[r * c + j] * (row[j] - lse);
    }
    out[r] = loss;
  }
  return logits.tape()->push(
      std::move(out), {logits, targets}, [logits, targets, probs, n, c](Tape& t, size_t self) {
        const Tensor& g = t.grad_or_empty(self);
        const Tensor& x = t.value(logits.id());
        const Tensor& y = t.value(targets.id());
        for (size_t r = 0; r < n; ++r) {
          double ysum = 0.0;
          for (size_t j = 0; j < c; ++j) ysum += y[r * c + j];
          if (t.requires_grad(logits.id())) {
            Tensor& gx = t.grad(logits.id());
            for (size_t j = 0; j < c; ++j)
              gx[r * c + j] += g[r] * ((*probs)[r * c + j] * ysum - y[r * c + j]);
          }
          if (t.requires_grad(targets.id())) {
            const double* row = x.data() + r * c;
            const double mx = *std::max_element(row, row + c);
            double z = 0.0;
            for (size_t j = 0; j < c; ++j) z += std::exp(row[j] - mx);
            const double lse = mx + std::log(z);
            Tensor& gy = t.grad(targets.id());
            for (size_t j = 0; j < c; ++j) gy[r * c + j] -= g[r] * (row[j] - lse);
          }
        }
      });
}

Var sigmoid_cross_entropy(Var logits, Var targets) {
  check_same_tape("sigmoid_cross_entropy", logits, targets);
  const Tensor& x = logits.value();
  const Tensor& y = targets.value();
  if (x.shape() != y.shape()) shape_fail("sigmoid_cross_entropy", x.shape(), y.shape());
  Tensor out(x.shape());
  for (size_t i = 0; i < x.size(); ++i) {
    out[i] = std::max(x[i], 0.0) - x[i] * y[i] + std::log1p(std::exp(-std::abs(x[i])));
  }
  return logits.tape()->push(std::move(out), {logits, targets}, [logits, targets](Tape& t, size_t self) {
    const Tensor& g = t.grad_or_empty(self);
    const Tensor& x = t.value(logits.id());
    const Tensor& y = t.value(targets.id());
    if (t.requires_grad(logits.id())) {
      Tensor& gx = t.grad(logits.id());
      for (size_t i = 0; i < g.size(); ++i) {
        const double p = x[i] >= 0 ? 1.0 / (1.0 + std::exp(-x[i]))
                                   : std::exp(x[i]) / (1.0 + std::exp(x[i]));
        gx[i] += g[i] * (p - y[i]);
      }
    }
    if (t.requires_grad(targets.id())) {
      Tensor& gy = t.grad(targets.id());
      for (size_t i = 0; i < g.size(); ++i) gy[i] -= g[i] * x[i];
    }
  });
}

Var squared_error(Var a, Var b) {
  check_same_tape("squared_error", a, b);
  const Tensor& av = a.value();
  const Tensor& bv = b.value();
  if (av.shape() != bv.shape()) shape_fail("squared_error", av.shape(), bv.shape());
  Tensor y(av.shape());
  for (size_t i = 0; i < y.size(); ++i) y[i] = (av[i] - bv[i]) * (av[i] - bv[i]);
  return a.tape()->push(std::move(y), {a, b}, [a, b](Tape& t, size_t self) {
    const Tensor& g = t.grad_or_empty(self);
    const Tensor& av = t.value(a.id());
    const Tensor& bv = t.value(b.id());
    if (t.requires_grad(a.id())) {
      Tensor& ga = t.grad(a.id());
      for (size_t i = 0; i < g.size(); ++i) ga[i] += 2.0 * g[i] * (av[i] - bv[i]);
    }
    if (t.requires_grad(b.id())) {
      Tensor& gb = t.grad(b.id());
      for (size_t i = 0; i < g.size(); ++i) gb[i] -= 2.0 * g[i] * (av[i] - bv[i]);
    }
  });
}

}  // namespace badgr::diffnet
