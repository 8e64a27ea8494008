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

#ifndef BADGR_DIFFNET_TENSOR_H_
#define BADGR_DIFFNET_TENSOR_H_

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace badgr::diffnet {

using Shape = std::vector<size_t>;

class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::string shape_str(const Shape& s);
size_t shape_size(const Shape& s);

// Dense row-major array of doubles. Rank 0 (scalar), 1 or 2 in practice.
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(Shape shape, double fill = 0.0);
  Tensor(Shape shape, std::vector<double> values);

  static Tensor scalar(double v) { return Tensor(Shape{}, {v}); }

  const Shape& shape() const { return shape_; }
  size_t rank() const { return shape_.size(); }
  size_t size() const { return values_.size(); }
  size_t dim(size_t i) const { return shape_.at(i); }
  // Rank-2 helpers; a rank-1 tensor is treated as a single row.
  size_t rows() const;
  size_t cols() const;

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }
  double* data() { return values_.data(); }
  const double* data() const { return values_.data(); }
  double& operator[](size_t i) { return values_[i]; }
  double operator[](size_t i) const { return values_[i]; }
  double& at(size_t r, size_t c) { return values_[r * cols() + c]; }
  double at(size_t r, size_t c) const { return values_[r * cols() + c]; }

  Tensor reshaped(Shape shape) const;
  bool all_finite() const;

  friend bool operator==(const Tensor&, const Tensor&) = default;

 private:
  Shape shape_;
  std::vector<double> values_;
};

}  // namespace badgr::diffnet

#endif  // BADGR_DIFFNET_TENSOR_H_
