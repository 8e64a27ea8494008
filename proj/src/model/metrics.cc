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

#include "badgr/model/metrics.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace badgr::model {

double roc_auc(std::span<const double> scores, std::span<const uint8_t> labels) {
  if (scores.size() != labels.size()) throw std::invalid_argument("roc_auc: size mismatch");
  std::vector<size_t> idx(scores.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return scores[a] < scores[b]; });
  double pos = 0, neg = 0, rank_sum = 0;
  for (size_t i = 0; i < idx.size();) {
    size_t j = i;
    while (j < idx.size() && scores[idx[j]] == scores[idx[i]]) ++j;
    const double mid_rank = 0.5 * static_cast<double>(i + j + 1);  // 1-based average
    for (size_t k = i; k < j; ++k) {
      if (labels[idx[k]]) {
        pos += 1;
        rank_sum += mid_rank;
      } else {
        neg += 1;
      }
    }
    i = j;
  }
  if (pos == 0 || neg == 0) return std::numeric_limits<double>::quiet_NaN();
  return (rank_sum - pos * (pos + 1) / 2) / (pos * neg);
}

double accuracy(std::span<const double> scores, std::span<const uint8_t> labels, double threshold) {
  if (scores.size() != labels.size()) throw std::invalid_argument("accuracy: size mismatch");
  if (scores.empty()) return std::numeric_limits<double>::quiet_NaN();
  size_t hit = 0;
  for (size_t i = 0; i < scores.size(); ++i) hit += (scores[i] > threshold) == (labels[i] != 0);
  return static_cast<double>(hit) / static_cast<double>(scores.size());
}

}  // namespace badgr::model
