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

#ifndef BADGR_MODEL_METRICS_H_
#define BADGR_MODEL_METRICS_H_

#include <cstdint>
#include <span>

namespace badgr::model {

// Area under the ROC curve via the Mann-Whitney statistic, ties counted
// half. Returns NaN when either class is absent.
double roc_auc(std::span<const double> scores, std::span<const uint8_t> labels);

double accuracy(std::span<const double> scores, std::span<const uint8_t> labels,
                double threshold = 0.5);

}  // namespace badgr::model

#endif  // BADGR_MODEL_METRICS_H_
