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

#include "badgr/common/geometry.h"

#include <algorithm>

namespace badgr {

double wrap_angle(double angle) {
  double a = std::remainder(angle, 2.0 * kPi);  // [-pi, pi]
  if (a <= -kPi) a += 2.0 * kPi;
  return a;
}

Vec2 to_local(const Pose2& origin, double x, double y) {
  const double dx = x - origin.x;
  const double dy = y - origin.y;
  const double c = std::cos(origin.heading);
  const double s = std::sin(origin.heading);
  return {c * dx + s * dy, -s * dx + c * dy};
}

Pose2 relative_pose(const Pose2& origin, const Pose2& p) {
  const Vec2 local = to_local(origin, p.x, p.y);
  return {local.x, local.y, wrap_angle(p.heading - origin.heading)};
}

double angle_between(const Vec2& a, const Vec2& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) return kPi;
  const double cross = a.x * b.y - a.y * b.x;
  const double dot = a.x * b.x + a.y * b.y;
  return std::abs(std::atan2(cross, dot));
}

}  // namespace badgr
