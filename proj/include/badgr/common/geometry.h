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

#ifndef BADGR_COMMON_GEOMETRY_H_
#define BADGR_COMMON_GEOMETRY_H_

#include <cmath>
#include <numbers>

namespace badgr {

inline constexpr double kPi = std::numbers::pi;

// Planar pose, heading in radians.
struct Pose2 {
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;

  friend bool operator==(const Pose2&, const Pose2&) = default;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  double norm() const { return std::hypot(x, y); }
};

// Velocity command for the differential-drive base.
struct Action {
  double v = 0.0;  // m/s
  double w = 0.0;  // rad/s

  friend bool operator==(const Action&, const Action&) = default;
};

// Wraps an angle into (-pi, pi].
double wrap_angle(double angle);

// Expresses the world point (x, y) in the frame of `origin`.
Vec2 to_local(const Pose2& origin, double x, double y);

// Expresses `p` in the frame of `origin` (heading included).
Pose2 relative_pose(const Pose2& origin, const Pose2& p);

// Unsigned angle in [0, pi] between two planar vectors. Returns pi when
// either vector is zero.
double angle_between(const Vec2& a, const Vec2& b);

}  // namespace badgr

#endif  // BADGR_COMMON_GEOMETRY_H_
