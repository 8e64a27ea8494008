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

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "badgr/planner/planner.h"

namespace badgr::planner {

Action ActionBounds::clamp(Action a) const {
  return {std::clamp(a.v, v_min, v_max), std::clamp(a.w, w_min, w_max)};
}

void PlannerConfig::validate() const {
  if (num_samples < 1) throw std::invalid_argument("PlannerConfig: num_samples must be >= 1");
  if (horizon < 1) throw std::invalid_argument("PlannerConfig: horizon must be >= 1");
  if (!(beta >= 0 && beta <= 1)) throw std::invalid_argument("PlannerConfig: beta must be in [0, 1]");
  if (!(gamma > 0)) throw std::invalid_argument("PlannerConfig: gamma must be > 0");
  if (!(sigma_v >= 0) || !(sigma_w >= 0)) throw std::invalid_argument("PlannerConfig: sigma must be >= 0");
  if (bounds.v_min > bounds.v_max || bounds.w_min > bounds.w_max) {
    throw std::invalid_argument("PlannerConfig: empty action bounds");
  }
}

PlannerState make_planner_state(const PlannerConfig& cfg) {
  cfg.validate();
  return {Sequence(static_cast<size_t>(cfg.horizon), cfg.bounds.clamp({0.0, 0.0})), {}};
}

std::vector<Sequence> sample_sequences(const PlannerState& ps, const PlannerConfig& cfg, Rng& rng) {
  const size_t hz = static_cast<size_t>(cfg.horizon);
  if (ps.a_hat.size() != hz) {
    throw std::invalid_argument("sample_sequences: estimate length " + std::to_string(ps.a_hat.size()) +
                                " does not match horizon " + std::to_string(hz));
  }
  std::vector<Sequence> out(static_cast<size_t>(cfg.num_samples), Sequence(hz));
  for (Sequence& s : out) {
    Action prev{0.0, 0.0};
    for (size_t h = 0; h < hz; ++h) {
      const Action& next = ps.a_hat[std::min(h + 1, hz - 1)];
      const double ev = normal(rng, cfg.sigma_v);
      const double ew = normal(rng, cfg.sigma_w);
      Action a{cfg.beta * (next.v + ev) + (1.0 - cfg.beta) * prev.v,
               cfg.beta * (next.w + ew) + (1.0 - cfg.beta) * prev.w};
      s[h] = cfg.bounds.clamp(a);
      prev = s[h];
    }
  }
  return out;
}

Sequence reward_weighted_update(const std::vector<Sequence>& samples, std::span<const double> rewards,
                                double gamma) {
  if (samples.empty() || samples.size() != rewards.size()) {
    throw std::invalid_argument("reward_weighted_update: " + std::to_string(samples.size()) +
                                " samples, " + std::to_string(rewards.size()) + " rewards");
  }
  double mx = -INFINITY;
  for (double r : rewards) {
    if (!std::isfinite(r)) throw std::domain_error("reward_weighted_update: non-finite reward");
    mx = std::max(mx, r);
  }
  std::vector<double> w(rewards.size());
  double z = 0.0;
  for (size_t n = 0; n < w.size(); ++n) {
    w[n] = std::exp(gamma * (rewards[n] - mx));
    z += w[n];
  }
  const size_t hz = samples[0].size();
  Sequence out(hz, Action{0.0, 0.0});
  for (size_t n = 0; n < samples.size(); ++n) {
    if (samples[n].size() != hz) throw std::invalid_argument("reward_weighted_update: ragged samples");
    const double wn = w[n] / z;
    for (size_t h = 0; h < hz; ++h) {
      out[h].v += wn * samples[n][h].v;
      out[h].w += wn * samples[n][h].w;
    }
  }
  return out;
}

std::vector<Sequence> random_shooting(const PlannerConfig& cfg, Rng& rng) {
  std::vector<Sequence> out(static_cast<size_t>(cfg.num_samples),
                            Sequence(static_cast<size_t>(cfg.horizon)));
  for (Sequence& s : out) {
    for (Action& a : s) {
      a.v = uniform(rng, cfg.bounds.v_min, cfg.bounds.v_max);
      a.w = uniform(rng, cfg.bounds.w_min, cfg.bounds.w_max);
    }
  }
  return out;
}

}  // namespace badgr::planner
