// Copyright 2026 The epalab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "epa/qre.hpp"

namespace epa {

std::vector<double> default_lambda_schedule(double start, double ratio,
                                            double cap) {
  if (!(start > 0) || !(ratio > 1) || !(cap >= start)) {
    throw std::invalid_argument("bad precision schedule parameters");
  }
  std::vector<double> out;
  for (double l = start; l < cap; l *= ratio) out.push_back(l);
  out.push_back(cap);
  return out;
}

namespace {

bool settled(const QREPath<double>& path, const PathLimit<double>& limit,
             const PathOptions& options) {
  if (options.stable_window <= 0) return limit.converged;
  return limit.converged && path.stable_count >= options.stable_window;
}

StrategyProfile<double> to_double_profile(const StrategyProfile<Quad>& s) {
  StrategyProfile<double> out = s.cast<double>();
  const double floor = std::numeric_limits<double>::min();
  out.low = out.low.cwiseMax(floor);
  out.high = out.high.cwiseMax(floor);
  return out;
}

}  // namespace

LimitTrace trace_to_limit(const AuctionGame<Rational>& game,
                          const LogisticConfig& config,
                          const PathOptions& options,
                          const LimitOptions& limit_options) {
  const AuctionGame<double> coarse = game.cast<double>();
  LimitTrace out;
  out.path = trace_qre_path(coarse, limit_options.schedule, config, options);
  out.limit = path_limit(coarse, out.path, options.nash_tol);
  const double from = out.path.records.back().lambda;
  if (settled(out.path, out.limit, options) ||
      !(limit_options.extension_cap > from)) {
    return out;
  }
  if (!(limit_options.extension_ratio > 1)) {
    throw std::invalid_argument("extension ratio must exceed 1");
  }
  std::vector<double> schedule;
  for (double l = from * limit_options.extension_ratio;
       l < limit_options.extension_cap; l *= limit_options.extension_ratio) {
    schedule.push_back(l);
  }
  schedule.push_back(limit_options.extension_cap);

  // Damped steps are hopeless at this precision; go straight to Newton.
  LogisticConfig newton = config;
  newton.newton_after = 1;
  newton.max_iter = 2;
  const AuctionGame<Quad> fine = game.cast<Quad>();
  const StrategyProfile<Quad> start =
      out.path.records.back().profile.cast<Quad>();
  const QREPath<Quad> tail =
      trace_qre_path<Quad>(fine, schedule, newton, options, start, from);
  for (const auto& r : tail.records) {
    out.path.records.push_back({r.lambda, to_double_profile(r.profile),
                                static_cast<double>(r.residual), r.converged,
                                r.payoff_determinant_bid});
  }
  out.extended_points = static_cast<int>(tail.records.size());
  out.path.stopped_early = tail.stopped_early;
  out.path.stable_count = tail.stable_count;
  const PathLimit<Quad> fine_limit = path_limit(fine, tail, options.nash_tol);
  out.limit = rounded_limit(coarse, fine_limit.profile.cast<double>(),
                            fine_limit.converged, options.nash_tol);
  return out;
}

}  // namespace epa
