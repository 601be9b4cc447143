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

#ifndef EPA_FIXED_POINT_HPP_
#define EPA_FIXED_POINT_HPP_

#include <vector>

#include "epa/strategy.hpp"

namespace epa {

struct FixedPointOptions {
  double damping = 0.5;
  double residual_tol = 1e-12;
  int max_iter = 20000;
  // The step is halved when the residual exceeds its value this many
  // iterations earlier.
  int oscillation_window = 10;
  // After absolute convergence, up to this many undamped steps, stopping once
  // every entry has settled to `polish_relative_tol` of its own size. Needed
  // when orderings among exponentially small entries matter.
  int polish_steps = 0;
  double polish_relative_tol = 1e-9;
};

template <typename Scalar>
struct FixedPointResult {
  StrategyProfile<Scalar> profile;
  Scalar residual;  // sup-norm of map(profile) - profile
  int iterations = 0;
  bool converged = false;
  double final_damping = 0;
  Scalar relative_residual = Scalar(-1);  // set when polishing ran
};

template <typename Scalar>
Scalar relative_change(const StrategyProfile<Scalar>& next,
                       const StrategyProfile<Scalar>& x) {
  const Scalar dl = ((next.low - x.low).cwiseAbs().array() / x.low.array()).maxCoeff();
  const Scalar dh = ((next.high - x.high).cwiseAbs().array() / x.high.array()).maxCoeff();
  return dl > dh ? dl : dh;
}

template <typename Scalar, typename Map>
void polish(const Map& map, FixedPointResult<Scalar>& r,
            const FixedPointOptions& opts) {
  const Scalar tol(opts.residual_tol), rel_tol(opts.polish_relative_tol);
  StrategyProfile<Scalar> x = r.profile;
  for (int k = 0; k < opts.polish_steps; ++k) {
    const StrategyProfile<Scalar> fx = map(x);
    const StrategyProfile<Scalar> ffx = map(fx);
    const Scalar res = sup_distance(ffx, fx);
    if (res > tol) return;
    r.profile = fx;
    r.residual = res;
    r.relative_residual = relative_change(ffx, fx);
    ++r.iterations;
    if (r.relative_residual <= rel_tol) return;
    x = fx;
  }
}

// Damped iteration x <- (1 - a) x + a map(x). Returns the first iterate with
// residual <= tol, or the best iterate seen, flagged as not converged.
template <typename Scalar, typename Map>
FixedPointResult<Scalar> damped_fixed_point(const Map& map,
                                            StrategyProfile<Scalar> x,
                                            const FixedPointOptions& opts) {
  double alpha = opts.damping;
  const Scalar tol(opts.residual_tol);
  std::vector<Scalar> history;
  FixedPointResult<Scalar> best{x, Scalar(-1), 0, false, alpha};
  for (int it = 0; it < opts.max_iter; ++it) {
    const StrategyProfile<Scalar> fx = map(x);
    const Scalar res = sup_distance(fx, x);
    if (best.residual < Scalar(0) || res < best.residual) {
      best = {x, res, it, false, alpha};
    }
    if (res <= tol) {
      FixedPointResult<Scalar> out{x, res, it, true, alpha};
      if (opts.polish_steps > 0) polish(map, out, opts);
      return out;
    }
    history.push_back(res);
    const auto w = static_cast<std::size_t>(opts.oscillation_window);
    if (history.size() > w && res > history[history.size() - 1 - w]) {
      alpha = std::max(alpha / 2, 1e-6);
      history.clear();
    }
    const Scalar a(alpha);
    x.low = (Scalar(1) - a) * x.low + a * fx.low;
    x.high = (Scalar(1) - a) * x.high + a * fx.high;
    x.low /= x.low.sum();
    x.high /= x.high.sum();
  }
  best.iterations = opts.max_iter;
  return best;
}

}  // namespace epa

#endif  // EPA_FIXED_POINT_HPP_
