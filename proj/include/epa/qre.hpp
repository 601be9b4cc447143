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

#ifndef EPA_QRE_HPP_
#define EPA_QRE_HPP_

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/LU>

#include "epa/auction.hpp"
#include "epa/fixed_point.hpp"
#include "epa/logistic.hpp"
#include "epa/nash.hpp"

namespace epa {

struct LogisticConfig {
  double lambda = 1.0;
  double damping = 0.5;
  double residual_tol = 1e-12;
  int max_iter = 20000;
  // Damped steps before switching to Newton's method in log-probability
  // coordinates. Zero disables the switch.
  int newton_after = 500;
  int newton_max_steps = 100;

  void validate() const {
    if (!(lambda >= 0)) throw std::invalid_argument("lambda must be >= 0");
    if (!(damping > 0 && damping <= 1)) {
      throw std::invalid_argument("damping must lie in (0, 1]");
    }
    if (!(residual_tol > 0)) throw std::invalid_argument("residual_tol <= 0");
    if (max_iter <= 0) throw std::invalid_argument("max_iter <= 0");
  }

  FixedPointOptions options() const {
    FixedPointOptions o;
    o.damping = damping;
    o.residual_tol = residual_tol;
    o.max_iter = max_iter;
    return o;
  }
};

// Each agent's logistic response to its expected utilities against `s`.
template <typename Scalar>
StrategyProfile<Scalar> logistic_map(const AuctionGame<Scalar>& game,
                                     const StrategyProfile<Scalar>& s,
                                     const Scalar& lambda) {
  return {logistic_response(utilities(game, Role::kLow, s.high), lambda),
          logistic_response(utilities(game, Role::kHigh, s.low), lambda)};
}

namespace detail {

template <typename Scalar>
Distribution<Scalar> log_softmax(const Distribution<Scalar>& u,
                                 const Scalar& lambda) {
  using std::exp;
  using std::log;
  const Scalar top = u.maxCoeff();
  const Distribution<Scalar> z = (lambda * (u.array() - top)).matrix();
  const Scalar lse = log(z.array().exp().sum());
  return (z.array() - lse).matrix();
}

template <typename Scalar>
Distribution<Scalar> floored_exp(const Distribution<Scalar>& w) {
  const Scalar floor = std::numeric_limits<Scalar>::min();
  return w.cwiseMin(Scalar(0)).array().exp().matrix().cwiseMax(floor);
}

}  // namespace detail

// Newton's method on w = log(sigma) for w = log l^lambda(U(exp w)). Positive
// by construction; exponentially small entries cost nothing.
template <typename Scalar>
FixedPointResult<Scalar> qre_newton(const AuctionGame<Scalar>& game,
                                    const Scalar& lambda,
                                    const StrategyProfile<Scalar>& init,
                                    const LogisticConfig& config) {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Distribution<Scalar>;
  const int n = game.num_bids();
  const Matrix& al = game.payoffs(Role::kLow);
  const Matrix& ah = game.payoffs(Role::kHigh);
  Vector w(2 * n);
  w << init.low.array().log().matrix(), init.high.array().log().matrix();

  auto gap = [&](const Vector& x, Vector& lfl, Vector& lfh) {
    const Vector sl = detail::floored_exp<Scalar>(x.head(n));
    const Vector sh = detail::floored_exp<Scalar>(x.tail(n));
    lfl = detail::log_softmax<Scalar>(al * sh, lambda);
    lfh = detail::log_softmax<Scalar>(ah * sl, lambda);
    Vector g(2 * n);
    g << x.head(n) - lfl, x.tail(n) - lfh;
    return g;
  };
  auto norm = [](const Vector& g) { return g.cwiseAbs().maxCoeff(); };

  Vector lfl, lfh;
  Vector g = gap(w, lfl, lfh);
  int step = 0;
  for (; step < config.newton_max_steps; ++step) {
    if (norm(g) <= Scalar(config.residual_tol)) break;
    const Vector sl = detail::floored_exp<Scalar>(w.head(n));
    const Vector sh = detail::floored_exp<Scalar>(w.tail(n));
    const Vector fl = lfl.array().exp().matrix();
    const Vector fh = lfh.array().exp().matrix();
    // d log f / d sigma_other = lambda (A - 1 f^T A), chained with
    // d sigma / d w = diag(sigma).
    const Matrix dl =
        lambda * ((al.rowwise() - fl.transpose() * al) * sh.asDiagonal());
    const Matrix dh =
        lambda * ((ah.rowwise() - fh.transpose() * ah) * sl.asDiagonal());
    Matrix jac = Matrix::Identity(2 * n, 2 * n);
    jac.block(0, n, n, n) -= dl;
    jac.block(n, 0, n, n) -= dh;
    const Vector dw = jac.partialPivLu().solve(-g);
    Scalar t(1);
    Vector trial_lfl, trial_lfh;
    Vector trial = w + dw;
    Vector trial_g = gap(trial, trial_lfl, trial_lfh);
    while (!(norm(trial_g) < norm(g)) && t > Scalar(1e-10)) {
      t /= 2;
      trial = w + t * dw;
      trial_g = gap(trial, trial_lfl, trial_lfh);
    }
    if (!(norm(trial_g) < norm(g))) break;
    w = trial;
    g = trial_g;
    lfl = trial_lfl;
    lfh = trial_lfh;
  }
  StrategyProfile<Scalar> s{detail::floored_exp<Scalar>(w.head(n)),
                            detail::floored_exp<Scalar>(w.tail(n))};
  s.low /= s.low.sum();
  s.high /= s.high.sum();
  const StrategyProfile<Scalar> fs = logistic_map(game, s, lambda);
  const Scalar res = sup_distance(logistic_map(game, fs, lambda), fs);
  return {fs, res, step, res <= Scalar(config.residual_tol), 1.0};
}

// Damped iteration first; if it has not converged after
// `config.newton_after` steps, Newton from the best iterate, then the
// remaining damped budget if Newton fails too.
template <typename Scalar>
FixedPointResult<Scalar> qre_fixed_point(const AuctionGame<Scalar>& game,
                                         const LogisticConfig& config,
                                         const StrategyProfile<Scalar>& init) {
  config.validate();
  if (!is_valid(init, game.num_bids())) {
    throw std::invalid_argument("initial profile is not a distribution pair");
  }
  const Scalar lambda(config.lambda);
  auto map = [&](const StrategyProfile<Scalar>& s) {
    return logistic_map(game, s, lambda);
  };
  FixedPointOptions opts = config.options();
  if (config.newton_after <= 0 || config.newton_after >= config.max_iter) {
    return damped_fixed_point<Scalar>(map, init, opts);
  }
  opts.max_iter = config.newton_after;
  FixedPointResult<Scalar> first = damped_fixed_point<Scalar>(map, init, opts);
  if (first.converged) return first;
  StrategyProfile<Scalar> start = first.profile;
  start.low = start.low.cwiseMax(std::numeric_limits<Scalar>::min());
  start.high = start.high.cwiseMax(std::numeric_limits<Scalar>::min());
  FixedPointResult<Scalar> newton = qre_newton(game, lambda, start, config);
  newton.iterations += first.iterations;
  if (newton.converged) return newton;
  opts.max_iter = config.max_iter - config.newton_after;
  FixedPointResult<Scalar> rest =
      damped_fixed_point<Scalar>(map, first.profile, opts);
  rest.iterations += newton.iterations;
  if (rest.converged || rest.residual < newton.residual) return rest;
  return newton;
}

template <typename Scalar>
struct QRERecord {
  double lambda;
  StrategyProfile<Scalar> profile;
  Scalar residual;
  bool converged;
  std::optional<int> payoff_determinant_bid;
};

template <typename Scalar>
struct QREPath {
  std::vector<QRERecord<Scalar>> records;
  bool stopped_early = false;
  // Consecutive trailing records whose rounded profile is the same Nash
  // equilibrium.
  int stable_count = 0;
};

struct PathOptions {
  // Stop once the rounded profile has been the same Nash equilibrium for this
  // many consecutive precisions. Zero runs the whole schedule.
  int stable_window = 5;
  double nash_tol = 1e-8;
};

// 0.1 * 1.3^k while below 500, then 500.
std::vector<double> default_lambda_schedule(double start = 0.1,
                                            double ratio = 1.3,
                                            double cap = 500.0);

template <typename Scalar>
struct PathLimit {
  StrategyProfile<Scalar> profile;  // rounded and renormalized
  NashReport<Scalar> report;
  bool converged = false;  // rounded profile is Nash and the point converged
};

// Rounds the profile at the support threshold and checks it for Nash.
template <typename Scalar>
PathLimit<Scalar> rounded_limit(const AuctionGame<Scalar>& game,
                                const StrategyProfile<Scalar>& s,
                                bool point_converged, double tol) {
  PathLimit<Scalar> out;
  out.profile = round_support(s, Scalar(kSupportThreshold));
  out.report = is_nash(game, out.profile, Scalar(tol));
  out.converged = point_converged && out.report.is_nash;
  return out;
}

template <typename Scalar>
PathLimit<Scalar> path_limit(const AuctionGame<Scalar>& game,
                             const QREPath<Scalar>& path, double tol) {
  if (path.records.empty()) throw std::invalid_argument("empty QRE path");
  const auto& last = path.records.back();
  return rounded_limit(game, last.profile, last.converged, tol);
}

// Solves at `to` warm-started from a fixed point at `from`, bisecting the
// precision interval (geometrically) when the direct solve fails.
template <typename Scalar>
FixedPointResult<Scalar> continue_to(const AuctionGame<Scalar>& game,
                                     const LogisticConfig& config,
                                     const StrategyProfile<Scalar>& start,
                                     double from, double to, int depth) {
  LogisticConfig c = config;
  c.lambda = to;
  FixedPointResult<Scalar> fp = qre_fixed_point(game, c, start);
  if (fp.converged || depth == 0 || !(from > 0)) return fp;
  const double mid = std::sqrt(from * to);
  FixedPointResult<Scalar> half =
      continue_to(game, config, start, from, mid, depth - 1);
  if (!half.converged) return fp;
  FixedPointResult<Scalar> second =
      continue_to(game, config, half.profile, mid, to, depth - 1);
  second.iterations += half.iterations;
  return second.converged || second.residual < fp.residual ? second : fp;
}

template <typename Scalar>
QREPath<Scalar> trace_qre_path(const AuctionGame<Scalar>& game,
                               const std::vector<double>& schedule,
                               const LogisticConfig& config,
                               const PathOptions& options = {},
                               const std::optional<StrategyProfile<Scalar>>&
                                   warm_start = std::nullopt,
                               double warm_lambda = 0.0) {
  if (schedule.empty()) throw std::invalid_argument("empty precision schedule");
  for (std::size_t i = 1; i < schedule.size(); ++i) {
    if (!(schedule[i] > schedule[i - 1])) {
      throw std::invalid_argument("precision schedule must increase");
    }
  }
  QREPath<Scalar> path;
  const int n = game.num_bids();
  StrategyProfile<Scalar> current =
      warm_start ? *warm_start
                 : StrategyProfile<Scalar>{uniform<Scalar>(n),
                                           uniform<Scalar>(n)};
  if (warm_start && !(warm_lambda > 0 && warm_lambda < schedule.front())) {
    throw std::invalid_argument("warm start precision must precede schedule");
  }
  int stable = 0;
  std::optional<StrategyProfile<Scalar>> previous_limit;
  double previous_lambda = warm_start ? warm_lambda : 0.0;
  for (double lambda : schedule) {
    FixedPointResult<Scalar> fp =
        continue_to(game, config, current, previous_lambda, lambda, 8);
    previous_lambda = lambda;
    current = fp.profile;
    PathLimit<Scalar> lim = rounded_limit(game, current, fp.converged,
                                          options.nash_tol);
    path.records.push_back({lambda, current, fp.residual, fp.converged,
                            lim.converged ? lim.report.separating_bid
                                          : std::nullopt});
    if (lim.converged && previous_limit &&
        support(previous_limit->low) == support(lim.profile.low) &&
        support(previous_limit->high) == support(lim.profile.high)) {
      ++stable;
    } else {
      stable = lim.converged ? 1 : 0;
    }
    previous_limit = lim.profile;
    path.stable_count = stable;
    if (options.stable_window > 0 && stable >= options.stable_window) {
      path.stopped_early = lambda != schedule.back();
      break;
    }
  }
  return path;
}

struct LimitTrace {
  QREPath<double> path;
  PathLimit<double> limit;
  // Records appended by the extended-precision continuation.
  int extended_points = 0;
};

struct LimitOptions {
  std::vector<double> schedule = default_lambda_schedule();
  // Past the schedule, precision doubles up to this cap in Quad arithmetic
  // until the rounded profile settles. A cap at or below the schedule's end
  // disables the continuation.
  double extension_cap = 1e12;
  double extension_ratio = 2.0;
};

// Traces the logistic path in double, then continues in Quad if the rounded
// profile has not yet settled on a Nash equilibrium.
LimitTrace trace_to_limit(const AuctionGame<Rational>& game,
                          const LogisticConfig& config,
                          const PathOptions& options = {},
                          const LimitOptions& limit_options = {});

}  // namespace epa

#endif  // EPA_QRE_HPP_
