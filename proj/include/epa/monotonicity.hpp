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

#ifndef EPA_MONOTONICITY_HPP_
#define EPA_MONOTONICITY_HPP_

#include <algorithm>
#include <vector>

#include "epa/auction.hpp"
#include "epa/strategy.hpp"

namespace epa {

// Slack on each side of the comparisons. Zero for exact profiles.
struct MonotonicityTolerance {
  double probability = 0.0;
  double utility = 0.0;

  MonotonicityTolerance() = default;
  MonotonicityTolerance(double both) : probability(both), utility(both) {}
  MonotonicityTolerance(double prob, double util)
      : probability(prob), utility(util) {}
};

template <typename Scalar>
struct Violation {
  Role agent;
  int bid_a;
  int bid_b;
  Scalar prob_a;
  Scalar prob_b;
  Scalar util_a;
  Scalar util_b;
};

template <typename Scalar>
struct MonotonicityReport {
  bool holds = true;
  std::vector<Violation<Scalar>> violations;
  MonotonicityTolerance tolerance;
  double m = 1.0;
};

namespace detail {

// Calls visit(role, a, b, u, gap) for every ordered pair a != b, with
// gap = U(a) - U(b) formed from payoff differences.
template <typename Scalar, typename Visit>
void for_each_pair(const AuctionGame<Scalar>& game,
                   const StrategyProfile<Scalar>& s, Visit&& visit) {
  for (Role r : {Role::kLow, Role::kHigh}) {
    const Distribution<Scalar>& opp = s.of(other(r));
    const Distribution<Scalar> u = utilities(game, r, opp);
    for (int a = 0; a < game.num_bids(); ++a) {
      for (int b = 0; b < game.num_bids(); ++b) {
        if (a == b) continue;
        visit(r, a, b, u, utility_gap(game, r, a, b, opp));
      }
    }
  }
}

}  // namespace detail

// A violation is a pair with sigma(a) > sigma(b) + tol.probability while
// U(a) <= U(b) + tol.utility.
template <typename Scalar>
MonotonicityReport<Scalar> check_weak_monotonicity(
    const AuctionGame<Scalar>& game, const StrategyProfile<Scalar>& s,
    const MonotonicityTolerance& tol = {}) {
  MonotonicityReport<Scalar> report;
  report.tolerance = tol;
  const Scalar pt = from_double<Scalar>(tol.probability);
  const Scalar ut = from_double<Scalar>(tol.utility);
  detail::for_each_pair(game, s, [&](Role r, int a, int b, const auto& u,
                                     const Scalar& gap) {
    const auto& d = s.of(r);
    if (d(a) > d(b) + pt && gap <= ut) {
      report.violations.push_back({r, a, b, d(a), d(b), u(a), u(b)});
    }
  });
  report.holds = report.violations.empty();
  return report;
}

// A violation is a pair with U(a) >= U(b) - tol.utility while
// sigma(a) < m sigma(b) - tol.probability.
template <typename Scalar>
MonotonicityReport<Scalar> check_m_monotonicity(
    const AuctionGame<Scalar>& game, const StrategyProfile<Scalar>& s,
    double m, const MonotonicityTolerance& tol = {}) {
  if (!(m >= 0 && m <= 1)) throw std::invalid_argument("m must lie in [0,1]");
  MonotonicityReport<Scalar> report;
  report.tolerance = tol;
  report.m = m;
  const Scalar pt = from_double<Scalar>(tol.probability);
  const Scalar ut = from_double<Scalar>(tol.utility);
  const Scalar ms = from_double<Scalar>(m);
  detail::for_each_pair(game, s, [&](Role r, int a, int b, const auto& u,
                                     const Scalar& gap) {
    const auto& d = s.of(r);
    if (gap >= -ut && d(a) < ms * d(b) - pt) {
      report.violations.push_back({r, a, b, d(a), d(b), u(a), u(b)});
    }
  });
  report.holds = report.violations.empty();
  return report;
}

// Largest m in [0,1] at which the profile is m-monotone with zero slack.
template <typename Scalar>
Scalar max_monotone_m(const AuctionGame<Scalar>& game,
                      const StrategyProfile<Scalar>& s) {
  Scalar best(1);
  detail::for_each_pair(game, s, [&](Role r, int a, int b, const auto&,
                                     const Scalar& gap) {
    const auto& d = s.of(r);
    if (gap >= Scalar(0) && d(b) > Scalar(0)) {
      const Scalar ratio = d(a) / d(b);
      if (ratio < best) best = ratio;
    }
  });
  return best;
}

template <typename Scalar>
struct ProbabilityCap {
  int k = 0;  // alternatives at least as good as the bid
  Scalar cap;  // 1 / (k + 1)
  bool satisfied = false;
};

// Counts the alternatives whose expected utility is within `utility_slack`
// of the bid's or above, and tests sigma(bid) <= 1 / (k + 1) + tol. Exact
// profiles use no slack.
template <typename Scalar>
ProbabilityCap<Scalar> monotone_probability_cap(
    const AuctionGame<Scalar>& game, const StrategyProfile<Scalar>& s,
    Role role, int bid, double tol = 1e-9, double utility_slack = 1e-12) {
  check_bid(game, bid);
  const Distribution<Scalar>& opp = s.of(other(role));
  const Scalar slack = from_double<Scalar>(is_exact_v<Scalar> ? 0.0 : utility_slack);
  ProbabilityCap<Scalar> out;
  for (int a = 0; a < game.num_bids(); ++a) {
    if (a != bid && utility_gap(game, role, a, bid, opp) >= -slack) ++out.k;
  }
  out.cap = Scalar(1) / Scalar(out.k + 1);
  out.satisfied = s.of(role)(bid) <= out.cap + from_double<Scalar>(is_exact_v<Scalar> ? 0.0 : tol);
  return out;
}

}  // namespace epa

#endif  // EPA_MONOTONICITY_HPP_
