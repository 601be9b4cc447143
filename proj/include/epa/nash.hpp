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

#ifndef EPA_NASH_HPP_
#define EPA_NASH_HPP_

#include <optional>
#include <vector>

#include "epa/auction.hpp"
#include "epa/strategy.hpp"
#include "epa/valuation.hpp"

namespace epa {

struct PureProfile {
  int low;
  int high;
  bool operator==(const PureProfile&) const = default;
};

template <typename Scalar>
StrategyProfile<Scalar> to_profile(const PureProfile& p, int num_bids) {
  return pure_profile<Scalar>(num_bids, p.low, p.high);
}

struct PayoffPair {
  Rational low;
  Rational high;
  bool operator==(const PayoffPair&) const = default;
  bool operator<(const PayoffPair& o) const {
    return low != o.low ? low < o.low : high < o.high;
  }
};

struct SeparatingBid {
  int p;
  bool efficient;
};

template <typename Scalar>
struct NashReport {
  bool is_nash = false;
  Scalar max_regret = Scalar(0);
  std::optional<int> separating_bid;
  bool efficient = false;
  Scalar payoff_low = Scalar(0);
  Scalar payoff_high = Scalar(0);
};

// Probability that the low-value agent ends up with the object.
template <typename Scalar>
Scalar prob_low_receives(const AuctionGame<Scalar>& game,
                         const StrategyProfile<Scalar>& s) {
  Scalar total(0);
  Scalar tie(0);
  for (int a = 0; a < game.num_bids(); ++a) {
    Scalar below(0);
    for (int b = 0; b < a; ++b) below += s.high(b);
    total += s.low(a) * below;
    tie += s.low(a) * s.high(a);
  }
  return total + tie * to_scalar<Scalar>(1 - game.gamma());
}

template <typename Scalar>
bool is_efficient(const AuctionGame<Scalar>& game,
                  const StrategyProfile<Scalar>& s) {
  const Scalar q = prob_low_receives(game, s);
  if constexpr (is_exact_v<Scalar>) {
    return q == Scalar(0);
  } else {
    return q < Scalar(kSupportThreshold);
  }
}

// The bid p in the Nash range splitting the two supports, with p played by
// the agent whose bid sets the price (high under WB, low under LB).
template <typename Scalar>
std::optional<SeparatingBid> separating_bid(const AuctionGame<Scalar>& game,
                                            const StrategyProfile<Scalar>& s) {
  const std::vector<int> lo = support(s.low);
  const std::vector<int> hi = support(s.high);
  if (lo.empty() || hi.empty()) return std::nullopt;
  const int p = game.variant() == Variant::kWinnerBid ? hi.front() : lo.back();
  const ValuationProfile& v = game.profile();
  if (p < v.c_low() || p > v.c_high()) return std::nullopt;
  if (lo.back() > p || hi.front() < p) return std::nullopt;
  return SeparatingBid{p, is_efficient(game, s)};
}

template <typename Scalar>
NashReport<Scalar> is_nash(const AuctionGame<Scalar>& game,
                           const StrategyProfile<Scalar>& s,
                           const Scalar& tol = Scalar(0)) {
  NashReport<Scalar> report;
  for (Role r : {Role::kLow, Role::kHigh}) {
    const Distribution<Scalar> u = utilities(game, r, s.of(other(r)));
    const Scalar best = u.maxCoeff();
    for (int b : support(s.of(r))) {
      const Scalar regret = best - u(b);
      if (regret > report.max_regret) report.max_regret = regret;
    }
    const Scalar payoff = s.of(r).dot(u);
    (r == Role::kLow ? report.payoff_low : report.payoff_high) = payoff;
  }
  report.is_nash = report.max_regret <= tol;
  report.efficient = is_efficient(game, s);
  if (report.is_nash) {
    if (auto sep = separating_bid(game, s)) report.separating_bid = sep->p;
  }
  return report;
}

// Every pure profile with zero regret, by exact scan of all bid pairs.
std::vector<PureProfile> enumerate_pure_nash(const AuctionGame<Rational>& game);

// {(c_low + ES - t, c_high + t) : t = 0..ES}; a single equal split when the
// values coincide.
std::vector<PayoffPair> efficient_nash_payoffs(const ValuationProfile& profile);

}  // namespace epa

#endif  // EPA_NASH_HPP_
