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

#ifndef EPA_AUCTION_HPP_
#define EPA_AUCTION_HPP_

#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "epa/scalar.hpp"
#include "epa/strategy.hpp"
#include "epa/valuation.hpp"

namespace epa {

enum class Variant { kWinnerBid, kLoserBid };

const char* variant_name(Variant v);     // "wb" / "lb"
Variant parse_variant(const std::string& text);

// Result of one pair of bids: who receives the object, and the transfer.
struct PureOutcome {
  Rational prob_high_receives;  // 1, 0, or gamma on a tie
  int price;                    // paid by the recipient to the other agent
};

PureOutcome pure_outcome(Variant variant, const Rational& gamma, int low_bid,
                         int high_bid);

// Utility of `role` bidding `own` against the co-player's `opp`.
Rational pure_payoff(const ValuationProfile& profile, Variant variant,
                     const Rational& gamma, Role role, int own, int opp);

// A two-agent extreme-price auction with payoff tables indexed
// (own bid, co-player bid), so that U_role = payoffs(role) * sigma_other.
template <typename Scalar>
class AuctionGame {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  AuctionGame(const ValuationProfile& profile, Variant variant,
              const Rational& gamma)
      : profile_(profile), variant_(variant), gamma_(gamma) {
    if (gamma < Rational(1, 2) || gamma > Rational(1)) {
      throw std::invalid_argument("tie-break weight must lie in [1/2, 1]");
    }
    const int n = profile.num_bids();
    low_.resize(n, n);
    high_.resize(n, n);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        low_(a, b) = to_scalar<Scalar>(
            pure_payoff(profile, variant, gamma, Role::kLow, a, b));
        high_(a, b) = to_scalar<Scalar>(
            pure_payoff(profile, variant, gamma, Role::kHigh, a, b));
      }
    }
  }

  const ValuationProfile& profile() const { return profile_; }
  Variant variant() const { return variant_; }
  const Rational& gamma() const { return gamma_; }
  int num_bids() const { return profile_.num_bids(); }
  int p_bar() const { return profile_.p_bar(); }
  int value(Role r) const {
    return r == Role::kLow ? profile_.v_low() : profile_.v_high();
  }
  const Matrix& payoffs(Role r) const { return r == Role::kLow ? low_ : high_; }

  template <typename Other>
  AuctionGame<Other> cast() const {
    return AuctionGame<Other>(profile_, variant_, gamma_);
  }

 private:
  ValuationProfile profile_;
  Variant variant_;
  Rational gamma_;
  Matrix low_;
  Matrix high_;
};

template <typename Scalar = Rational>
AuctionGame<Scalar> make_auction(const ValuationProfile& profile,
                                 Variant variant,
                                 const Rational& gamma = Rational(1, 2)) {
  return AuctionGame<Scalar>(profile, variant, gamma);
}

template <typename Scalar>
void check_bid(const AuctionGame<Scalar>& game, int bid) {
  if (bid < 0 || bid > game.p_bar()) {
    throw std::out_of_range("bid " + std::to_string(bid) + " outside {0.." +
                            std::to_string(game.p_bar()) + "}");
  }
}

// Expected utility of every bid against `opp`.
template <typename Scalar>
Distribution<Scalar> utilities(const AuctionGame<Scalar>& game, Role role,
                               const Distribution<Scalar>& opp) {
  return game.payoffs(role) * opp;
}

template <typename Scalar>
Scalar expected_utility(const AuctionGame<Scalar>& game, Role role, int bid,
                        const Distribution<Scalar>& opp) {
  check_bid(game, bid);
  return game.payoffs(role).row(bid).dot(opp);
}

// U(a) - U(b), formed from the payoff difference row so that tiny gaps are
// not lost to cancellation.
template <typename Scalar>
Scalar utility_gap(const AuctionGame<Scalar>& game, Role role, int a, int b,
                   const Distribution<Scalar>& opp) {
  const auto& m = game.payoffs(role);
  return (m.row(a) - m.row(b)).dot(opp);
}

// Every bid within `tol` of the best expected utility. Ties are all kept.
template <typename Scalar>
std::vector<int> best_response_set(const AuctionGame<Scalar>& game, Role role,
                                   const Distribution<Scalar>& opp,
                                   const Scalar& tol = Scalar(0)) {
  const Distribution<Scalar> u = utilities(game, role, opp);
  const Scalar best = u.maxCoeff();
  std::vector<int> out;
  for (int b = 0; b < game.num_bids(); ++b) {
    if (u(b) >= best - tol) out.push_back(b);
  }
  return out;
}

// The loser-bid game at cap p_bar is the winner-bid game with values
// (2 p_bar - v_high, 2 p_bar - v_low), bids reflected b -> p_bar - b and the
// roles exchanged; each agent's utilities move by the constant p_bar - v.
// The map is an involution between the two variants.
ValuationProfile mirror_profile(const ValuationProfile& profile);

template <typename Scalar>
AuctionGame<Scalar> mirror_game(const AuctionGame<Scalar>& game) {
  const Variant flipped = game.variant() == Variant::kWinnerBid
                              ? Variant::kLoserBid
                              : Variant::kWinnerBid;
  return AuctionGame<Scalar>(mirror_profile(game.profile()), flipped,
                             game.gamma());
}

template <typename Scalar>
Distribution<Scalar> reflect(const Distribution<Scalar>& d) {
  return d.reverse();
}

template <typename Scalar>
StrategyProfile<Scalar> mirror_strategy(const StrategyProfile<Scalar>& s) {
  return {reflect(s.high), reflect(s.low)};
}

}  // namespace epa

#endif  // EPA_AUCTION_HPP_
