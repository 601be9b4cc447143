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

#include "epa/empirical.hpp"

#include <algorithm>
#include <sstream>

namespace epa {
namespace {

bool within(int p, const Rational& cutoff, bool strict, bool upper) {
  const Rational q(p);
  if (upper) return strict ? q < cutoff : q <= cutoff;
  return strict ? q > cutoff : q >= cutoff;
}

EmpiricalBounds winner_bid_bounds(const ValuationProfile& v) {
  const int cl = v.c_low(), ch = v.c_high(), es = ch - cl;
  EmpiricalBounds b{Variant::kWinnerBid, v, BoundCase::kSmallSurplus, {},
                    Rational(3 * v.v_high(), 8),
                    Rational(7 * v.v_high(), 12) - Rational(7, 6),
                    Rational(cl), false, Rational(0)};
  const Rational vl(v.v_low());
  if (es <= 2) {
    b.active_case = BoundCase::kSmallSurplus;
    b.bid_cutoff = Rational(cl);
  } else if (vl <= b.first_threshold) {
    b.active_case = BoundCase::kExtreme;
    b.bid_cutoff = Rational(v.v_high(), 4) + Rational(1, 2);
  } else {
    b.active_case = vl < b.second_threshold ? BoundCase::kIntermediateWeak
                                            : BoundCase::kModerateStrict;
    b.bid_cutoff = cl + Rational(es, 5) + Rational(4, 5);
    b.strict = b.active_case == BoundCase::kModerateStrict;
  }
  b.payoff_bound = v.v_high() - b.bid_cutoff;
  for (int p = cl; p <= ch; ++p) {
    if (within(p, b.bid_cutoff, b.strict, true)) b.allowed_bids.push_back(p);
  }
  return b;
}

EmpiricalBounds loser_bid_bounds(const ValuationProfile& v) {
  const int cl = v.c_low(), ch = v.c_high(), es = ch - cl, pb = v.p_bar();
  EmpiricalBounds b{Variant::kLoserBid, v, BoundCase::kSmallSurplus, {},
                    cl + Rational(5 * (pb - cl), 8),
                    pb - Rational(7 * (pb - cl), 12) + Rational(7, 12),
                    Rational(ch), false, Rational(0)};
  const Rational hc(ch);
  if (es <= 2) {
    b.active_case = BoundCase::kSmallSurplus;
    b.bid_cutoff = Rational(ch);
  } else if (hc >= b.first_threshold) {
    b.active_case = BoundCase::kExtreme;
    b.bid_cutoff = cl + Rational(es, 2) + Rational(pb - ch, 2) - Rational(1, 2);
  } else {
    b.active_case = hc > b.second_threshold ? BoundCase::kIntermediateWeak
                                            : BoundCase::kModerateStrict;
    b.bid_cutoff = cl + Rational(4 * es, 5) - Rational(4, 5);
    b.strict = b.active_case == BoundCase::kModerateStrict;
  }
  b.payoff_bound = b.bid_cutoff;
  for (int p = cl; p <= ch; ++p) {
    if (within(p, b.bid_cutoff, b.strict, false)) b.allowed_bids.push_back(p);
  }
  return b;
}

}  // namespace

std::string case_label(BoundCase c, Variant v) {
  const bool wb = v == Variant::kWinnerBid;
  switch (c) {
    case BoundCase::kEqualValues:
      return "equal_values";
    case BoundCase::kSmallSurplus:
      return "ES_le_2";
    case BoundCase::kExtreme:
      return wb ? "low_vl" : "high_vh";
    case BoundCase::kIntermediateWeak:
      return wb ? "mid_vl_weak" : "mid_vh_weak";
    case BoundCase::kModerateStrict:
      return wb ? "high_vl_strict" : "low_vh_strict";
  }
  return "unknown";
}

bool EmpiricalBounds::allows(int p) const {
  return std::find(allowed_bids.begin(), allowed_bids.end(), p) !=
         allowed_bids.end();
}

EmpiricalBounds allowed_bids(const ValuationProfile& profile, Variant variant) {
  if (profile.equal_values()) {
    const int c = profile.c_low();
    return {variant,      profile,      BoundCase::kEqualValues,
            {c},          Rational(0),  Rational(0),
            Rational(c),  false,        Rational(c)};
  }
  return variant == Variant::kWinnerBid ? winner_bid_bounds(profile)
                                        : loser_bid_bounds(profile);
}

std::vector<int> mirrored_allowed_bids(const ValuationProfile& profile,
                                       Variant variant) {
  const Variant flipped = variant == Variant::kWinnerBid ? Variant::kLoserBid
                                                         : Variant::kWinnerBid;
  const EmpiricalBounds b = allowed_bids(mirror_profile(profile), flipped);
  std::vector<int> out;
  for (int p : b.allowed_bids) out.push_back(profile.p_bar() - p);
  std::sort(out.begin(), out.end());
  return out;
}

Classification classify_payoff(const ValuationProfile& profile,
                               Variant variant, int p) {
  if (p < profile.c_low() || p > profile.c_high()) {
    throw std::invalid_argument("bid " + std::to_string(p) +
                                " is outside the Nash range");
  }
  const EmpiricalBounds b = allowed_bids(profile, variant);
  const bool wb = variant == Variant::kWinnerBid;
  const std::string label = case_label(b.active_case, variant);
  std::ostringstream os;
  os << "case " << label << ": ";
  if (b.active_case == BoundCase::kEqualValues) {
    os << "equal values, payoff (" << profile.c_low() << ","
       << profile.c_high() << ")";
  } else {
    const int payoff = wb ? profile.v_high() - p : p;
    const char* who = wb ? "pi_high" : "pi_low";
    const bool ok = b.allows(p);
    const char* rel = ok ? (b.strict ? ">" : ">=") : (b.strict ? "<=" : "<");
    os << who << "=" << payoff << " " << rel << " " << to_string(b.payoff_bound)
       << " (p " << (wb ? (b.strict ? "<" : "<=") : (b.strict ? ">" : ">="))
       << " " << to_string(b.bid_cutoff) << ")";
  }
  return {b.allows(p), b.active_case, os.str()};
}

Rational delta(const AuctionGame<Rational>& game, Role role, int r, int d) {
  if (game.variant() != Variant::kWinnerBid) {
    throw std::invalid_argument("delta is defined for the winner-bid auction");
  }
  check_bid(game, r);
  check_bid(game, d);
  if (r > d) throw std::invalid_argument("delta requires r <= d");
  // Bidding below r loses to r and collects r.
  return Rational(r) - game.payoffs(role)(d, r);
}

StrategyProfile<Rational> pure_empirical(const ValuationProfile& profile,
                                         Variant variant) {
  const int n = profile.num_bids();
  if (variant == Variant::kWinnerBid) {
    return pure_profile<Rational>(n, profile.c_low() - 1, profile.c_low());
  }
  return pure_profile<Rational>(n, profile.c_high(), profile.c_high() + 1);
}

TransferReport transfer_equilibrium(const AuctionGame<Rational>& game_v,
                                    const StrategyProfile<Rational>& profile,
                                    int t) {
  const ValuationProfile& v = game_v.profile();
  if (v.equal_values()) throw std::invalid_argument("needs v_low < v_high");
  if (t < 0 || t + 1 > equity_surplus(v)) {
    throw std::invalid_argument("t must satisfy 0 <= t < ES");
  }
  if (!is_valid(profile, game_v.num_bids())) {
    throw TransferRejected("profile is not a distribution pair");
  }
  const int low_star = 2 * (v.c_low() + t);
  const ValuationProfile v_star(low_star, low_star + 2, v.p_bar());
  const AuctionGame<Rational> game_star(v_star, game_v.variant(),
                                        game_v.gamma());
  const Rational lo(v.c_low() + t), hi(v.c_low() + t + 1);
  const NashReport<Rational> at_star = is_nash(game_star, profile);
  if (!at_star.is_nash || !at_star.efficient || at_star.payoff_low < lo ||
      at_star.payoff_low > hi) {
    throw TransferRejected(
        "profile is not an efficient equitable Nash equilibrium at v*");
  }
  const NashReport<Rational> at_v = is_nash(game_v, profile);
  TransferReport out{false, v_star, at_v.is_nash, at_v.payoff_low,
                     at_v.payoff_low >= lo && at_v.payoff_low <= hi};
  out.transferred = out.nash_at_v && out.payoff_in_band && at_v.efficient;
  return out;
}

}  // namespace epa
