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

#ifndef EPA_EMPIRICAL_HPP_
#define EPA_EMPIRICAL_HPP_

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "epa/auction.hpp"
#include "epa/fixed_point.hpp"
#include "epa/monotonicity.hpp"
#include "epa/nash.hpp"
#include "epa/scalar.hpp"
#include "epa/strategy.hpp"
#include "epa/valuation.hpp"

namespace epa {

// Which branch of the payoff bound is active. The winner-bid branches are
// keyed on v_low relative to v_high; the loser-bid ones mirror them, keyed on
// v_high relative to the cap.
enum class BoundCase {
  kEqualValues,      // v_low == v_high: single equal split
  kSmallSurplus,     // ES <= 2
  kExtreme,          // WB: v_low <= 3 v_high / 8; LB: mirror
  kIntermediateWeak, // weak four-fifths bound
  kModerateStrict,   // strict four-fifths bound
};

std::string case_label(BoundCase c, Variant v);

struct EmpiricalBounds {
  Variant variant;
  ValuationProfile profile;
  BoundCase active_case;
  std::vector<int> allowed_bids;
  // The two case conditions as evaluated. WB compares v_low against
  // (3 v_high / 8, 7 v_high / 12 - 7/6). LB compares c_high against
  // (c_low + 5 (p_bar - c_low) / 8, p_bar - 7 (p_bar - c_low) / 12 + 7/12).
  Rational first_threshold;
  Rational second_threshold;
  // Bound on the payoff-determinant bid: p <= cutoff (WB) or p >= cutoff
  // (LB), strict when `strict`.
  Rational bid_cutoff;
  bool strict = false;
  // The same bound stated on the price setter's payoff: pi_high under WB,
  // pi_low under LB.
  Rational payoff_bound;

  bool allows(int p) const;
};

EmpiricalBounds allowed_bids(const ValuationProfile& profile, Variant variant);

// The bound computed on the mirrored game and reflected back.
std::vector<int> mirrored_allowed_bids(const ValuationProfile& profile,
                                       Variant variant);

struct Classification {
  bool empirical;
  BoundCase active_case;
  std::string reason;
};

Classification classify_payoff(const ValuationProfile& profile,
                               Variant variant, int p);

// Payoff of bidding below r minus payoff of bidding d, both against a
// co-player who bids r. Winner-bid only.
Rational delta(const AuctionGame<Rational>& game, Role role, int r, int d);

// (c_low - 1, c_low) under WB, (c_high, c_high + 1) under LB.
StrategyProfile<Rational> pure_empirical(const ValuationProfile& profile,
                                         Variant variant);

struct TransferRejected : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct TransferReport {
  bool transferred = false;
  ValuationProfile v_star;
  bool nash_at_v = false;
  Rational payoff_low;
  bool payoff_in_band = false;
};

// Builds v* = (2 (c_low + t), 2 (c_low + t) + 2), requires `profile` to be an
// efficient Nash equilibrium of the v* game with low payoff in
// [c_low + t, c_low + t + 1] (throws TransferRejected otherwise), then checks
// that it stays a Nash equilibrium at v with the payoff in that band.
TransferReport transfer_equilibrium(const AuctionGame<Rational>& game_v,
                                    const StrategyProfile<Rational>& profile,
                                    int t);

// ---------------------------------------------------------------------------
// Interior payoff-monotone profiles converging to a given equilibrium.

enum class WitnessCase { kCase1 = 1, kCase2, kCase3, kCase4, kCase5 };

struct WitnessConfig {
  double epsilon = 0.01;
  double t = 50.0;
  FixedPointOptions solver{0.5, 1e-12, 20000, 10, 200, 1e-9};
  MonotonicityTolerance tolerance{1e-9, 0.0};
  // Largest sup-norm distance of the last element to the target, also the
  // probability below which a bid counts as off the limit support.
  double limit_tolerance = 1e-2;
};

struct WitnessError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Exact data of a construction, in the winner-bid frame.
struct WitnessPlan {
  WitnessCase kase;
  int p;
  int y = 0;  // lowest bid of the low agent's mixing block (cases 4, 5)
  int n = 0;  // size of that block
  int r = 0;  // highest bid the high agent ranks with y (cases 4, 5)
  Rational epsilon_ceiling;
  StrategyProfile<Rational> target;
};

// Case selection and exact quantities for a winner-bid game.
WitnessPlan plan_witness(const AuctionGame<Rational>& wb_game, int p);

struct Witness {
  WitnessCase kase;
  int target_p;
  double epsilon;  // after the case ceiling
  double t;
  int y = 0, n = 0, r = 0;
  StrategyProfile<Wide> profile;
  StrategyProfile<Rational> target;
  Wide residual;
  int iterations = 0;
  bool converged = false;
  bool interior = false;
  MonotonicityReport<Wide> monotonicity;
  bool caps_hold = false;
  Wide distance_to_target;

  bool ok() const { return converged && interior && monotonicity.holds; }
};

// Throws WitnessError when p is not an allowed bid or values are equal.
Witness construct_witness(const AuctionGame<Rational>& game, int p,
                          const WitnessConfig& cfg);

struct SchedulePoint {
  double epsilon;
  double t;
};

// epsilon_k = 10^(-1-k), t_k = 20 * 5^k, k = 0..3.
std::vector<SchedulePoint> default_witness_schedule();

struct WitnessSequence {
  std::vector<Witness> elements;
  bool ok = false;
  std::optional<int> failing_index;
  std::string failure;
  double final_distance = 0;
  bool target_is_nash = false;
  std::optional<int> target_separating_bid;
  bool limit_support_matches = false;
};

WitnessSequence witness_sequence(const AuctionGame<Rational>& game, int p,
                                 const std::vector<SchedulePoint>& schedule,
                                 const WitnessConfig& cfg);

}  // namespace epa

#endif  // EPA_EMPIRICAL_HPP_
