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


#include <algorithm>
#include <vector>

#include "doctest.h"
#include "epa/empirical.hpp"
#include "epa/monotonicity.hpp"
#include "epa/nash.hpp"
#include "oracle.hpp"

using namespace epa;

namespace {

std::vector<ValuationProfile> grid(int v_high_max) {
  std::vector<ValuationProfile> out;
  for (auto [vl, vh] : valuation_pairs(v_high_max, true)) {
    out.push_back(ValuationProfile::minimum_cap(vl, vh));
    out.push_back(ValuationProfile::symmetric_cap(vl, vh));
    out.push_back(ValuationProfile(vl, vh, vh + 3));
  }
  return out;
}

}  // namespace

TEST_CASE("allowed bids: worked examples") {
  CHECK(allowed_bids(ValuationProfile(4, 8, 6), Variant::kWinnerBid).allowed_bids ==
        std::vector<int>{2});
  CHECK(allowed_bids(ValuationProfile(4, 16, 10), Variant::kWinnerBid).allowed_bids ==
        std::vector<int>{2, 3, 4});
  CHECK(allowed_bids(ValuationProfile(8, 16, 10), Variant::kWinnerBid).allowed_bids ==
        std::vector<int>{4, 5});
  const auto strict = allowed_bids(ValuationProfile(10, 16, 10), Variant::kWinnerBid);
  CHECK(strict.allowed_bids == std::vector<int>{5, 6});
  CHECK(strict.strict);
  CHECK(allowed_bids(ValuationProfile(4, 16, 10), Variant::kLoserBid).allowed_bids ==
        std::vector<int>{6, 7, 8});
  CHECK(allowed_bids(ValuationProfile(4, 8, 6), Variant::kLoserBid).allowed_bids ==
        std::vector<int>{4});
}

TEST_CASE("allowed bids: active cases") {
  CHECK(allowed_bids(ValuationProfile(4, 8, 6), Variant::kWinnerBid).active_case ==
        BoundCase::kSmallSurplus);
  CHECK(allowed_bids(ValuationProfile(4, 16, 10), Variant::kWinnerBid).active_case ==
        BoundCase::kExtreme);
  CHECK(allowed_bids(ValuationProfile(8, 16, 10), Variant::kWinnerBid).active_case ==
        BoundCase::kIntermediateWeak);
  CHECK(allowed_bids(ValuationProfile(10, 16, 10), Variant::kWinnerBid).active_case ==
        BoundCase::kModerateStrict);
  const auto eq = allowed_bids(ValuationProfile(6, 6, 8), Variant::kWinnerBid);
  CHECK(eq.active_case == BoundCase::kEqualValues);
  CHECK(eq.allowed_bids == std::vector<int>{3});
  for (BoundCase c : {BoundCase::kEqualValues, BoundCase::kSmallSurplus, BoundCase::kExtreme,
                      BoundCase::kIntermediateWeak, BoundCase::kModerateStrict}) {
    CHECK_FALSE(case_label(c, Variant::kWinnerBid).empty());
  }
}

TEST_CASE("allowed bids agree with the payoff-form oracle") {
  for (const auto& v : grid(30)) {
    for (Variant var : {Variant::kWinnerBid, Variant::kLoserBid}) {
      const auto b = allowed_bids(v, var);
      CHECK(b.allowed_bids == oracle::allowed(v, var));
      for (int p = v.c_low(); p <= v.c_high(); ++p) {
        CHECK(b.allows(p) == std::count(b.allowed_bids.begin(), b.allowed_bids.end(), p));
      }
    }
  }
}

TEST_CASE("allowed bids: structural properties") {
  for (const auto& v : grid(30)) {
    const auto wb = allowed_bids(v, Variant::kWinnerBid).allowed_bids;
    const auto lb = allowed_bids(v, Variant::kLoserBid).allowed_bids;
    REQUIRE_FALSE(wb.empty());
    REQUIRE_FALSE(lb.empty());
    CHECK(wb.front() == v.c_low());
    CHECK(lb.back() == v.c_high());
    CHECK(std::is_sorted(wb.begin(), wb.end()));
    // Contiguous, inside the Nash range, and on the correct half of it.
    CHECK(wb.back() - wb.front() + 1 == static_cast<int>(wb.size()));
    CHECK(lb.back() - lb.front() + 1 == static_cast<int>(lb.size()));
    CHECK(2 * wb.back() <= v.c_low() + v.c_high());
    CHECK(2 * lb.front() >= v.c_low() + v.c_high());
    CHECK(lb.front() >= v.c_low());
    CHECK(mirrored_allowed_bids(v, Variant::kWinnerBid) == wb);
    CHECK(mirrored_allowed_bids(v, Variant::kLoserBid) == lb);
  }
}

TEST_CASE("symmetric cap reflects the allowed sets") {
  for (auto [vl, vh] : valuation_pairs(40, true)) {
    const auto v = ValuationProfile::symmetric_cap(vl, vh);
    const auto wb = allowed_bids(v, Variant::kWinnerBid).allowed_bids;
    std::vector<int> reflected;
    for (int p : wb) reflected.push_back(v.c_low() + v.c_high() - p);
    std::sort(reflected.begin(), reflected.end());
    CHECK(allowed_bids(v, Variant::kLoserBid).allowed_bids == reflected);
  }
}

TEST_CASE("classification") {
  CHECK(classify_payoff(ValuationProfile(4, 16, 10), Variant::kWinnerBid, 4).empirical);
  const auto no = classify_payoff(ValuationProfile(4, 16, 10), Variant::kWinnerBid, 5);
  CHECK_FALSE(no.empirical);
  CHECK(no.active_case == BoundCase::kExtreme);
  CHECK_FALSE(no.reason.empty());
  CHECK(classify_payoff(ValuationProfile(4, 8, 6), Variant::kLoserBid, 4).empirical);
  CHECK_FALSE(classify_payoff(ValuationProfile(4, 8, 6), Variant::kLoserBid, 2).empirical);
  for (const auto& v : grid(20)) {
    for (Variant var : {Variant::kWinnerBid, Variant::kLoserBid}) {
      const auto b = allowed_bids(v, var);
      for (int p = v.c_low(); p <= v.c_high(); ++p) {
        CHECK(classify_payoff(v, var, p).empirical == b.allows(p));
      }
    }
  }
}

TEST_CASE("payoff gap against a co-player's bid") {
  const auto g = make_auction(ValuationProfile(4, 16, 10), Variant::kWinnerBid);
  CHECK(delta(g, Role::kLow, 3, 3) == Rational(1));
  CHECK(delta(g, Role::kLow, 1, 3) == Rational(0));
  CHECK_THROWS(delta(g, Role::kLow, 5, 3));
  CHECK_THROWS(delta(make_auction(ValuationProfile(4, 16, 10), Variant::kLoserBid),
                     Role::kLow, 1, 3));
  // Against r, bids below r lose and earn r; bidding d earns its pure payoff.
  for (int r = 1; r <= 10; ++r) {
    for (int d = r; d <= 10; ++d) {
      const Rational left =
          oracle::payoffs(g.profile(), Variant::kWinnerBid, Rational(1, 2), r - 1, r).first;
      const Rational at =
          oracle::payoffs(g.profile(), Variant::kWinnerBid, Rational(1, 2), d, r).first;
      CHECK(delta(g, Role::kLow, r, d) == left - at);
    }
  }
}

TEST_CASE("pure empirical equilibria") {
  const ValuationProfile v(4, 8, 6);
  const auto wb = pure_empirical(v, Variant::kWinnerBid);
  CHECK(wb.low == point_mass<Rational>(7, 1));
  CHECK(wb.high == point_mass<Rational>(7, 2));
  const auto lb = pure_empirical(v, Variant::kLoserBid);
  CHECK(lb.low == point_mass<Rational>(7, 4));
  CHECK(lb.high == point_mass<Rational>(7, 5));
  for (const auto& g : grid(24)) {
    for (Variant var : {Variant::kWinnerBid, Variant::kLoserBid}) {
      const auto game = make_auction(g, var);
      const auto rep = is_nash(game, pure_empirical(g, var));
      CHECK(rep.is_nash);
      REQUIRE(rep.separating_bid);
      CHECK(*rep.separating_bid == (var == Variant::kWinnerBid ? g.c_low() : g.c_high()));
    }
  }
}

TEST_CASE("equilibrium transfer") {
  const auto g = make_auction(ValuationProfile(4, 10, 8), Variant::kWinnerBid);
  const auto one = transfer_equilibrium(g, pure_profile<Rational>(9, 2, 3), 1);
  CHECK(one.transferred);
  CHECK(one.v_star == ValuationProfile(6, 8, 8));
  CHECK(one.nash_at_v);
  CHECK(one.payoff_low == Rational(3));
  CHECK(one.payoff_in_band);
  const auto zero = transfer_equilibrium(g, pure_profile<Rational>(9, 1, 2), 0);
  CHECK(zero.transferred);
  CHECK(zero.payoff_low == Rational(2));
  const StrategyProfile<Rational> u{uniform<Rational>(9), uniform<Rational>(9)};
  CHECK_THROWS_AS(transfer_equilibrium(g, u, 1), TransferRejected);
  CHECK_THROWS(transfer_equilibrium(g, pure_profile<Rational>(9, 2, 3), 3));
}

TEST_CASE("witness plans") {
  const auto g = make_auction(ValuationProfile(4, 16, 10), Variant::kWinnerBid);
  const auto plan = plan_witness(g, 4);
  CHECK(plan.kase == WitnessCase::kCase3);
  CHECK(plan.target.high == point_mass<Rational>(11, 4));
  CHECK(plan.target.low == uniform_on<Rational>(11, {0, 1, 2, 3}));
  CHECK(plan_witness(g, 2).kase == WitnessCase::kCase1);
  CHECK(plan_witness(g, 3).kase == WitnessCase::kCase2);
  CHECK_THROWS_AS(plan_witness(g, 5), WitnessError);
  for (const auto& v : grid(20)) {
    const auto wb = make_auction(v, Variant::kWinnerBid);
    for (int p : allowed_bids(v, Variant::kWinnerBid).allowed_bids) {
      const auto pl = plan_witness(wb, p);
      const auto rep = is_nash(wb, pl.target);
      CHECK(rep.is_nash);
      REQUIRE(rep.separating_bid);
      CHECK(*rep.separating_bid == p);
      CHECK(rep.efficient);
      CHECK(pl.epsilon_ceiling > Rational(0));
    }
  }
}

TEST_CASE("witness at a single schedule point") {
  const auto g = make_auction(ValuationProfile(4, 8, 6), Variant::kWinnerBid);
  WitnessConfig cfg;
  cfg.epsilon = 0.01;
  cfg.t = 50;
  const auto w = construct_witness(g, 2, cfg);
  CHECK(w.ok());
  CHECK(w.residual < Wide(1e-8));
  CHECK(w.caps_hold);
  CHECK(w.distance_to_target < Wide(0.02));
  CHECK(w.target.low == point_mass<Rational>(7, 1));
  CHECK(w.target.high == point_mass<Rational>(7, 2));
  CHECK_THROWS_AS(construct_witness(g, 4, cfg), WitnessError);
  CHECK_THROWS_AS(construct_witness(make_auction(ValuationProfile(6, 6, 8),
                                                 Variant::kWinnerBid),
                                    3, cfg),
                  WitnessError);
}

TEST_CASE("witness sequences") {
  const std::vector<SchedulePoint> schedule{{0.1, 20}, {0.01, 100}, {0.001, 500}};
  for (Variant var : {Variant::kWinnerBid, Variant::kLoserBid}) {
    const auto v = ValuationProfile::symmetric_cap(8, 16);
    const auto g = make_auction(v, var);
    for (int p : allowed_bids(v, var).allowed_bids) {
      const auto seq = witness_sequence(g, p, schedule, WitnessConfig{});
      CHECK(seq.ok);
      CHECK(seq.target_is_nash);
      REQUIRE(seq.target_separating_bid);
      CHECK(*seq.target_separating_bid == p);
      CHECK(seq.limit_support_matches);
      CHECK(seq.final_distance < 1e-2);
      REQUIRE(seq.elements.size() == schedule.size());
      for (std::size_t i = 0; i < seq.elements.size(); ++i) {
        const auto& e = seq.elements[i];
        CHECK(e.interior);
        CHECK(e.monotonicity.holds);
        CHECK(e.caps_hold);
        if (i > 0) CHECK(e.distance_to_target < seq.elements[i - 1].distance_to_target);
      }
    }
  }
  const auto g = make_auction(ValuationProfile(4, 8, 6), Variant::kWinnerBid);
  CHECK_THROWS(witness_sequence(g, 2, {{0.01, 100}, {0.1, 500}}, WitnessConfig{}));
  CHECK_THROWS(witness_sequence(g, 2, {{0.1, 100}, {0.01, 50}}, WitnessConfig{}));
  const auto defaults = default_witness_schedule();
  REQUIRE(defaults.size() == 4);
  CHECK(defaults[0].epsilon == doctest::Approx(0.1));
  CHECK(defaults[3].t == doctest::Approx(2500));
}
