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
#include <random>
#include <set>

#include "doctest.h"
#include "epa/auction.hpp"
#include "epa/nash.hpp"
#include "epa/valuation.hpp"
#include "oracle.hpp"

using namespace epa;

namespace {

std::vector<ValuationProfile> small_grid() {
  std::vector<ValuationProfile> out;
  for (auto [vl, vh] : valuation_pairs(12, false)) {
    out.push_back(ValuationProfile::minimum_cap(vl, vh));
    out.push_back(ValuationProfile::symmetric_cap(vl, vh));
    out.push_back(ValuationProfile(vl, vh, vh / 2 + 5));
  }
  return out;
}

}  // namespace

TEST_CASE("valuation profile validation") {
  CHECK_NOTHROW(ValuationProfile(4, 8, 6));
  CHECK_THROWS_AS(ValuationProfile(4, 7, 6), std::invalid_argument);
  CHECK_THROWS_AS(ValuationProfile(2, 8, 6), std::invalid_argument);
  CHECK_THROWS_AS(ValuationProfile(8, 4, 6), std::invalid_argument);
  CHECK_THROWS_AS(ValuationProfile(4, 8, 5), std::invalid_argument);
  CHECK(ValuationProfile::symmetric_cap(4, 16).p_bar() == 10);
  CHECK(ValuationProfile::minimum_cap(4, 16).p_bar() == 10);
  CHECK(ValuationProfile::symmetric_cap(10, 16).p_bar() == 13);
  CHECK(ValuationProfile::minimum_cap(10, 16).p_bar() == 10);
}

TEST_CASE("equity surplus and Nash range") {
  CHECK(equity_surplus(ValuationProfile(4, 8, 6)) == 2);
  CHECK(equity_surplus(ValuationProfile(6, 6, 5)) == 0);
  CHECK(nash_range(ValuationProfile(4, 8, 6)) == std::vector<int>{2, 3, 4});
  CHECK(nash_range(ValuationProfile(6, 6, 5)) == std::vector<int>{3});
  CHECK(nash_range(ValuationProfile(4, 16, 10)) ==
        std::vector<int>{2, 3, 4, 5, 6, 7, 8});
  CHECK(valuation_pairs(8, true).size() == 3);
  CHECK(valuation_pairs(8, false).size() == 6);
}

TEST_CASE("parse and print rationals") {
  CHECK(parse_rational("1/2") == Rational(1, 2));
  CHECK(parse_rational("1") == Rational(1));
  CHECK(parse_rational("0.75") == Rational(3, 4));
  CHECK(to_string(Rational(3, 4)) == "3/4");
  CHECK(to_string(Rational(4)) == "4");
  CHECK_THROWS(parse_rational("x"));
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("1/2x"));
}

TEST_CASE("variant names round trip") {
  CHECK(parse_variant("wb") == Variant::kWinnerBid);
  CHECK(parse_variant("lb") == Variant::kLoserBid);
  CHECK(std::string(variant_name(Variant::kLoserBid)) == "lb");
  CHECK_THROWS(parse_variant("xx"));
}

TEST_CASE("gamma outside [1/2, 1] is rejected") {
  const ValuationProfile v(4, 8, 6);
  CHECK_THROWS(make_auction(v, Variant::kWinnerBid, Rational(1, 3)));
  CHECK_THROWS(make_auction(v, Variant::kWinnerBid, Rational(3, 2)));
  CHECK_NOTHROW(make_auction(v, Variant::kWinnerBid, Rational(1)));
}

TEST_CASE("payoff tables match the outcome oracle") {
  for (const Rational gamma : {Rational(1, 2), Rational(3, 4), Rational(1)}) {
    for (const auto& v : small_grid()) {
      for (Variant var : {Variant::kWinnerBid, Variant::kLoserBid}) {
        const auto game = make_auction(v, var, gamma);
        for (int a = 0; a < game.num_bids(); ++a) {
          for (int b = 0; b < game.num_bids(); ++b) {
            const auto want = oracle::payoffs(v, var, gamma, a, b);
            REQUIRE(game.payoffs(Role::kLow)(a, b) == want.first);
            REQUIRE(game.payoffs(Role::kHigh)(b, a) == want.second);
            CHECK(pure_payoff(v, var, gamma, Role::kLow, a, b) == want.first);
            CHECK(pure_payoff(v, var, gamma, Role::kHigh, b, a) == want.second);
          }
        }
      }
    }
  }
}

TEST_CASE("transfers cancel: pure payoffs sum to the recipient's value") {
  for (const auto& v : small_grid()) {
    for (Variant var : {Variant::kWinnerBid, Variant::kLoserBid}) {
      const auto game = make_auction(v, var);
      for (int a = 0; a < game.num_bids(); ++a) {
        for (int b = 0; b < game.num_bids(); ++b) {
          const Rational sum =
              game.payoffs(Role::kLow)(a, b) + game.payoffs(Role::kHigh)(b, a);
          const Rational want = a > b   ? Rational(v.v_low())
                                : b > a ? Rational(v.v_high())
                                        : Rational(v.v_low() + v.v_high(), 2);
          CHECK(sum == want);
        }
      }
    }
  }
}

TEST_CASE("expected utility is affine in the opponent's strategy") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0, 1);
  const auto game = make_auction<double>(ValuationProfile(6, 14, 11),
                                         Variant::kLoserBid);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::VectorXd a = oracle::random_interior(rng, game.num_bids());
    const Eigen::VectorXd b = oracle::random_interior(rng, game.num_bids());
    const double alpha = unit(rng);
    const Eigen::VectorXd mix = alpha * a + (1 - alpha) * b;
    for (int bid = 0; bid < game.num_bids(); ++bid) {
      for (Role r : {Role::kLow, Role::kHigh}) {
        const double lhs = expected_utility(game, r, bid, mix);
        const double rhs = alpha * expected_utility(game, r, bid, a) +
                           (1 - alpha) * expected_utility(game, r, bid, b);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("bids outside the cap are rejected") {
  const auto game = make_auction(ValuationProfile(4, 8, 6), Variant::kWinnerBid);
  const auto u = uniform<Rational>(game.num_bids());
  CHECK_THROWS_AS(expected_utility(game, Role::kLow, 7, u), std::out_of_range);
  CHECK_THROWS_AS(expected_utility(game, Role::kLow, -1, u), std::out_of_range);
}

TEST_CASE("best responses keep every tie") {
  // Against a high agent who bids 2, the low agent gets 2 from any bid up to
  // 2: losing pays it 2, and the even tie at 2 averages (4 - 2) and 2.
  const auto game = make_auction(ValuationProfile(4, 8, 6), Variant::kWinnerBid);
  const auto br = best_response_set(game, Role::kLow, point_mass<Rational>(7, 2));
  CHECK(br == std::vector<int>{0, 1, 2});
}

TEST_CASE("pure Nash enumeration matches brute force") {
  for (const Rational gamma : {Rational(1, 2), Rational(1)}) {
    for (const auto& v : small_grid()) {
      for (Variant var : {Variant::kWinnerBid, Variant::kLoserBid}) {
        const auto game = make_auction(v, var, gamma);
        std::vector<std::pair<int, int>> got;
        for (const auto& pp : enumerate_pure_nash(game)) got.emplace_back(pp.low, pp.high);
        std::sort(got.begin(), got.end());
        CHECK(got == oracle::pure_nash(v, var, gamma));
      }
    }
  }
}

TEST_CASE("winner-bid (4,8) has three pure equilibria with the expected payoffs") {
  const auto game = make_auction(ValuationProfile(4, 8, 6), Variant::kWinnerBid);
  const auto eqs = enumerate_pure_nash(game);
  REQUIRE(eqs.size() == 3);
  std::set<PayoffPair> pays;
  for (const auto& pp : eqs) {
    const auto rep = is_nash(game, to_profile<Rational>(pp, game.num_bids()));
    pays.insert({rep.payoff_low, rep.payoff_high});
  }
  CHECK(pays == std::set<PayoffPair>{{4, 4}, {3, 5}, {2, 6}});
}

TEST_CASE("efficient payoff formula") {
  const auto a = efficient_nash_payoffs(ValuationProfile(4, 8, 6));
  CHECK(std::set<PayoffPair>(a.begin(), a.end()) ==
        std::set<PayoffPair>{{4, 4}, {3, 5}, {2, 6}});
  const auto b = efficient_nash_payoffs(ValuationProfile(6, 6, 5));
  CHECK(b == std::vector<PayoffPair>{{3, 3}});
  const auto c = efficient_nash_payoffs(ValuationProfile(4, 16, 10));
  CHECK(c.size() == 7);
  CHECK(std::count(c.begin(), c.end(), PayoffPair{8, 8}) == 1);
  CHECK(std::count(c.begin(), c.end(), PayoffPair{2, 14}) == 1);
}

TEST_CASE("equal values give (v/2, v/2) in every pure equilibrium") {
  for (int v = 4; v <= 12; v += 2) {
    for (Variant var : {Variant::kWinnerBid, Variant::kLoserBid}) {
      const auto game = make_auction(ValuationProfile::minimum_cap(v, v), var);
      const auto eqs = enumerate_pure_nash(game);
      REQUIRE(!eqs.empty());
      for (const auto& pp : eqs) {
        const auto rep = is_nash(game, to_profile<Rational>(pp, game.num_bids()));
        CHECK(rep.payoff_low == Rational(v / 2));
        CHECK(rep.payoff_high == Rational(v / 2));
      }
    }
  }
}

TEST_CASE("separating bid examples") {
  const auto game = make_auction(ValuationProfile(4, 8, 6), Variant::kWinnerBid);
  const auto a = separating_bid(game, pure_profile<Rational>(7, 1, 2));
  REQUIRE(a);
  CHECK(a->p == 2);
  CHECK(a->efficient);
  const auto b = separating_bid(game, pure_profile<Rational>(7, 3, 4));
  REQUIRE(b);
  CHECK(b->p == 4);
  CHECK(b->efficient);
  const StrategyProfile<Rational> u{uniform<Rational>(7), uniform<Rational>(7)};
  CHECK_FALSE(is_nash(game, u).is_nash);
  CHECK_FALSE(is_nash(game, u).separating_bid);
}

TEST_CASE("every pure equilibrium has the structure of a separating bid") {
  for (const Rational gamma : {Rational(1, 2), Rational(1)}) {
    for (const auto& v : small_grid()) {
      if (v.equal_values()) continue;
      for (Variant var : {Variant::kWinnerBid, Variant::kLoserBid}) {
        const auto game = make_auction(v, var, gamma);
        for (const auto& pp : enumerate_pure_nash(game)) {
          const auto s = to_profile<Rational>(pp, game.num_bids());
          const auto rep = is_nash(game, s);
          REQUIRE(rep.is_nash);
          REQUIRE(rep.separating_bid);
          CHECK(*rep.separating_bid >= v.c_low());
          CHECK(*rep.separating_bid <= v.c_high());
          const Rational sum = rep.payoff_low + rep.payoff_high;
          if (rep.efficient) {
            CHECK(sum == Rational(v.v_high()));
          } else {
            CHECK(sum >= Rational(v.v_high() - 1));
          }
        }
        // With even ties each efficient division is reached by adjacent
        // pure bids.
        if (gamma != Rational(1, 2)) continue;
        for (int p = v.c_low(); p <= v.c_high(); ++p) {
          const auto s = var == Variant::kWinnerBid
                             ? pure_profile<Rational>(game.num_bids(), p - 1, p)
                             : pure_profile<Rational>(game.num_bids(), p, p + 1);
          CHECK(is_nash(game, s).is_nash);
        }
      }
    }
  }
}

TEST_CASE("separating bids of the two auctions reflect on symmetric caps") {
  for (auto [vl, vh] : valuation_pairs(14, true)) {
    const auto v = ValuationProfile::symmetric_cap(vl, vh);
    std::set<int> wb, lb;
    for (Variant var : {Variant::kWinnerBid, Variant::kLoserBid}) {
      const auto game = make_auction(v, var);
      for (const auto& pp : enumerate_pure_nash(game)) {
        const auto rep = is_nash(game, to_profile<Rational>(pp, game.num_bids()));
        (var == Variant::kWinnerBid ? wb : lb).insert(*rep.separating_bid);
      }
    }
    std::set<int> mirrored;
    for (int b : wb) mirrored.insert(v.p_bar() - b);
    CHECK(mirrored == lb);
  }
}

TEST_CASE("mirror maps each auction onto the other up to a constant") {
  for (const auto& v : small_grid()) {
    if (v.equal_values()) continue;
    for (Variant var : {Variant::kWinnerBid, Variant::kLoserBid}) {
      const auto game = make_auction(v, var, Rational(3, 4));
      const auto twin = mirror_game(game);
      CHECK(twin.variant() != game.variant());
      CHECK(mirror_profile(mirror_profile(v)) == v);
      const int top = v.p_bar();
      for (Role r : {Role::kLow, Role::kHigh}) {
        // Role r in the original is role other(r) in the mirror.
        const auto& a = game.payoffs(r);
        const auto& b = twin.payoffs(other(r));
        const Rational shift = a(0, 0) - b(top, top);
        for (int x = 0; x <= top; ++x) {
          for (int y = 0; y <= top; ++y) {
            CHECK(a(x, y) - b(top - x, top - y) == shift);
          }
        }
      }
    }
  }
}

TEST_CASE("probability the low agent receives the object") {
  const auto game = make_auction(ValuationProfile(4, 8, 6), Variant::kWinnerBid,
                                 Rational(3, 4));
  CHECK(prob_low_receives(game, pure_profile<Rational>(7, 3, 3)) == Rational(1, 4));
  CHECK(prob_low_receives(game, pure_profile<Rational>(7, 4, 3)) == Rational(1));
  CHECK(prob_low_receives(game, pure_profile<Rational>(7, 2, 3)) == Rational(0));
}
