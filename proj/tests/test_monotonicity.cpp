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


#include <cmath>
#include <random>

#include "doctest.h"
#include "epa/acceptance.hpp"
#include "epa/monotonicity.hpp"
#include "epa/qre.hpp"
#include "oracle.hpp"

using namespace epa;

namespace {

const ValuationProfile kSmall(4, 8, 6);

// Low agent answers a random high distribution with a logit response, which
// orders its probabilities like its utilities.
StrategyProfile<double> low_responds(const AuctionGame<double>& g,
                                     std::mt19937_64& rng) {
  const int n = g.num_bids();
  StrategyProfile<double> s{uniform<double>(n), oracle::random_interior(rng, n)};
  std::uniform_real_distribution<double> lam(0.1, 4.0);
  s.low = logistic_response<double>(utilities(g, Role::kLow, s.high), lam(rng));
  return s;
}

}  // namespace

TEST_CASE("uniform profiles are weakly monotone") {
  for (Variant var : {Variant::kWinnerBid, Variant::kLoserBid}) {
    const auto g = make_auction(ValuationProfile(6, 14, 12), var);
    const StrategyProfile<Rational> u{uniform<Rational>(13), uniform<Rational>(13)};
    CHECK(check_weak_monotonicity(g, u).holds);
  }
}

TEST_CASE("probability on a worse bid is a violation") {
  const auto g = make_auction(kSmall, Variant::kWinnerBid);
  Distribution<Rational> low = Distribution<Rational>::Constant(7, Rational(0));
  low(2) = Rational(1, 10);
  low(3) = Rational(9, 10);
  const StrategyProfile<Rational> s{low, point_mass<Rational>(7, 2)};
  const auto rep = check_weak_monotonicity(g, s);
  CHECK_FALSE(rep.holds);
  bool found = false;
  for (const auto& v : rep.violations) {
    if (v.agent == Role::kLow && v.bid_a == 3 && v.bid_b == 0) {
      found = true;
      CHECK(v.util_a == Rational(1));
      CHECK(v.util_b == Rational(2));
    }
  }
  CHECK(found);
}

TEST_CASE("tolerances relax each side separately") {
  const auto g = make_auction<double>(kSmall, Variant::kWinnerBid);
  // Bids 0 and 1 earn the same against a point mass on 2.
  StrategyProfile<double> s{uniform<double>(7), point_mass<double>(7, 2)};
  s.low(0) += 1e-10;
  s.low(1) -= 1e-10;
  auto low_violations = [&](const MonotonicityTolerance& tol) {
    int count = 0;
    for (const auto& v : check_weak_monotonicity(g, s, tol).violations) {
      count += v.agent == Role::kLow;
    }
    return count;
  };
  CHECK(low_violations({0.0, 0.0}) > 0);
  CHECK(low_violations({1e-9, 0.0}) == 0);
}

TEST_CASE("m-monotonicity at the ends of the range") {
  std::mt19937_64 rng(11);
  for (Variant var : {Variant::kWinnerBid, Variant::kLoserBid}) {
    const auto g = make_auction<double>(ValuationProfile(6, 12, 9), var);
    for (int trial = 0; trial < 300; ++trial) {
      const int n = g.num_bids();
      const StrategyProfile<double> s =
          trial % 2 == 0 ? StrategyProfile<double>{oracle::random_interior(rng, n),
                                                   oracle::random_interior(rng, n)}
                         : low_responds(g, rng);
      CHECK(check_m_monotonicity(g, s, 0.0).holds);
      CHECK(check_m_monotonicity(g, s, 1.0).holds ==
            check_weak_monotonicity(g, s).holds);
    }
  }
  const auto g = make_auction(kSmall, Variant::kWinnerBid);
  const StrategyProfile<Rational> s{uniform<Rational>(7), uniform<Rational>(7)};
  CHECK_THROWS(check_m_monotonicity(g, s, -0.1));
  CHECK_THROWS(check_m_monotonicity(g, s, 1.5));
}

TEST_CASE("m-monotonicity ratio example") {
  const auto g = make_auction(kSmall, Variant::kWinnerBid);
  // Against a point mass on 2 the low agent earns 2 from bid 0 and 1 from 3.
  Distribution<Rational> low(7);
  low << Rational(2, 10), Rational(1, 10), Rational(1, 10), Rational(5, 10),
      Rational(1, 30), Rational(1, 30), Rational(1, 30);
  const StrategyProfile<Rational> s{low, point_mass<Rational>(7, 2)};
  auto has = [](const auto& rep, int a, int b) {
    for (const auto& v : rep.violations) {
      if (v.agent == Role::kLow && v.bid_a == a && v.bid_b == b) return true;
    }
    return false;
  };
  CHECK(has(check_m_monotonicity(g, s, 0.5), 0, 3));
  CHECK_FALSE(has(check_m_monotonicity(g, s, 0.4), 0, 3));
}

TEST_CASE("passing at m implies passing below m") {
  std::mt19937_64 rng(12);
  const auto g = make_auction<double>(ValuationProfile(4, 12, 8), Variant::kLoserBid);
  for (int trial = 0; trial < 200; ++trial) {
    const StrategyProfile<double> s{oracle::random_interior(rng, 9),
                                    oracle::random_interior(rng, 9)};
    const double top = max_monotone_m(g, s);
    CHECK(check_m_monotonicity(g, s, top, {1e-15, 0.0}).holds);
    for (double m = 0.0; m <= 1.0; m += 0.05) {
      if (std::abs(m - top) < 1e-9) continue;
      const bool pass = check_m_monotonicity(g, s, m).holds;
      CHECK(pass == (m <= top));
    }
  }
}

TEST_CASE("probability cap with equally good bids") {
  // Against a point mass on 2, low bids 0, 1 and 2 all earn 2 and 3..6 earn
  // less, so uniform play on {0,1,2} meets the cap 1/3 with equality.
  const auto g = make_auction(kSmall, Variant::kWinnerBid);
  const StrategyProfile<Rational> s{uniform_on<Rational>(7, {0, 1, 2}),
                                    point_mass<Rational>(7, 2)};
  for (int b = 0; b <= 2; ++b) {
    const auto cap = monotone_probability_cap(g, s, Role::kLow, b);
    CHECK(cap.k == 2);
    CHECK(cap.cap == Rational(1, 3));
    CHECK(cap.satisfied);
    CHECK(s.low(b) == cap.cap);
  }
  const auto worst = monotone_probability_cap(g, s, Role::kLow, 6);
  CHECK(worst.k == 6);
  CHECK(worst.satisfied);
  CHECK_THROWS(monotone_probability_cap(g, s, Role::kLow, 7));
}

TEST_CASE("probability cap fails off a violation") {
  const auto g = make_auction(kSmall, Variant::kWinnerBid);
  Distribution<Rational> low = Distribution<Rational>::Constant(7, Rational(0));
  low(2) = Rational(1, 10);
  low(3) = Rational(9, 10);
  const StrategyProfile<Rational> s{low, point_mass<Rational>(7, 2)};
  const auto cap = monotone_probability_cap(g, s, Role::kLow, 3);
  CHECK(cap.k == 3);
  CHECK_FALSE(cap.satisfied);
}

TEST_CASE("monotone interior profiles meet every cap") {
  std::mt19937_64 rng(13);
  for (Variant var : {Variant::kWinnerBid, Variant::kLoserBid}) {
    const auto g = make_auction<double>(ValuationProfile(4, 16, 12), var);
    for (int trial = 0; trial < 300; ++trial) {
      const auto s = low_responds(g, rng);
      for (int b = 0; b < g.num_bids(); ++b) {
        CHECK(monotone_probability_cap(g, s, Role::kLow, b, 1e-12, 0.0).satisfied);
      }
    }
  }
  const auto exact = make_auction(ValuationProfile(4, 16, 12), Variant::kWinnerBid);
  const auto g = exact.cast<double>();
  for (const auto& sample : sample_monotone_profiles(exact, 50, 99)) {
    REQUIRE(is_interior(sample.profile));
    REQUIRE(check_weak_monotonicity(g, sample.profile, {1e-9, 0.0}).holds);
    for (Role r : {Role::kLow, Role::kHigh}) {
      for (int b = 0; b < g.num_bids(); ++b) {
        CHECK(monotone_probability_cap(g, sample.profile, r, b, 1e-9, 0.0).satisfied);
      }
    }
  }
}

TEST_CASE("logistic fixed points are weakly monotone") {
  for (auto [vl, vh] : valuation_pairs(14, true)) {
    for (Variant var : {Variant::kWinnerBid, Variant::kLoserBid}) {
      const auto g = make_auction<double>(ValuationProfile::minimum_cap(vl, vh), var);
      for (double lambda : {0.5, 5.0, 40.0}) {
        LogisticConfig c;
        c.lambda = lambda;
        const int n = g.num_bids();
        const auto fp = qre_fixed_point(
            g, c, StrategyProfile<double>{uniform<double>(n), uniform<double>(n)});
        REQUIRE(fp.converged);
        const double slack = c.residual_tol * lambda;
        CHECK(check_weak_monotonicity(g, fp.profile, {slack, 0.0}).holds);
      }
    }
  }
}
