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
#include <string>

#include "epa/empirical.hpp"
#include "epa/logistic.hpp"

namespace epa {
namespace {

using WDist = Distribution<Wide>;

Rational min_rational(const Rational& a, const Rational& b) {
  return a < b ? a : b;
}

// f_role(s) = base_role + weight_role * l^t(U_role(s)).
struct PerturbedResponse {
  const AuctionGame<Wide>& game;
  WDist base_low, base_high;
  Wide weight_low, weight_high;
  Wide t;

  StrategyProfile<Wide> operator()(const StrategyProfile<Wide>& s) const {
    return {base_low + weight_low * logistic_response(
                                        utilities(game, Role::kLow, s.high), t),
            base_high + weight_high * logistic_response(
                                          utilities(game, Role::kHigh, s.low),
                                          t)};
  }

  StrategyProfile<Wide> start() const {
    const int n = game.num_bids();
    return {base_low + weight_low * uniform<Wide>(n),
            base_high + weight_high * uniform<Wide>(n)};
  }
};

WDist zeros(int n) { return WDist::Constant(n, Wide(0)); }

void add_block(WDist& d, int from, int to, const Wide& mass) {
  for (int b = from; b <= to; ++b) d(b) += mass;
}

PerturbedResponse build_response(const AuctionGame<Wide>& g,
                                 const WitnessPlan& plan, const Wide& eps,
                                 const Wide& t) {
  const int n = g.num_bids();
  const int cl = g.profile().c_low();
  const int p = plan.p;
  PerturbedResponse f{g, zeros(n), zeros(n), eps, eps, t};
  const Wide one(1);
  switch (plan.kase) {
    case WitnessCase::kCase1:
      f.base_high(cl) = one - eps;
      f.base_low(cl - 1) = one - eps;
      break;
    case WitnessCase::kCase2:
      f.base_high(cl + 1) = one - eps;
      add_block(f.base_low, cl - 1, cl, Wide(0.5) - eps);
      f.weight_low = 2 * eps;
      break;
    case WitnessCase::kCase3:
      f.base_high(p) = one - eps;
      add_block(f.base_low, 0, p - 1, one / p - eps);
      f.base_low(p) = (p - 1) * eps;
      break;
    case WitnessCase::kCase4:
    case WitnessCase::kCase5: {
      const Wide eta = eps / (2 * (plan.r - plan.y + 2));
      f.base_high(p) = one - eps / 2;
      add_block(f.base_high, plan.y, plan.r, eta);
      f.weight_high = eta;
      const Wide block(plan.n);
      if (plan.kase == WitnessCase::kCase4) {
        add_block(f.base_low, plan.y, p - 1, one / block - eps);
        f.weight_low = block * eps;
      } else {
        const Wide tau = (Wide(plan.y) + Wide(1.5)) * eps / block;
        add_block(f.base_low, plan.y, p - 1, one / block - tau);
        add_block(f.base_low, 0, plan.y - 1, eps);
        f.base_low(p) += eps;
        f.weight_low = eps / 2;
      }
      break;
    }
  }
  return f;
}

}  // namespace

WitnessPlan plan_witness(const AuctionGame<Rational>& game, int p) {
  const ValuationProfile& v = game.profile();
  if (game.variant() != Variant::kWinnerBid) {
    throw WitnessError("witness plans are built in the winner-bid frame");
  }
  if (v.equal_values()) throw WitnessError("witnesses need v_low < v_high");
  const EmpiricalBounds bounds = allowed_bids(v, Variant::kWinnerBid);
  if (!bounds.allows(p)) {
    throw WitnessError("bid " + std::to_string(p) +
                       " is not in the allowed set");
  }
  const int cl = v.c_low(), ch = v.c_high(), n = v.num_bids();
  WitnessPlan plan{WitnessCase::kCase1, p, 0, 0, 0, Rational(0),
                   {point_mass<Rational>(n, 0), point_mass<Rational>(n, p)}};
  if (p == cl) {
    plan.kase = WitnessCase::kCase1;
    plan.epsilon_ceiling =
        min_rational(Rational(1), Rational(2, v.p_bar() - 2));
    plan.target.low = point_mass<Rational>(n, cl - 1);
  } else if (p == cl + 1) {
    plan.kase = WitnessCase::kCase2;
    plan.epsilon_ceiling = Rational(1, v.p_bar() + 2);
    plan.target.low = uniform_on<Rational>(n, {cl - 1, cl});
  } else if (bounds.active_case == BoundCase::kExtreme) {
    plan.kase = WitnessCase::kCase3;
    plan.epsilon_ceiling = min_rational(Rational(1, p * p),
                                        Rational(p - 1, p * (2 * ch + 1)));
    std::vector<int> below;
    for (int b = 0; b < p; ++b) below.push_back(b);
    plan.target.low = uniform_on<Rational>(n, below);
  } else {
    const bool boundary = Rational(p) == bounds.bid_cutoff;
    plan.kase = boundary ? WitnessCase::kCase5 : WitnessCase::kCase4;
    plan.y = cl - 3 * (p - 1 - cl);
    plan.n = p - plan.y;
    std::vector<int> block;
    for (int b = plan.y; b < p; ++b) block.push_back(b);
    plan.target.low = uniform_on<Rational>(n, block);
    const Distribution<Rational> u =
        utilities(game, Role::kHigh, plan.target.low);
    plan.r = p;
    for (int r = p; r <= v.p_bar(); ++r) {
      if (u(r) >= u(plan.y)) plan.r = r;
    }
    plan.epsilon_ceiling =
        boundary ? Rational(2, 2 * plan.y + 3 + 3 * plan.n)
                 : Rational(1, plan.n * (plan.n + 1));
  }
  return plan;
}

Witness construct_witness(const AuctionGame<Rational>& game, int p,
                          const WitnessConfig& cfg) {
  if (!(cfg.epsilon > 0) || !(cfg.t > 0)) {
    throw std::invalid_argument("epsilon and t must be positive");
  }
  const bool lb = game.variant() == Variant::kLoserBid;
  const AuctionGame<Rational> frame = lb ? mirror_game(game) : game;
  const int frame_p = lb ? game.p_bar() - p : p;
  const WitnessPlan plan = plan_witness(frame, frame_p);

  const double ceiling = to_double(plan.epsilon_ceiling) / 2;
  const double eps = std::min(cfg.epsilon, ceiling);
  const AuctionGame<Wide> wide_frame = frame.cast<Wide>();
  const PerturbedResponse f =
      build_response(wide_frame, plan, Wide(eps), Wide(cfg.t));
  const FixedPointResult<Wide> fp =
      damped_fixed_point<Wide>(f, f.start(), cfg.solver);

  Witness w;
  w.kase = plan.kase;
  w.target_p = p;
  w.epsilon = eps;
  w.t = cfg.t;
  w.y = lb ? game.p_bar() - plan.y : plan.y;
  w.n = plan.n;
  w.r = lb ? game.p_bar() - plan.r : plan.r;
  w.profile = lb ? mirror_strategy(fp.profile) : fp.profile;
  w.target = lb ? mirror_strategy(plan.target) : plan.target;
  w.residual = fp.residual;
  w.iterations = fp.iterations;
  w.converged = fp.converged;
  w.interior = is_interior(w.profile);

  const AuctionGame<Wide> wide_game = game.cast<Wide>();
  w.monotonicity = check_weak_monotonicity(wide_game, w.profile, cfg.tolerance);
  w.caps_hold = true;
  for (Role r : {Role::kLow, Role::kHigh}) {
    for (int b = 0; b < game.num_bids() && w.caps_hold; ++b) {
      w.caps_hold = monotone_probability_cap(wide_game, w.profile, r, b,
                                            cfg.tolerance.probability,
                                            cfg.tolerance.utility)
                       .satisfied;
    }
  }
  w.distance_to_target = sup_distance(w.profile, w.target.cast<Wide>());
  return w;
}

std::vector<SchedulePoint> default_witness_schedule() {
  std::vector<SchedulePoint> out;
  double eps = 0.1, t = 20.0;
  for (int k = 0; k < 4; ++k, eps /= 10, t *= 5) out.push_back({eps, t});
  return out;
}

WitnessSequence witness_sequence(const AuctionGame<Rational>& game, int p,
                                 const std::vector<SchedulePoint>& schedule,
                                 const WitnessConfig& cfg) {
  if (schedule.empty()) throw std::invalid_argument("empty witness schedule");
  for (std::size_t i = 1; i < schedule.size(); ++i) {
    if (!(schedule[i].epsilon < schedule[i - 1].epsilon) ||
        !(schedule[i].t > schedule[i - 1].t)) {
      throw std::invalid_argument(
          "witness schedule needs decreasing epsilon and increasing t");
    }
  }
  WitnessSequence seq;
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    WitnessConfig c = cfg;
    c.epsilon = schedule[i].epsilon;
    c.t = schedule[i].t;
    Witness w = construct_witness(game, p, c);
    std::string failure;
    if (!w.converged) {
      failure = "fixed point did not converge (residual " +
                std::to_string(to_double(w.residual)) + ")";
    } else if (!w.interior) {
      failure = "profile is not interior";
    } else if (!w.monotonicity.holds) {
      const auto& v = w.monotonicity.violations.front();
      failure = std::string("monotonicity violated for ") +
                role_name(v.agent) + " bids " + std::to_string(v.bid_a) +
                " vs " + std::to_string(v.bid_b);
    } else if (!w.caps_hold) {
      failure = "probability cap violated";
    }
    seq.elements.push_back(std::move(w));
    if (!failure.empty()) {
      seq.failing_index = static_cast<int>(i);
      seq.failure = failure;
      return seq;
    }
  }
  const Witness& last = seq.elements.back();
  seq.final_distance = to_double(last.distance_to_target);
  const NashReport<Rational> target = is_nash(game, last.target);
  seq.target_is_nash = target.is_nash;
  seq.target_separating_bid = target.separating_bid;
  const StrategyProfile<Wide> rounded =
      round_support(last.profile, Wide(cfg.limit_tolerance));
  seq.limit_support_matches =
      support(rounded.low) == support(last.target.low) &&
      support(rounded.high) == support(last.target.high);
  seq.ok = seq.final_distance <= cfg.limit_tolerance && seq.target_is_nash &&
           seq.target_separating_bid == p && seq.limit_support_matches;
  if (!seq.ok) seq.failure = "last element does not settle on the target";
  return seq;
}

}  // namespace epa
