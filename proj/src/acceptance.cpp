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


#include "epa/acceptance.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "epa/monotonicity.hpp"
#include "epa/nash.hpp"
#include "epa/qre.hpp"

namespace epa {
namespace {

constexpr std::size_t kMaxListedFailures = 10;

using Clock = std::chrono::steady_clock;

template <typename F>
void parallel_for(int count, int threads, const F& body) {
  if (threads <= 0) {
    threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  }
  threads = std::min(threads, std::max(count, 1));
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (int i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::string describe(const ValuationProfile& v) {
  std::ostringstream os;
  os << "(" << v.v_low() << "," << v.v_high() << ") pbar=" << v.p_bar();
  return os.str();
}

std::string describe(const ValuationProfile& v, Variant var) {
  return std::string(variant_name(var)) + " " + describe(v);
}

std::string join(const std::vector<int>& xs) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? "," : "") << xs[i];
  os << "}";
  return os.str();
}

struct Game {
  ValuationProfile profile;
  Variant variant;
};

std::vector<Game> games(const std::vector<ValuationProfile>& profiles,
                        const std::vector<Variant>& variants) {
  std::vector<Game> out;
  for (const auto& v : profiles) {
    for (Variant var : variants) out.push_back({v, var});
  }
  return out;
}

// Per-item failure lists, merged in item order so reports do not depend on
// thread scheduling.
class FailureLog {
 public:
  explicit FailureLog(int items) : items_(items) {}
  void add(int item, std::string message) {
    items_[item].push_back(std::move(message));
  }
  int failing_items() const {
    return static_cast<int>(std::count_if(
        items_.begin(), items_.end(), [](const auto& v) { return !v.empty(); }));
  }
  std::vector<std::string> first(std::size_t limit) const {
    std::vector<std::string> out;
    for (const auto& v : items_) {
      for (const auto& m : v) {
        if (out.size() == limit) return out;
        out.push_back(m);
      }
    }
    return out;
  }

 private:
  std::vector<std::vector<std::string>> items_;
};

CriterionResult start(const char* id, const char* description, double tolerance,
                      double budget) {
  CriterionResult r;
  r.id = id;
  r.description = description;
  r.tolerance = tolerance;
  r.budget_seconds = budget;
  return r;
}

void finish(CriterionResult& r, bool correct, const FailureLog& log,
            Clock::time_point t0) {
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  r.failures = log.first(kMaxListedFailures);
  if (r.seconds > r.budget_seconds) {
    std::ostringstream os;
    os << "runtime " << r.seconds << " s exceeds budget " << r.budget_seconds
       << " s";
    r.failures.push_back(os.str());
  }
  r.passed = correct && r.seconds <= r.budget_seconds;
}

std::uint64_t game_seed(std::uint64_t seed, const ValuationProfile& v,
                        Variant var) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(v.v_low()),
                    static_cast<std::uint32_t>(v.v_high()),
                    static_cast<std::uint32_t>(v.p_bar()),
                    static_cast<std::uint32_t>(var)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

}  // namespace

const char* cap_rule_name(CapRule rule) {
  switch (rule) {
    case CapRule::kFixed:
      return "fixed";
    case CapRule::kSymmetric:
      return "symmetric";
    case CapRule::kMinimum:
      return "minimum";
  }
  return "?";
}

CapRule parse_cap_rule(const std::string& text) {
  if (text == "fixed") return CapRule::kFixed;
  if (text == "symmetric") return CapRule::kSymmetric;
  if (text == "minimum") return CapRule::kMinimum;
  throw std::invalid_argument("unknown p_bar rule: " + text);
}

void SweepConfig::validate() const {
  if (v_high_max < 6 || v_high_max % 2 != 0) {
    throw std::invalid_argument("v_high_max must be even and >= 6");
  }
  if (caps.empty()) throw std::invalid_argument("no p_bar rule given");
  if (std::find(caps.begin(), caps.end(), CapRule::kFixed) != caps.end() &&
      fixed_p_bar < v_high_max / 2 + 2) {
    throw std::invalid_argument("fixed p_bar must be >= v_high_max/2 + 2");
  }
  if (variants.empty()) throw std::invalid_argument("no variant given");
  if (gamma < Rational(1, 2) || gamma > Rational(1)) {
    throw std::invalid_argument("gamma must lie in [1/2, 1]");
  }
  if (!(qre_start > 0) || !(qre_ratio > 1) || !(qre_cap >= qre_start)) {
    throw std::invalid_argument("bad QRE schedule");
  }
  if (witness_schedule.empty()) {
    throw std::invalid_argument("empty witness schedule");
  }
  if (monotone_samples < 0) throw std::invalid_argument("negative sample count");
  if (threads < 0) throw std::invalid_argument("negative thread count");
}

EmpiricalBounds SweepConfig::bounds_for(const ValuationProfile& v,
                                        Variant var) const {
  return bounds ? bounds(v, var) : allowed_bids(v, var);
}

std::vector<ValuationProfile> sweep_profiles(const SweepConfig& cfg) {
  std::map<std::tuple<int, int, int>, ValuationProfile> unique;
  for (auto [vl, vh] : valuation_pairs(cfg.v_high_max, true)) {
    for (CapRule rule : cfg.caps) {
      const ValuationProfile v =
          rule == CapRule::kFixed       ? ValuationProfile(vl, vh, cfg.fixed_p_bar)
          : rule == CapRule::kSymmetric ? ValuationProfile::symmetric_cap(vl, vh)
                                        : ValuationProfile::minimum_cap(vl, vh);
      unique.emplace(std::make_tuple(vl, vh, v.p_bar()), v);
    }
  }
  std::vector<ValuationProfile> out;
  for (const auto& [key, v] : unique) out.push_back(v);
  return out;
}

std::vector<ValuationProfile> symmetric_profiles(const SweepConfig& cfg) {
  std::vector<ValuationProfile> out;
  for (auto [vl, vh] : valuation_pairs(cfg.v_high_max, true)) {
    out.push_back(ValuationProfile::symmetric_cap(vl, vh));
  }
  return out;
}

// ---------------------------------------------------------------------------

CriterionResult check_a1(const SweepConfig& cfg) {
  auto t0 = Clock::now();
  CriterionResult r = start(
      "A1", "efficient pure-Nash payoffs are the integer divisions of ES",
      0.0, 10.0);
  const std::vector<Game> items = games(sweep_profiles(cfg), cfg.variants);
  FailureLog log(static_cast<int>(items.size()));
  std::vector<std::vector<int>> separating(items.size());
  parallel_for(static_cast<int>(items.size()), cfg.threads, [&](int i) {
    const auto& [v, var] = items[i];
    const std::string name = describe(v, var);
    const AuctionGame<Rational> game(v, var, cfg.gamma);
    std::set<PayoffPair> efficient;
    std::set<int> bids;
    for (const PureProfile& pp : enumerate_pure_nash(game)) {
      const auto s = to_profile<Rational>(pp, game.num_bids());
      const NashReport<Rational> rep = is_nash(game, s);
      std::ostringstream tag;
      tag << name << " (" << pp.low << "," << pp.high << "): ";
      if (!rep.is_nash) {
        log.add(i, tag.str() + "enumerated profile is not Nash");
        continue;
      }
      if (!rep.separating_bid) {
        log.add(i, tag.str() + "no separating bid in the Nash range");
        continue;
      }
      bids.insert(*rep.separating_bid);
      const Rational sum = rep.payoff_low + rep.payoff_high;
      if (rep.efficient) {
        if (sum != Rational(v.v_high())) {
          log.add(i, tag.str() + "efficient payoffs do not sum to v_high");
        }
        efficient.insert({rep.payoff_low, rep.payoff_high});
      } else if (sum < Rational(v.v_high() - 1)) {
        log.add(i, tag.str() + "inefficient payoffs sum below v_high - 1");
      }
    }
    const auto formula = efficient_nash_payoffs(v);
    if (std::set<PayoffPair>(formula.begin(), formula.end()) != efficient) {
      std::ostringstream os;
      os << name << ": enumerated " << efficient.size()
         << " efficient payoff pairs, formula gives " << formula.size();
      log.add(i, os.str());
    }
    separating[i].assign(bids.begin(), bids.end());
  });
  // Reflection b -> c_l + c_h - b swaps the auctions on symmetric caps.
  int duality_checked = 0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& [v, var] = items[i];
    if (var != Variant::kWinnerBid || v.p_bar() != v.c_low() + v.c_high()) {
      continue;
    }
    for (std::size_t j = 0; j < items.size(); ++j) {
      if (items[j].variant != Variant::kLoserBid || !(items[j].profile == v)) {
        continue;
      }
      std::vector<int> mirrored;
      for (int b : separating[i]) mirrored.push_back(v.p_bar() - b);
      std::sort(mirrored.begin(), mirrored.end());
      ++duality_checked;
      if (mirrored != separating[j]) {
        log.add(static_cast<int>(i), describe(v) +
                                         ": loser-bid separating bids are not "
                                         "the reflection of winner-bid ones");
      }
    }
  }
  r.measured = log.failing_items();
  std::ostringstream os;
  os << items.size() << " games, gamma=" << to_string(cfg.gamma) << ", "
     << duality_checked << " reflection checks";
  r.detail = os.str();
  finish(r, r.measured == 0, log, t0);
  return r;
}

CriterionResult check_a2(const SweepConfig& cfg) {
  auto t0 = Clock::now();
  CriterionResult r =
      start("A2", "allowed bid sets at reference profiles", 0.0, 1.0);
  struct Spot {
    Variant var;
    ValuationProfile v;
    std::vector<int> expected;
  };
  const std::vector<Spot> spots = {
      {Variant::kWinnerBid, ValuationProfile::minimum_cap(4, 8), {2}},
      {Variant::kWinnerBid, ValuationProfile::minimum_cap(4, 16), {2, 3, 4}},
      {Variant::kWinnerBid, ValuationProfile::minimum_cap(8, 16), {4, 5}},
      {Variant::kWinnerBid, ValuationProfile::minimum_cap(10, 16), {5, 6}},
      {Variant::kLoserBid, ValuationProfile(4, 8, 6), {4}},
      {Variant::kLoserBid, ValuationProfile(4, 16, 10), {6, 7, 8}},
  };
  FailureLog log(static_cast<int>(spots.size()) + 1);
  for (std::size_t i = 0; i < spots.size(); ++i) {
    const auto& s = spots[i];
    const EmpiricalBounds b = cfg.bounds_for(s.v, s.var);
    if (b.allowed_bids != s.expected) {
      log.add(static_cast<int>(i), describe(s.v, s.var) + ": got " +
                                       join(b.allowed_bids) + ", expected " +
                                       join(s.expected));
    }
  }
  const EmpiricalBounds low_vl =
      cfg.bounds_for(ValuationProfile::minimum_cap(4, 16), Variant::kWinnerBid);
  if (low_vl.bid_cutoff != Rational(9, 2) || low_vl.strict) {
    log.add(static_cast<int>(spots.size()),
            "wb (4,16): cutoff " + to_string(low_vl.bid_cutoff) +
                (low_vl.strict ? " (strict)" : "") + ", expected p <= 9/2");
  }
  r.measured = log.failing_items();
  r.detail = std::to_string(spots.size()) + " spot profiles plus one cutoff";
  finish(r, r.measured == 0, log, t0);
  return r;
}

CriterionResult check_a3(const SweepConfig& cfg) {
  auto t0 = Clock::now();
  CriterionResult r = start(
      "A3", "winner-bid sets sit left of the Nash-range midpoint, loser-bid "
            "sets right, and mirror each other",
      0.0, 1.0);
  const auto profiles = symmetric_profiles(cfg);
  FailureLog log(static_cast<int>(profiles.size()));
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    const ValuationProfile& v = profiles[i];
    const int twice_mid = v.c_low() + v.c_high();
    const auto wb = cfg.bounds_for(v, Variant::kWinnerBid).allowed_bids;
    const auto lb = cfg.bounds_for(v, Variant::kLoserBid).allowed_bids;
    if (wb.empty() || lb.empty()) {
      log.add(static_cast<int>(i), describe(v) + ": empty allowed set");
      continue;
    }
    if (2 * wb.back() > twice_mid) {
      log.add(static_cast<int>(i), describe(v) + ": wb " + join(wb) +
                                       " reaches past the midpoint");
    }
    if (2 * lb.front() < twice_mid) {
      log.add(static_cast<int>(i), describe(v) + ": lb " + join(lb) +
                                       " reaches below the midpoint");
    }
    std::vector<int> mirrored;
    for (int b : wb) mirrored.push_back(twice_mid - b);
    std::sort(mirrored.begin(), mirrored.end());
    if (mirrored != lb) {
      log.add(static_cast<int>(i), describe(v) + ": lb " + join(lb) +
                                       " is not the mirror of wb " + join(wb));
    }
  }
  r.measured = log.failing_items();
  r.detail = std::to_string(profiles.size()) + " symmetric-cap profiles";
  finish(r, r.measured == 0, log, t0);
  return r;
}

CriterionResult check_a4(const SweepConfig& cfg) {
  auto t0 = Clock::now();
  constexpr double kDistance = 1e-2;
  constexpr double kResidual = 1e-8;
  const MonotonicityTolerance kMonotone{1e-9, 0.0};
  CriterionResult r = start(
      "A4", "witness sequences are interior, monotone fixed points that reach "
            "their target",
      kDistance, 300.0);
  struct Item {
    ValuationProfile v;
    Variant var;
    int p;
  };
  std::vector<Item> items;
  for (const auto& [v, var] : games(sweep_profiles(cfg), cfg.variants)) {
    for (int p : cfg.bounds_for(v, var).allowed_bids) items.push_back({v, var, p});
  }
  FailureLog log(static_cast<int>(items.size()));
  std::vector<double> distance(items.size(), 0.0);
  std::vector<double> residual(items.size(), 0.0);
  parallel_for(static_cast<int>(items.size()), cfg.threads, [&](int i) {
    const Item& it = items[i];
    const std::string name =
        describe(it.v, it.var) + " p=" + std::to_string(it.p) + ": ";
    const AuctionGame<Rational> game(it.v, it.var, cfg.gamma);
    const AuctionGame<Wide> wide = game.cast<Wide>();
    WitnessSequence seq;
    try {
      seq = witness_sequence(game, it.p, cfg.witness_schedule, WitnessConfig{});
    } catch (const std::exception& e) {
      log.add(i, name + e.what());
      distance[i] = 1.0;
      return;
    }
    if (seq.elements.size() != cfg.witness_schedule.size()) {
      log.add(i, name + "sequence stopped early: " + seq.failure);
    }
    for (std::size_t k = 0; k < seq.elements.size(); ++k) {
      const Witness& w = seq.elements[k];
      const std::string at = name + "element " + std::to_string(k) + " ";
      if (!is_interior(w.profile)) log.add(i, at + "not interior");
      if (!check_weak_monotonicity(wide, w.profile, kMonotone).holds) {
        log.add(i, at + "not weakly payoff monotone");
      }
      const double res = static_cast<double>(w.residual);
      residual[i] = std::max(residual[i], res);
      if (!(res < kResidual)) log.add(i, at + "residual too large");
    }
    distance[i] = seq.final_distance;
    if (!(seq.final_distance <= kDistance)) {
      log.add(i, name + "last element too far from the target");
    }
    if (!seq.target_is_nash || seq.target_separating_bid != it.p) {
      log.add(i, name + "target is not a Nash equilibrium with this bid");
    }
    if (!seq.limit_support_matches) {
      log.add(i, name + "rounded last element misses the target supports");
    }
  });
  r.measured = items.empty()
                   ? 0.0
                   : *std::max_element(distance.begin(), distance.end());
  std::ostringstream os;
  os << items.size() << " sequences, worst residual "
     << (residual.empty() ? 0.0
                          : *std::max_element(residual.begin(), residual.end()))
     << " (limit " << kResidual << "), monotonicity tol "
     << kMonotone.probability;
  r.detail = os.str();
  finish(r, log.failing_items() == 0, log, t0);
  return r;
}

CriterionResult check_a5(const SweepConfig& cfg) {
  auto t0 = Clock::now();
  constexpr double kResidual = 1e-8;
  CriterionResult r = start(
      "A5", "logistic path limits are Nash with an allowed separating bid",
      0.0, 300.0);
  const std::vector<Game> items = games(sweep_profiles(cfg), cfg.variants);
  FailureLog log(static_cast<int>(items.size()));
  std::vector<double> residual(items.size(), 0.0);
  std::vector<double> last_lambda(items.size(), 0.0);
  std::vector<int> extended(items.size(), 0);
  LimitOptions lim;
  lim.schedule =
      default_lambda_schedule(cfg.qre_start, cfg.qre_ratio, cfg.qre_cap);
  lim.extension_cap = cfg.qre_extension_cap;
  PathOptions path_options;
  path_options.nash_tol = kResidual;
  parallel_for(static_cast<int>(items.size()), cfg.threads, [&](int i) {
    const auto& [v, var] = items[i];
    const std::string name = describe(v, var) + ": ";
    const AuctionGame<Rational> game(v, var, cfg.gamma);
    const LimitTrace trace =
        trace_to_limit(game, LogisticConfig{}, path_options, lim);
    const auto& last = trace.path.records.back();
    residual[i] = last.residual;
    last_lambda[i] = last.lambda;
    extended[i] = trace.extended_points > 0;
    if (!(last.residual < kResidual)) {
      log.add(i, name + "last fixed point did not converge");
    }
    if (!trace.limit.converged) {
      log.add(i, name + "rounded limit is not a Nash equilibrium");
      return;
    }
    const auto p = trace.limit.report.separating_bid;
    const auto allowed = cfg.bounds_for(v, var);
    if (!p || !allowed.allows(*p)) {
      log.add(i, name + "separating bid " + (p ? std::to_string(*p) : "none") +
                     " outside " + join(allowed.allowed_bids));
    }
  });
  r.measured = log.failing_items();
  std::ostringstream os;
  os << items.size() << " paths, residual limit " << kResidual
     << ", worst residual "
     << *std::max_element(residual.begin(), residual.end())
     << ", support threshold " << kSupportThreshold << ", "
     << std::count(extended.begin(), extended.end(), 1)
     << " continued past lambda=" << cfg.qre_cap << " (max "
     << *std::max_element(last_lambda.begin(), last_lambda.end()) << ")";
  r.detail = os.str();
  finish(r, r.measured == 0, log, t0);
  return r;
}

CriterionResult check_a6(const SweepConfig& cfg) {
  auto t0 = Clock::now();
  constexpr double kDistance = 1e-2;
  CriterionResult r = start(
      "A6", "pure empirical equilibria are Nash and witnessed; interior "
            "winner-bid payoffs need mixing",
      0.0, 60.0);
  const std::vector<Game> items = games(sweep_profiles(cfg), cfg.variants);
  FailureLog log(static_cast<int>(items.size()));
  std::atomic<int> mixing_checked{0};
  parallel_for(static_cast<int>(items.size()), cfg.threads, [&](int i) {
    const auto& [v, var] = items[i];
    const std::string name = describe(v, var) + ": ";
    const AuctionGame<Rational> game(v, var, cfg.gamma);
    const StrategyProfile<Rational> pure = pure_empirical(v, var);
    const NashReport<Rational> rep = is_nash(game, pure);
    if (!rep.is_nash) log.add(i, name + "pure empirical profile is not Nash");
    const int p = var == Variant::kWinnerBid ? v.c_low() : v.c_high();
    try {
      const WitnessSequence seq =
          witness_sequence(game, p, cfg.witness_schedule, WitnessConfig{});
      if (!seq.ok) log.add(i, name + "pure witness failed: " + seq.failure);
      if (seq.elements.empty() ||
          seq.elements.front().kase != WitnessCase::kCase1) {
        log.add(i, name + "pure witness is not the first construction");
      } else if (seq.elements.front().target.low != pure.low ||
                 seq.elements.front().target.high != pure.high) {
        log.add(i, name + "pure witness targets a different profile");
      }
      if (!(seq.final_distance <= kDistance)) {
        log.add(i, name + "pure witness does not approach its target");
      }
    } catch (const std::exception& e) {
      log.add(i, name + e.what());
    }
    if (var != Variant::kWinnerBid) return;
    for (int q : cfg.bounds_for(v, var).allowed_bids) {
      if (q <= v.c_low()) continue;
      ++mixing_checked;
      try {
        const WitnessPlan plan = plan_witness(game, q);
        if (support(plan.target.low).size() < 2) {
          log.add(i, name + "p=" + std::to_string(q) +
                         " target has a pure low-value strategy");
        }
        const WitnessSequence seq =
            witness_sequence(game, q, cfg.witness_schedule, WitnessConfig{});
        if (!seq.ok) {
          log.add(i, name + "p=" + std::to_string(q) + " " + seq.failure);
        }
      } catch (const std::exception& e) {
        log.add(i, name + "p=" + std::to_string(q) + " " + e.what());
      }
    }
  });
  r.measured = log.failing_items();
  r.detail = std::to_string(items.size()) + " pure profiles, " +
             std::to_string(mixing_checked.load()) + " mixed winner-bid targets";
  finish(r, r.measured == 0, log, t0);
  return r;
}

CriterionResult check_a7(const SweepConfig& cfg) {
  auto t0 = Clock::now();
  CriterionResult r =
      start("A7", "equal values give every pure Nash payoffs (v/2, v/2)", 0.0,
            1.0);
  std::vector<Game> items;
  for (int v = 4; v <= cfg.v_high_max; v += 2) {
    for (const ValuationProfile& prof :
         {ValuationProfile::minimum_cap(v, v), ValuationProfile::symmetric_cap(v, v)}) {
      for (Variant var : cfg.variants) items.push_back({prof, var});
    }
  }
  FailureLog log(static_cast<int>(items.size()));
  int equilibria = 0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& [v, var] = items[i];
    const AuctionGame<Rational> game(v, var, cfg.gamma);
    const auto pure = enumerate_pure_nash(game);
    if (pure.empty()) log.add(static_cast<int>(i), describe(v, var) + ": no pure Nash");
    const Rational half(v.c_low());
    for (const PureProfile& pp : pure) {
      ++equilibria;
      const NashReport<Rational> rep =
          is_nash(game, to_profile<Rational>(pp, game.num_bids()));
      if (rep.payoff_low != half || rep.payoff_high != half) {
        log.add(static_cast<int>(i),
                describe(v, var) + " (" + std::to_string(pp.low) + "," +
                    std::to_string(pp.high) + "): payoffs " +
                    to_string(rep.payoff_low) + ", " + to_string(rep.payoff_high));
      }
    }
  }
  r.measured = log.failing_items();
  r.detail = std::to_string(items.size()) + " games, " +
             std::to_string(equilibria) + " equilibria";
  finish(r, r.measured == 0, log, t0);
  return r;
}

CriterionResult check_a8(const SweepConfig& cfg) {
  auto t0 = Clock::now();
  CriterionResult r = start(
      "A8", "equilibria of the two-step neighbour profile transfer with "
            "payoff in band",
      0.0, 5.0);
  struct Item {
    ValuationProfile v;
    Variant var;
    int t;
  };
  std::vector<Item> items;
  for (const auto& [v, var] : games(sweep_profiles(cfg), cfg.variants)) {
    for (int t = 0; t < equity_surplus(v); ++t) items.push_back({v, var, t});
  }
  FailureLog log(static_cast<int>(items.size()));
  for (std::size_t i = 0; i < items.size(); ++i) {
    const Item& it = items[i];
    const std::string name =
        describe(it.v, it.var) + " t=" + std::to_string(it.t) + ": ";
    const AuctionGame<Rational> game(it.v, it.var, cfg.gamma);
    const int b = it.v.c_low() + it.t;
    try {
      const TransferReport rep = transfer_equilibrium(
          game, pure_profile<Rational>(game.num_bids(), b, b + 1), it.t);
      const bool band = rep.payoff_low >= Rational(b) &&
                        rep.payoff_low <= Rational(b + 1);
      if (!rep.transferred || !rep.nash_at_v || !rep.payoff_in_band || !band) {
        log.add(static_cast<int>(i), name + "transfer failed, pi_low=" +
                                         to_string(rep.payoff_low));
      }
    } catch (const TransferRejected& e) {
      log.add(static_cast<int>(i), name + "rejected: " + e.what());
    }
  }
  r.measured = log.failing_items();
  r.detail = std::to_string(items.size()) + " (profile, t) pairs";
  finish(r, r.measured == 0, log, t0);
  return r;
}

std::vector<MonotoneSample> sample_monotone_profiles(
    const AuctionGame<Rational>& game, int count, std::uint64_t seed) {
  const AuctionGame<double> g = game.cast<double>();
  const int n = g.num_bids();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::exponential_distribution<double> expo(1.0);
  const MonotonicityTolerance tol{1e-9, 0.0};
  FixedPointOptions opts;
  opts.residual_tol = 1e-12;
  opts.max_iter = 5000;

  struct Response {
    bool logit;
    double a;  // precision, or exponent
    double b;  // shift for the power family
  };
  auto respond = [](const Response& f, const Distribution<double>& u) {
    if (f.logit) return logistic_response(u, f.a);
    Distribution<double> w =
        (u.array() - u.minCoeff() + f.b).pow(f.a).matrix();
    return Distribution<double>(w / w.sum());
  };
  auto draw = [&] {
    Response f;
    f.logit = unit(rng) < 0.5;
    f.a = f.logit ? std::exp(std::log(0.05) + unit(rng) * std::log(100.0))
                  : 0.5 + 5.5 * unit(rng);
    f.b = 0.1 + 1.9 * unit(rng);
    return f;
  };
  auto random_interior = [&] {
    Distribution<double> d(n);
    for (int b = 0; b < n; ++b) d(b) = expo(rng);
    return Distribution<double>(d / d.sum());
  };

  std::vector<MonotoneSample> out;
  int rejected = 0;
  const int give_up = 100 * count + 1000;
  while (static_cast<int>(out.size()) < count) {
    if (rejected > give_up) {
      throw std::runtime_error("monotone sampler rejected every draw");
    }
    const Response fl = draw();
    const Response fh = draw();
    auto map = [&](const StrategyProfile<double>& s) {
      return StrategyProfile<double>{
          respond(fl, utilities(g, Role::kLow, s.high)),
          respond(fh, utilities(g, Role::kHigh, s.low))};
    };
    const StrategyProfile<double> init{random_interior(), random_interior()};
    const FixedPointResult<double> fp = damped_fixed_point<double>(map, init, opts);
    if (!fp.converged || !is_interior(fp.profile) ||
        !check_weak_monotonicity(g, fp.profile, tol).holds) {
      ++rejected;
      continue;
    }
    out.push_back({fp.profile, rejected});
    rejected = 0;
  }
  return out;
}

CriterionResult check_a9(const SweepConfig& cfg) {
  auto t0 = Clock::now();
  constexpr double kProbabilityTol = 1e-9;
  CriterionResult r = start(
      "A9", "monotone interior profiles respect the probability cap at every "
            "bid",
      1.0 / 3.0, 60.0);
  const std::vector<Game> items = games(sweep_profiles(cfg), cfg.variants);
  FailureLog log(static_cast<int>(items.size()) + 1);
  std::vector<int> rejected(items.size(), 0);
  parallel_for(static_cast<int>(items.size()), cfg.threads, [&](int i) {
    const auto& [v, var] = items[i];
    const AuctionGame<Rational> game(v, var, cfg.gamma);
    const AuctionGame<double> g = game.cast<double>();
    const auto samples = sample_monotone_profiles(
        game, cfg.monotone_samples, game_seed(cfg.seed, v, var));
    int bad = 0;
    for (const auto& s : samples) {
      rejected[i] += s.rejected;
      for (Role role : {Role::kLow, Role::kHigh}) {
        for (int b = 0; b < g.num_bids(); ++b) {
          if (!monotone_probability_cap(g, s.profile, role, b, kProbabilityTol,
                                        0.0)
                   .satisfied) {
            ++bad;
          }
        }
      }
    }
    if (bad > 0) {
      log.add(i, describe(v, var) + ": " + std::to_string(bad) +
                     " capped (sample, bid) pairs violated");
    }
  });

  // Winner-bid (4,16) with p = 4: t = p - 1 - c_l = 1 and every bid in
  // {c_l - 1, ..., p - 2} is at least as good as p - 1 for the low agent.
  const ValuationProfile inst(4, 16, 10);
  const int p = 4;
  const int t = p - 1 - inst.c_low();
  const int capped = p - 1;
  const AuctionGame<Rational> game(inst, Variant::kWinnerBid, cfg.gamma);
  const AuctionGame<double> g = game.cast<double>();
  std::vector<StrategyProfile<double>> profiles;
  for (const auto& s : sample_monotone_profiles(
           game, cfg.monotone_samples,
           game_seed(cfg.seed + 1, inst, Variant::kWinnerBid))) {
    profiles.push_back(s.profile);
  }
  const WitnessSequence seq =
      witness_sequence(game, p, cfg.witness_schedule, WitnessConfig{});
  for (const Witness& w : seq.elements) {
    profiles.push_back(w.profile.cast<double>());
  }
  const int inst_item = static_cast<int>(items.size());
  if (!seq.ok) log.add(inst_item, "instance witness failed: " + seq.failure);
  double worst = 0;
  int min_k = g.num_bids();
  for (const auto& s : profiles) {
    const ProbabilityCap<double> cap = monotone_probability_cap(
        g, s, Role::kLow, capped, kProbabilityTol, 0.0);
    min_k = std::min(min_k, cap.k);
    worst = std::max(worst, s.low(capped));
    for (int b = inst.c_low() - 1; b <= p - 2; ++b) {
      if (utility_gap(g, Role::kLow, b, capped, s.high) < 0) {
        log.add(inst_item, "instance: bid " + std::to_string(b) +
                               " worse than the capped bid");
      }
    }
  }
  if (min_k < t + 1 || !(worst <= 1.0 / (t + 2) + kProbabilityTol)) {
    log.add(inst_item, "instance: sigma_low(3) exceeds 1/(t+2)");
  }
  r.measured = worst;
  std::ostringstream os;
  os << items.size() << " games x " << cfg.monotone_samples
     << " samples (seed " << cfg.seed << ", "
     << std::accumulate(rejected.begin(), rejected.end(), 0)
     << " rejected); instance wb " << describe(inst) << " bid " << capped
     << ": t=" << t << ", fewest weakly better bids " << min_k
     << ", max probability " << worst << " vs 1/(t+2)";
  r.detail = os.str();
  finish(r, log.failing_items() == 0, log, t0);
  return r;
}

std::vector<Overlap> empirical_overlaps(const SweepConfig& cfg) {
  std::vector<Overlap> out;
  for (const ValuationProfile& v : symmetric_profiles(cfg)) {
    const auto wb = cfg.bounds_for(v, Variant::kWinnerBid).allowed_bids;
    const auto lb = cfg.bounds_for(v, Variant::kLoserBid).allowed_bids;
    // Both auctions map separating bid p to payoffs (p, v_h - p).
    std::vector<int> shared;
    std::set_intersection(wb.begin(), wb.end(), lb.begin(), lb.end(),
                          std::back_inserter(shared));
    if (!shared.empty()) out.push_back({v, shared});
  }
  return out;
}

CriterionResult check_a10(const SweepConfig& cfg) {
  auto t0 = Clock::now();
  CriterionResult r = start(
      "A10", "the two auctions' empirical payoffs overlap only where listed",
      0.0, 1.0);
  const auto first = empirical_overlaps(cfg);
  const auto second = empirical_overlaps(cfg);
  FailureLog log(static_cast<int>(first.size()) + 1);
  bool stable = first.size() == second.size();
  for (std::size_t i = 0; stable && i < first.size(); ++i) {
    stable = first[i].profile == second[i].profile &&
             first[i].shared_bids == second[i].shared_bids;
  }
  if (!stable) {
    log.add(static_cast<int>(first.size()), "overlap report differs across runs");
  }
  std::ostringstream listed;
  for (std::size_t i = 0; i < first.size(); ++i) {
    const Overlap& o = first[i];
    listed << (i ? "; " : "") << describe(o.profile) << " p="
           << join(o.shared_bids);
    for (int p : o.shared_bids) {
      if (2 * p != o.profile.c_low() + o.profile.c_high()) {
        log.add(static_cast<int>(i), describe(o.profile) + ": shared bid " +
                                         std::to_string(p) +
                                         " is not the midpoint");
      }
    }
  }
  r.measured = log.failing_items();
  r.detail = std::to_string(first.size()) + " overlaps" +
             (first.empty() ? "" : ": " + listed.str());
  finish(r, r.measured == 0, log, t0);
  return r;
}

const std::vector<std::string>& criterion_ids() {
  static const std::vector<std::string> ids = {"A1", "A2", "A3", "A4", "A5",
                                               "A6", "A7", "A8", "A9", "A10"};
  return ids;
}

std::vector<CriterionResult> run_acceptance(
    const SweepConfig& cfg, const std::vector<std::string>& ids) {
  cfg.validate();
  using Check = CriterionResult (*)(const SweepConfig&);
  static const std::map<std::string, Check> checks = {
      {"A1", check_a1}, {"A2", check_a2}, {"A3", check_a3}, {"A4", check_a4},
      {"A5", check_a5}, {"A6", check_a6}, {"A7", check_a7}, {"A8", check_a8},
      {"A9", check_a9}, {"A10", check_a10}};
  for (const auto& id : ids) {
    if (!checks.count(id)) throw std::invalid_argument("unknown criterion " + id);
  }
  std::vector<CriterionResult> out;
  for (const auto& id : criterion_ids()) {
    if (!ids.empty() && std::find(ids.begin(), ids.end(), id) == ids.end()) {
      continue;
    }
    out.push_back(checks.at(id)(cfg));
  }
  return out;
}

}  // namespace epa
