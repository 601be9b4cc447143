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


#ifndef EPA_ACCEPTANCE_HPP_
#define EPA_ACCEPTANCE_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "epa/auction.hpp"
#include "epa/empirical.hpp"
#include "epa/valuation.hpp"

namespace epa {

enum class CapRule { kFixed, kSymmetric, kMinimum };

const char* cap_rule_name(CapRule rule);
CapRule parse_cap_rule(const std::string& text);

using BoundsFunction =
    std::function<EmpiricalBounds(const ValuationProfile&, Variant)>;

struct SweepConfig {
  int v_high_max = 16;
  std::vector<CapRule> caps = {CapRule::kMinimum, CapRule::kSymmetric};
  int fixed_p_bar = 0;  // used by CapRule::kFixed
  std::vector<Variant> variants = {Variant::kWinnerBid, Variant::kLoserBid};
  Rational gamma{1, 2};

  double qre_start = 0.1;
  double qre_ratio = 1.3;
  double qre_cap = 500.0;
  double qre_extension_cap = 1e12;

  std::vector<SchedulePoint> witness_schedule = default_witness_schedule();

  std::uint64_t seed = 20260101;
  int monotone_samples = 1000;
  int threads = 0;  // 0: hardware concurrency

  // Replaces allowed_bids wherever a criterion consults the bounds. Used to
  // inject faults.
  BoundsFunction bounds;

  void validate() const;
  EmpiricalBounds bounds_for(const ValuationProfile& v, Variant var) const;
};

// Profiles with v_low < v_high under every configured cap rule, deduplicated
// and sorted.
std::vector<ValuationProfile> sweep_profiles(const SweepConfig& cfg);

// Same pairs with p_bar = c_low + c_high only.
std::vector<ValuationProfile> symmetric_profiles(const SweepConfig& cfg);

struct CriterionResult {
  std::string id;
  std::string description;
  bool passed = false;
  double measured = 0;
  double tolerance = 0;
  std::string detail;
  std::vector<std::string> failures;  // first few, for diagnosis
  double seconds = 0;
  double budget_seconds = 0;
};

CriterionResult check_a1(const SweepConfig& cfg);
CriterionResult check_a2(const SweepConfig& cfg);
CriterionResult check_a3(const SweepConfig& cfg);
CriterionResult check_a4(const SweepConfig& cfg);
CriterionResult check_a5(const SweepConfig& cfg);
CriterionResult check_a6(const SweepConfig& cfg);
CriterionResult check_a7(const SweepConfig& cfg);
CriterionResult check_a8(const SweepConfig& cfg);
CriterionResult check_a9(const SweepConfig& cfg);
CriterionResult check_a10(const SweepConfig& cfg);

const std::vector<std::string>& criterion_ids();

// Runs the criteria named in `ids` (all when empty), in order.
std::vector<CriterionResult> run_acceptance(
    const SweepConfig& cfg, const std::vector<std::string>& ids = {});

// Shared payoffs of the two auctions' empirical sets, one entry per profile
// that has any.
struct Overlap {
  ValuationProfile profile;
  std::vector<int> shared_bids;
};
std::vector<Overlap> empirical_overlaps(const SweepConfig& cfg);

// Weakly payoff-monotone interior profiles, drawn as fixed points of random
// increasing response maps and kept only if they pass the checker.
struct MonotoneSample {
  StrategyProfile<double> profile;
  int rejected = 0;
};
std::vector<MonotoneSample> sample_monotone_profiles(
    const AuctionGame<Rational>& game, int count, std::uint64_t seed);

}  // namespace epa

#endif  // EPA_ACCEPTANCE_HPP_
