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


#include <string>

#include "doctest.h"
#include "epa/acceptance.hpp"

using namespace epa;

namespace {

SweepConfig small_config() {
  SweepConfig cfg;
  cfg.v_high_max = 8;
  cfg.monotone_samples = 20;
  return cfg;
}

EmpiricalBounds widened(const ValuationProfile& v, Variant var) {
  EmpiricalBounds b = allowed_bids(v, var);
  if (var == Variant::kWinnerBid && b.allowed_bids.back() < v.c_high()) {
    b.allowed_bids.push_back(b.allowed_bids.back() + 1);
    b.bid_cutoff += 1;
  }
  return b;
}

}  // namespace

TEST_CASE("sweep profiles") {
  SweepConfig cfg;
  const auto all = sweep_profiles(cfg);
  // 21 pairs with v_low < v_high <= 16, two caps each, minus the 6 pairs where
  // the two caps coincide.
  CHECK(all.size() == 36);
  for (const auto& v : all) CHECK(v.v_low() < v.v_high());
  const auto sym = symmetric_profiles(cfg);
  CHECK(sym.size() == 21);
  for (const auto& v : sym) CHECK(v.p_bar() == v.c_low() + v.c_high());
  cfg.caps = {CapRule::kFixed};
  cfg.fixed_p_bar = 12;
  for (const auto& v : sweep_profiles(cfg)) CHECK(v.p_bar() == 12);
}

TEST_CASE("sweep validation") {
  SweepConfig cfg;
  cfg.v_high_max = 7;
  CHECK_THROWS(cfg.validate());
  cfg = SweepConfig{};
  cfg.caps = {CapRule::kFixed};
  cfg.fixed_p_bar = 5;
  CHECK_THROWS(cfg.validate());
  cfg = SweepConfig{};
  cfg.gamma = Rational(1, 3);
  CHECK_THROWS(cfg.validate());
  cfg = SweepConfig{};
  cfg.qre_ratio = 1.0;
  CHECK_THROWS(cfg.validate());
  cfg = SweepConfig{};
  cfg.witness_schedule.clear();
  CHECK_THROWS(cfg.validate());
  CHECK_THROWS(parse_cap_rule("median"));
  CHECK(parse_cap_rule("symmetric") == CapRule::kSymmetric);
  CHECK(std::string(cap_rule_name(CapRule::kMinimum)) == "minimum");
}

TEST_CASE("criteria pass on a small sweep") {
  const auto results = run_acceptance(small_config());
  REQUIRE(results.size() == criterion_ids().size());
  for (const auto& r : results) {
    INFO(r.id << ": " << r.detail);
    CHECK(r.passed);
  }
  CHECK_THROWS(run_acceptance(small_config(), {"A11"}));
}

TEST_CASE("the bound checks catch a widened set") {
  SweepConfig cfg = small_config();
  cfg.bounds = widened;
  CHECK_FALSE(check_a2(cfg).passed);
  // No witness exists for the extra bid.
  CHECK_FALSE(check_a4(cfg).passed);
}

TEST_CASE("a1 holds for a favoured high agent") {
  SweepConfig cfg = small_config();
  cfg.v_high_max = 12;
  cfg.gamma = Rational(1);
  CHECK(check_a1(cfg).passed);
}

TEST_CASE("overlap report is reproducible") {
  SweepConfig cfg;
  cfg.v_high_max = 20;
  const auto a = empirical_overlaps(cfg);
  const auto b = empirical_overlaps(cfg);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].profile == b[i].profile);
    CHECK(a[i].shared_bids == b[i].shared_bids);
  }
}

TEST_CASE("monotone samples are seeded") {
  const auto g = make_auction(ValuationProfile(4, 12, 8), Variant::kWinnerBid);
  const auto a = sample_monotone_profiles(g, 5, 7);
  const auto b = sample_monotone_profiles(g, 5, 7);
  REQUIRE(a.size() == 5);
  REQUIRE(b.size() == 5);
  for (int i = 0; i < 5; ++i) {
    CHECK(sup_distance(a[i].profile, b[i].profile) == 0.0);
  }
}
