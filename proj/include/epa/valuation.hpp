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

#ifndef EPA_VALUATION_HPP_
#define EPA_VALUATION_HPP_

#include <vector>

namespace epa {

// Two agents' values for the object (even integers) and the bid cap.
class ValuationProfile {
 public:
  ValuationProfile(int v_low, int v_high, int p_bar);

  // Cap chosen so that the Nash range sits in the middle of {0..p_bar}.
  static ValuationProfile symmetric_cap(int v_low, int v_high);
  static ValuationProfile minimum_cap(int v_low, int v_high);

  int v_low() const { return v_low_; }
  int v_high() const { return v_high_; }
  int p_bar() const { return p_bar_; }
  int c_low() const { return v_low_ / 2; }
  int c_high() const { return v_high_ / 2; }
  int num_bids() const { return p_bar_ + 1; }
  bool equal_values() const { return v_low_ == v_high_; }

  bool operator==(const ValuationProfile&) const = default;

 private:
  int v_low_;
  int v_high_;
  int p_bar_;
};

int equity_surplus(const ValuationProfile& profile);

// {c_low, ..., c_high}.
std::vector<int> nash_range(const ValuationProfile& profile);

// All even 4 <= v_low <= v_high <= v_high_max (or < when strict).
std::vector<std::pair<int, int>> valuation_pairs(int v_high_max, bool strict);

}  // namespace epa

#endif  // EPA_VALUATION_HPP_
