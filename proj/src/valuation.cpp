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

#include "epa/valuation.hpp"

#include <stdexcept>
#include <string>

namespace epa {

ValuationProfile::ValuationProfile(int v_low, int v_high, int p_bar)
    : v_low_(v_low), v_high_(v_high), p_bar_(p_bar) {
  if (v_low % 2 != 0 || v_high % 2 != 0) {
    throw std::invalid_argument("valuations must be even, got (" +
                                std::to_string(v_low) + "," +
                                std::to_string(v_high) + ")");
  }
  if (v_low <= 2 || v_low > v_high) {
    throw std::invalid_argument("valuations must satisfy 2 < v_low <= v_high");
  }
  if (p_bar < v_high / 2 + 2) {
    throw std::invalid_argument("bid cap " + std::to_string(p_bar) +
                                " is below v_high/2 + 2");
  }
}

ValuationProfile ValuationProfile::symmetric_cap(int v_low, int v_high) {
  return ValuationProfile(v_low, v_high, v_low / 2 + v_high / 2);
}

ValuationProfile ValuationProfile::minimum_cap(int v_low, int v_high) {
  return ValuationProfile(v_low, v_high, v_high / 2 + 2);
}

int equity_surplus(const ValuationProfile& profile) {
  return profile.c_high() - profile.c_low();
}

std::vector<int> nash_range(const ValuationProfile& profile) {
  std::vector<int> out;
  for (int b = profile.c_low(); b <= profile.c_high(); ++b) out.push_back(b);
  return out;
}

std::vector<std::pair<int, int>> valuation_pairs(int v_high_max, bool strict) {
  std::vector<std::pair<int, int>> out;
  for (int vh = 4; vh <= v_high_max; vh += 2) {
    for (int vl = 4; strict ? vl < vh : vl <= vh; vl += 2) {
      out.emplace_back(vl, vh);
    }
  }
  return out;
}

}  // namespace epa
