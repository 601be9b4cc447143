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


#include "epa/figure.hpp"

#include <sstream>
#include <stdexcept>

#include "epa/empirical.hpp"
#include "epa/valuation.hpp"

namespace epa {

std::vector<FigureRow> figure1_rows(int v_high) {
  if (v_high < 4 || v_high % 2 != 0) {
    throw std::invalid_argument("v_high must be even and >= 4");
  }
  std::vector<FigureRow> rows;
  for (int v_low = 4; v_low < v_high; v_low += 2) {
    const ValuationProfile v = ValuationProfile::symmetric_cap(v_low, v_high);
    for (int b : nash_range(v)) rows.push_back({v_low, b, "nash_range"});
    for (int b : allowed_bids(v, Variant::kWinnerBid).allowed_bids) {
      rows.push_back({v_low, b, "wb_empirical"});
    }
    for (int b : allowed_bids(v, Variant::kLoserBid).allowed_bids) {
      rows.push_back({v_low, b, "lb_empirical"});
    }
    rows.push_back({v_low, v.p_bar(), "pbar"});
  }
  return rows;
}

std::string figure1_csv(const std::vector<FigureRow>& rows) {
  std::ostringstream os;
  os << "v_low,bid,marker\n";
  for (const auto& r : rows) os << r.v_low << ',' << r.bid << ',' << r.marker << '\n';
  return os.str();
}

}  // namespace epa
