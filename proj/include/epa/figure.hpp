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


#ifndef EPA_FIGURE_HPP_
#define EPA_FIGURE_HPP_

#include <string>
#include <vector>

namespace epa {

struct FigureRow {
  int v_low;
  int bid;
  std::string marker;  // nash_range, wb_empirical, lb_empirical or pbar

  bool operator==(const FigureRow&) const = default;
};

// Nash range, both auctions' allowed bids and the cap for each even v_low in
// (2, v_high), with p_bar = c_low + c_high. Empty for v_high = 4.
std::vector<FigureRow> figure1_rows(int v_high);

// Header "v_low,bid,marker", one line per row.
std::string figure1_csv(const std::vector<FigureRow>& rows);

}  // namespace epa

#endif  // EPA_FIGURE_HPP_
