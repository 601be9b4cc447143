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

#include "epa/auction.hpp"

#include <cstdlib>
#include <sstream>

#include "epa/nash.hpp"

namespace epa {

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      std::size_t used_n = 0, used_d = 0;
      const std::string num = text.substr(0, slash);
      const std::string den = text.substr(slash + 1);
      const long long n = std::stoll(num, &used_n);
      const long long d = std::stoll(den, &used_d);
      if (used_n != num.size() || used_d != den.size() || d == 0) {
        throw std::invalid_argument(text);
      }
      return Rational(n, d);
    }
    const auto dot = text.find('.');
    if (dot == std::string::npos) {
      std::size_t used = 0;
      const long long n = std::stoll(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return Rational(n);
    }
    const std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    std::size_t used = 0;
    const long long n = std::stoll(digits, &used);
    if (used != digits.size() || text.size() - dot - 1 > 12) {
      throw std::invalid_argument(text);
    }
    long long d = 1;
    for (std::size_t i = dot + 1; i < text.size(); ++i) d *= 10;
    return Rational(n, d);
  } catch (const std::logic_error&) {
    throw std::invalid_argument("not a rational number: '" + text + "'");
  }
}

std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << r.numerator();
  if (r.denominator() != 1) os << "/" << r.denominator();
  return os.str();
}

const char* variant_name(Variant v) {
  return v == Variant::kWinnerBid ? "wb" : "lb";
}

Variant parse_variant(const std::string& text) {
  if (text == "wb") return Variant::kWinnerBid;
  if (text == "lb") return Variant::kLoserBid;
  throw std::invalid_argument("variant must be wb or lb, got '" + text + "'");
}

PureOutcome pure_outcome(Variant variant, const Rational& gamma, int low_bid,
                         int high_bid) {
  const bool wb = variant == Variant::kWinnerBid;
  if (high_bid > low_bid) {
    return {Rational(1), wb ? high_bid : low_bid};
  }
  if (low_bid > high_bid) {
    return {Rational(0), wb ? low_bid : high_bid};
  }
  return {gamma, low_bid};
}

Rational pure_payoff(const ValuationProfile& profile, Variant variant,
                     const Rational& gamma, Role role, int own, int opp) {
  const bool low = role == Role::kLow;
  const PureOutcome o = low ? pure_outcome(variant, gamma, own, opp)
                            : pure_outcome(variant, gamma, opp, own);
  const Rational receives = low ? 1 - o.prob_high_receives : o.prob_high_receives;
  const int value = low ? profile.v_low() : profile.v_high();
  return receives * (value - o.price) + (1 - receives) * o.price;
}

ValuationProfile mirror_profile(const ValuationProfile& profile) {
  const int p = profile.p_bar();
  return ValuationProfile(2 * p - profile.v_high(), 2 * p - profile.v_low(), p);
}

std::vector<PureProfile> enumerate_pure_nash(const AuctionGame<Rational>& game) {
  const int n = game.num_bids();
  // best[r][b]: is bid row a best response of role r to co-player bid b.
  std::vector<std::vector<bool>> best_low(n, std::vector<bool>(n, false));
  std::vector<std::vector<bool>> best_high(n, std::vector<bool>(n, false));
  for (int b = 0; b < n; ++b) {
    const Rational lo = game.payoffs(Role::kLow).col(b).maxCoeff();
    const Rational hi = game.payoffs(Role::kHigh).col(b).maxCoeff();
    for (int a = 0; a < n; ++a) {
      best_low[b][a] = game.payoffs(Role::kLow)(a, b) == lo;
      best_high[b][a] = game.payoffs(Role::kHigh)(a, b) == hi;
    }
  }
  std::vector<PureProfile> out;
  for (int l = 0; l < n; ++l) {
    for (int h = 0; h < n; ++h) {
      if (best_low[h][l] && best_high[l][h]) out.push_back({l, h});
    }
  }
  return out;
}

std::vector<PayoffPair> efficient_nash_payoffs(const ValuationProfile& profile) {
  const int es = equity_surplus(profile);
  std::vector<PayoffPair> out;
  for (int t = 0; t <= es; ++t) {
    out.push_back({Rational(profile.c_low() + es - t),
                   Rational(profile.c_high() + t)});
  }
  return out;
}

}  // namespace epa
