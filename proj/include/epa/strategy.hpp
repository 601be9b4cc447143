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

#ifndef EPA_STRATEGY_HPP_
#define EPA_STRATEGY_HPP_

#include <algorithm>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "epa/scalar.hpp"

namespace epa {

enum class Role { kLow, kHigh };

inline Role other(Role r) { return r == Role::kLow ? Role::kHigh : Role::kLow; }
inline const char* role_name(Role r) { return r == Role::kLow ? "low" : "high"; }

template <typename Scalar>
using Distribution = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

// Probabilities at or below this are treated as zero in floating point.
inline constexpr double kSupportThreshold = 1e-9;

template <typename Scalar>
struct StrategyProfile {
  Distribution<Scalar> low;
  Distribution<Scalar> high;

  const Distribution<Scalar>& of(Role r) const {
    return r == Role::kLow ? low : high;
  }
  Distribution<Scalar>& of(Role r) { return r == Role::kLow ? low : high; }
  int num_bids() const { return static_cast<int>(low.size()); }

  template <typename Other>
  StrategyProfile<Other> cast() const {
    StrategyProfile<Other> out{Distribution<Other>(low.size()),
                               Distribution<Other>(high.size())};
    for (Eigen::Index b = 0; b < low.size(); ++b) {
      out.low(b) = convert<Other>(low(b));
      out.high(b) = convert<Other>(high(b));
    }
    return out;
  }

 private:
  template <typename Other>
  static Other convert(const Scalar& x) {
    if constexpr (std::is_same_v<Scalar, Other>) {
      return x;
    } else if constexpr (is_exact_v<Scalar>) {
      return to_scalar<Other>(x);
    } else {
      return Other(x);
    }
  }
};

template <typename Scalar>
Distribution<Scalar> point_mass(int num_bids, int bid) {
  if (bid < 0 || bid >= num_bids) throw std::out_of_range("bid out of range");
  Distribution<Scalar> d = Distribution<Scalar>::Constant(num_bids, Scalar(0));
  d(bid) = Scalar(1);
  return d;
}

template <typename Scalar>
Distribution<Scalar> uniform(int num_bids) {
  return Distribution<Scalar>::Constant(num_bids, Scalar(1) / Scalar(num_bids));
}

// Uniform over the listed bids.
template <typename Scalar>
Distribution<Scalar> uniform_on(int num_bids, const std::vector<int>& bids) {
  Distribution<Scalar> d = Distribution<Scalar>::Constant(num_bids, Scalar(0));
  for (int b : bids) d(b) = Scalar(1) / Scalar(static_cast<int>(bids.size()));
  return d;
}

template <typename Scalar>
StrategyProfile<Scalar> pure_profile(int num_bids, int low_bid, int high_bid) {
  return {point_mass<Scalar>(num_bids, low_bid),
          point_mass<Scalar>(num_bids, high_bid)};
}

template <typename Scalar>
bool is_positive(const Scalar& x) {
  if constexpr (is_exact_v<Scalar>) {
    return x > Scalar(0);
  } else {
    return x > Scalar(kSupportThreshold);
  }
}

template <typename Scalar>
std::vector<int> support(const Distribution<Scalar>& d) {
  std::vector<int> out;
  for (Eigen::Index b = 0; b < d.size(); ++b) {
    if (is_positive(d(b))) out.push_back(static_cast<int>(b));
  }
  return out;
}

template <typename Scalar>
bool is_distribution(const Distribution<Scalar>& d) {
  if ((d.array() < Scalar(0)).any()) return false;
  const Scalar total = d.sum();
  if constexpr (is_exact_v<Scalar>) {
    return total == Scalar(1);
  } else {
    using std::abs;
    return abs(total - Scalar(1)) <= Scalar(1e-12);
  }
}

template <typename Scalar>
bool is_valid(const StrategyProfile<Scalar>& s, int num_bids) {
  return s.low.size() == num_bids && s.high.size() == num_bids &&
         is_distribution(s.low) && is_distribution(s.high);
}

template <typename Scalar>
bool is_interior(const StrategyProfile<Scalar>& s) {
  return (s.low.array() > Scalar(0)).all() && (s.high.array() > Scalar(0)).all();
}

template <typename Scalar>
Scalar sup_distance(const StrategyProfile<Scalar>& a,
                    const StrategyProfile<Scalar>& b) {
  const Scalar dl = (a.low - b.low).cwiseAbs().maxCoeff();
  const Scalar dh = (a.high - b.high).cwiseAbs().maxCoeff();
  return dl > dh ? dl : dh;
}

// Zeroes entries at or below `threshold` and renormalizes.
template <typename Scalar>
Distribution<Scalar> round_support(const Distribution<Scalar>& d,
                                   const Scalar& threshold) {
  Distribution<Scalar> out = (d.array() > threshold).select(d, Scalar(0));
  const Scalar total = out.sum();
  if (total > Scalar(0)) out /= total;
  return out;
}

template <typename Scalar>
StrategyProfile<Scalar> round_support(const StrategyProfile<Scalar>& s,
                                      const Scalar& threshold) {
  return {round_support(s.low, threshold), round_support(s.high, threshold)};
}

}  // namespace epa

#endif  // EPA_STRATEGY_HPP_
