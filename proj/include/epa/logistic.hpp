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

#ifndef EPA_LOGISTIC_HPP_
#define EPA_LOGISTIC_HPP_

#include <cmath>
#include <limits>
#include <stdexcept>

#include "epa/strategy.hpp"

namespace epa {

template <typename Scalar>
bool all_finite(const Distribution<Scalar>& x) {
  using std::isfinite;
  using boost::multiprecision::isfinite;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (!isfinite(x(i))) return false;
  }
  return true;
}

// Softmax of lambda * payoffs. Entries that would fall below the smallest
// normal number are raised to it before normalizing, so the result is
// strictly positive and keeps the weak order of the payoffs.
template <typename Scalar>
Distribution<Scalar> logistic_response(const Distribution<Scalar>& payoffs,
                                       const Scalar& lambda) {
  if (lambda < Scalar(0)) throw std::invalid_argument("negative precision");
  if (!all_finite(payoffs)) throw std::invalid_argument("non-finite payoff");
  const Scalar top = payoffs.maxCoeff();
  Distribution<Scalar> w = (lambda * (payoffs.array() - top)).exp().matrix();
  const Scalar floor = std::numeric_limits<Scalar>::min();
  w = w.cwiseMax(floor);
  return w / w.sum();
}

}  // namespace epa

#endif  // EPA_LOGISTIC_HPP_
