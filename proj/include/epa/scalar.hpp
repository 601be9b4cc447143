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

#ifndef EPA_SCALAR_HPP_
#define EPA_SCALAR_HPP_

#include <cmath>
#include <cstdint>
#include <string>

#include <Eigen/Core>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <boost/rational.hpp>

namespace epa {

// Exact money amounts and probabilities.
using Rational = boost::rational<std::int64_t>;

// Double precision mantissa with a 32-bit exponent. Holds e^-40000 without
// underflow.
using Wide = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<
        53, boost::multiprecision::digit_base_2, void, std::int32_t>,
    boost::multiprecision::et_off>;

// 113-bit mantissa for logistic responses at very large precision, where
// lambda times the rounding error of a utility stops being negligible.
using Quad = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<
        113, boost::multiprecision::digit_base_2, void, std::int32_t>,
    boost::multiprecision::et_off>;

template <typename Scalar>
Scalar to_scalar(const Rational& r) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return r;
  } else {
    return Scalar(r.numerator()) / Scalar(r.denominator());
  }
}

// Decimal approximation for exact scalars (tolerances, weights).
template <typename Scalar>
Scalar from_double(double x) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    std::int64_t den = 1;
    for (int k = 0; k < 15; ++k, den *= 10) {
      const double scaled = x * static_cast<double>(den);
      if (std::abs(scaled - std::round(scaled)) <= 1e-9 * std::abs(scaled)) break;
    }
    return Rational(static_cast<std::int64_t>(std::llround(x * den)), den);
  } else {
    return Scalar(x);
  }
}

template <typename Scalar>
double to_double(const Scalar& x) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return boost::rational_cast<double>(x);
  } else {
    return static_cast<double>(x);
  }
}

template <typename Scalar>
inline constexpr bool is_exact_v = std::is_same_v<Scalar, Rational>;

// Parses "1/2", "1", "0.75" style input.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& r);

}  // namespace epa

namespace Eigen {

template <>
struct NumTraits<epa::Rational> : GenericNumTraits<epa::Rational> {
  typedef epa::Rational Real;
  typedef epa::Rational NonInteger;
  typedef epa::Rational Literal;
  typedef epa::Rational Nested;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 3,
    MulCost = 3
  };
  static inline epa::Rational epsilon() { return epa::Rational(0); }
  static inline epa::Rational dummy_precision() { return epa::Rational(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

#endif  // EPA_SCALAR_HPP_
