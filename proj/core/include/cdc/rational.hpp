// Copyright 2026 The cdc-pda Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CDC_RATIONAL_HPP_
#define CDC_RATIONAL_HPP_

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace cdc {

using BigInt = mpz_class;

// Exact fraction with arbitrary-precision numerator and denominator.
//
// Always canonical: numerator and denominator are coprime and the
// denominator is positive. Every load formula in the library returns one
// of these; conversion to floating point happens only for display.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t value);  // NOLINT(google-explicit-constructor)
  Rational(const BigInt& value);  // NOLINT(google-explicit-constructor)
  Rational(const BigInt& numerator, const BigInt& denominator);
  Rational(std::int64_t numerator, std::int64_t denominator);

  // Parses "p", "-p" or "p/q". Throws std::invalid_argument.
  static Rational parse(std::string_view text);

  BigInt numerator() const { return value_.get_num(); }
  BigInt denominator() const { return value_.get_den(); }

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_integer() const { return value_.get_den() == 1; }
  int sign() const { return sgn(value_); }

  // "p/q", or just "p" for integers.
  std::string str() const;

  // Decimal rendering with a fixed number of places, rounding half away
  // from zero on the exact value.
  std::string decimal(int places) const;

  // Closest double to the rounded decimal(places) rendering.
  double approx(int places = 4) const;
  double to_double() const { return value_.get_d(); }

  // Smallest integer >= value.
  BigInt ceil() const;

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  // Throws std::domain_error on division by zero.
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  Rational operator-() const;

  friend bool operator==(const Rational& lhs, const Rational& rhs) {
    return cmp(lhs.value_, rhs.value_) == 0;
  }
  friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) {
    return cmp(lhs.value_, rhs.value_) <=> 0;
  }

  const mpq_class& raw() const { return value_; }

 private:
  mpq_class value_{0};
};

inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

std::string to_string(const BigInt& value);

}  // namespace cdc

#endif  // CDC_RATIONAL_HPP_
