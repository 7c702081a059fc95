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

#include "cdc/rational.hpp"

#include <stdexcept>
#include <string>

namespace cdc {

namespace {

BigInt parse_integer(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty integer");
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) throw std::invalid_argument("malformed integer '" + s + "'");
  for (std::size_t i = start; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("malformed integer '" + s + "'");
  }
  if (s[0] == '+') s.erase(0, 1);
  return BigInt(s, 10);
}

}  // namespace

Rational::Rational(std::int64_t value) : value_(static_cast<long>(value)) {}

Rational::Rational(const BigInt& value) : value_(value) {}

Rational::Rational(const BigInt& numerator, const BigInt& denominator) {
  if (denominator == 0) throw std::domain_error("rational with zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

Rational::Rational(std::int64_t numerator, std::int64_t denominator)
    : Rational(BigInt(static_cast<long>(numerator)), BigInt(static_cast<long>(denominator))) {}

Rational Rational::parse(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  return Rational(parse_integer(text.substr(0, slash)), parse_integer(text.substr(slash + 1)));
}

std::string Rational::str() const { return value_.get_str(); }

std::string Rational::decimal(int places) const {
  if (places < 0) throw std::invalid_argument("negative decimal places");
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(places));
  BigInt num = abs(value_.get_num());
  const BigInt& den = value_.get_den();
  // round(|x| * 10^p) with ties away from zero
  BigInt scaled = (2 * num * scale + den) / (2 * den);
  std::string digits = scaled.get_str();
  if (digits.size() <= static_cast<std::size_t>(places)) {
    digits.insert(0, static_cast<std::size_t>(places) + 1 - digits.size(), '0');
  }
  std::string out;
  if (sgn(value_) < 0 && scaled != 0) out.push_back('-');
  out.append(digits, 0, digits.size() - static_cast<std::size_t>(places));
  if (places > 0) {
    out.push_back('.');
    out.append(digits, digits.size() - static_cast<std::size_t>(places), std::string::npos);
  }
  return out;
}

double Rational::approx(int places) const { return std::stod(decimal(places)); }

BigInt Rational::ceil() const {
  BigInt out;
  mpz_cdiv_q(out.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return out;
}

Rational& Rational::operator+=(const Rational& rhs) {
  value_ += rhs.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  value_ -= rhs.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  value_ *= rhs.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw std::domain_error("rational division by zero");
  value_ /= rhs.value_;
  return *this;
}

Rational Rational::operator-() const {
  Rational out;
  out.value_ = -value_;
  return out;
}

std::string to_string(const BigInt& value) { return value.get_str(); }

}  // namespace cdc
