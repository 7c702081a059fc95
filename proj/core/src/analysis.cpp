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

#include "cdc/analysis.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

#include "lstar_internal.hpp"

namespace cdc {

namespace {

void check_range(std::uint64_t K, std::uint64_t r, std::uint64_t s) {
  if (K == 0 || r < 1 || r > K || s < 1 || s > K) {
    throw std::invalid_argument("need 1 <= r, s <= K (got K=" + std::to_string(K) +
                                ", r=" + std::to_string(r) + ", s=" + std::to_string(s) + ")");
  }
}

Rational cap_one(Rational x) { return min(x, Rational(1)); }

BigInt pow_u(std::uint64_t base, std::uint64_t exp) {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), base, exp);
  return out;
}

}  // namespace

BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

Rational l_star(std::uint64_t K, std::uint64_t r, std::uint64_t s) {
  check_range(K, r, s);
  return detail::l_star_sum(K, r, s, [](std::uint64_t n, std::uint64_t k) { return binomial(n, k); });
}

Rational l_scheme1(std::uint64_t K, std::uint64_t r, std::uint64_t s) {
  check_range(K, r, s);
  return cap_one(Rational(static_cast<std::int64_t>(s), static_cast<std::int64_t>(r)) *
                 (Rational(1) - Rational(static_cast<std::int64_t>(r), static_cast<std::int64_t>(K))));
}

Rational l_scheme23(std::uint64_t K, std::uint64_t r, std::uint64_t s) {
  check_range(K, r, s);
  if (r < 2) throw std::invalid_argument("schemes 2 and 3 need r >= 2");
  return cap_one(Rational(static_cast<std::int64_t>(s), static_cast<std::int64_t>(r - 1)) *
                 (Rational(1) - Rational(static_cast<std::int64_t>(r), static_cast<std::int64_t>(K))));
}

SchemeId parse_scheme(std::string_view text) {
  if (text == "1") return SchemeId::k1;
  if (text == "2") return SchemeId::k2;
  if (text == "3") return SchemeId::k3;
  throw std::invalid_argument("scheme must be 1, 2 or 3 (got '" + std::string(text) + "')");
}

bool admissible(SchemeId scheme, std::uint64_t K, std::uint64_t r, std::uint64_t s) {
  if (K == 0 || r < 1 || r > K || s < 1 || s > K) return false;
  switch (scheme) {
    case SchemeId::k1:
      return true;
    case SchemeId::k2:
      return K >= 5 && r >= 2 && K % r == 0;
    case SchemeId::k3:
      return K >= 5 && r + 2 <= K && r >= 2 && K % (K - r) == 0;
  }
  return false;
}

Rational scheme_load(SchemeId scheme, std::uint64_t K, std::uint64_t r, std::uint64_t s) {
  return scheme == SchemeId::k1 ? l_scheme1(K, r, s) : l_scheme23(K, r, s);
}

Rational h_ratio(std::uint64_t K, std::uint64_t r, std::uint64_t s, SchemeId scheme) {
  Rational optimum = l_star(K, r, s);
  if (optimum.is_zero()) {
    throw std::domain_error("L* is zero at K=" + std::to_string(K) + ", r=" + std::to_string(r) +
                            ", s=" + std::to_string(s));
  }
  return scheme_load(scheme, K, r, s) / optimum;
}

LoadPoint load_point(std::uint64_t K, std::uint64_t r, std::uint64_t s) {
  LoadPoint p;
  p.K = K;
  p.r = r;
  p.s = s;
  p.l_star = l_star(K, r, s);
  p.l1 = l_scheme1(K, r, s);
  if (admissible(SchemeId::k2, K, r, s)) p.l2 = l_scheme23(K, r, s);
  if (admissible(SchemeId::k3, K, r, s)) p.l3 = l_scheme23(K, r, s);
  if (!p.l_star.is_zero()) {
    p.h1 = p.l1 / p.l_star;
    if (p.l2) p.h2 = *p.l2 / p.l_star;
    if (p.l3) p.h3 = *p.l3 / p.l_star;
  }
  return p;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> ratio_table_pairs() {
  return {{3, 1}, {3, 2}, {3, 3}, {5, 3}, {5, 5}, {5, 7}, {8, 5}, {8, 8}, {8, 10}};
}

Rational lemma4_threshold(std::uint64_t r, std::uint64_t s) {
  if (s < 1 || r < s) throw std::invalid_argument("lemma4_threshold needs r >= s >= 1");
  const auto R = static_cast<std::int64_t>(r);
  const auto S = static_cast<std::int64_t>(s);
  return Rational(BigInt(3) * R * S * (7 * R - S + 1), BigInt(8) * (R - S + 1));
}

Rational theorem4_threshold(std::uint64_t r, std::uint64_t s) {
  if (s < 1 || r < s + 2) throw std::invalid_argument("theorem4_threshold needs r >= s + 2");
  const auto R = static_cast<std::int64_t>(r);
  const auto S = static_cast<std::int64_t>(s);
  return Rational(BigInt(111 * R - 15 * S - 111) * R * S, BigInt(44 * R - 40 * S - 44));
}

FileComparison q_file_comparison(std::uint64_t K, std::uint64_t r, std::uint64_t s) {
  check_range(K, r, s);
  FileComparison c;
  c.K = K;
  c.r = r;
  c.s = s;
  c.q_li = binomial(K, s);
  c.q_new = BigInt(static_cast<unsigned long>(K / std::gcd(K, s)));
  c.n_li = binomial(K, r);
  if (r >= 2 && K % r == 0) c.n_scheme2 = pow_u(K / r, r - 1);
  if (const std::uint64_t t = K - r; t >= 2 && K % t == 0) {
    c.n_scheme3 = BigInt(static_cast<unsigned long>(K / t - 1)) * pow_u(K / t, t - 1);
  }
  return c;
}

bool SymPolyVerdict::holds() const {
  if (!routes_agree) return false;
  for (bool ok : part1) {
    if (!ok) return false;
  }
  for (const auto& ok : part2) {
    if (ok && !*ok) return false;
  }
  return true;
}

SymPolyVerdict sym_poly_check(std::span<const std::uint64_t> a, std::uint64_t K) {
  if (a.empty() || a.size() > 20) throw std::invalid_argument("need 1 to 20 values");
  std::uint64_t largest = 0;
  BigInt total = 0;
  for (std::uint64_t x : a) {
    if (x == 0) throw std::invalid_argument("values must be positive integers");
    largest = std::max(largest, x);
    total += static_cast<unsigned long>(x);
  }
  if (K <= largest) throw std::invalid_argument("need K > max(a)");
  const std::size_t n = a.size();

  // Product expansion of prod (x + a_i).
  SymPolyVerdict v;
  v.b.assign(n + 1, 0);
  v.b[0] = 1;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t h = i + 1; h >= 1; --h) v.b[h] += v.b[h - 1] * static_cast<unsigned long>(a[i]);
  }

  // Direct sums over subsets.
  std::vector<BigInt> direct(n + 1, 0);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    BigInt product = 1;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1) product *= static_cast<unsigned long>(a[i]);
    }
    direct[static_cast<std::size_t>(__builtin_popcountll(mask))] += product;
  }
  v.routes_agree = direct == v.b;

  const BigInt bigK = static_cast<unsigned long>(K);
  for (std::size_t h = 0; h < n; ++h) {
    v.part1.push_back(v.b[h + 1] * static_cast<unsigned long>(h + 1) <= total * v.b[h]);
    if (bigK * static_cast<unsigned long>(h + 1) >= total) {
      v.part2.emplace_back(v.b[h + 1] * pow_u(K, n - h - 1) <= v.b[h] * pow_u(K, n - h));
    } else {
      v.part2.emplace_back(std::nullopt);
    }
  }
  return v;
}

}  // namespace cdc
