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

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "cdc/analysis.hpp"
#include "cdc/parallel.hpp"
#include "lstar_internal.hpp"

namespace cdc {

namespace {

// Rows 0..n of Pascal's triangle; read-only once built.
class Pascal {
 public:
  explicit Pascal(std::uint64_t n) : rows_(n + 1) {
    for (std::uint64_t i = 0; i <= n; ++i) {
      rows_[i].resize(i + 1);
      rows_[i][0] = rows_[i][i] = 1;
      for (std::uint64_t k = 1; k < i; ++k) rows_[i][k] = rows_[i - 1][k - 1] + rows_[i - 1][k];
    }
  }
  const BigInt& operator()(std::uint64_t n, std::uint64_t k) const {
    static const BigInt kZero = 0;
    return k > n ? kZero : rows_[n][k];
  }

 private:
  std::vector<std::vector<BigInt>> rows_;
};

Rational exact_h(const Pascal& pascal, SchemeId scheme, std::uint64_t K, std::uint64_t r,
                 std::uint64_t s) {
  Rational optimum = detail::l_star_sum(K, r, s, pascal);
  return scheme_load(scheme, K, r, s) / optimum;
}

// log n! for n = 0..max.
std::vector<long double> log_factorials(std::uint64_t max) {
  std::vector<long double> out(max + 1, 0.0L);
  for (std::uint64_t i = 1; i <= max; ++i) out[i] = out[i - 1] + std::log(static_cast<long double>(i));
  return out;
}

// L* in double precision. Consecutive terms are related by a rational
// factor, so only the first term needs logarithms; a running scale keeps
// the partial sums inside double range.
double approx_l_star(const std::vector<long double>& lf, std::uint64_t K, std::uint64_t r,
                     std::uint64_t s) {
  const std::uint64_t lo = std::max(r + 1, s);
  const std::uint64_t hi = std::min(r + s, K);
  if (lo > hi) return 0.0;
  auto lchoose = [&](std::uint64_t n, std::uint64_t k) { return lf[n] - lf[k] - lf[n - k]; };
  const long double offset = lchoose(K - r, K - lo) + lchoose(r, lo - s) - lchoose(K, s);
  double term = 1.0;
  double sum = 0.0;
  long double scale = offset;
  for (std::uint64_t l = lo; l <= hi; ++l) {
    sum += term * static_cast<double>(l - r) / static_cast<double>(l - 1);
    if (l == hi) break;
    term *= static_cast<double>((K - l) * (r + s - l)) / static_cast<double>((l + 1 - r) * (l + 1 - s));
    if (term > 1e200) {
      term *= 1e-200;
      sum *= 1e-200;
      scale += 200.0L * std::log(10.0L);
    }
  }
  return static_cast<double>(static_cast<long double>(sum) * std::exp(scale));
}

double approx_load(SchemeId scheme, std::uint64_t K, std::uint64_t r, std::uint64_t s) {
  const double denom = scheme == SchemeId::k1 ? static_cast<double>(r) : static_cast<double>(r - 1);
  return std::min(1.0, static_cast<double>(s) * static_cast<double>(K - r) /
                           (denom * static_cast<double>(K)));
}

struct PerK {
  std::uint64_t evaluated = 0;
  std::uint64_t skipped = 0;
  std::uint64_t exact_checks = 0;
  std::optional<ScanPoint> worst;
  std::vector<ScanPoint> violations;
};

void consider(PerK& acc, ScanPoint point, const Rational& bound) {
  if (point.h > bound) acc.violations.push_back(point);
  if (!acc.worst || point.h > acc.worst->h) acc.worst = std::move(point);
}

PerK scan_exact(const Pascal& pascal, SchemeId scheme, std::uint64_t K, const Rational& bound) {
  PerK acc;
  for (std::uint64_t r = 1; r <= K; ++r) {
    for (std::uint64_t s = 1; s <= K; ++s) {
      if (!admissible(scheme, K, r, s)) continue;
      if (r == K) {
        ++acc.skipped;
        continue;
      }
      ++acc.evaluated;
      ++acc.exact_checks;
      consider(acc, {K, r, s, exact_h(pascal, scheme, K, r, s)}, bound);
    }
  }
  return acc;
}

PerK scan_fast(const Pascal& pascal, const std::vector<long double>& lf, SchemeId scheme,
               std::uint64_t K, const Rational& bound, double margin) {
  struct Approx {
    std::uint64_t r, s;
    double h;
  };
  PerK acc;
  std::vector<Approx> points;
  double best = -1.0;
  for (std::uint64_t r = 1; r <= K; ++r) {
    for (std::uint64_t s = 1; s <= K; ++s) {
      if (!admissible(scheme, K, r, s)) continue;
      if (r == K) {
        ++acc.skipped;
        continue;
      }
      ++acc.evaluated;
      const double h = approx_load(scheme, K, r, s) / approx_l_star(lf, K, r, s);
      best = std::max(best, h);
      points.push_back({r, s, h});
    }
  }
  const double limit = bound.to_double() * (1.0 - margin);
  for (const auto& p : points) {
    if (p.h >= limit || p.h >= best * (1.0 - margin)) {
      ++acc.exact_checks;
      consider(acc, {K, p.r, p.s, exact_h(pascal, scheme, K, p.r, p.s)}, bound);
    }
  }
  return acc;
}

}  // namespace

ScanResult scan_h(std::uint64_t k_max, SchemeId scheme, const Rational& bound,
                  const ScanOptions& options) {
  if (k_max < 2) throw std::invalid_argument("scan needs Kmax >= 2");
  const Pascal pascal(k_max);
  const auto lf = options.fast ? log_factorials(k_max) : std::vector<long double>{};
  const std::size_t threads = options.threads == 0 ? default_thread_count() : options.threads;

  // Largest K first: those carry most of the work.
  std::vector<PerK> per_k(k_max + 1);
  parallel_for(k_max - 1, threads, [&](std::size_t i) {
    const std::uint64_t K = k_max - i;
    per_k[K] = options.fast ? scan_fast(pascal, lf, scheme, K, bound, options.recheck_margin)
                            : scan_exact(pascal, scheme, K, bound);
  });

  ScanResult out;
  out.scheme = scheme;
  out.k_max = k_max;
  out.bound = bound;
  for (std::uint64_t K = 2; K <= k_max; ++K) {
    PerK& acc = per_k[K];
    out.evaluated += acc.evaluated;
    out.skipped += acc.skipped;
    out.exact_checks += acc.exact_checks;
    std::sort(acc.violations.begin(), acc.violations.end(), [](const auto& a, const auto& b) {
      return std::tie(a.r, a.s) < std::tie(b.r, b.s);
    });
    out.violations.insert(out.violations.end(), acc.violations.begin(), acc.violations.end());
    if (acc.worst) {
      out.per_k.push_back(*acc.worst);
      if (!out.worst || acc.worst->h > out.worst->h) out.worst = acc.worst;
    }
  }
  return out;
}

ThresholdCheck check_threshold(SchemeId scheme, std::uint64_t r, std::uint64_t s,
                               std::size_t samples) {
  ThresholdCheck check;
  Rational bound;
  if (scheme == SchemeId::k1) {
    check.threshold = lemma4_threshold(r, s);
    bound = Rational(2);
  } else {
    check.threshold = theorem4_threshold(r, s);
    bound = Rational(21, 10);
  }
  const BigInt first = check.threshold.ceil();
  std::uint64_t K = std::max<std::uint64_t>({first.get_ui(), r, s, 2});
  // Scheme 3 needs (K - r) | K, which bounds K by 2r.
  const std::uint64_t last = scheme == SchemeId::k3 ? 2 * r : K + 100000;
  for (; K <= last && check.sampled.size() < samples; ++K) {
    if (!admissible(scheme, K, r, s) || r == K) continue;
    check.sampled.push_back(K);
    Rational h = h_ratio(K, r, s, scheme);
    if (h > bound) check.violations.push_back({K, r, s, std::move(h)});
  }
  return check;
}

}  // namespace cdc
