#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace ruzsa {

// All primes up to `limit`, with O(1) membership.
struct PrimeTable {
  std::uint64_t limit = 0;
  std::vector<std::uint64_t> primes;
  std::vector<bool> flags;  // flags[n] == n is prime, n <= limit

  bool is_prime(std::uint64_t n) const {
    if (n > limit) throw std::out_of_range("PrimeTable: query above limit");
    return flags[n];
  }

  // Smallest prime strictly greater than x, if any in the table.
  std::optional<std::uint64_t> next_prime(std::uint64_t x) const {
    auto it = std::upper_bound(primes.begin(), primes.end(), x);
    if (it == primes.end()) return std::nullopt;
    return *it;
  }
};

inline PrimeTable sieve(std::uint64_t limit) {
  if (limit < 2) throw std::invalid_argument("sieve: limit must be >= 2");
  PrimeTable t;
  t.limit = limit;
  t.flags.assign(limit + 1, true);
  t.flags[0] = t.flags[1] = false;
  for (std::uint64_t i = 2; i * i <= limit; ++i)
    if (t.flags[i])
      for (std::uint64_t j = i * i; j <= limit; j += i) t.flags[j] = false;
  for (std::uint64_t n = 2; n <= limit; ++n)
    if (t.flags[n]) t.primes.push_back(n);
  return t;
}

// Smallest prime p with p > x and 3p^2 <= 4x^2 (the exact integer form of
// p <= 2x/sqrt(3)), or absent if the interval contains no prime.
inline std::optional<std::uint64_t> prime_in_interval(std::uint64_t x, const PrimeTable& table) {
  auto p = table.next_prime(x);
  if (!p) return std::nullopt;
  if (3 * *p * *p <= 4 * x * x) return *p;
  return std::nullopt;
}

inline std::optional<std::uint64_t> prime_in_interval(std::uint64_t x) {
  if (x < 1) throw std::invalid_argument("prime_in_interval: x must be >= 1");
  // Bertrand guarantees a prime in (x, 2x], so 2x+1 suffices to decide.
  return prime_in_interval(x, sieve(2 * x + 1));
}

struct Lemma3Segment {
  std::uint64_t x_lo = 0;      // hardest real x in the segment (left endpoint)
  std::uint64_t x_hi = 0;      // right end of the segment, clipped to the query
  std::uint64_t q = 0;         // prime at or below the segment
  std::uint64_t q_next = 0;    // candidate next prime
  bool ok = false;             // 3*q_next^2 <= 4*x_lo^2
};

struct Lemma3Report {
  bool ok = false;
  std::vector<Lemma3Segment> segments;
};

// Checks that for every REAL x in [x_lo, x_hi] the interval (x, 2x/sqrt(3)]
// contains a prime. The next prime above x is constant between consecutive
// primes and x -> 4x^2 is increasing, so it is enough to test each segment
// [max(q, x_lo), min(q', x_hi)] at its left endpoint, all in exact integers.
inline Lemma3Report verify_lemma3_range(std::uint64_t x_lo, std::uint64_t x_hi) {
  if (x_lo < 33 || x_lo > x_hi)
    throw std::invalid_argument("verify_lemma3_range: need 33 <= x_lo <= x_hi");
  const PrimeTable table = sieve(2 * x_hi + 10);
  Lemma3Report report;
  report.ok = true;

  // Largest prime <= x_lo; exists since x_lo >= 33.
  auto it = std::upper_bound(table.primes.begin(), table.primes.end(), x_lo);
  std::size_t i = static_cast<std::size_t>(it - table.primes.begin()) - 1;

  for (; i + 1 < table.primes.size() && table.primes[i] <= x_hi; ++i) {
    const std::uint64_t q = table.primes[i];
    const std::uint64_t qn = table.primes[i + 1];
    Lemma3Segment seg;
    seg.q = q;
    seg.q_next = qn;
    seg.x_lo = std::max(q, x_lo);
    seg.x_hi = std::min(qn, x_hi);
    seg.ok = 3 * qn * qn <= 4 * seg.x_lo * seg.x_lo;
    if (!seg.ok) report.ok = false;
    report.segments.push_back(seg);
  }
  return report;
}

// LHS and RHS of the single-variable inequality the Panaitopol bounds reduce
// the prime-gap claim to. log is the natural logarithm.
inline double panaitopol_lhs(double x) {
  const double half_sqrt3 = std::sqrt(3.0) / 2.0;
  return (1.0 - half_sqrt3) * std::log(x);
}

inline double panaitopol_rhs(double x) {
  const double half_sqrt3 = std::sqrt(3.0) / 2.0;
  return 1.0 - half_sqrt3 + half_sqrt3 * std::log(2.0 / std::sqrt(3.0)) +
         std::pow(std::log(x), -0.5) +
         half_sqrt3 * std::pow(std::log(2.0 * x / std::sqrt(3.0)), -0.5);
}

inline bool panaitopol_inequality_check(double x) {
  if (!(x > 1.0)) throw std::invalid_argument("panaitopol_inequality_check: need x > 1");
  return panaitopol_lhs(x) >= panaitopol_rhs(x);
}

// Grid evidence that LHS - RHS is nondecreasing on [x_lo, x_hi]; supporting
// evidence only, not a proof.
inline bool panaitopol_monotone_check(double x_lo, double x_hi, int steps) {
  if (!(1.0 < x_lo && x_lo < x_hi)) throw std::invalid_argument("panaitopol_monotone_check: need 1 < x_lo < x_hi");
  if (steps < 2) throw std::invalid_argument("panaitopol_monotone_check: need steps >= 2");
  double prev = panaitopol_lhs(x_lo) - panaitopol_rhs(x_lo);
  for (int i = 1; i < steps; ++i) {
    const double x = x_lo + (x_hi - x_lo) * static_cast<double>(i) / (steps - 1);
    const double d = panaitopol_lhs(x) - panaitopol_rhs(x);
    if (d < prev) return false;
    prev = d;
  }
  return true;
}

}  // namespace ruzsa
