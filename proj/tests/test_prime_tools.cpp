#include <doctest.h>

#include "ruzsa/prime_tools.hpp"

namespace {

bool trial_division_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

TEST_CASE("sieve basics") {
  CHECK(ruzsa::sieve(10).primes == std::vector<std::uint64_t>{2, 3, 5, 7});
  const auto t40 = ruzsa::sieve(40);
  CHECK(t40.primes.size() == 12);
  CHECK(t40.primes.back() == 37);
  CHECK(ruzsa::sieve(1500).is_prime(1249));
  CHECK_THROWS_AS(ruzsa::sieve(1), std::invalid_argument);
}

TEST_CASE("sieve soundness and completeness against trial division") {
  const auto table = ruzsa::sieve(10'000);
  for (std::uint64_t n = 0; n <= 10'000; ++n)
    CHECK(table.is_prime(n) == trial_division_prime(n));
}

TEST_CASE("prime_in_interval") {
  CHECK(ruzsa::prime_in_interval(33) == 37);
  CHECK(ruzsa::prime_in_interval(1242) == 1249);
  CHECK_FALSE(ruzsa::prime_in_interval(4).has_value());

  // Present and exactly in range for every x up to 10^4 (full 10^6 sweep
  // lives in the acceptance suite).
  const auto table = ruzsa::sieve(30'000);
  for (std::uint64_t x = 33; x <= 10'000; ++x) {
    auto p = ruzsa::prime_in_interval(x, table);
    REQUIRE(p.has_value());
    CHECK(*p > x);
    CHECK(3 * *p * *p <= 4 * x * x);
  }
}

TEST_CASE("verify_lemma3_range") {
  CHECK(ruzsa::verify_lemma3_range(33, 1242).ok);
  const auto single = ruzsa::verify_lemma3_range(33, 33);
  CHECK(single.ok);
  REQUIRE(!single.segments.empty());
  CHECK(single.segments.front().q_next == 37);
  CHECK_THROWS_AS(ruzsa::verify_lemma3_range(32, 100), std::invalid_argument);
  CHECK_THROWS_AS(ruzsa::verify_lemma3_range(100, 50), std::invalid_argument);
}

TEST_CASE("panaitopol inequality threshold bracket") {
  CHECK(ruzsa::panaitopol_inequality_check(1242));
  CHECK_FALSE(ruzsa::panaitopol_inequality_check(1241));
  CHECK_FALSE(ruzsa::panaitopol_inequality_check(33));
  CHECK_THROWS_AS(ruzsa::panaitopol_inequality_check(1.0), std::invalid_argument);
}

TEST_CASE("panaitopol monotone grid evidence") {
  CHECK(ruzsa::panaitopol_monotone_check(1242, 1'000'000, 1000));
  CHECK(ruzsa::panaitopol_monotone_check(1242, 1243, 2));
  CHECK_NOTHROW(ruzsa::panaitopol_monotone_check(2, 10, 5));  // diagnostic range
  CHECK_THROWS_AS(ruzsa::panaitopol_monotone_check(10, 2, 5), std::invalid_argument);
}
