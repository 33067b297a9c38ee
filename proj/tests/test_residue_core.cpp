#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "ruzsa/residue_set.hpp"

using ruzsa::ResidueSet;

namespace {

// Test-local oracle: direct enumeration over raw element vectors, kept
// independent of the library's kernels.
std::vector<std::uint32_t> brute_sigma(const std::vector<std::uint32_t>& a,
                                       const std::vector<std::uint32_t>& b, std::uint32_t m) {
  std::vector<std::uint32_t> counts(m, 0);
  for (auto x : a)
    for (auto y : b) ++counts[(x + y) % m];
  return counts;
}

ResidueSet random_set(std::mt19937_64& rng, std::uint32_t m) {
  std::uniform_int_distribution<std::uint32_t> size_dist(0, m);
  std::uniform_int_distribution<std::uint32_t> elem_dist(0, m - 1);
  std::vector<std::int64_t> raw;
  const std::uint32_t n = size_dist(rng);
  for (std::uint32_t i = 0; i < n; ++i) raw.push_back(elem_dist(rng));
  return ResidueSet(m, raw);
}

std::multiset<std::uint32_t> count_multiset(const ruzsa::RepProfile& p) {
  return {p.counts.begin(), p.counts.end()};
}

}  // namespace

TEST_CASE("residue set construction reduces, sorts and deduplicates") {
  ResidueSet a(5, std::vector<std::int64_t>{7, 1, 6, -4, 1});
  CHECK(a.elements() == std::vector<std::uint32_t>{1, 2});
  CHECK_THROWS_AS(ResidueSet(0), std::invalid_argument);
}

TEST_CASE("textual form round trip") {
  const ResidueSet a = ResidueSet::parse("5 0 1 2");
  CHECK(a.modulus() == 5);
  CHECK(a.elements() == std::vector<std::uint32_t>{0, 1, 2});
  CHECK(a.to_text() == "5 0 1 2");

  const ResidueSet reduced = ResidueSet::parse("5 6 1");
  CHECK(reduced.elements() == std::vector<std::uint32_t>{1});

  CHECK_THROWS_AS(ResidueSet::parse("abc"), std::invalid_argument);
  CHECK_THROWS_AS(ResidueSet::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(ResidueSet::parse("5 1 99999999999999999999999"), std::invalid_argument);
}

TEST_CASE("sigma_profile on the fixed examples") {
  CHECK(ruzsa::sigma_profile(ResidueSet(1, std::vector<std::int64_t>{0})).counts ==
        std::vector<std::uint32_t>{1});
  CHECK(ruzsa::sigma_profile(ResidueSet(2, std::vector<std::int64_t>{0, 1})).counts ==
        std::vector<std::uint32_t>{2, 2});
  CHECK(ruzsa::sigma_profile(ResidueSet(5, std::vector<std::int64_t>{0, 1, 2})).counts ==
        std::vector<std::uint32_t>{1, 2, 3, 2, 1});
  CHECK(ruzsa::sigma_profile(ResidueSet(5)).counts == std::vector<std::uint32_t>(5, 0));
}

TEST_CASE("sigma_profile_pair on the fixed examples") {
  const ResidueSet a(4, std::vector<std::int64_t>{0});
  const ResidueSet b(4, std::vector<std::int64_t>{0, 1, 2});
  CHECK(ruzsa::sigma_profile_pair(a, b).counts == std::vector<std::uint32_t>{1, 1, 1, 0});

  const ResidueSet c(5, std::vector<std::int64_t>{0, 1, 2});
  CHECK(ruzsa::sigma_profile_pair(c, c).counts == ruzsa::sigma_profile(c).counts);

  const ResidueSet d(4, std::vector<std::int64_t>{0, 2});
  const ResidueSet e(4, std::vector<std::int64_t>{1, 3});
  CHECK(ruzsa::sigma_profile_pair(d, e).counts == std::vector<std::uint32_t>{0, 2, 0, 2});

  CHECK_THROWS_AS(ruzsa::sigma_profile_pair(a, c), std::invalid_argument);
}

TEST_CASE("is_basis") {
  CHECK(ruzsa::is_basis(ResidueSet(3, std::vector<std::int64_t>{0, 1})));
  CHECK_FALSE(ruzsa::is_basis(ResidueSet(4, std::vector<std::int64_t>{0, 2})));
  CHECK_FALSE(ruzsa::is_basis(ResidueSet(5)));
}

TEST_CASE("translate and dilate") {
  const ResidueSet a(5, std::vector<std::int64_t>{0, 1});
  CHECK(ruzsa::translate(a, 2).elements() == std::vector<std::uint32_t>{2, 3});
  CHECK(ruzsa::translate(a, 0) == a);
  CHECK(ruzsa::translate(ResidueSet(5, std::vector<std::int64_t>{3, 4}), 2).elements() ==
        std::vector<std::uint32_t>{0, 1});

  CHECK(ruzsa::dilate(ResidueSet(5, std::vector<std::int64_t>{0, 1, 2}), 2).elements() ==
        std::vector<std::uint32_t>{0, 2, 4});
  CHECK(ruzsa::dilate(a, 1) == a);
  CHECK_THROWS_AS(ruzsa::dilate(ResidueSet(4, std::vector<std::int64_t>{1, 2}), 2),
                  std::invalid_argument);
}

TEST_CASE("randomized identities and kernel cross-check") {
  std::mt19937_64 rng(20230901);
  std::uniform_int_distribution<std::uint32_t> mod_dist(1, 80);
  for (int iter = 0; iter < 200; ++iter) {
    const std::uint32_t m = mod_dist(rng);
    const ResidueSet a = random_set(rng, m);
    const auto profile = ruzsa::sigma_profile(a);

    // Pair-count conservation and the pointwise cap.
    CHECK(profile.total == static_cast<std::uint64_t>(a.size()) * a.size());
    for (auto c : profile.counts) CHECK(c <= a.size());

    // Against the test-local oracle.
    CHECK(profile.counts == brute_sigma(a.elements(), a.elements(), m));

    // Accelerated kernel agrees exactly with the reference kernel.
    CHECK(ruzsa::sigma_profile_bitparallel(a).counts == profile.counts);

    // Translation covariance: counts shift by 2t.
    std::uniform_int_distribution<std::uint32_t> t_dist(0, m - 1);
    const std::uint32_t t = t_dist(rng);
    const auto shifted = ruzsa::sigma_profile(ruzsa::translate(a, t));
    for (std::uint32_t n = 0; n < m; ++n)
      CHECK(shifted.counts[(n + 2 * t) % m] == profile.counts[n]);
    CHECK(count_multiset(shifted) == count_multiset(profile));

    // Dilation covariance: counts reindex by u, multiset preserved.
    std::uint32_t u = 1 + t_dist(rng) % m;
    while (std::gcd(u, m) != 1) u = 1 + (u % m);
    const auto dilated = ruzsa::sigma_profile(ruzsa::dilate(a, u));
    for (std::uint32_t n = 0; n < m; ++n)
      CHECK(dilated.counts[static_cast<std::uint32_t>(
                (static_cast<std::uint64_t>(u) * n) % m)] == profile.counts[n]);
    CHECK(count_multiset(dilated) == count_multiset(profile));
  }
}

TEST_CASE("pair profile total is |A|*|B|") {
  std::mt19937_64 rng(42);
  for (int iter = 0; iter < 100; ++iter) {
    std::uniform_int_distribution<std::uint32_t> mod_dist(1, 60);
    const std::uint32_t m = mod_dist(rng);
    const ResidueSet a = random_set(rng, m);
    const ResidueSet b = random_set(rng, m);
    const auto p = ruzsa::sigma_profile_pair(a, b);
    CHECK(p.total == static_cast<std::uint64_t>(a.size()) * b.size());
    CHECK(p.counts == brute_sigma(a.elements(), b.elements(), m));
  }
}
