#include <doctest.h>

#include "ruzsa/exact_solver.hpp"

using ruzsa::SolveStatus;

TEST_CASE("oracle_ruzsa small values") {
  CHECK(ruzsa::oracle_ruzsa(1).r_m == 1);
  CHECK(ruzsa::oracle_ruzsa(1).witness.elements() == std::vector<std::uint32_t>{0});
  CHECK(ruzsa::oracle_ruzsa(2).r_m == 2);
  CHECK(ruzsa::oracle_ruzsa(4).r_m == 3);
  CHECK_THROWS_AS(ruzsa::oracle_ruzsa(19), std::invalid_argument);
  CHECK_THROWS_AS(ruzsa::oracle_ruzsa(0), std::invalid_argument);
}

TEST_CASE("exact_ruzsa matches the oracle for m <= 14") {
  for (std::uint32_t m = 1; m <= 14; ++m) {
    const auto oracle = ruzsa::oracle_ruzsa(m);
    const auto fast = ruzsa::exact_ruzsa(m);
    REQUIRE(fast.status == SolveStatus::Exact);
    CHECK(fast.r_m == oracle.r_m);
    // Witnesses may differ but both must verify.
    const auto p = ruzsa::sigma_profile(fast.witness);
    CHECK(p.min_sigma >= 1);
    CHECK(p.max_sigma == fast.r_m);
  }
}

TEST_CASE("canonicalization off gives the same answers for m <= 14") {
  for (std::uint32_t m = 1; m <= 14; ++m)
    CHECK(ruzsa::exact_ruzsa(m, ruzsa::kDefaultNodeBudget, false).r_m ==
          ruzsa::exact_ruzsa(m, ruzsa::kDefaultNodeBudget, true).r_m);
}

TEST_CASE("small Ruzsa numbers: R_1=1, R_2=R_3=2, R_m >= 3 beyond") {
  CHECK(ruzsa::exact_ruzsa(1).r_m == 1);
  CHECK(ruzsa::exact_ruzsa(2).r_m == 2);  // {0,1} has sigma identically 2
  CHECK(ruzsa::exact_ruzsa(3).r_m == 2);
  for (std::uint32_t m = 4; m <= 20; ++m) {
    const auto res = ruzsa::exact_ruzsa(m);
    REQUIRE(res.status == SolveStatus::Exact);
    CHECK(res.r_m >= 3);
  }
}

TEST_CASE("budget exhaustion is an explicit bounded outcome") {
  const auto res = ruzsa::exact_ruzsa(30, 10);
  CHECK(res.status == SolveStatus::Bounded);
  CHECK(res.r_lower >= 1);
}

TEST_CASE("min_cover") {
  const auto one = ruzsa::min_cover(1);
  CHECK(one.c_m == 1);
  CHECK(one.ell_num == 1);
  CHECK(one.ell_den == 1);

  const auto four = ruzsa::min_cover(4);
  CHECK(four.c_m == 3);
  CHECK(four.ell_num == 9);
  CHECK(four.ell_den == 4);
  CHECK(ruzsa::is_basis(four.witness));

  // Pigeonhole floor: c_m >= ceil(sqrt(m)).
  for (std::uint32_t m = 1; m <= 30; ++m) {
    const auto res = ruzsa::min_cover(m);
    REQUIRE(res.status == SolveStatus::Exact);
    CHECK(static_cast<std::uint64_t>(res.c_m) * res.c_m >= m);
    CHECK(ruzsa::is_basis(res.witness));
    CHECK(res.witness.size() == res.c_m);
  }
}

TEST_CASE("min_cover against exhaustive enumeration for m <= 12") {
  for (std::uint32_t m = 2; m <= 12; ++m) {
    // Brute force: smallest covering subset by mask enumeration.
    std::uint32_t best = m + 1;
    for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
      std::vector<std::int64_t> elems;
      for (std::uint32_t e = 0; e < m; ++e)
        if (mask & (1u << e)) elems.push_back(e);
      if (elems.size() >= best) continue;
      if (ruzsa::is_basis(ruzsa::ResidueSet(m, elems)))
        best = static_cast<std::uint32_t>(elems.size());
    }
    CHECK(ruzsa::min_cover(m).c_m == best);
  }
}

TEST_CASE("k_min") {
  CHECK(ruzsa::k_min(1, 1).k_m == 1);

  const auto k4 = ruzsa::k_min(4, 3);
  CHECK(k4.k_m == 3);
  // Conjecture 5 instance: K_4^2 = 9 = 4 * (9/4).
  CHECK(k4.k_m * k4.k_m == 9);

  for (std::uint32_t m = 1; m <= 20; ++m) {
    const auto er = ruzsa::exact_ruzsa(m);
    REQUIRE(er.status == SolveStatus::Exact);
    const auto kr = ruzsa::k_min(m, er.r_m);
    REQUIRE(kr.status == SolveStatus::Exact);
    const auto cr = ruzsa::min_cover(m);
    CHECK(kr.k_m >= cr.c_m);  // H*_m is a subset of H_m
    const auto p = ruzsa::sigma_profile(kr.witness);
    CHECK(p.min_sigma >= 1);
    CHECK(p.max_sigma <= er.r_m);
    CHECK(kr.witness.size() == kr.k_m);
  }
}

TEST_CASE("nodes_explored is reported") {
  CHECK(ruzsa::exact_ruzsa(10).nodes_explored > 0);
  CHECK(ruzsa::oracle_ruzsa(10).nodes_explored == (1u << 10) - 1);
}
