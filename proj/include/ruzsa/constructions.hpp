#pragma once

#include <cstdint>
#include <istream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "ruzsa/prime_tools.hpp"
#include "ruzsa/residue_set.hpp"

namespace ruzsa {

// The {0..66} union {2*66, 3*66, ..., 66*66} set, reduced mod m. Covers Z_m
// for every m <= 4356 by Euclidean division n = 66q + s, and has at most
// 132 elements, so 1 <= sigma(n) <= 132.
inline ResidueSet base_set_small(std::uint32_t m) {
  if (m < 1 || m > 4356)
    throw std::invalid_argument("base_set_small: need 1 <= m <= 4356");
  std::vector<std::int64_t> raw;
  raw.reserve(132);
  for (std::int64_t v = 0; v <= 66; ++v) raw.push_back(v);
  for (std::int64_t k = 2; k <= 66; ++k) raw.push_back(66 * k);
  return ResidueSet(m, raw);
}

// B = A union {a + r : a in A} viewed in Z_{m1+r}. Maps a basis of Z_{m1}
// to a basis of Z_{m1+r} with at most a 4x blow-up of the maximal
// representation count, valid for m1/2 <= r < m1.
inline ResidueSet lift(const ResidueSet& a, std::uint32_t r) {
  const std::uint32_t m1 = a.modulus();
  if (!(2ull * r >= m1 && r < m1))
    throw std::invalid_argument("lift: need m1/2 <= r < m1");
  if (!is_basis(a)) throw std::invalid_argument("lift: A must be a basis of Z_{m1}");
  const std::uint32_t m2 = m1 + r;
  std::vector<std::uint32_t> out;
  out.reserve(2 * a.size());
  for (std::uint32_t e : a.elements()) {
    out.push_back(e);        // already < m1 <= m2
    out.push_back(e + r);    // <= m1 - 1 + r = m2 - 1
  }
  return ResidueSet(m2, std::move(out));
}

// Smallest prime p with 3p^2 <= m < 4p^2, i.e. sqrt(m/4) < p <= sqrt(m/3).
// Existence for m > 4356 is exactly the prime-gap lemma.
inline std::uint32_t choose_prime(std::uint64_t m) {
  if (m <= 4356) throw std::invalid_argument("choose_prime: need m > 4356");
  const auto hi = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(m) / 3.0)) + 2;
  const PrimeTable table = sieve(hi);
  for (std::uint64_t p : table.primes)
    if (3 * p * p <= m && m < 4 * p * p) return static_cast<std::uint32_t>(p);
  throw std::logic_error("choose_prime: no prime in (sqrt(m/4), sqrt(m/3)] -- bug");
}

struct BaseSearchResult {
  bool found = false;
  ResidueSet set{1};
  std::uint32_t achieved_max = 0;  // best verified max sigma (on success: of `set`)
  std::uint64_t attempts = 0;
};

// Verified randomized search for A in Z_{2p^2} with 1 <= sigma(n) <= target:
// sample ceil(4*sqrt(m1)) elements, then repair uncovered residues greedily,
// restarting on sigma overflow or after 50 repairs. Deterministic in
// (p, target_bound, seed, budget). `budget` counts sampling attempts.
inline BaseSearchResult search_base_2p2(std::uint32_t p, std::uint32_t target_bound,
                                        std::uint64_t seed, std::uint64_t budget) {
  if (target_bound < 3) throw std::invalid_argument("search_base_2p2: need target_bound >= 3");
  if (budget < 1) throw std::invalid_argument("search_base_2p2: need budget >= 1");
  {
    bool prime = p >= 2;
    for (std::uint32_t d = 2; d * d <= p; ++d)
      if (p % d == 0) { prime = false; break; }
    if (!prime) throw std::invalid_argument("search_base_2p2: p must be prime");
  }
  const std::uint32_t m1 = 2 * p * p;
  std::uint32_t k = static_cast<std::uint32_t>(
      std::ceil(4.0 * std::sqrt(static_cast<double>(m1))));
  if (k > m1) k = m1;

  std::mt19937_64 rng(seed);
  std::vector<std::uint32_t> pool(m1);
  std::vector<std::uint32_t> counts(m1);
  BaseSearchResult best;
  best.achieved_max = 0;

  for (std::uint64_t attempt = 0; attempt < budget; ++attempt) {
    best.attempts = attempt + 1;
    // Partial Fisher-Yates draw of k distinct residues.
    for (std::uint32_t i = 0; i < m1; ++i) pool[i] = i;
    std::vector<std::uint32_t> elems(k);
    for (std::uint32_t i = 0; i < k; ++i) {
      std::uniform_int_distribution<std::uint32_t> pick(i, m1 - 1);
      std::swap(pool[i], pool[pick(rng)]);
      elems[i] = pool[i];
    }
    std::sort(elems.begin(), elems.end());

    std::fill(counts.begin(), counts.end(), 0);
    std::uint32_t covered = 0, max_sigma = 0;
    auto bump = [&](std::uint32_t n, std::uint32_t by) {
      if (counts[n] == 0) ++covered;
      counts[n] += by;
      if (counts[n] > max_sigma) max_sigma = counts[n];
    };
    for (std::size_t i = 0; i < elems.size(); ++i) {
      for (std::size_t j = i + 1; j < elems.size(); ++j) {
        std::uint32_t s = elems[i] + elems[j];
        if (s >= m1) s -= m1;
        bump(s, 2);
      }
      std::uint32_t s = 2 * elems[i];
      if (s >= m1) s -= m1;
      bump(s, 1);
    }

    bool overflow = max_sigma > target_bound;
    for (int repairs = 0; !overflow && covered < m1 && repairs < 50; ++repairs) {
      std::uint32_t n0 = 0;
      while (counts[n0] != 0) ++n0;
      // Candidates n0 - a; pick the one covering the most holes.
      std::uint32_t best_e = 0, best_gain = 0;
      for (std::uint32_t a : elems) {
        std::uint32_t e = (n0 >= a) ? n0 - a : n0 + m1 - a;
        if (std::binary_search(elems.begin(), elems.end(), e)) continue;
        std::uint32_t gain = 0;
        for (std::uint32_t b : elems) {
          std::uint32_t s = e + b;
          if (s >= m1) s -= m1;
          if (counts[s] == 0) ++gain;
        }
        {
          std::uint32_t s = 2 * e >= m1 ? 2 * e - m1 : 2 * e;
          if (counts[s] == 0) ++gain;
        }
        if (gain > best_gain) { best_gain = gain; best_e = e; }
      }
      if (best_gain == 0) { overflow = true; break; }  // no candidate helps
      const std::uint32_t e = best_e;
      for (std::uint32_t b : elems) {
        std::uint32_t s = e + b;
        if (s >= m1) s -= m1;
        bump(s, 2);
      }
      {
        std::uint32_t s = 2 * e >= m1 ? 2 * e - m1 : 2 * e;
        bump(s, 1);
      }
      elems.insert(std::lower_bound(elems.begin(), elems.end(), e), e);
      overflow = max_sigma > target_bound;
    }

    if (!overflow && covered == m1) {
      best.found = true;
      best.set = ResidueSet(m1, std::move(elems));
      best.achieved_max = max_sigma;
      return best;
    }
    if (covered == m1 && (best.achieved_max == 0 || max_sigma < best.achieved_max))
      best.achieved_max = max_sigma;  // best failed max, for the error report
  }
  return best;
}

// Parses an externally supplied base set in the ResidueSet textual form.
// The caller (and the pipeline) re-verifies bounds; nothing is trusted.
inline ResidueSet import_base(std::istream& in) {
  std::stringstream buf;
  buf << in.rdbuf();
  return ResidueSet::parse(buf.str());
}

inline ResidueSet import_base(std::string_view text) {
  return ResidueSet::parse(text);
}

}  // namespace ruzsa
