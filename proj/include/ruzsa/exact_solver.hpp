#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ruzsa/residue_set.hpp"

namespace ruzsa {

enum class SolveStatus { Exact, Bounded };

struct ExactResult {
  std::uint32_t m = 0;
  SolveStatus status = SolveStatus::Exact;
  std::uint32_t r_m = 0;      // exact Ruzsa number (valid when status == Exact)
  std::uint32_t r_lower = 1;  // proven lower bound, valid in both statuses
  ResidueSet witness{1};
  std::uint64_t nodes_explored = 0;
};

struct CoverResult {
  std::uint32_t m = 0;
  SolveStatus status = SolveStatus::Exact;
  std::uint32_t c_m = 0;
  std::uint64_t ell_num = 0;  // ell_m = c_m^2 / m as a reduced exact rational
  std::uint64_t ell_den = 1;
  ResidueSet witness{1};
  std::uint64_t nodes_explored = 0;
};

struct KResult {
  std::uint32_t m = 0;
  SolveStatus status = SolveStatus::Exact;
  std::uint32_t k_m = 0;
  ResidueSet witness{1};
  std::uint64_t nodes_explored = 0;
};

namespace detail {

inline std::uint32_t isqrt_u64(std::uint64_t v) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return static_cast<std::uint32_t>(r);
}

// Smallest k whose k(k+1)/2 unordered pair sums could cover m residues.
inline std::uint32_t min_cover_floor(std::uint32_t m) {
  std::uint32_t k = 1;
  while (static_cast<std::uint64_t>(k) * (k + 1) / 2 < m) ++k;
  return k;
}

// Depth-first feasibility search: does a set A in Z_m exist with every
// residue covered, every sigma count <= r_cap (0 = unconstrained) and
// |A| <= size_cap?  Branches on the ways to cover the most constrained
// uncovered residue; pairs already tried at a node are banned from the
// remaining branches, so no state is visited twice.
class FeasibilitySearch {
public:
  enum class Outcome { Found, Infeasible, OutOfBudget };

  FeasibilitySearch(std::uint32_t m, std::uint32_t r_cap, std::uint32_t size_cap,
                    std::uint64_t node_budget)
      : m_(m),
        r_cap_(r_cap),
        size_cap_(size_cap),
        budget_(node_budget),
        counts_(m, 0),
        in_set_(m, 0) {}

  Outcome run(bool fix_zero) {
    if (fix_zero && size_cap_ >= 1) {
      if (!add(0)) return Outcome::Infeasible;
    }
    return dfs();
  }

  const std::vector<std::uint32_t>& witness() const { return witness_; }
  std::uint64_t nodes() const { return nodes_; }

private:
  bool banned_with(std::uint32_t e) const {
    for (const auto& [x, y] : banned_) {
      if (x == e && (y == e || in_set_[y])) return true;
      if (y == e && in_set_[x]) return true;
    }
    return false;
  }

  bool pair_banned(std::uint32_t x, std::uint32_t y) const {
    for (const auto& [bx, by] : banned_)
      if (bx == x && by == y) return true;
    return false;
  }

  // Adds e (not currently in the set); returns false and leaves the state
  // unchanged if a cap or a banned pair would be violated.
  bool add(std::uint32_t e) {
    if (elems_.size() + 1 > size_cap_) return false;
    if (banned_with(e)) return false;
    bool violated = false;
    for (std::uint32_t a : elems_) {
      std::uint32_t s = a + e;
      if (s >= m_) s -= m_;
      if (counts_[s] == 0) ++covered_;
      counts_[s] += 2;
      if (r_cap_ && counts_[s] > r_cap_) violated = true;
    }
    {
      std::uint32_t s = 2 * e >= m_ ? 2 * e - m_ : 2 * e;
      if (counts_[s] == 0) ++covered_;
      counts_[s] += 1;
      if (r_cap_ && counts_[s] > r_cap_) violated = true;
    }
    elems_.push_back(e);
    in_set_[e] = 1;
    if (violated) {
      remove_last();
      return false;
    }
    return true;
  }

  void remove_last() {
    const std::uint32_t e = elems_.back();
    elems_.pop_back();
    in_set_[e] = 0;
    for (std::uint32_t a : elems_) {
      std::uint32_t s = a + e;
      if (s >= m_) s -= m_;
      counts_[s] -= 2;
      if (counts_[s] == 0) --covered_;
    }
    std::uint32_t s = 2 * e >= m_ ? 2 * e - m_ : 2 * e;
    counts_[s] -= 1;
    if (counts_[s] == 0) --covered_;
  }

  // Upper bound on how many still-uncovered residues the remaining element
  // slots can reach: the i-th new element contributes at most |A|+i new sums.
  bool capacity_ok() const {
    const std::uint64_t t = elems_.size();
    const std::uint64_t s = size_cap_ - t;
    const std::uint64_t reach = s * t + s * (s + 1) / 2;
    return m_ - covered_ <= reach;
  }

  struct Pair {
    std::uint32_t x, y;
  };

  // Admissible ways to cover residue n right now. Returns early once the
  // count exceeds `cut` (used only to find the most constrained residue).
  std::vector<Pair> cover_options(std::uint32_t n, std::size_t cut) const {
    std::vector<Pair> out;
    for (std::uint32_t x = 0; x < m_; ++x) {
      std::uint32_t y = (n >= x) ? n - x : n + m_ - x;
      if (x > y) continue;
      const std::uint32_t needed =
          static_cast<std::uint32_t>(!in_set_[x]) +
          static_cast<std::uint32_t>(x != y && !in_set_[y]);
      if (needed == 0) continue;  // n would already be covered
      if (elems_.size() + needed > size_cap_) continue;
      if (r_cap_ && counts_[n] + (x == y ? 1u : 2u) > r_cap_) continue;
      if (pair_banned(x, y)) continue;
      out.push_back({x, y});
      if (out.size() > cut) break;
    }
    return out;
  }

  Outcome dfs() {
    if (++nodes_ > budget_) return Outcome::OutOfBudget;
    if (covered_ == m_) {
      witness_ = elems_;
      std::sort(witness_.begin(), witness_.end());
      return Outcome::Found;
    }
    if (!capacity_ok()) return Outcome::Infeasible;

    // Most constrained uncovered residue.
    std::uint32_t pick = m_;
    std::vector<Pair> options;
    std::size_t best = static_cast<std::size_t>(-1);
    for (std::uint32_t n = 0; n < m_ && best > 0; ++n) {
      if (counts_[n] != 0) continue;
      auto opts = cover_options(n, best);
      if (opts.size() < best) {
        best = opts.size();
        pick = n;
        options = std::move(opts);
      }
    }
    if (pick == m_) return Outcome::Infeasible;  // nothing uncovered was found (unreachable)
    if (options.empty()) return Outcome::Infeasible;

    const std::size_t ban_mark = banned_.size();
    for (const Pair& pr : options) {
      // Bans placed by earlier branches of this node may invalidate the
      // option, so re-test at use time.
      int added = 0;
      bool ok = true;
      if (!in_set_[pr.x]) {
        if (add(pr.x)) {
          ++added;
        } else {
          ok = false;
        }
      }
      if (ok && !in_set_[pr.y]) {
        if (add(pr.y)) {
          ++added;
        } else {
          ok = false;
        }
      }
      if (ok) {
        Outcome res = dfs();
        if (res != Outcome::Infeasible) {
          return res;  // Found or OutOfBudget; no cleanup needed
        }
      }
      while (added-- > 0) remove_last();
      banned_.push_back({pr.x, pr.y});
    }
    banned_.resize(ban_mark);
    return Outcome::Infeasible;
  }

  std::uint32_t m_, r_cap_, size_cap_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::uint32_t covered_ = 0;
  std::vector<std::uint32_t> counts_;
  std::vector<std::uint8_t> in_set_;
  std::vector<std::uint32_t> elems_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> banned_;
  std::vector<std::uint32_t> witness_;
};

}  // namespace detail

inline constexpr std::uint64_t kDefaultNodeBudget = 1'000'000'000;

// Exhaustive reference solver: full 2^m subset enumeration, lexicographically
// smallest witness among the optima. The arbiter for the pruned search.
inline ExactResult oracle_ruzsa(std::uint32_t m) {
  if (m < 1 || m > 18) throw std::invalid_argument("oracle_ruzsa: need 1 <= m <= 18");
  ExactResult result;
  result.m = m;
  std::uint32_t best_r = m + 1;
  std::vector<std::uint32_t> best_elems;
  std::vector<std::uint32_t> elems, counts(m);
  const std::uint32_t full = static_cast<std::uint32_t>((1u << m) - 1);
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    ++result.nodes_explored;
    elems.clear();
    for (std::uint32_t e = 0; e < m; ++e)
      if (mask & (1u << e)) elems.push_back(e);
    std::fill(counts.begin(), counts.end(), 0);
    for (std::uint32_t x : elems)
      for (std::uint32_t y : elems) {
        std::uint32_t s = x + y;
        if (s >= m) s -= m;
        ++counts[s];
      }
    std::uint32_t mn = counts[0], mx = counts[0];
    for (std::uint32_t c : counts) {
      mn = std::min(mn, c);
      mx = std::max(mx, c);
    }
    if (mn < 1) continue;
    if (mx < best_r || (mx == best_r && elems < best_elems)) {
      best_r = mx;
      best_elems = elems;
    }
  }
  result.r_m = best_r;
  result.r_lower = best_r;
  result.witness = ResidueSet(m, best_elems);
  return result;
}

// Pruned branch-and-bound: for r = 1, 2, ... test whether a set with
// 1 <= sigma <= r exists. The |A| <= floor(sqrt(r*m)) cap follows from
// sum sigma = |A|^2 <= r*m. `canonicalize` fixes 0 in A by translation.
inline ExactResult exact_ruzsa(std::uint32_t m, std::uint64_t node_budget = kDefaultNodeBudget,
                               bool canonicalize = true) {
  if (m < 1) throw std::invalid_argument("exact_ruzsa: need m >= 1");
  ExactResult result;
  result.m = m;
  for (std::uint32_t r = 1; r <= m; ++r) {
    const std::uint32_t size_cap = detail::isqrt_u64(static_cast<std::uint64_t>(r) * m);
    const std::uint64_t remaining =
        node_budget > result.nodes_explored ? node_budget - result.nodes_explored : 0;
    detail::FeasibilitySearch search(m, r, size_cap, remaining);
    auto outcome = search.run(canonicalize);
    result.nodes_explored += search.nodes();
    if (outcome == detail::FeasibilitySearch::Outcome::Found) {
      result.status = SolveStatus::Exact;
      result.r_m = r;
      result.r_lower = r;
      result.witness = ResidueSet(m, search.witness());
      return result;
    }
    if (outcome == detail::FeasibilitySearch::Outcome::OutOfBudget) {
      result.status = SolveStatus::Bounded;
      result.r_m = 0;
      result.r_lower = r;
      return result;
    }
    result.r_lower = r + 1;
  }
  throw std::logic_error("exact_ruzsa: A = Z_m must be feasible at r = m -- bug");
}

// Minimal-cardinality basis via iterative deepening on |A|. The mean of
// sigma over Z_m is |A|^2/m, so minimizing the mean is minimizing |A| and
// ell_m = c_m^2/m exactly.
inline CoverResult min_cover(std::uint32_t m, std::uint64_t node_budget = kDefaultNodeBudget) {
  if (m < 1) throw std::invalid_argument("min_cover: need m >= 1");
  CoverResult result;
  result.m = m;
  for (std::uint32_t k = detail::min_cover_floor(m); k <= m; ++k) {
    const std::uint64_t remaining =
        node_budget > result.nodes_explored ? node_budget - result.nodes_explored : 0;
    detail::FeasibilitySearch search(m, 0, k, remaining);
    auto outcome = search.run(true);
    result.nodes_explored += search.nodes();
    if (outcome == detail::FeasibilitySearch::Outcome::Found) {
      result.status = SolveStatus::Exact;
      result.c_m = k;
      const std::uint64_t num = static_cast<std::uint64_t>(k) * k;
      const std::uint64_t g = std::gcd(num, static_cast<std::uint64_t>(m));
      result.ell_num = num / g;
      result.ell_den = m / g;
      result.witness = ResidueSet(m, search.witness());
      return result;
    }
    if (outcome == detail::FeasibilitySearch::Outcome::OutOfBudget) {
      result.status = SolveStatus::Bounded;
      result.c_m = k;  // proven lower bound on c_m
      return result;
    }
  }
  throw std::logic_error("min_cover: A = Z_m always covers -- bug");
}

// Minimal cardinality among sets with 1 <= sigma <= r_m, where r_m must be
// the exact Ruzsa number of m.
inline KResult k_min(std::uint32_t m, std::uint32_t r_m,
                     std::uint64_t node_budget = kDefaultNodeBudget) {
  if (m < 1) throw std::invalid_argument("k_min: need m >= 1");
  if (r_m < 1) throw std::invalid_argument("k_min: need r_m >= 1");
  KResult result;
  result.m = m;
  const std::uint32_t size_max = detail::isqrt_u64(static_cast<std::uint64_t>(r_m) * m);
  for (std::uint32_t k = detail::min_cover_floor(m); k <= size_max; ++k) {
    const std::uint64_t remaining =
        node_budget > result.nodes_explored ? node_budget - result.nodes_explored : 0;
    detail::FeasibilitySearch search(m, r_m, k, remaining);
    auto outcome = search.run(true);
    result.nodes_explored += search.nodes();
    if (outcome == detail::FeasibilitySearch::Outcome::Found) {
      result.status = SolveStatus::Exact;
      result.k_m = k;
      result.witness = ResidueSet(m, search.witness());
      return result;
    }
    if (outcome == detail::FeasibilitySearch::Outcome::OutOfBudget) {
      result.status = SolveStatus::Bounded;
      result.k_m = k;  // proven lower bound on K_m
      return result;
    }
  }
  throw std::logic_error("k_min: r_m is not attainable for this m -- caller bug");
}

}  // namespace ruzsa
