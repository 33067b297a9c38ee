#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "ruzsa/exact_solver.hpp"

namespace ruzsa {

enum class TriState { True, False, Unknown };

inline const char* to_string(TriState t) {
  switch (t) {
    case TriState::True: return "true";
    case TriState::False: return "false";
    default: return "unknown";
  }
}

struct ScanRow {
  std::uint32_t m = 0;
  std::optional<std::uint32_t> r_m;  // empty when the budget ran out
  std::uint32_t r_lower = 1;
  std::optional<std::uint32_t> c_m;
  std::optional<std::uint64_t> ell_num;
  std::optional<std::uint64_t> ell_den;
  std::optional<std::uint32_t> k_m;
  std::optional<std::uint32_t> delta_next;  // |R_{m+1} - R_m| when both exact
  TriState conj1 = TriState::Unknown;       // |R_{m+1} - R_m| <= 1
  TriState conj2_eq = TriState::Unknown;    // R_{m+1} == R_m
  std::string conj4_ratio;                  // K_m / sqrt(3m), 12 significant digits
  TriState conj5 = TriState::Unknown;       // K_m^2 == m * ell_m, exact rational check
  std::string witness;                      // R_m witness, textual form
};

struct ConjectureReport {
  std::uint32_t m_lo = 0, m_hi = 0;
  std::vector<ScanRow> rows;
  // Range summaries (evidence only; finite data says nothing about liminf).
  std::uint32_t adjacent_equal_pairs = 0;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> ell_min;  // num/den
  std::optional<std::pair<std::uint64_t, std::uint64_t>> ell_max;
  std::string conj4_ratio_min;
  std::vector<std::uint32_t> conj5_failures;
};

namespace detail {

inline std::string format_ratio(std::uint32_t k, std::uint32_t m) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g",
                static_cast<double>(k) / std::sqrt(3.0 * static_cast<double>(m)));
  return buf;
}

// ell stored as reduced fractions; compare a/b vs c/d exactly.
inline bool rational_less(std::pair<std::uint64_t, std::uint64_t> a,
                          std::pair<std::uint64_t, std::uint64_t> b) {
  return static_cast<unsigned __int128>(a.first) * b.second <
         static_cast<unsigned __int128>(b.first) * a.second;
}

}  // namespace detail

// Batch evaluation of the five conjecture predicates over [m_lo, m_hi].
// Rows are independent; `jobs` > 1 computes them concurrently and merges in
// order, so the report is deterministic for fixed inputs and budget.
inline ConjectureReport scan(std::uint32_t m_lo, std::uint32_t m_hi,
                             std::uint64_t node_budget = kDefaultNodeBudget,
                             unsigned jobs = 1) {
  if (m_lo < 1 || m_lo > m_hi) throw std::invalid_argument("scan: need 1 <= m_lo <= m_hi");
  ConjectureReport report;
  report.m_lo = m_lo;
  report.m_hi = m_hi;
  report.rows.resize(m_hi - m_lo + 1);

  auto compute_row = [&](std::uint32_t m, ScanRow& row) {
    row.m = m;
    ExactResult er = exact_ruzsa(m, node_budget);
    row.r_lower = er.r_lower;
    if (er.status == SolveStatus::Exact) {
      row.r_m = er.r_m;
      row.witness = er.witness.to_text();
    }
    CoverResult cr = min_cover(m, node_budget);
    if (cr.status == SolveStatus::Exact) {
      row.c_m = cr.c_m;
      row.ell_num = cr.ell_num;
      row.ell_den = cr.ell_den;
    }
    if (row.r_m) {
      KResult kr = k_min(m, *row.r_m, node_budget);
      if (kr.status == SolveStatus::Exact) {
        row.k_m = kr.k_m;
        row.conj4_ratio = detail::format_ratio(kr.k_m, m);
      }
    }
    if (row.k_m && row.ell_num) {
      // K_m^2 == m * ell_m  <=>  K_m^2 * den == m * num, all exact.
      const auto lhs = static_cast<unsigned __int128>(*row.k_m) * *row.k_m * *row.ell_den;
      const auto rhs = static_cast<unsigned __int128>(m) * *row.ell_num;
      row.conj5 = (lhs == rhs) ? TriState::True : TriState::False;
    }
  };

  if (jobs <= 1) {
    for (std::uint32_t m = m_lo; m <= m_hi; ++m) compute_row(m, report.rows[m - m_lo]);
  } else {
    std::atomic<std::uint32_t> next{m_lo};
    std::vector<std::thread> workers;
    for (unsigned j = 0; j < jobs; ++j)
      workers.emplace_back([&] {
        for (;;) {
          const std::uint32_t m = next.fetch_add(1);
          if (m > m_hi) return;
          compute_row(m, report.rows[m - m_lo]);
        }
      });
    for (auto& w : workers) w.join();
  }

  // Adjacent-pair predicates; both endpoints must be exact.
  for (std::size_t i = 0; i + 1 < report.rows.size(); ++i) {
    ScanRow& row = report.rows[i];
    const ScanRow& nxt = report.rows[i + 1];
    if (row.r_m && nxt.r_m) {
      const std::uint32_t a = *row.r_m, b = *nxt.r_m;
      row.delta_next = a > b ? a - b : b - a;
      row.conj1 = (*row.delta_next <= 1) ? TriState::True : TriState::False;
      row.conj2_eq = (a == b) ? TriState::True : TriState::False;
      if (a == b) ++report.adjacent_equal_pairs;
    }
  }

  for (const ScanRow& row : report.rows) {
    if (row.ell_num) {
      const std::pair<std::uint64_t, std::uint64_t> ell{*row.ell_num, *row.ell_den};
      if (!report.ell_min || detail::rational_less(ell, *report.ell_min)) report.ell_min = ell;
      if (!report.ell_max || detail::rational_less(*report.ell_max, ell)) report.ell_max = ell;
    }
    if (!row.conj4_ratio.empty() &&
        (report.conj4_ratio_min.empty() ||
         std::stod(row.conj4_ratio) < std::stod(report.conj4_ratio_min)))
      report.conj4_ratio_min = row.conj4_ratio;
    if (row.conj5 == TriState::False) report.conj5_failures.push_back(row.m);
  }
  return report;
}

inline std::string report_to_csv(const ConjectureReport& report) {
  std::ostringstream out;
  out << "m,r_m,r_status,c_m,ell_num,ell_den,k_m,delta_next,conj1,conj2_eq,conj4_ratio,conj5\n";
  auto cell = [](const auto& opt) -> std::string {
    return opt ? std::to_string(*opt) : std::string("unknown");
  };
  for (const ScanRow& row : report.rows) {
    out << row.m << ',' << cell(row.r_m) << ',' << (row.r_m ? "exact" : "bounded") << ','
        << cell(row.c_m) << ',' << cell(row.ell_num) << ',' << cell(row.ell_den) << ','
        << cell(row.k_m) << ',' << cell(row.delta_next) << ',' << to_string(row.conj1) << ','
        << to_string(row.conj2_eq) << ','
        << (row.conj4_ratio.empty() ? "unknown" : row.conj4_ratio) << ','
        << to_string(row.conj5) << '\n';
  }
  out << "# range=[" << report.m_lo << ',' << report.m_hi << "]\n";
  out << "# adjacent_equal_pairs=" << report.adjacent_equal_pairs << "\n";
  if (report.ell_min)
    out << "# ell_min=" << report.ell_min->first << '/' << report.ell_min->second << "\n";
  if (report.ell_max)
    out << "# ell_max=" << report.ell_max->first << '/' << report.ell_max->second << "\n";
  if (!report.conj4_ratio_min.empty())
    out << "# conj4_ratio_min=" << report.conj4_ratio_min << "\n";
  out << "# conj5_failures=";
  for (std::size_t i = 0; i < report.conj5_failures.size(); ++i)
    out << (i ? " " : "") << report.conj5_failures[i];
  out << "\n";
  return out.str();
}

}  // namespace ruzsa
