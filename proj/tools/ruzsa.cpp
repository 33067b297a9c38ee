#include <chrono>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ruzsa/certificate.hpp"
#include "ruzsa/conjecture_scan.hpp"
#include "ruzsa/constructions.hpp"
#include "ruzsa/exact_solver.hpp"
#include "ruzsa/prime_tools.hpp"
#include "ruzsa/residue_set.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

void echo_config(const std::string& line, bool timestamp) {
  std::cerr << "# config: " << line << "\n";
  if (timestamp) {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[64];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    std::cerr << "# time: " << buf << "\n";
  }
}

int cmd_construct(std::uint64_t m, std::uint64_t seed, std::uint64_t budget,
                  const std::string& base_file, const std::string& out_path) {
  ruzsa::BaseProvider provider = ruzsa::SearchProvider{seed, budget, 48};
  if (!base_file.empty()) {
    std::ifstream in(base_file);
    if (!in) {
      std::cerr << "construct: cannot open base file '" << base_file << "'\n";
      return kExitUsage;
    }
    provider = ruzsa::ImportProvider{base_file, ruzsa::import_base(in)};
  }
  ruzsa::BasisCertificate cert;
  try {
    cert = ruzsa::theorem1_basis(m, provider);
  } catch (const ruzsa::ProviderFailure& e) {
    std::cerr << "construct: " << e.what() << "\n";
    return kExitBudget;
  }
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "construct: cannot write '" << out_path << "'\n";
    return kExitUsage;
  }
  out << ruzsa::certificate_to_json(cert).dump(2) << "\n";
  std::cout << "m=" << cert.m << " size=" << cert.elements.size()
            << " sigma_min=" << cert.sigma_min << " sigma_max=" << cert.sigma_max
            << " claimed_bound=" << cert.claimed_bound << " out=" << out_path << "\n";
  return kExitOk;
}

int cmd_verify(const std::string& cert_path) {
  std::ifstream in(cert_path);
  if (!in) {
    std::cerr << "verify: cannot open '" << cert_path << "'\n";
    return kExitUsage;
  }
  nlohmann::json j;
  ruzsa::BasisCertificate cert;
  try {
    in >> j;
    cert = ruzsa::certificate_from_json(j);
  } catch (const std::exception& e) {
    std::cerr << "verify: malformed certificate: " << e.what() << "\n";
    return kExitVerifyFail;
  }
  const ruzsa::VerifyResult r = ruzsa::verify_certificate(cert);
  if (!r.ok) {
    std::cout << "FAIL m=" << cert.m << " reason=\"" << r.reason << "\"\n";
    return kExitVerifyFail;
  }
  std::cout << "OK m=" << cert.m << " sigma_min=" << cert.sigma_min
            << " sigma_max=" << cert.sigma_max << " claimed_bound=" << cert.claimed_bound << "\n";
  return kExitOk;
}

int cmd_exact(std::uint32_t m, std::uint64_t budget, bool oracle) {
  ruzsa::ExactResult res = oracle ? ruzsa::oracle_ruzsa(m) : ruzsa::exact_ruzsa(m, budget);
  if (res.status == ruzsa::SolveStatus::Bounded) {
    std::cout << "m=" << m << " r_m_status=bounded r_lower=" << res.r_lower
              << " nodes=" << res.nodes_explored << "\n";
    return kExitBudget;
  }
  std::cout << "m=" << m << " r_m_status=exact r_m=" << res.r_m
            << " witness=\"" << res.witness.to_text() << "\" nodes=" << res.nodes_explored
            << "\n";
  return kExitOk;
}

int cmd_cover(std::uint32_t m) {
  ruzsa::CoverResult res = ruzsa::min_cover(m);
  if (res.status == ruzsa::SolveStatus::Bounded) {
    std::cout << "m=" << m << " c_m_status=bounded c_lower=" << res.c_m << "\n";
    return kExitBudget;
  }
  std::cout << "m=" << m << " c_m=" << res.c_m << " ell=" << res.ell_num << "/" << res.ell_den
            << " witness=\"" << res.witness.to_text() << "\"\n";
  return kExitOk;
}

int cmd_kmin(std::uint32_t m) {
  ruzsa::ExactResult er = ruzsa::exact_ruzsa(m);
  if (er.status == ruzsa::SolveStatus::Bounded) {
    std::cout << "m=" << m << " r_m_status=bounded r_lower=" << er.r_lower << "\n";
    return kExitBudget;
  }
  ruzsa::KResult res = ruzsa::k_min(m, er.r_m);
  if (res.status == ruzsa::SolveStatus::Bounded) {
    std::cout << "m=" << m << " k_m_status=bounded k_lower=" << res.k_m << "\n";
    return kExitBudget;
  }
  std::cout << "m=" << m << " r_m=" << er.r_m << " k_m=" << res.k_m
            << " witness=\"" << res.witness.to_text() << "\"\n";
  return kExitOk;
}

int cmd_scan(std::uint32_t from, std::uint32_t to, unsigned jobs, std::uint64_t budget,
             const std::string& out_path) {
  const ruzsa::ConjectureReport report = ruzsa::scan(from, to, budget, jobs);
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "scan: cannot write '" << out_path << "'\n";
    return kExitUsage;
  }
  out << ruzsa::report_to_csv(report);
  bool any_unknown = false;
  for (const auto& row : report.rows)
    if (!row.r_m) any_unknown = true;
  std::cout << "rows=" << report.rows.size() << " adjacent_equal_pairs="
            << report.adjacent_equal_pairs << " out=" << out_path << "\n";
  return any_unknown ? kExitBudget : kExitOk;
}

int cmd_lemma2(bool all, std::uint32_t m) {
  auto check = [](std::uint32_t mm) {
    const ruzsa::RepProfile p = ruzsa::sigma_profile(ruzsa::base_set_small(mm));
    return p.min_sigma >= 1 && p.max_sigma <= 132;
  };
  if (all) {
    for (std::uint32_t mm = 1; mm <= 4356; ++mm)
      if (!check(mm)) {
        std::cout << "FAIL m=" << mm << "\n";
        return kExitVerifyFail;
      }
    std::cout << "OK m_range=[1,4356] bound=132\n";
    return kExitOk;
  }
  if (!check(m)) {
    std::cout << "FAIL m=" << m << "\n";
    return kExitVerifyFail;
  }
  std::cout << "OK m=" << m << " bound=132\n";
  return kExitOk;
}

int cmd_lemma3(std::uint64_t from, std::uint64_t to) {
  const ruzsa::Lemma3Report report = ruzsa::verify_lemma3_range(from, to);
  for (const auto& seg : report.segments)
    std::cout << "x_range=[" << seg.x_lo << "," << seg.x_hi << "] status="
              << (seg.ok ? "OK" : "FAIL") << " witness_pair=(" << seg.q << "," << seg.q_next
              << ")\n";
  std::cout << (report.ok ? "OK" : "FAIL") << " x_range=[" << from << "," << to << "]\n";
  return report.ok ? kExitOk : kExitVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bounded-representation additive bases of Z_m: constructions, certificates and exact solvers"};
  app.require_subcommand(1);
  bool no_timestamp = false;
  app.add_flag("--no-timestamp", no_timestamp, "omit the timestamp line from the config echo");

  auto* construct = app.add_subcommand("construct", "build a certified basis of Z_m");
  std::uint64_t c_m = 0, c_seed = 1, c_budget = 64;
  std::string c_base, c_out;
  construct->add_option("--m", c_m, "modulus")->required();
  construct->add_option("--seed", c_seed, "search seed");
  construct->add_option("--budget", c_budget, "search attempts");
  construct->add_option("--base-file", c_base, "import the Z_{2p^2} base from a file");
  construct->add_option("--out", c_out, "certificate output path")->required();

  auto* verify = app.add_subcommand("verify", "re-verify a certificate from scratch");
  std::string v_cert;
  verify->add_option("--cert", v_cert, "certificate path")->required();

  auto* exact = app.add_subcommand("exact", "exact Ruzsa number R_m");
  std::uint32_t e_m = 0;
  std::uint64_t e_budget = ruzsa::kDefaultNodeBudget;
  bool e_oracle = false;
  exact->add_option("--m", e_m, "modulus")->required();
  exact->add_option("--budget", e_budget, "node budget");
  exact->add_flag("--oracle", e_oracle, "use the exhaustive reference solver (m <= 18)");

  auto* cover = app.add_subcommand("cover", "minimal basis size c(m) and ell_m");
  std::uint32_t cv_m = 0;
  cover->add_option("--m", cv_m, "modulus")->required();

  auto* kmin = app.add_subcommand("kmin", "minimal size K_m among optimal-bound sets");
  std::uint32_t k_m = 0;
  kmin->add_option("--m", k_m, "modulus")->required();

  auto* scan = app.add_subcommand("scan", "conjecture evidence table over a range of moduli");
  std::uint32_t s_from = 0, s_to = 0;
  unsigned s_jobs = 1;
  std::uint64_t s_budget = ruzsa::kDefaultNodeBudget;
  std::string s_out;
  scan->add_option("--from", s_from, "first modulus")->required();
  scan->add_option("--to", s_to, "last modulus")->required();
  scan->add_option("--jobs", s_jobs, "parallel row workers");
  scan->add_option("--budget", s_budget, "per-row node budget");
  scan->add_option("--out", s_out, "CSV output path")->required();

  auto* lemma2 = app.add_subcommand("lemma2", "check the small fixed base set");
  bool l2_all = false;
  std::uint32_t l2_m = 0;
  lemma2->add_flag("--all", l2_all, "sweep every m in [1, 4356]");
  lemma2->add_option("--m", l2_m, "single modulus");

  auto* lemma3 = app.add_subcommand("lemma3", "exact prime-gap interval check");
  std::uint64_t l3_from = 33, l3_to = 1242;
  lemma3->add_option("--from", l3_from, "lower end of the x range")->required();
  lemma3->add_option("--to", l3_to, "upper end of the x range")->required();

  auto* pan = app.add_subcommand("panaitopol", "the analytic inequality behind the prime-gap lemma");
  double p_x = 0;
  std::vector<double> p_grid;
  pan->add_option("--x", p_x, "evaluate at a single point");
  pan->add_option("--grid", p_grid, "LO HI STEPS: monotonicity evidence on a grid")->expected(3);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (construct->parsed()) {
      echo_config("construct m=" + std::to_string(c_m) + " seed=" + std::to_string(c_seed) +
                      " budget=" + std::to_string(c_budget) + " base_file=" +
                      (c_base.empty() ? "<search>" : c_base) + " out=" + c_out,
                  !no_timestamp);
      return cmd_construct(c_m, c_seed, c_budget, c_base, c_out);
    }
    if (verify->parsed()) {
      echo_config("verify cert=" + v_cert, !no_timestamp);
      return cmd_verify(v_cert);
    }
    if (exact->parsed()) {
      echo_config("exact m=" + std::to_string(e_m) + " budget=" + std::to_string(e_budget) +
                      " oracle=" + (e_oracle ? "true" : "false"),
                  !no_timestamp);
      return cmd_exact(e_m, e_budget, e_oracle);
    }
    if (cover->parsed()) {
      echo_config("cover m=" + std::to_string(cv_m), !no_timestamp);
      return cmd_cover(cv_m);
    }
    if (kmin->parsed()) {
      echo_config("kmin m=" + std::to_string(k_m), !no_timestamp);
      return cmd_kmin(k_m);
    }
    if (scan->parsed()) {
      echo_config("scan from=" + std::to_string(s_from) + " to=" + std::to_string(s_to) +
                      " jobs=" + std::to_string(s_jobs) + " budget=" + std::to_string(s_budget) +
                      " out=" + s_out,
                  !no_timestamp);
      return cmd_scan(s_from, s_to, s_jobs, s_budget, s_out);
    }
    if (lemma2->parsed()) {
      if (l2_all == (l2_m != 0)) {
        std::cerr << "lemma2: pass exactly one of --all or --m\n";
        return kExitUsage;
      }
      echo_config(std::string("lemma2 ") + (l2_all ? "all" : "m=" + std::to_string(l2_m)),
                  !no_timestamp);
      return cmd_lemma2(l2_all, l2_m);
    }
    if (lemma3->parsed()) {
      echo_config("lemma3 from=" + std::to_string(l3_from) + " to=" + std::to_string(l3_to),
                  !no_timestamp);
      return cmd_lemma3(l3_from, l3_to);
    }
    if (pan->parsed()) {
      if ((p_x != 0) == !p_grid.empty()) {
        std::cerr << "panaitopol: pass exactly one of --x or --grid\n";
        return kExitUsage;
      }
      if (p_x != 0) {
        echo_config("panaitopol x=" + std::to_string(p_x), !no_timestamp);
        const bool ok = ruzsa::panaitopol_inequality_check(p_x);
        std::cout << "x=" << p_x << " lhs=" << ruzsa::panaitopol_lhs(p_x)
                  << " rhs=" << ruzsa::panaitopol_rhs(p_x) << " holds="
                  << (ok ? "true" : "false") << "\n";
        return kExitOk;
      }
      const int steps = static_cast<int>(p_grid[2]);
      echo_config("panaitopol grid=[" + std::to_string(p_grid[0]) + "," +
                      std::to_string(p_grid[1]) + "] steps=" + std::to_string(steps),
                  !no_timestamp);
      const bool mono = ruzsa::panaitopol_monotone_check(p_grid[0], p_grid[1], steps);
      std::cout << "grid=[" << p_grid[0] << "," << p_grid[1] << "] steps=" << steps
                << " nondecreasing=" << (mono ? "true" : "false") << "\n";
      return kExitOk;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerifyFail;
  }
  return kExitUsage;
}
