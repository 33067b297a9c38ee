#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "ruzsa/constructions.hpp"
#include "ruzsa/residue_set.hpp"

namespace ruzsa {

// Construction trace steps. Parameters are complete enough to replay each
// step deterministically, so a certificate can be re-derived from scratch.
struct Lemma2BaseStep {
  std::uint32_t m = 0;
};

struct SearchedBaseStep {
  std::uint32_t p = 0;
  std::uint64_t seed = 0;
  std::uint64_t budget = 0;
  std::uint32_t target_bound = 0;
  std::uint32_t achieved_max = 0;
};

struct ImportedBaseStep {
  std::string source;
  std::uint32_t modulus = 0;
  std::vector<std::uint32_t> elements;
};

struct LiftStep {
  std::uint32_t m1 = 0;
  std::uint32_t r = 0;
  std::uint32_t m2 = 0;
};

using TraceStep = std::variant<Lemma2BaseStep, SearchedBaseStep, ImportedBaseStep, LiftStep>;

// A self-contained witness that some A in Z_m has 1 <= sigma(n) <= bound.
// The sigma fields are always recomputed from the element list, never
// copied from a claim.
struct BasisCertificate {
  std::uint32_t m = 0;
  std::vector<std::uint32_t> elements;
  std::uint32_t sigma_min = 0;
  std::uint32_t sigma_max = 0;
  std::uint32_t claimed_bound = 0;
  std::vector<TraceStep> trace;

  ResidueSet set() const { return ResidueSet(m, elements); }
};

inline nlohmann::json trace_step_to_json(const TraceStep& step) {
  nlohmann::json j;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Lemma2BaseStep>) {
          j = {{"kind", "lemma2-base"}, {"m", s.m}};
        } else if constexpr (std::is_same_v<T, SearchedBaseStep>) {
          j = {{"kind", "searched-base"}, {"p", s.p},           {"seed", s.seed},
               {"budget", s.budget},     {"target_bound", s.target_bound},
               {"achieved_max", s.achieved_max}};
        } else if constexpr (std::is_same_v<T, ImportedBaseStep>) {
          j = {{"kind", "imported-base"},
               {"source", s.source},
               {"modulus", s.modulus},
               {"elements", s.elements}};
        } else {
          j = {{"kind", "lift"}, {"m1", s.m1}, {"r", s.r}, {"m2", s.m2}};
        }
      },
      step);
  return j;
}

inline TraceStep trace_step_from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "lemma2-base") {
    Lemma2BaseStep s;
    s.m = j.at("m").get<std::uint32_t>();
    return s;
  }
  if (kind == "searched-base") {
    SearchedBaseStep s;
    s.p = j.at("p").get<std::uint32_t>();
    s.seed = j.at("seed").get<std::uint64_t>();
    s.budget = j.at("budget").get<std::uint64_t>();
    s.target_bound = j.at("target_bound").get<std::uint32_t>();
    s.achieved_max = j.at("achieved_max").get<std::uint32_t>();
    return s;
  }
  if (kind == "imported-base") {
    ImportedBaseStep s;
    s.source = j.at("source").get<std::string>();
    s.modulus = j.at("modulus").get<std::uint32_t>();
    s.elements = j.at("elements").get<std::vector<std::uint32_t>>();
    return s;
  }
  if (kind == "lift") {
    LiftStep s;
    s.m1 = j.at("m1").get<std::uint32_t>();
    s.r = j.at("r").get<std::uint32_t>();
    s.m2 = j.at("m2").get<std::uint32_t>();
    return s;
  }
  throw std::invalid_argument("certificate: unknown trace step kind '" + kind + "'");
}

inline nlohmann::json certificate_to_json(const BasisCertificate& cert) {
  nlohmann::json j;
  j["version"] = 1;
  j["m"] = cert.m;
  j["elements"] = cert.elements;
  j["sigma_min"] = cert.sigma_min;
  j["sigma_max"] = cert.sigma_max;
  j["claimed_bound"] = cert.claimed_bound;
  j["trace"] = nlohmann::json::array();
  for (const auto& step : cert.trace) j["trace"].push_back(trace_step_to_json(step));
  return j;
}

inline BasisCertificate certificate_from_json(const nlohmann::json& j) {
  if (j.at("version").get<int>() != 1)
    throw std::invalid_argument("certificate: unsupported version");
  BasisCertificate cert;
  cert.m = j.at("m").get<std::uint32_t>();
  cert.elements = j.at("elements").get<std::vector<std::uint32_t>>();
  cert.sigma_min = j.at("sigma_min").get<std::uint32_t>();
  cert.sigma_max = j.at("sigma_max").get<std::uint32_t>();
  cert.claimed_bound = j.at("claimed_bound").get<std::uint32_t>();
  for (const auto& step : j.at("trace")) cert.trace.push_back(trace_step_from_json(step));
  return cert;
}

// Base-set providers for the theorem1_basis pipeline. The search provider stands
// in for the cited external Z_{2p^2} construction; the import provider lets
// a known set be supplied from a file.
struct SearchProvider {
  std::uint64_t seed = 1;
  std::uint64_t budget = 64;
  std::uint32_t target_bound = 48;
};

struct ImportProvider {
  std::string source;  // identifier recorded in the trace (e.g. file path)
  ResidueSet set{1};
};

using BaseProvider = std::variant<SearchProvider, ImportProvider>;

struct ProviderFailure : std::runtime_error {
  std::uint32_t best_achieved_max;
  ProviderFailure(const std::string& what, std::uint32_t best)
      : std::runtime_error(what), best_achieved_max(best) {}
};

// Builds a certificate for Z_m: the small fixed set for m <= 4356, otherwise
// a provider base over Z_{2p^2} lifted by r = m - 2p^2. Bounds are recomputed
// from the final element list before the certificate is emitted.
inline BasisCertificate theorem1_basis(std::uint64_t m, const BaseProvider& provider) {
  if (m < 1) throw std::invalid_argument("theorem1_basis: need m >= 1");
  BasisCertificate cert;

  if (m <= 4356) {
    const ResidueSet a = base_set_small(static_cast<std::uint32_t>(m));
    cert.m = static_cast<std::uint32_t>(m);
    cert.elements = a.elements();
    cert.claimed_bound = 132;
    cert.trace.push_back(Lemma2BaseStep{cert.m});
  } else {
    const std::uint32_t p = choose_prime(m);
    const std::uint32_t m1 = 2 * p * p;
    const std::uint32_t r = static_cast<std::uint32_t>(m - m1);  // p^2 <= r < 2p^2

    ResidueSet base{1};
    if (const auto* sp = std::get_if<SearchProvider>(&provider)) {
      BaseSearchResult res = search_base_2p2(p, sp->target_bound, sp->seed, sp->budget);
      if (!res.found)
        throw ProviderFailure("theorem1_basis: base search failed for p=" + std::to_string(p) +
                                  " (best max sigma " + std::to_string(res.achieved_max) + ")",
                              res.achieved_max);
      base = res.set;
      cert.trace.push_back(SearchedBaseStep{p, sp->seed, sp->budget, sp->target_bound,
                                            res.achieved_max});
    } else {
      const auto& ip = std::get<ImportProvider>(provider);
      if (ip.set.modulus() != m1)
        throw std::invalid_argument("theorem1_basis: imported base is over Z_" +
                                    std::to_string(ip.set.modulus()) + ", pipeline needs Z_" +
                                    std::to_string(m1));
      base = ip.set;
      cert.trace.push_back(ImportedBaseStep{ip.source, m1, base.elements()});
    }

    const RepProfile base_profile = sigma_profile(base);
    if (base_profile.min_sigma < 1)
      throw std::invalid_argument("theorem1_basis: provider base does not cover Z_{2p^2}");
    const ResidueSet lifted = lift(base, r);
    cert.m = static_cast<std::uint32_t>(m);
    cert.elements = lifted.elements();
    cert.claimed_bound = 4 * base_profile.max_sigma;
    cert.trace.push_back(LiftStep{m1, r, cert.m});
  }

  const RepProfile profile = sigma_profile(cert.set());
  cert.sigma_min = profile.min_sigma;
  cert.sigma_max = profile.max_sigma;
  if (cert.sigma_min < 1 || cert.sigma_max > cert.claimed_bound)
    throw std::logic_error("theorem1_basis: recomputed sigma violates the claimed bound");
  return cert;
}

struct VerifyResult {
  bool ok = false;
  std::string reason;  // empty when ok
  explicit operator bool() const { return ok; }
};

// Replays the trace and compares against the recorded elements.
inline VerifyResult replay_trace(const BasisCertificate& cert, ResidueSet& out) {
  ResidueSet current{1};
  bool have = false;
  for (const auto& step : cert.trace) {
    if (const auto* s = std::get_if<Lemma2BaseStep>(&step)) {
      if (have) return {false, "lemma2-base step after a base step"};
      current = base_set_small(s->m);
      have = true;
    } else if (const auto* sb = std::get_if<SearchedBaseStep>(&step)) {
      if (have) return {false, "searched-base step after a base step"};
      BaseSearchResult res = search_base_2p2(sb->p, sb->target_bound, sb->seed, sb->budget);
      if (!res.found) return {false, "searched-base replay failed"};
      if (res.achieved_max != sb->achieved_max)
        return {false, "searched-base replay achieved a different max sigma"};
      current = res.set;
      have = true;
    } else if (const auto* ib = std::get_if<ImportedBaseStep>(&step)) {
      if (have) return {false, "imported-base step after a base step"};
      current = ResidueSet(ib->modulus, ib->elements);
      have = true;
    } else {
      const auto& ls = std::get<LiftStep>(step);
      if (!have) return {false, "lift step with no base"};
      if (current.modulus() != ls.m1) return {false, "lift step modulus mismatch"};
      current = lift(current, ls.r);
      if (current.modulus() != ls.m2) return {false, "lift step target modulus mismatch"};
    }
  }
  if (!have) return {false, "empty trace"};
  out = current;
  return {true, {}};
}

inline VerifyResult verify_certificate(const BasisCertificate& cert) {
  if (cert.m < 1) return {false, "modulus must be positive"};
  ResidueSet set{1};
  try {
    set = cert.set();
  } catch (const std::exception& e) {
    return {false, std::string("bad element list: ") + e.what()};
  }
  if (set.elements() != cert.elements) return {false, "elements not sorted/reduced/unique"};

  const RepProfile profile = sigma_profile(set);
  if (profile.min_sigma < 1) return {false, "coverage failure: some residue has sigma = 0"};
  if (profile.min_sigma != cert.sigma_min) return {false, "stored sigma_min does not match"};
  if (profile.max_sigma != cert.sigma_max) return {false, "stored sigma_max does not match"};
  if (profile.max_sigma > cert.claimed_bound)
    return {false, "recomputed sigma_max exceeds claimed_bound"};

  ResidueSet replayed{1};
  VerifyResult r = replay_trace(cert, replayed);
  if (!r.ok) return r;
  if (replayed.modulus() != cert.m || replayed.elements() != cert.elements)
    return {false, "trace replay does not reproduce the element list"};
  return {true, {}};
}

}  // namespace ruzsa
