#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ruzsa {

// A finite subset of Z_m together with its modulus. Elements are kept
// reduced to [0, m-1], deduplicated and sorted ascending. Immutable after
// construction; all operations below return new values.
class ResidueSet {
public:
  explicit ResidueSet(std::uint32_t modulus) : m_(checked(modulus)) {}

  ResidueSet(std::uint32_t modulus, const std::vector<std::int64_t>& raw)
      : m_(checked(modulus)) {
    elems_.reserve(raw.size());
    for (std::int64_t v : raw) elems_.push_back(reduce(v, m_));
    normalize();
  }

  ResidueSet(std::uint32_t modulus, std::vector<std::uint32_t> reduced_sorted)
      : m_(checked(modulus)), elems_(std::move(reduced_sorted)) {
    for (auto& e : elems_) e %= m_;
    normalize();
  }

  std::uint32_t modulus() const { return m_; }
  const std::vector<std::uint32_t>& elements() const { return elems_; }
  std::size_t size() const { return elems_.size(); }
  bool empty() const { return elems_.empty(); }

  bool contains(std::uint32_t e) const {
    return std::binary_search(elems_.begin(), elems_.end(), e % m_);
  }

  bool operator==(const ResidueSet&) const = default;

  // Textual form: first token m, then the sorted elements,
  // whitespace-separated; e.g. "5 0 1 2".
  static ResidueSet parse(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string tok;
    if (!(in >> tok)) throw std::invalid_argument("residue set: empty input");
    std::uint32_t m = parse_token_u32(tok, 0);
    if (m == 0) throw std::invalid_argument("residue set: modulus must be positive");
    std::vector<std::int64_t> vals;
    std::size_t pos = 1;
    while (in >> tok) vals.push_back(parse_token_i64(tok, pos++));
    return ResidueSet(m, vals);
  }

  std::string to_text() const {
    std::ostringstream out;
    out << m_;
    for (auto e : elems_) out << ' ' << e;
    return out.str();
  }

  static std::uint32_t reduce(std::int64_t v, std::uint32_t m) {
    std::int64_t r = v % static_cast<std::int64_t>(m);
    if (r < 0) r += m;
    return static_cast<std::uint32_t>(r);
  }

private:
  static std::uint32_t checked(std::uint32_t m) {
    if (m == 0) throw std::invalid_argument("modulus must be positive");
    return m;
  }

  static std::uint32_t parse_token_u32(const std::string& tok, std::size_t pos) {
    return static_cast<std::uint32_t>(parse_token_i64(tok, pos));
  }

  static std::int64_t parse_token_i64(const std::string& tok, std::size_t pos) {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("residue set: bad token '" + tok + "' at position " +
                                  std::to_string(pos));
    }
    if (used != tok.size())
      throw std::invalid_argument("residue set: trailing garbage in token '" + tok +
                                  "' at position " + std::to_string(pos));
    return v;
  }

  void normalize() {
    std::sort(elems_.begin(), elems_.end());
    elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
  }

  std::uint32_t m_;
  std::vector<std::uint32_t> elems_;
};

// The full vector (sigma(n))_{n in Z_m} with summary statistics.
// total == |A|*|B| always: every ordered pair lands on exactly one residue.
struct RepProfile {
  std::uint32_t modulus = 1;
  std::vector<std::uint32_t> counts;
  std::uint32_t min_sigma = 0;
  std::uint32_t max_sigma = 0;
  std::uint64_t total = 0;

  static RepProfile from_counts(std::uint32_t m, std::vector<std::uint32_t> counts) {
    RepProfile p;
    p.modulus = m;
    p.counts = std::move(counts);
    p.min_sigma = *std::min_element(p.counts.begin(), p.counts.end());
    p.max_sigma = *std::max_element(p.counts.begin(), p.counts.end());
    p.total = std::accumulate(p.counts.begin(), p.counts.end(), std::uint64_t{0});
    return p;
  }
};

// sigma_{A,B}(n) = #{(x,y) in A x B : x + y == n (mod m)}, ordered pairs.
// Reference kernel: the plain quadratic pair loop.
inline RepProfile sigma_profile_pair(const ResidueSet& a, const ResidueSet& b) {
  if (a.modulus() != b.modulus())
    throw std::invalid_argument("sigma_profile_pair: modulus mismatch");
  const std::uint32_t m = a.modulus();
  std::vector<std::uint32_t> counts(m, 0);
  for (std::uint32_t x : a.elements()) {
    for (std::uint32_t y : b.elements()) {
      std::uint32_t s = x + y;
      if (s >= m) s -= m;
      ++counts[s];
    }
  }
  return RepProfile::from_counts(m, std::move(counts));
}

inline RepProfile sigma_profile(const ResidueSet& a) { return sigma_profile_pair(a, a); }

// Accelerated kernel: sigma(n) = |A cap (n - A)| computed as the popcount of
// the indicator word array ANDed with a rotated copy of its reversal.
// Cross-checked against sigma_profile in tests; the pair loop is the arbiter.
inline RepProfile sigma_profile_bitparallel(const ResidueSet& a) {
  const std::uint32_t m = a.modulus();
  const std::size_t words = (m + 63) / 64;
  std::vector<std::uint64_t> ind(words, 0);
  for (std::uint32_t e : a.elements()) ind[e >> 6] |= std::uint64_t{1} << (e & 63);

  std::vector<std::uint32_t> counts(m, 0);
  std::vector<std::uint64_t> mask(words, 0);
  for (std::uint32_t n = 0; n < m; ++n) {
    std::fill(mask.begin(), mask.end(), 0);
    for (std::uint32_t e : a.elements()) {
      std::uint32_t d = (n >= e) ? n - e : n + m - e;  // n - e mod m
      mask[d >> 6] |= std::uint64_t{1} << (d & 63);
    }
    std::uint32_t c = 0;
    for (std::size_t w = 0; w < words; ++w) c += std::popcount(ind[w] & mask[w]);
    counts[n] = c;
  }
  return RepProfile::from_counts(m, std::move(counts));
}

// A + A == Z_m, i.e. every residue has at least one representation.
inline bool is_basis(const ResidueSet& a) {
  if (a.empty()) return false;
  return sigma_profile(a).min_sigma >= 1;
}

inline ResidueSet translate(const ResidueSet& a, std::int64_t t) {
  const std::uint32_t m = a.modulus();
  const std::uint32_t tt = ResidueSet::reduce(t, m);
  std::vector<std::uint32_t> out;
  out.reserve(a.size());
  for (std::uint32_t e : a.elements()) {
    std::uint32_t s = e + tt;
    if (s >= m) s -= m;
    out.push_back(s);
  }
  return ResidueSet(m, std::move(out));
}

inline ResidueSet dilate(const ResidueSet& a, std::int64_t u) {
  const std::uint32_t m = a.modulus();
  const std::uint32_t uu = ResidueSet::reduce(u, m);
  if (std::gcd(static_cast<std::uint64_t>(uu), static_cast<std::uint64_t>(m)) != 1)
    throw std::invalid_argument("dilate: multiplier is not a unit mod m");
  std::vector<std::uint32_t> out;
  out.reserve(a.size());
  for (std::uint32_t e : a.elements())
    out.push_back(static_cast<std::uint32_t>(
        (static_cast<std::uint64_t>(e) * uu) % m));
  return ResidueSet(m, std::move(out));
}

}  // namespace ruzsa
