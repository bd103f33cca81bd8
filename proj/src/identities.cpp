#include "odious/identities.hpp"

#include <array>
#include <cmath>
#include <cstdlib>

#include "odious/census.hpp"
#include "odious/prime_census.hpp"

namespace odious {

namespace {

constexpr std::array<std::string_view, 10> kIdentityNames = {
    "EQ6",  "LEMMA1", "EQ8",           "EQ9_LOWER",       "EQ9_UPPER",
    "EQ11", "EQ12",   "EQ13_ODD_POWER", "EQ13_EVEN_POWER", "PRIME_DECOMP",
};

IdentityReport make_report(IdentityId id, std::uint64_t n, ReportValue lhs, ReportValue rhs,
                           bool passed, bool include_zero = true) {
  return IdentityReport{id, n, lhs, rhs, passed, include_zero};
}

// Sum of the odd odious excesses over the three residues.
std::int64_t delta_n(std::uint64_t n) {
  const auto odd = census_fast(n, true);
  return odd.excess(Residue3(0)) + odd.excess(Residue3(1)) + odd.excess(Residue3(2));
}

std::int64_t pow3(unsigned e) {
  std::int64_t v = 1;
  for (unsigned j = 0; j < e; ++j) v *= 3;
  return v;
}

}  // namespace

std::string_view to_string(IdentityId id) noexcept {
  return kIdentityNames[static_cast<std::size_t>(id)];
}

std::optional<IdentityId> identity_from_string(std::string_view name) noexcept {
  for (std::size_t j = 0; j < kIdentityNames.size(); ++j) {
    if (kIdentityNames[j] == name) return static_cast<IdentityId>(j);
  }
  return std::nullopt;
}

std::vector<IdentityReport> verify_eq6(std::uint64_t m_max) {
  std::vector<IdentityReport> out;
  out.reserve(m_max);
  for (std::uint64_t m = 1; m <= m_max; ++m) {
    const std::uint64_t n = 4 * m + 1;
    const std::int64_t lhs = mu_excess(n);
    out.push_back(make_report(IdentityId::EQ6, n, lhs, std::int64_t{0}, lhs == 0));
  }
  return out;
}

std::vector<IdentityReport> verify_lemma1(std::uint64_t n_max) {
  std::vector<IdentityReport> out;
  out.reserve(n_max + 1);
  for (std::uint64_t n = 0; n <= n_max; ++n) {
    const std::int64_t lhs = std::llabs(mu_excess(n));
    out.push_back(make_report(IdentityId::LEMMA1, n, lhs, std::int64_t{1}, lhs <= 1));
  }
  return out;
}

IdentityReport verify_eq8(std::uint64_t n, bool include_zero) {
  if (n % 2 != 0 || n < 2) throw OddInputRejected("verify_eq8 requires an even n >= 2");
  const std::int64_t lhs = delta_3_i(n, Residue3(1), true, include_zero);
  const std::int64_t rhs = delta_3(n / 2, include_zero);
  return make_report(IdentityId::EQ8, n, lhs, rhs, lhs == rhs, include_zero);
}

std::vector<IdentityReport> verify_eq9(std::uint64_t n_max, bool include_zero) {
  const double a = alpha();
  const double scale = std::pow(3.0, a);
  std::vector<IdentityReport> out;
  out.reserve(2 * n_max);
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    const std::int64_t d = delta_3(n, include_zero);
    const double growth = std::pow(static_cast<double>(n), a);
    const double lower = 0.05 * scale * growth;
    const double upper = 5.0 * scale * growth;
    const auto dd = static_cast<double>(d);
    out.push_back(make_report(IdentityId::EQ9_LOWER, n, lower, d, lower <= dd, include_zero));
    out.push_back(make_report(IdentityId::EQ9_UPPER, n, d, upper, dd <= upper, include_zero));
  }
  return out;
}

std::vector<IdentityReport> verify_eq11(std::uint64_t n_max) {
  std::vector<IdentityReport> out;
  out.reserve(n_max);
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    const std::int64_t d = delta_n(n);
    out.push_back(make_report(IdentityId::EQ11, n, d, std::int64_t{1}, std::llabs(d) <= 1));
  }
  return out;
}

IdentityReport verify_eq12(std::uint64_t n, bool include_zero) {
  if (n % 2 != 0 || n < 2) throw OddInputRejected("verify_eq12 requires an even n >= 2");
  const auto odd = census_fast(n, true);
  const std::int64_t lhs = odd.excess(Residue3(2));
  const std::int64_t odd_total = -odd.excess(Residue3(0));
  const std::int64_t dn = odd.excess(Residue3(0)) + odd.excess(Residue3(1)) + lhs;
  const std::int64_t rhs = odd_total - delta_3(n / 2, include_zero) + dn;
  return make_report(IdentityId::EQ12, n, lhs, rhs, lhs == rhs, include_zero);
}

std::vector<IdentityReport> verify_eq13(unsigned k_max) {
  if (k_max < 2 || k_max > 31) {
    throw std::invalid_argument("verify_eq13: k_max must lie in [2, 31]");
  }
  std::vector<IdentityReport> out;
  for (unsigned k = 2; k <= k_max; ++k) {
    const std::uint64_t odd_power = std::uint64_t{1} << (2 * k - 1);
    const std::uint64_t even_power = std::uint64_t{1} << (2 * k);
    const std::int64_t a = delta_3_i(odd_power, Residue3(2), true);
    const std::int64_t b = delta_3_i(even_power, Residue3(2), true);
    const std::int64_t expected = -pow3(k - 2);
    out.push_back(make_report(IdentityId::EQ13_ODD_POWER, odd_power, a, expected, a == expected));
    out.push_back(make_report(IdentityId::EQ13_EVEN_POWER, even_power, b, std::int64_t{0}, b == 0));
  }
  return out;
}

std::vector<IdentityReport> eq13_base_case() {
  std::vector<IdentityReport> out;
  const std::int64_t a = delta_3_i(2, Residue3(2), true);
  const std::int64_t b = delta_3_i(4, Residue3(2), true);
  out.push_back(make_report(IdentityId::EQ13_ODD_POWER, 2, a, -1.0 / 3.0, false));
  out.push_back(make_report(IdentityId::EQ13_EVEN_POWER, 4, b, std::int64_t{0}, b == 0));
  return out;
}

std::vector<IdentityReport> verify_prime_decomposition(std::span<const Checkpoint> checkpoints) {
  std::vector<IdentityReport> out;
  for (const auto& cp : checkpoints) {
    if (cp.n <= 3) continue;
    const auto& c = cp.counters;
    const std::int64_t lhs = static_cast<std::int64_t>(c.pi_odious) - static_cast<std::int64_t>(c.pi_evil);
    const std::int64_t rhs = c.delta_primes_31() + c.delta_primes_32();
    out.push_back(make_report(IdentityId::PRIME_DECOMP, cp.n, lhs, rhs, lhs == rhs));
  }
  return out;
}

std::vector<IdentityReport> sweep_eq8(std::uint64_t n_max, bool include_zero) {
  std::vector<IdentityReport> out;
  out.reserve(n_max / 2);
  for (std::uint64_t n = 2; n <= n_max; n += 2) out.push_back(verify_eq8(n, include_zero));
  return out;
}

std::vector<IdentityReport> sweep_eq12(std::uint64_t n_max, bool include_zero) {
  std::vector<IdentityReport> out;
  out.reserve(n_max / 2);
  for (std::uint64_t n = 2; n <= n_max; n += 2) out.push_back(verify_eq12(n, include_zero));
  return out;
}

}  // namespace odious
