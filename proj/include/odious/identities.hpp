#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <variant>
#include <vector>

namespace odious {

struct Checkpoint;

class OddInputRejected : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class IdentityId {
  EQ6,
  LEMMA1,
  EQ8,
  EQ9_LOWER,
  EQ9_UPPER,
  EQ11,
  EQ12,
  EQ13_ODD_POWER,
  EQ13_EVEN_POWER,
  PRIME_DECOMP,
};

std::string_view to_string(IdentityId id) noexcept;
std::optional<IdentityId> identity_from_string(std::string_view name) noexcept;

/// Exact integer, or a real-valued bound.
using ReportValue = std::variant<std::int64_t, double>;

struct IdentityReport {
  IdentityId identity_id{};
  std::uint64_t n = 0;
  ReportValue lhs{std::int64_t{0}};
  ReportValue rhs{std::int64_t{0}};
  bool passed = false;
  bool include_zero = true;

  friend bool operator==(const IdentityReport&, const IdentityReport&) = default;
};

/// mu_excess(4m+1) == 0 for m = 1..m_max.
std::vector<IdentityReport> verify_eq6(std::uint64_t m_max);

/// |mu_excess(n)| <= 1 for n = 0..n_max. lhs = |mu_excess|, rhs = 1.
std::vector<IdentityReport> verify_lemma1(std::uint64_t n_max);

/// Odd odious excess on residue 1 below n equals the evil excess on multiples
/// of 3 below n/2. Throws OddInputRejected when n is odd.
IdentityReport verify_eq8(std::uint64_t n, bool include_zero = true);

/// Two reports per n in [1, n_max]: EQ9_LOWER (lhs = bound, rhs = delta_3)
/// and EQ9_UPPER (lhs = delta_3, rhs = bound). Both pass when lhs <= rhs.
std::vector<IdentityReport> verify_eq9(std::uint64_t n_max, bool include_zero = true);

/// delta_n = sum over residues of the odd odious excess; lhs = delta_n, rhs = 1,
/// passed when |delta_n| <= 1. Covers n = 1..n_max.
std::vector<IdentityReport> verify_eq11(std::uint64_t n_max);

/// Odd residue-2 excess equals the odd evil excess on multiples of 3 below n,
/// minus the evil excess on multiples of 3 below n/2, plus delta_n.
/// Throws OddInputRejected when n is odd.
IdentityReport verify_eq12(std::uint64_t n, bool include_zero = true);

/// For k = 2..k_max: the odd residue-2 excess is -3^(k-2) below 2^(2k-1)
/// and 0 below 2^(2k). Requires 2 <= k_max <= 31.
std::vector<IdentityReport> verify_eq13(unsigned k_max);

/// The k = 1 points (bounds 2 and 4), where the closed form is not integral.
/// rhs is the real value -3^(-1) for the odd power and 0 for the even power.
std::vector<IdentityReport> eq13_base_case();

/// pi_odious - pi_evil == delta_primes_31 + delta_primes_32 at every checkpoint with n > 3.
std::vector<IdentityReport> verify_prime_decomposition(std::span<const Checkpoint> checkpoints);

/// Sweeps over even n in [2, n_max] for the per-point identities.
std::vector<IdentityReport> sweep_eq8(std::uint64_t n_max, bool include_zero = true);
std::vector<IdentityReport> sweep_eq12(std::uint64_t n_max, bool include_zero = true);

}  // namespace odious
