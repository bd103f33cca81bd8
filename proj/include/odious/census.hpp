#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>

#include "odious/errors.hpp"
#include "odious/parity.hpp"

namespace odious {

struct CensusKey {
  Residue3 residue;
  ParityClass parity = ParityClass::Evil;
  bool odd_only = false;
};

/// Counts of m in [0, n) (or [1, n) when zero is excluded), bucketed by
/// residue mod 3 and parity class. A table counts either all integers or only
/// odd ones; the odd_only flag tells which.
class CensusTable {
 public:
  CensusTable() = default;
  CensusTable(std::uint64_t n, bool odd_only, bool include_zero)
      : n_(n), odd_only_(odd_only), include_zero_(include_zero) {}

  std::uint64_t n() const noexcept { return n_; }
  bool odd_only() const noexcept { return odd_only_; }
  bool include_zero() const noexcept { return include_zero_; }

  std::uint64_t count(Residue3 r, ParityClass p) const noexcept {
    return counts_[r.value()][parity_index(p)];
  }
  std::uint64_t& count(Residue3 r, ParityClass p) noexcept {
    return counts_[r.value()][parity_index(p)];
  }

  /// Throws std::invalid_argument if the key's oddness filter differs from the table's.
  std::uint64_t at(const CensusKey& key) const;

  /// (#odious - #evil) in residue class r.
  std::int64_t excess(Residue3 r) const noexcept;

  /// Sum over every bucket.
  std::uint64_t total() const noexcept;

  friend bool operator==(const CensusTable&, const CensusTable&) = default;

 private:
  std::uint64_t n_ = 0;
  bool odd_only_ = false;
  bool include_zero_ = true;
  std::array<std::array<std::uint64_t, 2>, 3> counts_{};
};

/// Counting automaton over the binary digits of a bound, most significant
/// first. A state is (prefix residue mod 3, prefix digit-sum parity); counts
/// are kept per state and per last digit so the oddness filter can be applied
/// after the final digit. Numbers still equal to the bound's prefix are
/// tracked as the single tight state.
class DigitDPAutomaton {
 public:
  static constexpr int kModulus = 3;
  static constexpr int kStates = kModulus * 2;

  static constexpr int state_of(unsigned residue, unsigned parity) noexcept {
    return static_cast<int>(residue * 2 + parity);
  }
  static constexpr unsigned residue_of(int state) noexcept {
    return static_cast<unsigned>(state) / 2;
  }
  static constexpr unsigned parity_of(int state) noexcept {
    return static_cast<unsigned>(state) % 2;
  }

  /// Successor of `state` after appending binary digit `digit`.
  static int next(int state, unsigned digit) noexcept {
    return kTransitions[static_cast<std::size_t>(state)][digit];
  }

  /// Number of m in [0, n) per bucket; asks for both oddness filters at once.
  /// Result index: [last digit][state].
  static std::array<std::array<std::uint64_t, kStates>, 2> count_below(std::uint64_t n) noexcept;

 private:
  static const std::array<std::array<int, 2>, kStates> kTransitions;
};

inline constexpr std::uint64_t kBruteForceLimit = std::uint64_t{1} << 25;

/// Direct enumeration; throws OracleRangeExceeded for n > 2^25.
CensusTable census_bruteforce(std::uint64_t n, bool odd_only, bool include_zero = true);

/// Same contract as census_bruteforce, evaluated with the digit automaton.
CensusTable census_fast(std::uint64_t n, bool odd_only, bool include_zero = true);

/// Evil excess on multiples of 3 in [0, n): (#evil - #odious).
std::int64_t delta_3(std::uint64_t n, bool include_zero = true);

/// Odious excess (#odious - #evil) on {m < n : m = i mod 3}, optionally odd m only.
std::int64_t delta_3_i(std::uint64_t n, Residue3 i, bool odd_only, bool include_zero = true);

/// (#odd odious < n) - (#odd evil < n).
std::int64_t mu_excess(std::uint64_t n);

/// Evil excess on odd multiples of 3 below n.
std::int64_t delta_odd_3_total(std::uint64_t n);

}  // namespace odious
