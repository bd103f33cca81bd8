#pragma once

// Test-only reference computations. Nothing here calls into the digit
// automaton or the segmented sieve.

#include <array>
#include <cstdint>
#include <vector>

namespace oracle {

inline int bit_parity(std::uint64_t m) {
  int p = 0;
  for (; m != 0; m >>= 1) p ^= static_cast<int>(m & 1U);
  return p;
}

inline bool is_prime(std::uint64_t m) {
  if (m < 2) return false;
  for (std::uint64_t d = 2; d * d <= m; ++d) {
    if (m % d == 0) return false;
  }
  return true;
}

/// Running enumeration of [0, n) or odd m in [0, n); advance(n) extends the
/// covered range to [0, n) one integer at a time.
class RunningCensus {
 public:
  RunningCensus(bool odd_only, bool include_zero) : odd_only_(odd_only), include_zero_(include_zero) {}

  void advance_to(std::uint64_t n) {
    for (; next_ < n; ++next_) {
      if (next_ == 0 && !include_zero_) continue;
      if (odd_only_ && next_ % 2 == 0) continue;
      counts_[next_ % 3][bit_parity(next_)] += 1;
    }
  }

  /// counts[residue][parity], parity 1 = odious.
  const std::array<std::array<std::uint64_t, 2>, 3>& counts() const { return counts_; }

  std::int64_t odious_excess(unsigned residue) const {
    return static_cast<std::int64_t>(counts_[residue][1]) - static_cast<std::int64_t>(counts_[residue][0]);
  }

 private:
  bool odd_only_;
  bool include_zero_;
  std::uint64_t next_ = 0;
  std::array<std::array<std::uint64_t, 2>, 3> counts_{};
};

}  // namespace oracle
