#include "odious/census.hpp"

#include <bit>
#include <cassert>

namespace odious {

std::uint64_t CensusTable::at(const CensusKey& key) const {
  if (key.odd_only != odd_only_) {
    throw std::invalid_argument("CensusKey oddness filter does not match table");
  }
  return count(key.residue, key.parity);
}

std::int64_t CensusTable::excess(Residue3 r) const noexcept {
  return static_cast<std::int64_t>(count(r, ParityClass::Odious)) -
         static_cast<std::int64_t>(count(r, ParityClass::Evil));
}

std::uint64_t CensusTable::total() const noexcept {
  std::uint64_t sum = 0;
  for (const auto& row : counts_) {
    for (auto c : row) sum += c;
  }
  return sum;
}

namespace {

constexpr std::array<std::array<int, 2>, DigitDPAutomaton::kStates> make_transitions() noexcept {
  std::array<std::array<int, 2>, DigitDPAutomaton::kStates> t{};
  for (int s = 0; s < DigitDPAutomaton::kStates; ++s) {
    for (unsigned d = 0; d < 2; ++d) {
      const unsigned r = (2 * DigitDPAutomaton::residue_of(s) + d) % DigitDPAutomaton::kModulus;
      const unsigned p = DigitDPAutomaton::parity_of(s) ^ d;
      t[static_cast<std::size_t>(s)][d] = DigitDPAutomaton::state_of(r, p);
    }
  }
  return t;
}

}  // namespace

const std::array<std::array<int, 2>, DigitDPAutomaton::kStates> DigitDPAutomaton::kTransitions = make_transitions();

std::array<std::array<std::uint64_t, DigitDPAutomaton::kStates>, 2>
DigitDPAutomaton::count_below(std::uint64_t n) noexcept {
  // free_[last digit][state]: prefixes already strictly below n's prefix.
  std::array<std::array<std::uint64_t, kStates>, 2> free_{};
  int tight = state_of(0, 0);

  const int width = std::bit_width(n);
  for (int k = width - 1; k >= 0; --k) {
    const unsigned digit = static_cast<unsigned>((n >> k) & 1U);

    std::array<std::array<std::uint64_t, kStates>, 2> next_free{};
    for (int last = 0; last < 2; ++last) {
      for (int s = 0; s < kStates; ++s) {
        const std::uint64_t c = free_[static_cast<std::size_t>(last)][static_cast<std::size_t>(s)];
        if (c == 0) continue;
        for (unsigned d = 0; d < 2; ++d) {
          auto& slot = next_free[d][static_cast<std::size_t>(next(s, d))];
          assert(slot <= UINT64_MAX - c);
          slot += c;
        }
      }
    }
    // The tight prefix branching to 0 where n has a 1 drops strictly below n.
    // At the top bit this branch is the all-leading-zeros prefix, so m = 0 is
    // included.
    if (digit == 1) {
      next_free[0][static_cast<std::size_t>(next(tight, 0))] += 1;
    }
    tight = next(tight, digit);
    free_ = next_free;
  }
  return free_;
}

CensusTable census_bruteforce(std::uint64_t n, bool odd_only, bool include_zero) {
  if (n > kBruteForceLimit) {
    throw OracleRangeExceeded("census_bruteforce: n exceeds 2^25");
  }
  CensusTable table(n, odd_only, include_zero);
  for (std::uint64_t m = include_zero ? 0 : 1; m < n; ++m) {
    if (odd_only && m % 2 == 0) continue;
    table.count(residue3(m), parity(m)) += 1;
  }
  return table;
}

CensusTable census_fast(std::uint64_t n, bool odd_only, bool include_zero) {
  CensusTable table(n, odd_only, include_zero);
  if (n == 0) return table;
  const auto counts = DigitDPAutomaton::count_below(n);
  for (int s = 0; s < DigitDPAutomaton::kStates; ++s) {
    const Residue3 r(DigitDPAutomaton::residue_of(s));
    const auto p = static_cast<ParityClass>(DigitDPAutomaton::parity_of(s));
    std::uint64_t c = counts[1][static_cast<std::size_t>(s)];
    if (!odd_only) c += counts[0][static_cast<std::size_t>(s)];
    table.count(r, p) += c;
  }
  if (!include_zero && !odd_only) {
    table.count(Residue3(0), ParityClass::Evil) -= 1;
  }
  return table;
}

std::int64_t delta_3(std::uint64_t n, bool include_zero) {
  return -census_fast(n, false, include_zero).excess(Residue3(0));
}

std::int64_t delta_3_i(std::uint64_t n, Residue3 i, bool odd_only, bool include_zero) {
  return census_fast(n, odd_only, include_zero).excess(i);
}

std::int64_t mu_excess(std::uint64_t n) {
  const auto table = census_fast(n, true);
  std::int64_t sum = 0;
  for (unsigned r = 0; r < 3; ++r) sum += table.excess(Residue3(r));
  return sum;
}

std::int64_t delta_odd_3_total(std::uint64_t n) {
  return -delta_3_i(n, Residue3(0), true);
}

}  // namespace odious
