#pragma once

#include <bit>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "odious/errors.hpp"

namespace odious {

class InsufficientBasePrimes : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class CheckpointOutOfRange : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Composite marks for the odd integers in [base, base + length).
/// Slot j stands for base + 2j + 1; 2 is never represented.
class SieveSegment {
 public:
  SieveSegment(std::uint64_t base, std::uint64_t length);

  std::uint64_t base() const noexcept { return base_; }
  std::uint64_t length() const noexcept { return length_; }
  std::uint64_t slots() const noexcept { return slots_; }

  bool is_composite_slot(std::uint64_t slot) const noexcept {
    return ((bits_[slot >> 6] >> (slot & 63)) & 1U) != 0;
  }
  void mark_slot(std::uint64_t slot) noexcept { bits_[slot >> 6] |= std::uint64_t{1} << (slot & 63); }

  /// Whether odd value v (base <= v < base + length) survived sieving.
  bool is_prime_odd(std::uint64_t v) const noexcept;

  /// Primes in the covered range, 2 included when it lies inside.
  std::vector<std::uint64_t> primes() const;

  /// Invokes f(p) for each odd prime p in [lo, hi), ascending.
  template <typename F>
  void for_each_odd_prime(std::uint64_t lo, std::uint64_t hi, F&& f) const;

  std::span<const std::uint64_t> words() const noexcept { return bits_; }

 private:
  std::uint64_t base_;
  std::uint64_t length_;
  std::uint64_t slots_;
  std::vector<std::uint64_t> bits_;
};

/// Sieves [base, base + length). `base` must be even and `base_primes` must
/// hold every prime up to sqrt(base + length - 1), ascending (2 may be
/// present and is ignored). Throws InsufficientBasePrimes otherwise.
SieveSegment sieve_segment(std::uint64_t base, std::uint64_t length,
                           std::span<const std::uint64_t> base_primes);

/// Plain Eratosthenes for all primes <= limit.
std::vector<std::uint64_t> small_primes(std::uint64_t limit);

/// Streaming prime counters. The residue-split fields count odd primes only;
/// p = 2 appears in pi and pi_odious, p = 3 in pi and pi_evil.
struct PrimeCounters {
  std::uint64_t pi = 0;
  std::uint64_t pi_odious = 0;
  std::uint64_t pi_evil = 0;
  std::uint64_t pi_31_odious = 0;
  std::uint64_t pi_31_evil = 0;
  std::uint64_t pi_32_odious = 0;
  std::uint64_t pi_32_evil = 0;

  std::int64_t delta_primes_31() const noexcept {
    return static_cast<std::int64_t>(pi_31_odious) - static_cast<std::int64_t>(pi_31_evil);
  }
  std::int64_t delta_primes_32() const noexcept {
    return static_cast<std::int64_t>(pi_32_odious) - static_cast<std::int64_t>(pi_32_evil);
  }

  void add_prime(std::uint64_t p) noexcept;

  PrimeCounters& operator+=(const PrimeCounters& o) noexcept;
  friend bool operator==(const PrimeCounters&, const PrimeCounters&) = default;
};

/// Counters for primes below a frontier.
struct PrimeCensus {
  std::uint64_t n_frontier = 0;
  PrimeCounters counters;
  friend bool operator==(const PrimeCensus&, const PrimeCensus&) = default;
};

struct Checkpoint {
  std::uint64_t n = 0;
  PrimeCounters counters;
  double wall_seconds = 0.0;
};

/// Counters compare equal; wall time is ignored.
inline bool same_counts(const Checkpoint& a, const Checkpoint& b) noexcept {
  return a.n == b.n && a.counters == b.counters;
}

inline constexpr std::uint64_t kMaxSieveBound = 10'000'000'000ULL;
inline constexpr std::uint64_t kDefaultSegmentSlots = std::uint64_t{1} << 20;
inline constexpr std::uint64_t kOracleLimit = 100'000;

enum class CheckpointSchedule { Dyadic, Decimal, Both };

/// Powers 2^j and/or the points 10^j, 3*10^j lying in [2, N], ascending.
std::vector<std::uint64_t> checkpoint_schedule(std::uint64_t N, CheckpointSchedule schedule);

struct StreamOptions {
  std::uint64_t segment_slots = kDefaultSegmentSlots;
  unsigned workers = 1;
  /// Record elapsed time in each checkpoint; when off wall_seconds stays 0.
  bool timing = false;
  /// Resumable progress file; written after every folded batch of segments.
  std::optional<std::filesystem::path> state_file;
  /// Identifies the run in the state file; resume refuses a different value.
  std::uint64_t config_hash = 0;
  /// Stop once the frontier reaches this bound (simulated interrupt).
  std::optional<std::uint64_t> halt_at;
};

struct StreamResult {
  std::vector<Checkpoint> checkpoints;
  PrimeCensus final_census;
  /// False when the run stopped at halt_at before reaching N.
  bool complete = true;
};

/// Counts primes below N, snapshotting counters at each checkpoint n (primes
/// < n). Checkpoints must be ascending and within [2, N]; otherwise throws
/// CheckpointOutOfRange. N is capped at 10^10.
StreamResult prime_census_stream(std::uint64_t N, std::span<const std::uint64_t> checkpoints,
                                 const StreamOptions& options = {});

/// Trial-division oracle for the same counters; N <= 10^5.
PrimeCensus prime_parity_oracle(std::uint64_t N);

template <typename F>
void SieveSegment::for_each_odd_prime(std::uint64_t lo, std::uint64_t hi, F&& f) const {
  if (lo < base_) lo = base_;
  if (hi > base_ + length_) hi = base_ + length_;
  if (lo >= hi) return;
  // slot of the first odd value >= lo and one past the last odd value < hi
  const std::uint64_t first = (lo - base_) / 2;
  const std::uint64_t last = (hi - base_) / 2;
  for (std::uint64_t w = first >> 6; w <= (last == 0 ? 0 : (last - 1) >> 6) && w < bits_.size(); ++w) {
    std::uint64_t live = ~bits_[w];
    const std::uint64_t word_lo = w << 6;
    if (word_lo < first) live &= ~std::uint64_t{0} << (first - word_lo);
    if (word_lo + 64 > last) {
      const std::uint64_t keep = last - word_lo;
      live &= keep >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << keep) - 1);
    }
    while (live != 0) {
      const std::uint64_t slot = word_lo + static_cast<std::uint64_t>(std::countr_zero(live));
      live &= live - 1;
      f(base_ + 2 * slot + 1);
    }
  }
}

}  // namespace odious
