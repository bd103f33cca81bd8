#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "odious/prime_census.hpp"
#include "oracles.hpp"

using namespace odious;

namespace {

std::vector<std::uint64_t> trial_primes(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t m = lo; m < hi; ++m) {
    if (oracle::is_prime(m)) out.push_back(m);
  }
  return out;
}

bool counts_equal(const std::vector<Checkpoint>& a, const std::vector<Checkpoint>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (!same_counts(a[j], b[j])) return false;
  }
  return true;
}

struct TempFile {
  std::filesystem::path path;
  explicit TempFile(const std::string& name) : path(std::filesystem::temp_directory_path() / name) {
    std::filesystem::remove(path);
  }
  ~TempFile() { std::filesystem::remove(path); }
};

}  // namespace

TEST_CASE("sieve_segment examples") {
  const auto base = small_primes(100);
  CHECK(sieve_segment(0, 30, base).primes() == std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
  CHECK(sieve_segment(100, 30, base).primes() == std::vector<std::uint64_t>{101, 103, 107, 109, 113, 127});
  CHECK(sieve_segment(0, 2, base).primes().empty());
  CHECK(sieve_segment(0, 3, base).primes() == std::vector<std::uint64_t>{2});
}

TEST_CASE("sieve_segment against trial division on many windows") {
  const auto base = small_primes(2000);
  for (std::uint64_t lo = 0; lo < 3'000'000; lo += 99'994) {
    for (std::uint64_t len : {1ULL, 2ULL, 63ULL, 64ULL, 129ULL, 1000ULL}) {
      REQUIRE(sieve_segment(lo, len, base).primes() == trial_primes(lo, lo + len));
    }
  }
}

TEST_CASE("sieve_segment is idempotent") {
  const auto base = small_primes(1000);
  const auto a = sieve_segment(5000, 4096, base);
  const auto b = sieve_segment(5000, 4096, base);
  CHECK(std::equal(a.words().begin(), a.words().end(), b.words().begin(), b.words().end()));
}

TEST_CASE("sieve_segment rejects incomplete base primes") {
  const std::vector<std::uint64_t> few = {2, 3, 5};
  CHECK_NOTHROW(sieve_segment(0, 49, few));          // sqrt(48) < 7
  CHECK_THROWS_AS(sieve_segment(0, 50, few), InsufficientBasePrimes);  // 49 needs 7
  CHECK_THROWS_AS(sieve_segment(1000, 100, few), InsufficientBasePrimes);
  CHECK_THROWS_AS(sieve_segment(3, 10, few), std::invalid_argument);
  // a gap without primes is still complete: {2,3,5,7} covers up to 10
  CHECK_NOTHROW(sieve_segment(0, 121, std::vector<std::uint64_t>{2, 3, 5, 7}));
}

TEST_CASE("stream counters for N = 20") {
  const std::vector<std::uint64_t> cps = {20};
  const auto run = prime_census_stream(20, cps);
  REQUIRE(run.checkpoints.size() == 1);
  const auto& c = run.checkpoints[0].counters;
  CHECK(c.pi == 8);
  CHECK(c.pi_odious == 5);  // 2, 7, 11, 13, 19
  CHECK(c.pi_evil == 3);    // 3, 5, 17
  CHECK(c.delta_primes_31() == 3);   // 7, 13, 19
  CHECK(c.delta_primes_32() == -1);  // 5e, 11o, 17e
  CHECK(static_cast<std::int64_t>(c.pi_odious - c.pi_evil) == c.delta_primes_31() + c.delta_primes_32());
  CHECK(run.final_census.n_frontier == 20);
}

TEST_CASE("stream small bounds") {
  auto run = prime_census_stream(3, std::vector<std::uint64_t>{3});
  CHECK(run.checkpoints[0].counters.pi == 1);
  CHECK(run.checkpoints[0].counters.pi_odious == 1);
  CHECK(run.checkpoints[0].counters.pi_evil == 0);
  run = prime_census_stream(2, std::vector<std::uint64_t>{2});
  CHECK(run.checkpoints[0].counters == PrimeCounters{});
  run = prime_census_stream(0, {});
  CHECK(run.checkpoints.empty());
}

TEST_CASE("stream matches the trial-division oracle") {
  CHECK(prime_parity_oracle(2).counters == PrimeCounters{});
  for (std::uint64_t N : {5ULL, 20ULL, 97ULL, 1000ULL, 10000ULL, 65536ULL, 100000ULL}) {
    const auto run = prime_census_stream(N, {}, {.segment_slots = 512});
    REQUIRE(run.final_census == prime_parity_oracle(N));
  }
  CHECK_THROWS_AS(prime_parity_oracle(kOracleLimit + 1), OracleRangeExceeded);
}

TEST_CASE("pi(10^6)") {
  const auto run = prime_census_stream(1'000'000, std::vector<std::uint64_t>{1'000'000});
  CHECK(run.final_census.counters.pi == 78498);
  CHECK(run.final_census.counters.pi == small_primes(999'999).size());
}

TEST_CASE("checkpoint validation") {
  CHECK_THROWS_AS(prime_census_stream(100, std::vector<std::uint64_t>{1}), CheckpointOutOfRange);
  CHECK_THROWS_AS(prime_census_stream(100, std::vector<std::uint64_t>{101}), CheckpointOutOfRange);
  CHECK_THROWS_AS(prime_census_stream(100, std::vector<std::uint64_t>{50, 40}), CheckpointOutOfRange);
  CHECK_THROWS_AS(prime_census_stream(kMaxSieveBound + 1, {}), std::invalid_argument);
}

TEST_CASE("checkpoint schedules") {
  CHECK(checkpoint_schedule(100, CheckpointSchedule::Dyadic) == std::vector<std::uint64_t>{2, 4, 8, 16, 32, 64});
  CHECK(checkpoint_schedule(100, CheckpointSchedule::Decimal) == std::vector<std::uint64_t>{3, 10, 30, 100});
  CHECK(checkpoint_schedule(10, CheckpointSchedule::Both) == std::vector<std::uint64_t>{2, 3, 4, 8, 10});
}

TEST_CASE("conservation and monotonicity at every checkpoint") {
  std::vector<std::uint64_t> cps;
  for (std::uint64_t n = 2; n <= 20000; ++n) cps.push_back(n);
  const auto run = prime_census_stream(20000, cps, {.segment_slots = 100});
  REQUIRE(run.checkpoints.size() == cps.size());
  PrimeCounters prev;
  for (const auto& cp : run.checkpoints) {
    const auto& c = cp.counters;
    REQUIRE(c.pi == c.pi_odious + c.pi_evil);
    if (cp.n > 3) {
      REQUIRE(static_cast<std::int64_t>(c.pi_odious) - static_cast<std::int64_t>(c.pi_evil) ==
              c.delta_primes_31() + c.delta_primes_32());
    }
    REQUIRE(c.pi >= prev.pi);
    REQUIRE(c.pi_odious >= prev.pi_odious);
    REQUIRE(c.pi_evil >= prev.pi_evil);
    REQUIRE(c.pi_31_odious >= prev.pi_31_odious);
    REQUIRE(c.pi_31_evil >= prev.pi_31_evil);
    REQUIRE(c.pi_32_odious >= prev.pi_32_odious);
    REQUIRE(c.pi_32_evil >= prev.pi_32_evil);
    prev = c;
  }
}

TEST_CASE("segment size and worker count do not change counters") {
  const auto cps = checkpoint_schedule(300'000, CheckpointSchedule::Both);
  const auto reference = prime_census_stream(300'000, cps);
  for (std::uint64_t slots : {64ULL, 1000ULL, 4096ULL}) {
    for (unsigned workers : {1U, 3U, 4U}) {
      REQUIRE(counts_equal(prime_census_stream(300'000, cps, {.segment_slots = slots, .workers = workers}).checkpoints,
                           reference.checkpoints));
    }
  }
}

TEST_CASE("interrupted run resumes to identical counters") {
  TempFile state("odious_test_resume.state");
  const auto cps = checkpoint_schedule(500'000, CheckpointSchedule::Both);
  const auto uninterrupted = prime_census_stream(500'000, cps, {.segment_slots = 4096});

  StreamOptions opts{.segment_slots = 4096, .state_file = state.path, .config_hash = 42, .halt_at = 100'000};
  const auto first = prime_census_stream(500'000, cps, opts);
  CHECK_FALSE(first.complete);
  CHECK(first.final_census.n_frontier >= 100'000);
  CHECK(first.final_census.n_frontier < 500'000);
  CHECK(std::filesystem::exists(state.path));

  opts.halt_at.reset();
  opts.workers = 2;
  const auto resumed = prime_census_stream(500'000, cps, opts);
  CHECK(resumed.complete);
  CHECK(counts_equal(resumed.checkpoints, uninterrupted.checkpoints));
  CHECK(resumed.final_census == uninterrupted.final_census);

  opts.config_hash = 43;
  CHECK_THROWS_AS(prime_census_stream(500'000, cps, opts), std::runtime_error);
}
