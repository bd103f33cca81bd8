#include <doctest.h>

#include <chrono>
#include <limits>

#include "odious/census.hpp"
#include "oracles.hpp"

using namespace odious;

namespace {

const Residue3 r0(0), r1(1), r2(2);

std::uint64_t xorshift(std::uint64_t& s) {
  s ^= s << 13;
  s ^= s >> 7;
  s ^= s << 17;
  return s;
}

}  // namespace

TEST_CASE("bruteforce census examples") {
  SUBCASE("n = 4, all integers") {
    const auto t = census_bruteforce(4, false);
    CHECK(t.count(r0, ParityClass::Evil) == 2);  // 0 and 3
    CHECK(t.count(r1, ParityClass::Odious) == 1);
    CHECK(t.count(r2, ParityClass::Odious) == 1);
    CHECK(t.total() == 4);
  }
  SUBCASE("n = 1, odd only") { CHECK(census_bruteforce(1, true).total() == 0); }
  SUBCASE("n = 8, odd only") {
    const auto t = census_bruteforce(8, true);
    CHECK(t.count(r2, ParityClass::Evil) == 1);    // 5
    CHECK(t.count(r0, ParityClass::Odious) == 0);
    CHECK(t.count(r0, ParityClass::Evil) == 1);    // 3
    CHECK(t.count(r1, ParityClass::Odious) == 2);  // 1, 7
    CHECK(t.total() == 4);
  }
  CHECK_THROWS_AS(census_bruteforce(kBruteForceLimit + 1, false), OracleRangeExceeded);
  CHECK_NOTHROW(census_bruteforce(16, false, false));
}

TEST_CASE("CensusKey lookup") {
  const auto t = census_fast(8, true);
  CHECK(t.at({r1, ParityClass::Odious, true}) == 2);
  CHECK_THROWS_AS(t.at({r1, ParityClass::Odious, false}), std::invalid_argument);
}

TEST_CASE("automaton transitions are a function of (state, digit)") {
  for (int s = 0; s < DigitDPAutomaton::kStates; ++s) {
    for (unsigned d = 0; d < 2; ++d) {
      const int t = DigitDPAutomaton::next(s, d);
      CHECK(DigitDPAutomaton::residue_of(t) == (2 * DigitDPAutomaton::residue_of(s) + d) % 3);
      CHECK(DigitDPAutomaton::parity_of(t) == (DigitDPAutomaton::parity_of(s) ^ d));
    }
  }
}

TEST_CASE("census_fast matches the running enumeration for all n <= 2^14") {
  for (bool odd_only : {false, true}) {
    for (bool include_zero : {true, false}) {
      oracle::RunningCensus ref(odd_only, include_zero);
      for (std::uint64_t n = 0; n <= (1U << 14); ++n) {
        ref.advance_to(n);
        const auto t = census_fast(n, odd_only, include_zero);
        for (unsigned r = 0; r < 3; ++r) {
          REQUIRE(t.count(Residue3(r), ParityClass::Evil) == ref.counts()[r][0]);
          REQUIRE(t.count(Residue3(r), ParityClass::Odious) == ref.counts()[r][1]);
        }
      }
    }
  }
}

TEST_CASE("census_fast equals census_bruteforce at scattered n") {
  std::uint64_t seed = 12345;
  for (int j = 0; j < 50; ++j) {
    const std::uint64_t n = xorshift(seed) % (std::uint64_t{1} << 22);
    for (bool odd_only : {false, true}) {
      for (bool include_zero : {true, false}) {
        REQUIRE(census_fast(n, odd_only, include_zero) == census_bruteforce(n, odd_only, include_zero));
      }
    }
  }
}

TEST_CASE("census_fast edge bounds") {
  CHECK(census_fast(0, false).total() == 0);
  CHECK(census_fast(0, false, false).total() == 0);
  CHECK(census_fast(1, false, false).total() == 0);

  const std::uint64_t top = std::numeric_limits<std::uint64_t>::max();
  const auto start = std::chrono::steady_clock::now();
  const auto all = census_fast(top, false);
  const auto elapsed = std::chrono::steady_clock::now() - start;
  CHECK(all.total() == top);
  CHECK(census_fast(top, false, false).total() == top - 1);
  CHECK(census_fast(top, true).total() == top / 2);
  CHECK(elapsed < std::chrono::milliseconds(1));
}

TEST_CASE("incrementing n adds exactly the bucket of n (wide values)") {
  std::uint64_t seed = 0xDEADBEEFULL;
  for (int j = 0; j < 2000; ++j) {
    const std::uint64_t n = xorshift(seed) >> (j % 40);
    if (n == std::numeric_limits<std::uint64_t>::max()) continue;
    auto before = census_fast(n, false);
    const auto after = census_fast(n + 1, false);
    before.count(Residue3(static_cast<unsigned>(n % 3)), oracle::bit_parity(n) ? ParityClass::Odious : ParityClass::Evil) += 1;
    for (unsigned r = 0; r < 3; ++r) {
      for (auto p : {ParityClass::Evil, ParityClass::Odious}) {
        REQUIRE(before.count(Residue3(r), p) == after.count(Residue3(r), p));
      }
    }
  }
}

TEST_CASE("excess function examples") {
  CHECK(delta_3(16) == 6);
  CHECK(delta_3(1) == 1);
  CHECK(delta_3(4) == 2);
  CHECK(delta_3(1, false) == 0);

  CHECK(delta_3_i(12, r1, true) == 2);
  CHECK(delta_3_i(8, r2, true) == -1);
  CHECK(delta_3_i(1, r2, true) == 0);

  CHECK(mu_excess(9) == 0);
  CHECK(mu_excess(2) == 1);
  CHECK(mu_excess(0) == 0);

  CHECK(delta_odd_3_total(8) == 1);
  CHECK(delta_odd_3_total(4) == 1);
  CHECK(delta_odd_3_total(2) == 0);
}

TEST_CASE("census invariants up to 2^16") {
  for (std::uint64_t n = 1; n <= (1U << 16); ++n) {
    const auto odd = census_fast(n, true);
    const std::int64_t sum = odd.excess(r0) + odd.excess(r1) + odd.excess(r2);
    REQUIRE(sum == mu_excess(n));
    REQUIRE(std::abs(sum) <= 1);
    REQUIRE(delta_3(n) > 0);
    if (n % 2 == 0) REQUIRE(odd.excess(r1) == delta_3(n / 2));
    REQUIRE(delta_odd_3_total(n) == -odd.excess(r0));
  }
  for (std::uint64_t m = 1; m <= (1U << 14); ++m) REQUIRE(mu_excess(4 * m + 1) == 0);
}
