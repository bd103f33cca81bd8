#include <doctest.h>

#include <cmath>

#include "odious/census.hpp"
#include "odious/identities.hpp"
#include "odious/prime_census.hpp"
#include "oracles.hpp"

using namespace odious;

namespace {

std::int64_t as_int(const ReportValue& v) { return std::get<std::int64_t>(v); }
double as_real(const ReportValue& v) { return std::get<double>(v); }

// Odd odious excess on residue i below n, by enumeration.
std::int64_t odd_excess_enum(std::uint64_t n, unsigned i) {
  std::int64_t e = 0;
  for (std::uint64_t m = 1; m < n; m += 2) {
    if (m % 3 == i) e += oracle::bit_parity(m) ? 1 : -1;
  }
  return e;
}

}  // namespace

TEST_CASE("identity names round-trip") {
  for (int j = 0; j <= static_cast<int>(IdentityId::PRIME_DECOMP); ++j) {
    const auto id = static_cast<IdentityId>(j);
    CHECK(identity_from_string(to_string(id)) == id);
  }
  CHECK_FALSE(identity_from_string("EQ99").has_value());
}

TEST_CASE("eq6") {
  const auto reports = verify_eq6(1U << 12);
  REQUIRE(reports.size() == (1U << 12));
  CHECK(reports[0].n == 5);
  CHECK(reports[0].passed);
  CHECK(reports[1].n == 9);
  for (const auto& r : reports) REQUIRE(r.passed);
}

TEST_CASE("lemma1") {
  const auto reports = verify_lemma1(1U << 12);
  CHECK(as_int(reports[2].lhs) == 1);
  CHECK(as_int(reports[9].lhs) == 0);
  for (const auto& r : reports) REQUIRE(r.passed);
}

TEST_CASE("eq8") {
  auto r = verify_eq8(12);
  CHECK(as_int(r.lhs) == 2);
  CHECK(as_int(r.rhs) == 2);
  CHECK(r.passed);
  r = verify_eq8(2);
  CHECK(as_int(r.lhs) == 1);
  CHECK(as_int(r.rhs) == 1);
  CHECK(r.passed);

  // m = 0 is what makes the right side match; without it every point is off by one.
  const auto excluded = verify_eq8(2, false);
  CHECK_FALSE(excluded.passed);
  CHECK_FALSE(excluded.include_zero);

  CHECK_THROWS_AS(verify_eq8(7), OddInputRejected);
  for (const auto& rep : sweep_eq8(1U << 12)) REQUIRE(rep.passed);
}

TEST_CASE("eq9 bounds") {
  const auto reports = verify_eq9(16);
  REQUIRE(reports.size() == 32);
  const auto& lower1 = reports[0];
  const auto& upper1 = reports[1];
  CHECK(lower1.identity_id == IdentityId::EQ9_LOWER);
  CHECK(as_real(lower1.lhs) == doctest::Approx(0.119).epsilon(0.01));
  CHECK(as_int(lower1.rhs) == 1);
  CHECK(as_real(upper1.rhs) == doctest::Approx(11.94).epsilon(0.01));
  const auto& lower16 = reports[30];
  const auto& upper16 = reports[31];
  CHECK(lower16.n == 16);
  CHECK(as_real(lower16.lhs) == doctest::Approx(1.07).epsilon(0.01));
  CHECK(as_int(upper16.lhs) == 6);
  CHECK(as_real(upper16.rhs) == doctest::Approx(107.3).epsilon(0.01));
  for (const auto& r : verify_eq9(1U << 12)) REQUIRE(r.passed);

  // Excluding zero leaves Delta_3([1,1)) = 0 below the lower bound.
  const auto alt = verify_eq9(1, false);
  CHECK_FALSE(alt[0].passed);
}

TEST_CASE("eq11") {
  const auto reports = verify_eq11(8);
  CHECK(as_int(reports[0].lhs) == 0);  // n = 1
  CHECK(as_int(reports[7].lhs) == 0);  // n = 8: -1 + 2 - 1
  for (const auto& r : verify_eq11(1U << 12)) REQUIRE(r.passed);
}

TEST_CASE("eq12") {
  auto r = verify_eq12(8);
  CHECK(as_int(r.lhs) == -1);
  CHECK(as_int(r.rhs) == -1);
  CHECK(r.passed);

  r = verify_eq12(12);
  CHECK(as_int(r.lhs) == odd_excess_enum(12, 2));
  CHECK(r.passed);
  CHECK_THROWS_AS(verify_eq12(9), OddInputRejected);
  for (const auto& rep : sweep_eq12(1U << 12)) REQUIRE(rep.passed);
}

TEST_CASE("eq13 closed forms") {
  CHECK(odd_excess_enum(8, 2) == -1);
  CHECK(odd_excess_enum(32, 2) == -3);
  CHECK(odd_excess_enum(16, 2) == 0);

  const auto reports = verify_eq13(20);
  REQUIRE(reports.size() == 38);
  CHECK(reports[0].n == 8);
  CHECK(as_int(reports[0].lhs) == -1);
  CHECK(reports[2].n == 32);
  CHECK(as_int(reports[2].lhs) == -3);
  CHECK(reports.back().n == (std::uint64_t{1} << 40));
  for (const auto& rep : reports) REQUIRE(rep.passed);

  // enumeration agrees wherever it is affordable
  for (unsigned k = 2; k <= 10; ++k) {
    CHECK(odd_excess_enum(std::uint64_t{1} << (2 * k - 1), 2) == as_int(reports[2 * (k - 2)].lhs));
    CHECK(odd_excess_enum(std::uint64_t{1} << (2 * k), 2) == 0);
  }
  CHECK_THROWS_AS(verify_eq13(1), std::invalid_argument);
}

TEST_CASE("eq13 base case is informational") {
  const auto base = eq13_base_case();
  REQUIRE(base.size() == 2);
  CHECK(as_int(base[0].lhs) == 0);
  CHECK(as_real(base[0].rhs) == doctest::Approx(-1.0 / 3.0));
  CHECK_FALSE(base[0].passed);
  CHECK(as_int(base[1].lhs) == 0);
  CHECK(base[1].passed);
}

TEST_CASE("prime decomposition over a sieve run") {
  const auto cps = checkpoint_schedule(100000, CheckpointSchedule::Both);
  const auto run = prime_census_stream(100000, cps);
  const auto reports = verify_prime_decomposition(run.checkpoints);
  CHECK(reports.size() + 2 == run.checkpoints.size());  // n = 2 and n = 3 are skipped
  for (const auto& r : reports) {
    REQUIRE(r.n > 3);
    REQUIRE(r.passed);
  }
}

TEST_CASE("reports are reproducible") {
  CHECK(verify_eq9(1000) == verify_eq9(1000));
  CHECK(verify_eq13(12) == verify_eq13(12));
}
