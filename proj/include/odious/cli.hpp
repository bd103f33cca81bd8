#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "odious/prime_census.hpp"
#include "odious/records.hpp"

namespace odious {

enum class Command { Verify, Excess, Sieve, Predict, Fit, Report };

std::string_view to_string(Command c) noexcept;
std::optional<Command> command_from_string(std::string_view s) noexcept;
std::string_view to_string(CheckpointSchedule s) noexcept;
std::optional<CheckpointSchedule> schedule_from_string(std::string_view s) noexcept;

/// Everything a run depends on. No randomness is involved anywhere, so equal
/// configs give byte-identical output (with timing off).
struct RunConfig {
  Command command = Command::Verify;

  // verify
  std::uint64_t n_max = std::uint64_t{1} << 20;
  unsigned k_max = 20;
  std::string emit = "summary";  // summary | failures | all

  // excess
  std::uint64_t n = 16;
  std::string what = "delta3";  // delta3 | delta3i | mu | delta_odd3 | census
  unsigned residue = 0;
  bool odd_only = false;

  // sieve and the commands built on it
  std::uint64_t N = 1'000'000;
  std::uint64_t segment_size = kDefaultSegmentSlots;
  unsigned workers = 1;
  CheckpointSchedule checkpoint_schedule = CheckpointSchedule::Both;
  std::optional<std::string> state_file;
  bool timing = false;
  std::optional<std::uint64_t> halt_at;

  // fit / report
  std::uint64_t fit_min = 10'000;
  std::optional<std::string> svg_file;

  bool include_zero = true;
  OutputFormat output_format = OutputFormat::Table;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

nlohmann::json to_json(const RunConfig& config);
RunConfig run_config_from_json(const nlohmann::json& j);

/// FNV-1a over the fields that determine prime census counters (N, the
/// checkpoint schedule, the zero convention). Stored in sieve state files.
std::uint64_t config_hash(const RunConfig& config);

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitIdentityFailure = 2;

/// Executes one command. Data goes to `out`, diagnostics to `err`. Returns 0
/// when every hard assertion held, 2 on an identity or invariant failure and
/// 1 on usage or IO errors.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace odious
