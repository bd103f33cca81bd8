#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "odious/parity.hpp"
#include "odious/prime_census.hpp"

namespace odious {

class MissingCheckpoint : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class InsufficientPoints : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Observed odd-prime excess on a residue class against 3 * (odd integer
/// excess) / ln n.
struct HeuristicPrediction {
  std::uint64_t n = 0;
  Residue3 i;
  double predicted = 0.0;
  std::int64_t observed = 0;
  /// Empty when predicted == 0.
  std::optional<double> ratio;
};

/// Requires a checkpoint at exactly n and i in {1, 2}. Throws MissingCheckpoint.
HeuristicPrediction heuristic_predict(std::uint64_t n, Residue3 i, std::span<const Checkpoint> checkpoints);

struct RatioRow {
  std::uint64_t n = 0;
  /// Each is empty while its denominator is still zero.
  std::optional<double> odious_share;
  std::optional<double> odious_share_31;
  std::optional<double> odious_share_32;
};

std::vector<RatioRow> ratio_convergence(std::span<const Checkpoint> checkpoints);

struct FitResult {
  std::vector<std::pair<double, double>> points;  // (ln n, ln y)
  double slope = 0.0;
  double intercept = 0.0;
  double max_abs_residual = 0.0;
  std::vector<std::uint64_t> skipped;
};

/// Ordinary least squares of ln y on ln n. Samples with y <= 0 are skipped and
/// listed; fewer than three usable points throws InsufficientPoints.
FitResult exponent_fit(std::span<const std::pair<std::uint64_t, double>> samples);

struct ClosingLimitRow {
  std::uint64_t n = 0;
  /// n = 2^(2k-1) for some k >= 1.
  bool odd_power_of_two = false;
  std::int64_t excess_31 = 0;       // pi_31_odious - pi_31_evil
  std::int64_t evil_excess_32 = 0;  // pi_32_evil - pi_32_odious
  /// ln(excess)/ln n; empty (flagged) when the excess is not positive.
  std::optional<double> ratio_31;
  std::optional<double> ratio_32;
};

std::vector<ClosingLimitRow> closing_limits_table(std::span<const Checkpoint> checkpoints);

/// Which of the two residue-2 regimes a checkpoint falls in, and the
/// predictor for pi_odious - pi_evil that goes with it.
struct RegimeDiagnostic {
  std::uint64_t n = 0;
  std::int64_t delta_odd_32 = 0;
  double sqrt_n = 0.0;
  /// |delta_odd_32| <= sqrt(n): residue 2 is negligible and the predictor is
  /// 3 * delta_3(ceil(n/2)) / ln n; otherwise 3 * delta_odd_3_total(n) / ln n.
  bool small_residue2 = false;
  double predictor = 0.0;
  std::int64_t observed = 0;  // pi_odious - pi_evil
};

std::vector<RegimeDiagnostic> regime_diagnostics(std::span<const Checkpoint> checkpoints);

/// ln(delta_odd_3_total(n)) / ln n next to alpha; empty when the excess is not positive.
struct GrowthRow {
  std::uint64_t n = 0;
  std::int64_t excess = 0;
  std::optional<double> log_ratio;
};

std::vector<GrowthRow> odd_excess_growth(std::span<const std::uint64_t> ns);

/// Log-log scatter of the samples with a reference line of slope alpha
/// through their geometric centre, as standalone SVG.
std::string loglog_svg(std::span<const std::pair<std::uint64_t, double>> samples, const std::string& title);

}  // namespace odious
