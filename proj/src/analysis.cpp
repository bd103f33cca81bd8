#include "odious/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "odious/census.hpp"

namespace odious {

namespace {

const Checkpoint* find_checkpoint(std::uint64_t n, std::span<const Checkpoint> checkpoints) {
  auto it = std::lower_bound(checkpoints.begin(), checkpoints.end(), n,
                             [](const Checkpoint& c, std::uint64_t v) { return c.n < v; });
  if (it == checkpoints.end() || it->n != n) return nullptr;
  return &*it;
}

std::optional<double> share(std::uint64_t part, std::uint64_t whole) {
  if (whole == 0) return std::nullopt;
  return static_cast<double>(part) / static_cast<double>(whole);
}

std::optional<double> log_ratio(std::int64_t value, std::uint64_t n) {
  if (value <= 0 || n < 2) return std::nullopt;
  return std::log(static_cast<double>(value)) / std::log(static_cast<double>(n));
}

bool is_odd_power_of_two(std::uint64_t n) {
  return std::has_single_bit(n) && std::countr_zero(n) % 2 == 1;
}

}  // namespace

HeuristicPrediction heuristic_predict(std::uint64_t n, Residue3 i, std::span<const Checkpoint> checkpoints) {
  if (n < 2) throw std::invalid_argument("heuristic_predict: n must be at least 2");
  if (i.value() == 0) throw std::invalid_argument("heuristic_predict: residue must be 1 or 2");
  const Checkpoint* cp = find_checkpoint(n, checkpoints);
  if (cp == nullptr) throw MissingCheckpoint("no prime census checkpoint at n = " + std::to_string(n));

  HeuristicPrediction out;
  out.n = n;
  out.i = i;
  const std::int64_t odd_excess = delta_3_i(n, i, true);
  out.predicted = 3.0 * static_cast<double>(odd_excess) / std::log(static_cast<double>(n));
  out.observed = i.value() == 1 ? cp->counters.delta_primes_31() : cp->counters.delta_primes_32();
  if (out.predicted != 0.0) out.ratio = static_cast<double>(out.observed) / out.predicted;
  return out;
}

std::vector<RatioRow> ratio_convergence(std::span<const Checkpoint> checkpoints) {
  std::vector<RatioRow> out;
  out.reserve(checkpoints.size());
  for (const auto& cp : checkpoints) {
    const auto& c = cp.counters;
    out.push_back({cp.n, share(c.pi_odious, c.pi), share(c.pi_31_odious, c.pi_31_odious + c.pi_31_evil),
                   share(c.pi_32_odious, c.pi_32_odious + c.pi_32_evil)});
  }
  return out;
}

FitResult exponent_fit(std::span<const std::pair<std::uint64_t, double>> samples) {
  FitResult fit;
  for (auto [n, y] : samples) {
    if (y <= 0.0 || n < 1) {
      fit.skipped.push_back(n);
      continue;
    }
    fit.points.emplace_back(std::log(static_cast<double>(n)), std::log(y));
  }
  if (fit.points.size() < 3) {
    throw InsufficientPoints("exponent_fit: need at least 3 points with positive y, got " +
                             std::to_string(fit.points.size()));
  }

  // Centred sums, accumulated left to right.
  const auto count = static_cast<double>(fit.points.size());
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (auto [x, y] : fit.points) {
    mean_x += x;
    mean_y += y;
  }
  mean_x /= count;
  mean_y /= count;
  double sxx = 0.0;
  double sxy = 0.0;
  for (auto [x, y] : fit.points) {
    sxx += (x - mean_x) * (x - mean_x);
    sxy += (x - mean_x) * (y - mean_y);
  }
  if (sxx == 0.0) throw InsufficientPoints("exponent_fit: all sample points share the same n");
  fit.slope = sxy / sxx;
  fit.intercept = mean_y - fit.slope * mean_x;
  for (auto [x, y] : fit.points) {
    fit.max_abs_residual = std::max(fit.max_abs_residual, std::abs(y - (fit.intercept + fit.slope * x)));
  }
  return fit;
}

std::vector<ClosingLimitRow> closing_limits_table(std::span<const Checkpoint> checkpoints) {
  std::vector<ClosingLimitRow> out;
  out.reserve(checkpoints.size());
  for (const auto& cp : checkpoints) {
    ClosingLimitRow row;
    row.n = cp.n;
    row.odd_power_of_two = is_odd_power_of_two(cp.n);
    row.excess_31 = cp.counters.delta_primes_31();
    row.evil_excess_32 = -cp.counters.delta_primes_32();
    row.ratio_31 = log_ratio(row.excess_31, cp.n);
    row.ratio_32 = log_ratio(row.evil_excess_32, cp.n);
    out.push_back(row);
  }
  return out;
}

std::vector<RegimeDiagnostic> regime_diagnostics(std::span<const Checkpoint> checkpoints) {
  std::vector<RegimeDiagnostic> out;
  for (const auto& cp : checkpoints) {
    if (cp.n < 2) continue;
    RegimeDiagnostic d;
    d.n = cp.n;
    const auto odd = census_fast(cp.n, true);
    d.delta_odd_32 = odd.excess(Residue3(2));
    d.sqrt_n = std::sqrt(static_cast<double>(cp.n));
    d.small_residue2 = static_cast<double>(std::llabs(d.delta_odd_32)) <= d.sqrt_n;
    const double ln_n = std::log(static_cast<double>(cp.n));
    // m < n/2 over the integers is m < ceil(n/2).
    const std::int64_t driver = d.small_residue2 ? delta_3((cp.n + 1) / 2) : -odd.excess(Residue3(0));
    d.predictor = 3.0 * static_cast<double>(driver) / ln_n;
    d.observed = static_cast<std::int64_t>(cp.counters.pi_odious) - static_cast<std::int64_t>(cp.counters.pi_evil);
    out.push_back(d);
  }
  return out;
}

std::vector<GrowthRow> odd_excess_growth(std::span<const std::uint64_t> ns) {
  std::vector<GrowthRow> out;
  out.reserve(ns.size());
  for (auto n : ns) {
    const std::int64_t e = n >= 1 ? delta_odd_3_total(n) : 0;
    out.push_back({n, e, log_ratio(e, n)});
  }
  return out;
}

std::string loglog_svg(std::span<const std::pair<std::uint64_t, double>> samples, const std::string& title) {
  constexpr double kWidth = 640.0;
  constexpr double kHeight = 480.0;
  constexpr double kMargin = 60.0;

  std::vector<std::pair<double, double>> pts;
  for (auto [n, y] : samples) {
    if (n >= 1 && y > 0.0) pts.emplace_back(std::log10(static_cast<double>(n)), std::log10(y));
  }

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\">" << title
      << "</text>\n";
  if (pts.empty()) {
    svg << "</svg>\n";
    return svg.str();
  }

  double x_lo = pts.front().first, x_hi = x_lo, y_lo = pts.front().second, y_hi = y_lo;
  double cx = 0.0, cy = 0.0;
  for (auto [x, y] : pts) {
    x_lo = std::min(x_lo, x);
    x_hi = std::max(x_hi, x);
    y_lo = std::min(y_lo, y);
    y_hi = std::max(y_hi, y);
    cx += x;
    cy += y;
  }
  cx /= static_cast<double>(pts.size());
  cy /= static_cast<double>(pts.size());
  if (x_hi == x_lo) x_hi = x_lo + 1.0;
  if (y_hi == y_lo) y_hi = y_lo + 1.0;
  auto px = [&](double x) { return kMargin + (x - x_lo) / (x_hi - x_lo) * (kWidth - 2 * kMargin); };
  auto py = [&](double y) { return kHeight - kMargin - (y - y_lo) / (y_hi - y_lo) * (kHeight - 2 * kMargin); };

  char buf[160];
  svg << "<g stroke=\"black\">\n";
  std::snprintf(buf, sizeof buf, "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\"/>\n", kMargin,
                kHeight - kMargin, kWidth - kMargin, kHeight - kMargin);
  svg << buf;
  std::snprintf(buf, sizeof buf, "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\"/>\n", kMargin, kMargin,
                kMargin, kHeight - kMargin);
  svg << buf << "</g>\n";

  // reference slope through the centroid, clipped to the x range
  const double a = alpha();
  std::snprintf(buf, sizeof buf,
                "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"red\" stroke-dasharray=\"6,4\"/>\n",
                px(x_lo), py(cy + a * (x_lo - cx)), px(x_hi), py(cy + a * (x_hi - cx)));
  svg << buf;
  for (auto [x, y] : pts) {
    std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"3\" fill=\"steelblue\"/>\n", px(x), py(y));
    svg << buf;
  }
  std::snprintf(buf, sizeof buf,
                "<text x=\"%.2f\" y=\"%.2f\" font-family=\"sans-serif\" font-size=\"12\">log10 n [%.2f, %.2f]"
                "</text>\n",
                kMargin, kHeight - 20.0, x_lo, x_hi);
  svg << buf;
  std::snprintf(buf, sizeof buf,
                "<text x=\"%.2f\" y=\"%.2f\" font-family=\"sans-serif\" font-size=\"12\" fill=\"red\">"
                "slope ln3/ln4</text>\n",
                kWidth - kMargin - 90.0, kMargin - 10.0);
  svg << buf << "</svg>\n";
  return svg.str();
}

}  // namespace odious
