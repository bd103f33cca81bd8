#include "odious/prime_census.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <future>
#include <string>

#include <json.hpp>

#include "odious/parity.hpp"

namespace odious {

namespace {

constexpr int kStateFormatVersion = 1;

std::uint64_t isqrt(std::uint64_t v) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

bool is_prime_trial(std::uint64_t m) {
  if (m < 2) return false;
  if (m % 2 == 0) return m == 2;
  for (std::uint64_t d = 3; d * d <= m; d += 2) {
    if (m % d == 0) return false;
  }
  return true;
}

// Counters for primes in [lo, hi), split at the interior cut points.
struct SegmentParts {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  std::vector<PrimeCounters> parts;
};

SegmentParts count_segment(std::uint64_t lo, std::uint64_t hi, std::span<const std::uint64_t> cuts,
                           std::span<const std::uint64_t> base_primes) {
  const SieveSegment seg = sieve_segment(lo, hi - lo, base_primes);
  SegmentParts out{lo, hi, {}};
  out.parts.reserve(cuts.size() + 1);
  std::uint64_t from = lo;
  auto count_range = [&](std::uint64_t a, std::uint64_t b) {
    PrimeCounters c;
    if (a <= 2 && 2 < b) c.add_prime(2);
    seg.for_each_odd_prime(a, b, [&c](std::uint64_t p) { c.add_prime(p); });
    return c;
  };
  for (auto cut : cuts) {
    out.parts.push_back(count_range(from, cut));
    from = cut;
  }
  out.parts.push_back(count_range(from, hi));
  return out;
}

nlohmann::json counters_to_json(const PrimeCounters& c) {
  return {{"pi", c.pi},
          {"pi_odious", c.pi_odious},
          {"pi_evil", c.pi_evil},
          {"pi_31_odious", c.pi_31_odious},
          {"pi_31_evil", c.pi_31_evil},
          {"pi_32_odious", c.pi_32_odious},
          {"pi_32_evil", c.pi_32_evil}};
}

PrimeCounters counters_from_json(const nlohmann::json& j) {
  PrimeCounters c;
  c.pi = j.at("pi").get<std::uint64_t>();
  c.pi_odious = j.at("pi_odious").get<std::uint64_t>();
  c.pi_evil = j.at("pi_evil").get<std::uint64_t>();
  c.pi_31_odious = j.at("pi_31_odious").get<std::uint64_t>();
  c.pi_31_evil = j.at("pi_31_evil").get<std::uint64_t>();
  c.pi_32_odious = j.at("pi_32_odious").get<std::uint64_t>();
  c.pi_32_evil = j.at("pi_32_evil").get<std::uint64_t>();
  return c;
}

struct StreamState {
  std::uint64_t n_frontier = 0;
  PrimeCounters running;
  std::vector<Checkpoint> emitted;
};

void save_state(const std::filesystem::path& path, std::uint64_t config_hash, const StreamState& st) {
  nlohmann::json j;
  j["format_version"] = kStateFormatVersion;
  j["config_hash"] = config_hash;
  j["n_frontier"] = st.n_frontier;
  j["counters"] = counters_to_json(st.running);
  auto& cps = j["checkpoints"] = nlohmann::json::array();
  for (const auto& cp : st.emitted) {
    cps.push_back({{"n", cp.n}, {"counters", counters_to_json(cp.counters)}, {"wall_seconds", cp.wall_seconds}});
  }
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write state file " + tmp.string());
    out << j.dump() << '\n';
  }
  std::filesystem::rename(tmp, path);
}

std::optional<StreamState> load_state(const std::filesystem::path& path, std::uint64_t config_hash) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  const auto j = nlohmann::json::parse(in);
  if (j.at("format_version").get<int>() != kStateFormatVersion) {
    throw std::runtime_error("state file " + path.string() + " has an unsupported format version");
  }
  if (j.at("config_hash").get<std::uint64_t>() != config_hash) {
    throw std::runtime_error("state file " + path.string() + " was written by a different run configuration");
  }
  StreamState st;
  st.n_frontier = j.at("n_frontier").get<std::uint64_t>();
  st.running = counters_from_json(j.at("counters"));
  for (const auto& cp : j.at("checkpoints")) {
    st.emitted.push_back(
        {cp.at("n").get<std::uint64_t>(), counters_from_json(cp.at("counters")), cp.at("wall_seconds").get<double>()});
  }
  return st;
}

}  // namespace

SieveSegment::SieveSegment(std::uint64_t base, std::uint64_t length)
    : base_(base), length_(length), slots_(length / 2), bits_((slots_ + 63) / 64, 0) {}

bool SieveSegment::is_prime_odd(std::uint64_t v) const noexcept {
  if (v < base_ || v >= base_ + length_ || v % 2 == 0) return false;
  return !is_composite_slot((v - base_ - 1) / 2);
}

std::vector<std::uint64_t> SieveSegment::primes() const {
  std::vector<std::uint64_t> out;
  if (base_ <= 2 && 2 < base_ + length_) out.push_back(2);
  for_each_odd_prime(base_, base_ + length_, [&out](std::uint64_t p) { out.push_back(p); });
  return out;
}

SieveSegment sieve_segment(std::uint64_t base, std::uint64_t length,
                           std::span<const std::uint64_t> base_primes) {
  if (base % 2 != 0) throw std::invalid_argument("sieve_segment: base must be even");
  SieveSegment seg(base, length);
  if (length == 0) return seg;
  const std::uint64_t hi = base + length;
  const std::uint64_t root = isqrt(hi - 1);

  const std::uint64_t largest = base_primes.empty() ? 1 : base_primes.back();
  if (largest < root) {
    for (std::uint64_t m = largest + 1; m <= root; ++m) {
      if (is_prime_trial(m)) {
        throw InsufficientBasePrimes("sieve_segment: base primes stop before " + std::to_string(m) +
                                     ", need all primes up to " + std::to_string(root));
      }
    }
  }

  if (base == 0 && seg.slots() > 0) seg.mark_slot(0);  // 1 is not prime
  for (auto p : base_primes) {
    if (p == 2) continue;
    if (p > root) break;
    std::uint64_t start = std::max(p * p, (base + p - 1) / p * p);
    if (start % 2 == 0) start += p;
    for (std::uint64_t v = start; v < hi; v += 2 * p) {
      seg.mark_slot((v - base - 1) / 2);
    }
  }
  return seg;
}

std::vector<std::uint64_t> small_primes(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  if (limit < 2) return out;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t p = 2; p <= limit; ++p) {
    if (composite[p]) continue;
    out.push_back(p);
    for (std::uint64_t q = p * p; q <= limit; q += p) composite[q] = true;
  }
  return out;
}

void PrimeCounters::add_prime(std::uint64_t p) noexcept {
  ++pi;
  const bool odious = is_odious(p);
  if (odious) {
    ++pi_odious;
  } else {
    ++pi_evil;
  }
  if (p % 2 == 0) return;
  switch (p % 3) {
    case 1:
      ++(odious ? pi_31_odious : pi_31_evil);
      break;
    case 2:
      ++(odious ? pi_32_odious : pi_32_evil);
      break;
    default:
      break;
  }
}

PrimeCounters& PrimeCounters::operator+=(const PrimeCounters& o) noexcept {
  pi += o.pi;
  pi_odious += o.pi_odious;
  pi_evil += o.pi_evil;
  pi_31_odious += o.pi_31_odious;
  pi_31_evil += o.pi_31_evil;
  pi_32_odious += o.pi_32_odious;
  pi_32_evil += o.pi_32_evil;
  return *this;
}

std::vector<std::uint64_t> checkpoint_schedule(std::uint64_t N, CheckpointSchedule schedule) {
  std::vector<std::uint64_t> out;
  if (schedule != CheckpointSchedule::Decimal) {
    for (std::uint64_t v = 2; v <= N; v *= 2) out.push_back(v);
  }
  if (schedule != CheckpointSchedule::Dyadic) {
    for (std::uint64_t v = 1; v <= N; v *= 10) {
      if (v >= 2) out.push_back(v);
      if (3 * v <= N) out.push_back(3 * v);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

StreamResult prime_census_stream(std::uint64_t N, std::span<const std::uint64_t> checkpoints,
                                 const StreamOptions& options) {
  if (N > kMaxSieveBound) throw std::invalid_argument("prime_census_stream: N exceeds 10^10");
  if (options.segment_slots == 0) throw std::invalid_argument("prime_census_stream: segment size must be positive");
  for (std::size_t j = 0; j < checkpoints.size(); ++j) {
    if (checkpoints[j] < 2 || checkpoints[j] > N) {
      throw CheckpointOutOfRange("checkpoint " + std::to_string(checkpoints[j]) + " outside [2, N]");
    }
    if (j > 0 && checkpoints[j] <= checkpoints[j - 1]) {
      throw CheckpointOutOfRange("checkpoints must be strictly ascending");
    }
  }

  const auto started = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    if (!options.timing) return 0.0;
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  };

  StreamState st;
  if (options.state_file) {
    if (auto loaded = load_state(*options.state_file, options.config_hash)) st = std::move(*loaded);
  }
  std::size_t next_cp = st.emitted.size();
  auto emit_through = [&](std::uint64_t bound) {
    while (next_cp < checkpoints.size() && checkpoints[next_cp] <= bound) {
      st.emitted.push_back({checkpoints[next_cp], st.running, elapsed()});
      ++next_cp;
    }
  };

  const std::vector<std::uint64_t> base_primes = small_primes(N > 1 ? isqrt(N - 1) : 0);
  const std::uint64_t span = 2 * options.segment_slots;
  const unsigned workers = std::max(1U, options.workers);

  StreamResult result;
  while (st.n_frontier < N) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> batch;
    for (std::uint64_t lo = st.n_frontier; lo < N && batch.size() < workers; lo += span) {
      batch.emplace_back(lo, std::min(N, lo + span));
    }
    auto cuts_for = [&](std::uint64_t lo, std::uint64_t hi) {
      auto first = std::upper_bound(checkpoints.begin(), checkpoints.end(), lo);
      auto last = std::lower_bound(checkpoints.begin(), checkpoints.end(), hi);
      return std::span<const std::uint64_t>(first, last);
    };

    std::vector<SegmentParts> parts;
    if (batch.size() == 1) {
      parts.push_back(count_segment(batch[0].first, batch[0].second, cuts_for(batch[0].first, batch[0].second),
                                    base_primes));
    } else {
      std::vector<std::future<SegmentParts>> pending;
      for (auto [lo, hi] : batch) {
        pending.push_back(std::async(std::launch::async, count_segment, lo, hi, cuts_for(lo, hi),
                                     std::span<const std::uint64_t>(base_primes)));
      }
      for (auto& f : pending) parts.push_back(f.get());
    }

    // Ordered fold: a segment's counters enter only after every lower segment.
    for (const auto& seg : parts) {
      emit_through(seg.lo);
      for (std::size_t j = 0; j < seg.parts.size(); ++j) {
        st.running += seg.parts[j];
        if (j + 1 < seg.parts.size()) emit_through(checkpoints[next_cp]);
      }
      st.n_frontier = seg.hi;
    }
    if (st.n_frontier >= N) emit_through(N);
    if (options.state_file) save_state(*options.state_file, options.config_hash, st);
    if (options.halt_at && st.n_frontier >= *options.halt_at && st.n_frontier < N) {
      result.complete = false;
      break;
    }
  }
  if (st.n_frontier >= N) emit_through(N);

  result.checkpoints = std::move(st.emitted);
  result.final_census = {st.n_frontier, st.running};
  return result;
}

PrimeCensus prime_parity_oracle(std::uint64_t N) {
  if (N > kOracleLimit) throw OracleRangeExceeded("prime_parity_oracle: N exceeds 10^5");
  PrimeCensus census{N, {}};
  for (std::uint64_t m = 2; m < N; ++m) {
    if (is_prime_trial(m)) census.counters.add_prime(m);
  }
  return census;
}

}  // namespace odious
