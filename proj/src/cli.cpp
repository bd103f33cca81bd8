#include "odious/cli.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <ostream>

#include "odious/analysis.hpp"
#include "odious/census.hpp"
#include "odious/identities.hpp"

namespace odious {

namespace {

bool is_decimal_point(std::uint64_t n) {
  while (n >= 10 && n % 10 == 0) n /= 10;
  return n == 1 || n == 3;
}

std::vector<std::uint64_t> sieve_checkpoints(const RunConfig& config) {
  auto cps = checkpoint_schedule(config.N, config.checkpoint_schedule);
  if (config.N >= 2 && (cps.empty() || cps.back() != config.N)) cps.push_back(config.N);
  return cps;
}

std::optional<StreamResult> run_sieve(const RunConfig& config, std::ostream& err) {
  StreamOptions options;
  options.segment_slots = config.segment_size;
  options.workers = config.workers;
  options.timing = config.timing;
  if (config.state_file) options.state_file = *config.state_file;
  options.config_hash = config_hash(config);
  options.halt_at = config.halt_at;
  const auto cps = sieve_checkpoints(config);
  auto result = prime_census_stream(config.N, cps, options);
  if (!result.complete) {
    err << "sieve halted at frontier " << result.final_census.n_frontier << " of " << config.N
        << "; re-run with the same state file to resume\n";
    return std::nullopt;
  }
  return result;
}

// Counter conservation at every checkpoint; returns the failing reports.
std::vector<IdentityReport> conservation_failures(std::span<const Checkpoint> cps, std::ostream& err) {
  std::vector<IdentityReport> failed;
  for (const auto& cp : cps) {
    if (cp.counters.pi != cp.counters.pi_odious + cp.counters.pi_evil) {
      err << "counter mismatch at n = " << cp.n << ": pi != pi_odious + pi_evil\n";
    }
  }
  for (const auto& r : verify_prime_decomposition(cps)) {
    if (!r.passed) {
      err << "decomposition fails at n = " << r.n << '\n';
      failed.push_back(r);
    }
  }
  return failed;
}

bool totals_consistent(std::span<const Checkpoint> cps) {
  return std::all_of(cps.begin(), cps.end(), [](const Checkpoint& cp) {
    return cp.counters.pi == cp.counters.pi_odious + cp.counters.pi_evil;
  });
}

struct SuiteSummary {
  IdentityId id;
  bool include_zero;
  std::string role;
  std::uint64_t checked = 0;
  std::uint64_t failed = 0;
  std::optional<std::uint64_t> first_failure;
};

void summarize(std::span<const IdentityReport> reports, const std::string& role, std::vector<SuiteSummary>& out) {
  for (const auto& r : reports) {
    auto it = std::find_if(out.begin(), out.end(), [&](const SuiteSummary& s) {
      return s.id == r.identity_id && s.include_zero == r.include_zero && s.role == role;
    });
    if (it == out.end()) {
      out.push_back({r.identity_id, r.include_zero, role, 0, 0, std::nullopt});
      it = std::prev(out.end());
    }
    ++it->checked;
    if (!r.passed) {
      ++it->failed;
      if (!it->first_failure) it->first_failure = r.n;
    }
  }
}

Record to_record(const SuiteSummary& s) {
  Field first = s.first_failure ? uint_field("first_failure", *s.first_failure) : Field{"first_failure", FieldKind::Null, ""};
  return {text_field("record", "summary"),
          text_field("identity_id", std::string(to_string(s.id))),
          text_field("convention", s.include_zero ? "include_zero" : "exclude_zero"),
          text_field("role", s.role),
          uint_field("checked", s.checked),
          uint_field("failed", s.failed),
          first};
}

template <typename T>
void append(std::vector<Record>& records, const std::vector<T>& items) {
  for (const auto& item : items) records.push_back(to_record(item));
}

int run_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.emit != "summary" && config.emit != "failures" && config.emit != "all") {
    err << "--emit must be summary, failures or all\n";
    return kExitUsage;
  }
  const bool conv = config.include_zero;
  std::vector<IdentityReport> primary;
  auto take = [](std::vector<IdentityReport>& into, std::vector<IdentityReport> more) {
    into.insert(into.end(), more.begin(), more.end());
  };
  take(primary, verify_eq6(config.n_max / 4));
  take(primary, verify_lemma1(config.n_max));
  take(primary, sweep_eq8(config.n_max, conv));
  take(primary, verify_eq9(config.n_max, conv));
  take(primary, verify_eq11(config.n_max));
  take(primary, sweep_eq12(config.n_max, conv));
  if (config.k_max >= 2) take(primary, verify_eq13(config.k_max));

  // The alternate zero convention only moves the identities that count m = 0.
  std::vector<IdentityReport> alternate;
  take(alternate, sweep_eq8(config.n_max, !conv));
  take(alternate, verify_eq9(config.n_max, !conv));
  take(alternate, sweep_eq12(config.n_max, !conv));

  const auto informational = eq13_base_case();

  std::vector<SuiteSummary> summaries;
  summarize(primary, "default", summaries);
  summarize(alternate, "alternate", summaries);
  summarize(informational, "informational", summaries);

  std::vector<Record> records;
  append(records, summaries);
  auto emit_reports = [&](const std::vector<IdentityReport>& reports, bool failures_only) {
    for (const auto& r : reports) {
      if (!failures_only || !r.passed) records.push_back(to_record(r));
    }
  };
  if (config.emit == "all") {
    emit_reports(primary, false);
    emit_reports(alternate, false);
    emit_reports(informational, false);
  } else {
    emit_reports(primary, true);
    if (config.emit == "failures") emit_reports(alternate, true);
  }
  write_records(out, records, config.output_format);

  const bool ok = std::all_of(primary.begin(), primary.end(), [](const IdentityReport& r) { return r.passed; });
  return ok ? kExitOk : kExitIdentityFailure;
}

int run_excess(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.residue > 2) {
    err << "--i must be 0, 1 or 2\n";
    return kExitUsage;
  }
  if (config.what == "census") {
    const auto table = census_fast(config.n, config.odd_only, config.include_zero);
    std::vector<Record> records;
    for (unsigned r = 0; r < 3; ++r) {
      for (auto p : {ParityClass::Evil, ParityClass::Odious}) {
        records.push_back({text_field("record", "census"), uint_field("n", config.n), uint_field("residue", r),
                           text_field("parity", std::string(to_string(p))), bool_field("odd_only", config.odd_only),
                           bool_field("include_zero", config.include_zero),
                           uint_field("count", table.count(Residue3(r), p))});
      }
    }
    write_records(out, records, config.output_format);
    return kExitOk;
  }

  std::int64_t value = 0;
  if (config.what == "delta3") {
    if (config.n < 1) {
      err << "delta3 requires n >= 1\n";
      return kExitUsage;
    }
    value = delta_3(config.n, config.include_zero);
  } else if (config.what == "delta3i") {
    value = delta_3_i(config.n, Residue3(config.residue), config.odd_only, config.include_zero);
  } else if (config.what == "mu") {
    value = mu_excess(config.n);
  } else if (config.what == "delta_odd3") {
    value = delta_odd_3_total(config.n);
  } else {
    err << "unknown --what '" << config.what << "'\n";
    return kExitUsage;
  }
  if (config.output_format == OutputFormat::Table) {
    out << value << '\n';
    return kExitOk;
  }
  const std::vector<Record> records = {
      {text_field("record", "excess"), text_field("what", config.what), uint_field("n", config.n),
       uint_field("i", config.residue), bool_field("odd_only", config.odd_only),
       bool_field("include_zero", config.include_zero), int_field("value", value)}};
  write_records(out, records, config.output_format);
  return kExitOk;
}

struct NamedSeries {
  std::string series;
  std::string schedule;
  std::vector<std::pair<std::uint64_t, double>> samples;
};

Record fit_record(const NamedSeries& s) {
  Record r = {text_field("record", "fit"), text_field("series", s.series), text_field("schedule", s.schedule)};
  try {
    const auto fit = exponent_fit(s.samples);
    r.push_back(uint_field("points", fit.points.size()));
    r.push_back(uint_field("skipped", fit.skipped.size()));
    r.push_back(real_field("slope", fit.slope));
    r.push_back(real_field("intercept", fit.intercept));
    r.push_back(real_field("max_abs_residual", fit.max_abs_residual));
    r.push_back(real_field("deviation", fit.slope - alpha()));
  } catch (const InsufficientPoints&) {
    std::uint64_t usable = 0;
    for (const auto& [n, y] : s.samples) usable += y > 0.0 ? 1 : 0;
    r.push_back(uint_field("points", usable));
    r.push_back(uint_field("skipped", s.samples.size() - usable));
    for (const char* name : {"slope", "intercept", "max_abs_residual", "deviation"}) {
      r.push_back(real_field(name, std::optional<double>{}));
    }
  }
  r.push_back(real_field("alpha", alpha()));
  return r;
}

std::vector<NamedSeries> fit_series(const RunConfig& config, std::span<const Checkpoint> cps) {
  NamedSeries prime_decimal{"prime_excess", "decimal", {}};
  NamedSeries prime_dyadic{"prime_excess", "dyadic", {}};
  NamedSeries residue1{"prime_excess_31", "dyadic", {}};
  NamedSeries residue2{"prime_evil_excess_32", "odd_power_of_two", {}};
  for (const auto& cp : cps) {
    if (cp.n < config.fit_min) continue;
    const double y = static_cast<double>(static_cast<std::int64_t>(cp.counters.pi_odious) -
                                         static_cast<std::int64_t>(cp.counters.pi_evil));
    if (is_decimal_point(cp.n)) prime_decimal.samples.emplace_back(cp.n, y);
    if (std::has_single_bit(cp.n)) {
      prime_dyadic.samples.emplace_back(cp.n, y);
      residue1.samples.emplace_back(cp.n, static_cast<double>(cp.counters.delta_primes_31()));
      if (std::countr_zero(cp.n) % 2 == 1) {
        residue2.samples.emplace_back(cp.n, static_cast<double>(-cp.counters.delta_primes_32()));
      }
    }
  }
  NamedSeries newman{"delta3", "powers_of_four", {}};
  for (unsigned k = 1; k <= 10; ++k) {
    const std::uint64_t n = std::uint64_t{1} << (2 * k);
    newman.samples.emplace_back(n, static_cast<double>(delta_3(n, config.include_zero)));
  }
  NamedSeries odd_total{"delta_odd3", "dyadic", {}};
  for (unsigned j = 2; j <= 40; ++j) {
    const std::uint64_t n = std::uint64_t{1} << j;
    odd_total.samples.emplace_back(n, static_cast<double>(delta_odd_3_total(n)));
  }
  return {prime_decimal, prime_dyadic, residue1, residue2, newman, odd_total};
}

bool write_svg(const RunConfig& config, std::span<const Checkpoint> cps, std::ostream& err) {
  if (!config.svg_file) return true;
  std::vector<std::pair<std::uint64_t, double>> samples;
  for (const auto& cp : cps) {
    samples.emplace_back(cp.n, static_cast<double>(static_cast<std::int64_t>(cp.counters.pi_odious) -
                                                   static_cast<std::int64_t>(cp.counters.pi_evil)));
  }
  std::ofstream file(*config.svg_file);
  if (!file) {
    err << "cannot write " << *config.svg_file << '\n';
    return false;
  }
  file << loglog_svg(samples, "pi_odious(n) - pi_evil(n)");
  return true;
}

int run_sieve_family(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto result = run_sieve(config, err);
  if (!result) return kExitOk;
  const auto& cps = result->checkpoints;
  const auto failures = conservation_failures(cps, err);
  const bool ok = failures.empty() && totals_consistent(cps);

  std::vector<Record> records;
  switch (config.command) {
    case Command::Sieve:
      append(records, cps);
      break;
    case Command::Predict:
      for (const auto& cp : cps) {
        if (cp.n < 2) continue;
        for (unsigned i : {1U, 2U}) records.push_back(to_record(heuristic_predict(cp.n, Residue3(i), cps)));
      }
      append(records, regime_diagnostics(cps));
      break;
    case Command::Fit:
      for (const auto& s : fit_series(config, cps)) records.push_back(fit_record(s));
      if (!write_svg(config, cps, err)) return kExitUsage;
      break;
    case Command::Report: {
      append(records, cps);
      append(records, ratio_convergence(cps));
      append(records, closing_limits_table(cps));
      append(records, regime_diagnostics(cps));
      std::vector<std::uint64_t> ns;
      for (const auto& cp : cps) ns.push_back(cp.n);
      append(records, odd_excess_growth(ns));
      for (const auto& s : fit_series(config, cps)) records.push_back(fit_record(s));
      std::vector<SuiteSummary> summaries;
      summarize(verify_prime_decomposition(cps), "default", summaries);
      append(records, summaries);
      if (!write_svg(config, cps, err)) return kExitUsage;
      break;
    }
    default:
      break;
  }
  write_records(out, records, config.output_format);
  return ok ? kExitOk : kExitIdentityFailure;
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

std::string_view to_string(Command c) noexcept {
  switch (c) {
    case Command::Verify:
      return "verify";
    case Command::Excess:
      return "excess";
    case Command::Sieve:
      return "sieve";
    case Command::Predict:
      return "predict";
    case Command::Fit:
      return "fit";
    case Command::Report:
      return "report";
  }
  return "verify";
}

std::optional<Command> command_from_string(std::string_view s) noexcept {
  for (auto c : {Command::Verify, Command::Excess, Command::Sieve, Command::Predict, Command::Fit, Command::Report}) {
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

std::string_view to_string(CheckpointSchedule s) noexcept {
  switch (s) {
    case CheckpointSchedule::Dyadic:
      return "dyadic";
    case CheckpointSchedule::Decimal:
      return "decimal";
    case CheckpointSchedule::Both:
      return "both";
  }
  return "both";
}

std::optional<CheckpointSchedule> schedule_from_string(std::string_view s) noexcept {
  for (auto v : {CheckpointSchedule::Dyadic, CheckpointSchedule::Decimal, CheckpointSchedule::Both}) {
    if (to_string(v) == s) return v;
  }
  return std::nullopt;
}

nlohmann::json to_json(const RunConfig& c) {
  nlohmann::json j;
  j["command"] = to_string(c.command);
  j["n_max"] = c.n_max;
  j["k_max"] = c.k_max;
  j["emit"] = c.emit;
  j["n"] = c.n;
  j["what"] = c.what;
  j["i"] = c.residue;
  j["odd_only"] = c.odd_only;
  j["N"] = c.N;
  j["segment_size"] = c.segment_size;
  j["workers"] = c.workers;
  j["checkpoint_schedule"] = to_string(c.checkpoint_schedule);
  j["state_file"] = c.state_file ? nlohmann::json(*c.state_file) : nlohmann::json(nullptr);
  j["timing"] = c.timing;
  j["halt_at"] = c.halt_at ? nlohmann::json(*c.halt_at) : nlohmann::json(nullptr);
  j["fit_min"] = c.fit_min;
  j["svg_file"] = c.svg_file ? nlohmann::json(*c.svg_file) : nlohmann::json(nullptr);
  j["include_zero"] = c.include_zero;
  j["output_format"] = to_string(c.output_format);
  return j;
}

RunConfig run_config_from_json(const nlohmann::json& j) {
  RunConfig c;
  auto get = [&](const char* key, auto& into) {
    if (j.contains(key)) j.at(key).get_to(into);
  };
  auto get_optional = [&](const char* key, auto& into) {
    if (j.contains(key) && !j.at(key).is_null()) into = j.at(key).get<typename std::decay_t<decltype(into)>::value_type>();
  };
  if (j.contains("command")) {
    const auto cmd = command_from_string(j.at("command").get<std::string>());
    if (!cmd) throw std::invalid_argument("unknown command in config");
    c.command = *cmd;
  }
  get("n_max", c.n_max);
  get("k_max", c.k_max);
  get("emit", c.emit);
  get("n", c.n);
  get("what", c.what);
  get("i", c.residue);
  get("odd_only", c.odd_only);
  get("N", c.N);
  get("segment_size", c.segment_size);
  get("workers", c.workers);
  if (j.contains("checkpoint_schedule")) {
    const auto s = schedule_from_string(j.at("checkpoint_schedule").get<std::string>());
    if (!s) throw std::invalid_argument("unknown checkpoint schedule in config");
    c.checkpoint_schedule = *s;
  }
  get_optional("state_file", c.state_file);
  get("timing", c.timing);
  get_optional("halt_at", c.halt_at);
  get("fit_min", c.fit_min);
  get_optional("svg_file", c.svg_file);
  get("include_zero", c.include_zero);
  if (j.contains("output_format")) {
    const auto f = output_format_from_string(j.at("output_format").get<std::string>());
    if (!f) throw std::invalid_argument("unknown output format in config");
    c.output_format = *f;
  }
  return c;
}

std::uint64_t config_hash(const RunConfig& config) {
  nlohmann::json key;
  key["N"] = config.N;
  key["checkpoint_schedule"] = to_string(config.checkpoint_schedule);
  key["include_zero"] = config.include_zero;
  return fnv1a(key.dump());
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    switch (config.command) {
      case Command::Verify:
        return run_verify(config, out, err);
      case Command::Excess:
        return run_excess(config, out, err);
      case Command::Sieve:
      case Command::Predict:
      case Command::Fit:
      case Command::Report:
        return run_sieve_family(config, out, err);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace odious
