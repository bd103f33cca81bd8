// Command-line driver: parses flags into a RunConfig and hands it to odious::run.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "odious/cli.hpp"

namespace {

struct EnumFlags {
  std::string format = "table";
  std::string schedule = "both";
};

void add_output_flags(CLI::App* cmd, odious::RunConfig& config, EnumFlags& flags) {
  cmd->add_option("--format", flags.format, "table | csv | json-lines")
      ->check(CLI::IsMember({"table", "csv", "json-lines"}));
  cmd->add_flag_callback("--include-zero", [&config] { config.include_zero = true; }, "count m = 0 in [0, n) (default)");
  cmd->add_flag_callback("--exclude-zero", [&config] { config.include_zero = false; }, "start intervals at 1");
}

void add_sieve_flags(CLI::App* cmd, odious::RunConfig& config, EnumFlags& flags) {
  cmd->add_option("--N", config.N, "sieve bound (exclusive), at most 1e10");
  cmd->add_option("--checkpoints", flags.schedule, "dyadic | decimal | both")
      ->check(CLI::IsMember({"dyadic", "decimal", "both"}));
  cmd->add_option("--segment-size", config.segment_size, "odd slots per sieve segment")->check(CLI::PositiveNumber);
  cmd->add_option("--workers", config.workers, "segments sieved concurrently")->check(CLI::PositiveNumber);
  cmd->add_option("--state-file", config.state_file, "resumable progress file");
  cmd->add_flag("--timing", config.timing, "record wall_seconds in checkpoints");
  cmd->add_option("--halt-at", config.halt_at, "stop once this bound is reached (resume testing)");
}

}  // namespace

int main(int argc, char** argv) {
  odious::RunConfig config;
  EnumFlags flags;
  std::string config_file;
  bool dump_config = false;

  CLI::App app{"Digit-sum parity census of integers and primes"};
  app.require_subcommand(0, 1);
  app.add_option("--config", config_file, "run a serialized RunConfig (json)");
  app.add_flag("--dump-config", dump_config, "print the RunConfig as json instead of running it");

  auto* verify = app.add_subcommand("verify", "check the exact identities and bounds");
  verify->add_option("--n-max", config.n_max, "sweep bound");
  verify->add_option("--k-max", config.k_max, "largest k for the power-of-two closed forms");
  verify->add_option("--emit", config.emit, "summary | failures | all")
      ->check(CLI::IsMember({"summary", "failures", "all"}));
  add_output_flags(verify, config, flags);

  auto* excess = app.add_subcommand("excess", "evaluate one excess function");
  excess->add_option("--n", config.n, "upper bound (exclusive)")->required();
  excess->add_option("--what", config.what, "delta3 | delta3i | mu | delta_odd3 | census")
      ->check(CLI::IsMember({"delta3", "delta3i", "mu", "delta_odd3", "census"}));
  excess->add_option("--i", config.residue, "residue class for delta3i")->check(CLI::Range(0, 2));
  excess->add_flag("--odd-only", config.odd_only, "restrict to odd m");
  add_output_flags(excess, config, flags);

  auto* sieve = app.add_subcommand("sieve", "stream prime census checkpoints");
  auto* predict = app.add_subcommand("predict", "compare prime excesses with the integer-excess predictor");
  auto* fit = app.add_subcommand("fit", "log-log exponent fits");
  auto* report = app.add_subcommand("report", "every prime-side table in one run");
  for (auto* cmd : {sieve, predict, fit, report}) {
    add_sieve_flags(cmd, config, flags);
    add_output_flags(cmd, config, flags);
  }
  for (auto* cmd : {fit, report}) {
    cmd->add_option("--fit-min", config.fit_min, "smallest n used in fits");
    cmd->add_option("--svg", config.svg_file, "write a log-log scatter of pi_odious - pi_evil");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : odious::kExitUsage;
  }

  if (!config_file.empty()) {
    std::ifstream in(config_file);
    if (!in) {
      std::cerr << "cannot read " << config_file << '\n';
      return odious::kExitUsage;
    }
    try {
      config = odious::run_config_from_json(nlohmann::json::parse(in));
    } catch (const std::exception& e) {
      std::cerr << "bad config " << config_file << ": " << e.what() << '\n';
      return odious::kExitUsage;
    }
  } else {
    config.output_format = *odious::output_format_from_string(flags.format);
    config.checkpoint_schedule = *odious::schedule_from_string(flags.schedule);
    const std::pair<CLI::App*, odious::Command> commands[] = {
        {verify, odious::Command::Verify}, {excess, odious::Command::Excess}, {sieve, odious::Command::Sieve},
        {predict, odious::Command::Predict}, {fit, odious::Command::Fit},     {report, odious::Command::Report}};
    bool chosen = false;
    for (auto [cmd, id] : commands) {
      if (cmd->parsed()) {
        config.command = id;
        chosen = true;
      }
    }
    if (!chosen) {
      std::cerr << app.help();
      return odious::kExitUsage;
    }
  }

  if (dump_config) {
    std::cout << odious::to_json(config).dump(2) << '\n';
    return odious::kExitOk;
  }
  return odious::run(config, std::cout, std::cerr);
}
