// dynsamp <subcommand> --config <path> [--out <dir>] [--seed <int>]

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "dynsamp/experiment.hpp"

namespace {

struct Options {
  std::string config;
  std::string out = ".";
  std::optional<std::uint64_t> seed;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamical sampling toolkit: frame diagnostics, constructions and recovery experiments"};
  app.require_subcommand(1);

  Options opts;
  for (const auto& kind : dynsamp::experiment_kinds()) {
    auto* sub = app.add_subcommand(kind, "Run the " + kind + " experiment");
    sub->add_option("--config", opts.config, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", opts.out, "Output directory for reports and CSVs")->capture_default_str();
    sub->add_option("--seed", opts.seed, "Override the config seed");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? dynsamp::kExitOk : dynsamp::kExitError;
  }

  const std::string kind = app.get_subcommands().front()->get_name();
  try {
    const std::filesystem::path config_path = opts.config;
    const auto config = dynsamp::io::read_json_file(config_path);
    const auto outcome = dynsamp::run_experiment(kind, config, opts.out, opts.seed, config_path.parent_path());
    for (const auto& p : outcome.written) std::cout << "wrote " << p.string() << '\n';
    std::cout << kind << ": " << outcome.report.at("verdict").get<std::string>() << '\n';
    return outcome.exit_code;
  } catch (const dynsamp::Error& e) {
    std::cerr << "dynsamp " << kind << ": " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "dynsamp " << kind << ": " << e.what() << '\n';
  }
  return dynsamp::kExitError;
}
