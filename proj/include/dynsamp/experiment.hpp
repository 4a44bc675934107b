#pragma once

// Config-driven experiment runner behind the `dynsamp` command line tool.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dynsamp/io.hpp"

namespace dynsamp {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitPropertyFails = 2;

const std::vector<std::string>& experiment_kinds();

struct ExperimentOutcome {
  int exit_code = kExitOk;
  io::json report;
  std::vector<std::filesystem::path> written;
};

/// Runs one experiment. `kind` must match config["kind"] when the latter is
/// present. Relative file references in the config resolve against
/// `config_dir`. Errors propagate as dynsamp::Error.
ExperimentOutcome run_experiment(const std::string& kind, const io::json& config,
                                 const std::filesystem::path& out_dir,
                                 std::optional<std::uint64_t> seed_override = std::nullopt,
                                 const std::filesystem::path& config_dir = {});

}  // namespace dynsamp
