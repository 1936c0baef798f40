#pragma once

#include <filesystem>
#include <iosfwd>

#include "inflow/cli/scenario.hpp"
#include "inflow/error.hpp"

namespace inflow::cli {

inline constexpr const char* kSchema = "inflow-waves/1";

struct CommandOptions {
  std::filesystem::path out = ".";
  unsigned threads = 1;          ///< worker cap for sweeps
  std::ostream* log = nullptr;   ///< progress and summaries; null when quiet
};

/// 2 for configuration and admissibility problems, 3 for numerical failures.
int exit_code(ErrorKind k);

/// Each command validates everything it needs before it creates any file.
void cmd_classify(const Scenario& s, const CommandOptions& o);  ///< classify.csv
void cmd_profile(const Scenario& s, const CommandOptions& o);   ///< bl_profile.csv, bl_decay.csv
void cmd_wave(const Scenario& s, const CommandOptions& o);      ///< wave_t<T>.csv
void cmd_simulate(const Scenario& s, const CommandOptions& o);  ///< norms.csv, snapshot_t<T>.csv, summary.csv
void cmd_report(const Scenario& s, const CommandOptions& o);    ///< report.csv from a prior simulate

}  // namespace inflow::cli
