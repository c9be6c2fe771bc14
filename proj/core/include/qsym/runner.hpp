#pragma once

#include <string>

#include "qsym/config.hpp"

namespace qsym {

enum ExitCode : int { kExitPass = 0, kExitFail = 1, kExitConfig = 2, kExitInfra = 3 };

inline const char* const kCommands[] = {"constants", "cone-verify", "domain-verify",
                                        "sbt-run",   "serrin-run",  "report"};

bool is_command(const std::string& name);

// Runs one subcommand, writing its CSV files under cfg.out. Diagnostics go
// to stderr; the return value follows the exit-code contract above.
int execute(const RunConfig& cfg);

}  // namespace qsym
