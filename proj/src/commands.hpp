#pragma once

#include <string>
#include <vector>

#include "config.hpp"
#include "jsonutil.hpp"

namespace seelab {

struct CommandResult {
    int exit_code = 0;          ///< 0 pass, 1 the examined property failed
    json report;                ///< machine report, 12 significant digits
    std::string summary;        ///< one line for humans, 6 significant digits
    std::vector<std::string> files; ///< paths written, the JSON report first
};

/// Execute one subcommand against a decoded configuration.  Writes
/// <command>.json plus any CSV series into out_dir (created if missing).
/// Scientific negatives (failed check, no absorption, slow decay) come back
/// as exit_code 1 with a full report; malformed input or violated structural
/// preconditions throw instead.  Reports never mention worker counts or wall
/// time, so outputs are byte-identical across thread settings.
CommandResult run_command(Command cmd, const RunConfig& rc,
                          const std::string& out_dir, int threads);

} // namespace seelab
