#pragma once

#include <iosfwd>
#include <optional>
#include <string>

namespace pacdyn::cli {

/// Process exit codes.
enum ExitCode : int {
    kOk = 0,
    kVerifyFailed = 1,
    kConfigError = 2,
    kSolverError = 3,
    kIoError = 4,
};

struct RunOptions {
    std::string config_path;
    std::optional<std::string> out_dir;  // overrides output_dir from the config
    std::optional<long> max_steps;
    std::optional<long> snapshot_every;
    bool quiet = false;
};

/// Writes manifest.json, series.csv and snap_<step>.csv into the output
/// directory. Nothing is created when the configuration cannot be loaded.
int cmd_run(const RunOptions& opts, std::ostream& out, std::ostream& err);

struct VerifyOptions {
    std::string run_dir;
    double mass_tol = 1e-8;
};

/// Re-audits mass conservation and energy decay from a run directory.
int cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err);

int cmd_list_examples(bool json, std::ostream& out);

/// Full command-line entry point (argument parsing included).
int main_entry(int argc, char** argv);

} // namespace pacdyn::cli
