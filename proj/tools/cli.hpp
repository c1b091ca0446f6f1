#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "cotrack/metrics.hpp"
#include "cotrack/replay.hpp"

namespace cotrack::cli {

/// Entry point shared by main() and the tests. `args` excludes argv[0].
/// Returns the process exit code: 0 on success, 1 on bad input or I/O
/// failure, 2 on a command-line usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// File name -> contents, written together.
using FileSet = std::map<std::string, std::string>;

/// Writes every file into a staging directory under `dir`, then renames
/// each into place. On failure nothing new is left in `dir`.
void publish(const std::filesystem::path& dir, const FileSet& files);

/// All files a simulate run produces, keyed by name.
FileSet simulate_outputs(const RunRecord& record, const MetricsReport& report);

/// Metrics files only (metrics.csv, dfd.csv and the per-device CDFs).
FileSet metrics_outputs(const MetricsReport& report);

std::string sweep_csv(const std::vector<SweepCell>& cells);

/// One-line human summary of a report.
std::string summary_line(const MetricsReport& report);

/// Default sweep grids. The extreme values stand for "never eligible" and
/// "always trusted".
std::vector<std::int32_t> default_lowers();
std::vector<std::int32_t> default_uppers();

}  // namespace cotrack::cli
