#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "fsdaudit/config.hpp"
#include "fsdaudit/reporting.hpp"

namespace fsdaudit {

/// Parses and merges input files. A (country, sector) present in two files is an error.
PricePanel load_panel(const std::vector<std::filesystem::path>& inputs, const PanelSchema& schema);

/// Keeps only the listed sectors; an empty list keeps everything.
PricePanel filter_sectors(const PricePanel& panel, const std::vector<std::string>& sectors);

/// Per-sector analysis over `workers` threads. Output order is by sector name
/// and does not depend on scheduling.
VariantResults analyze_panel(const PricePanel& panel, DStarMode mode, unsigned workers);

/// Screening plus the selected variants.
ReportBundle build_report(const PricePanel& panel, const RunConfig& config);

/// Writes every table and figure file of the bundle into `dir` (created if
/// needed). Each file is written to a temporary name and renamed into place.
void write_report(const ReportBundle& bundle, const std::filesystem::path& dir, double bin_width);

void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

/// Subcommands. Return the process exit code: 0 success, 1 input error, 2 internal error.
int cmd_analyze(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_screen(const RunConfig& config, std::ostream& out, std::ostream& err);
/// One numeric value per line; blank lines are skipped.
int cmd_fsd(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Values of a one-number-per-line file. Throws ParseError with the line number.
std::vector<double> read_value_list(std::istream& in);

}  // namespace fsdaudit
