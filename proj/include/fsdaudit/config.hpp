#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <string>
#include <vector>

#include "fsdaudit/conformance.hpp"
#include "fsdaudit/ingest.hpp"
#include "fsdaudit/screening.hpp"

namespace fsdaudit {

/// Flat `key = value` settings. Blank lines and lines starting with '#' are ignored.
using KeyValues = std::map<std::string, std::string>;

KeyValues parse_key_values(std::istream& in);
KeyValues load_key_values(const std::filesystem::path& path);

/// Reads delimiter, date_format and {date,country,sector,level}_column.
/// delimiter accepts a single character or the names "comma", "tab", "semicolon", "pipe".
PanelSchema schema_from(const KeyValues& kv);

enum class VariantSelection { RawOnly, AdaptedOnly, Both };
VariantSelection parse_variant_selection(const std::string& text);

struct RunConfig {
  std::vector<std::filesystem::path> inputs;
  PanelSchema schema;
  ScreeningConfig screening;
  DStarMode dstar_mode = DStarMode::TableConsistent;
  std::filesystem::path out_dir;
  std::vector<std::string> sectors;  // empty means all
  VariantSelection variants = VariantSelection::Both;
  unsigned workers = 0;  // 0 means hardware concurrency
  double bin_width = 1.0;
};

/// Builds a RunConfig from settings; unknown keys are rejected.
/// Keys: input (comma-separated), out, min_run, policy, dstar_mode, sectors,
/// variant, workers, bin_width, plus the schema keys.
RunConfig run_config_from(const KeyValues& kv);

}  // namespace fsdaudit
