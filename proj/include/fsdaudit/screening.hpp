#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "fsdaudit/ingest.hpp"

namespace fsdaudit {

/// A maximal run of bit-identical levels over consecutive calendar months.
struct RepetitionFlag {
  std::string country;
  std::string sector;
  ObservationDate start_date;
  int run_length = 0;
  double value = 0.0;

  SeriesKey key() const { return {country, sector}; }
};

enum class DeletionPolicy {
  DropRunTail,   // keep the first observation of the run
  DropEntireRun,
};

DeletionPolicy parse_deletion_policy(const std::string& text);
std::string to_string(DeletionPolicy policy);

struct ScreeningConfig {
  int min_run = 4;
  DeletionPolicy policy = DeletionPolicy::DropRunTail;

  /// Throws ConfigError when min_run < 2.
  void validate() const;
};

struct SectorCounts {
  std::size_t n_before = 0;  // returns on the raw panel
  std::size_t n_after = 0;   // returns on the adapted panel
};

struct ScreeningSummary {
  std::vector<RepetitionFlag> flags;
  std::map<SeriesKey, std::size_t> removed_observations;
  std::map<std::string, SectorCounts> sectors;
};

/// Flags every maximal run of length >= config.min_run, ordered by start date.
/// A missing month ends a run.
std::vector<RepetitionFlag> detect_repetitions(const PriceSeries& series,
                                               const ScreeningConfig& config);

/// All flags of the panel, ordered by (country, sector, start_date).
std::vector<RepetitionFlag> detect_repetitions(const PricePanel& panel,
                                               const ScreeningConfig& config);

/// Deletes flagged observations by level and reports return counts before and
/// after. Throws std::invalid_argument when a flag does not match the panel.
std::pair<PricePanel, ScreeningSummary> adapt_panel(const PricePanel& panel,
                                                    const std::vector<RepetitionFlag>& flags,
                                                    const ScreeningConfig& config);

void to_json(nlohmann::json& j, const RepetitionFlag& flag);
void to_json(nlohmann::json& j, const ScreeningSummary& summary);

/// One line per flag.
std::string render_audit_log(const std::vector<RepetitionFlag>& flags);

}  // namespace fsdaudit
