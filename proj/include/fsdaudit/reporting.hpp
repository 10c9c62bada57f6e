#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "fsdaudit/conformance.hpp"
#include "fsdaudit/digits.hpp"
#include "fsdaudit/ingest.hpp"
#include "fsdaudit/screening.hpp"

namespace fsdaudit {

enum class Variant { Raw, Adapted };
std::string to_string(Variant v);

enum class TableFormat { Text, Csv };

/// Everything computed for one sector of one variant. Statistics that are
/// undefined for the sample (empty pool, no nonzero returns) are absent.
struct SectorResult {
  std::string sector;
  PooledSample sample;
  std::optional<DescriptiveStats> stats;
  FsdDistribution fsd;
  std::optional<ConformanceReport> conformance;
};

/// Sectors ordered by name.
struct VariantResults {
  std::vector<SectorResult> sectors;
};

/// Builds a SectorResult from a pooled sample.
SectorResult analyze_sample(PooledSample sample, const BenfordReference& ref, DStarMode mode);

struct ReportBundle {
  std::optional<VariantResults> raw;
  std::optional<VariantResults> adapted;
  std::optional<ScreeningSummary> screening;

  /// Throws std::invalid_argument when the variant was not computed.
  const VariantResults& results(Variant v) const;
  /// Throws std::invalid_argument when raw and adapted cover different sectors.
  void validate() const;
};

/// Obs and e_1..e_9 in percent per sector, closed by the "FSD BL" reference row.
std::string render_frequency_table(const ReportBundle& bundle, Variant variant,
                                   TableFormat format = TableFormat::Csv);
/// corr, chi2, M (pct points), d*, a* per sector. Text marks 1% significance with "**".
std::string render_conformance_table(const ReportBundle& bundle, Variant variant,
                                     TableFormat format = TableFormat::Csv);
/// N, mean, std dev, min, max per sector to 6 decimals.
std::string render_descriptive_table(const ReportBundle& bundle, Variant variant,
                                     TableFormat format = TableFormat::Csv);

nlohmann::json frequency_table_json(const ReportBundle& bundle, Variant variant);
nlohmann::json conformance_table_json(const ReportBundle& bundle, Variant variant);

/// Row of a frequency CSV read back in.
struct FrequencyRow {
  std::string sector;
  std::optional<std::uint64_t> obs;
  std::optional<std::array<double, 9>> percent;
};

/// Inverse of render_frequency_table(..., Csv). Throws ParseError on bad input.
std::vector<FrequencyRow> parse_frequency_table_csv(const std::string& csv);

struct HistogramBin {
  double left_edge = 0.0;
  std::size_t count = 0;
};

/// Contiguous bins of width `bin_width` from floor(min / w) * w up to the bin holding max.
struct HistogramSpec {
  double bin_width = 1.0;
  double lo = 0.0;
  double hi = 0.0;
  std::vector<HistogramBin> bins;

  std::size_t total() const;
};

/// Throws InputError for an empty sample, std::invalid_argument for bin_width <= 0.
HistogramSpec histogram_data(const PooledSample& sample, double bin_width = 1.0);

/// sector,left_edge,count for every sector with data.
std::string render_histogram_csv(const ReportBundle& bundle, Variant variant,
                                 double bin_width = 1.0);

struct BarChartRow {
  int digit = 0;
  double observed_percent = 0.0;
  double benford_percent = 0.0;
};

/// Throws EmptyDistributionError when the distribution is empty.
std::array<BarChartRow, 9> bar_chart_data(const FsdDistribution& dist, const BenfordReference& ref);

/// sector,digit,observed_percent,benford_percent
std::string render_bar_chart_csv(const ReportBundle& bundle, Variant variant);

}  // namespace fsdaudit
