#pragma once

#include <compare>
#include <cstdint>
#include <istream>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fsdaudit {

/// Calendar month. Day-of-month is dropped at parse time.
struct ObservationDate {
  int year = 0;
  int month = 1;  // 1..12

  auto operator<=>(const ObservationDate&) const = default;

  /// Months since year 0; two dates are adjacent iff their indices differ by 1.
  std::int64_t month_index() const noexcept {
    return static_cast<std::int64_t>(year) * 12 + (month - 1);
  }

  bool immediately_follows(const ObservationDate& prev) const noexcept {
    return month_index() == prev.month_index() + 1;
  }

  /// "YYYY-MM"
  std::string to_string() const;
};

struct PricePoint {
  ObservationDate date;
  double level = 0.0;  // index points, > 0
};

struct SeriesKey {
  std::string country;
  std::string sector;

  auto operator<=>(const SeriesKey&) const = default;
};

/// Dated index levels for one (country, sector). Points are strictly increasing
/// in date; missing months are simply absent.
struct PriceSeries {
  std::string country;
  std::string sector;
  std::vector<PricePoint> points;

  SeriesKey key() const { return {country, sector}; }
};

struct PricePanel {
  std::map<SeriesKey, PriceSeries> series;
  std::string provenance;

  std::size_t observation_count() const;
};

struct ReturnPoint {
  ObservationDate date;  // the later month of the pair
  double value = 0.0;    // percent
};

struct ReturnSeries {
  std::string country;
  std::string sector;
  std::vector<ReturnPoint> points;
};

/// Returns of one sector unioned across countries and months.
struct PooledSample {
  std::string sector;
  std::vector<double> values;  // percent

  std::size_t n() const noexcept { return values.size(); }
};

enum class DateFormat { DayMonthYear2, YearMonth };  // "DD/MM/YY", "YYYY-MM"

/// Column mapping for long-format panel files.
struct PanelSchema {
  char delimiter = ',';
  DateFormat date_format = DateFormat::YearMonth;
  std::string date_column = "date";
  std::string country_column = "country";
  std::string sector_column = "sector";
  std::string level_column = "level";
};

DateFormat parse_date_format(const std::string& text);
std::string to_string(DateFormat format);

/// Parses one date cell. Throws InputError on malformed text.
/// Two-digit years map to 2000..2069 for 00..69 and 1970..1999 for 70..99.
ObservationDate parse_date(const std::string& text, DateFormat format);

/// Reads a delimiter-separated panel with a header row. Blank level cells
/// register the series but add no point. Throws ParseError naming the line.
PricePanel parse_price_panel(std::istream& source, const PanelSchema& schema,
                             std::string provenance = {});

/// 100 * ln(P_t / P_{t-1}) for every pair of adjacent calendar months.
ReturnSeries compute_log_returns(const PriceSeries& series);

std::vector<ReturnSeries> compute_log_returns(const PricePanel& panel);

/// Pools the given series; each must belong to `sector` (std::invalid_argument otherwise).
PooledSample pool_sector(std::span<const ReturnSeries> returns, const std::string& sector);

/// Convenience: pools the series of `returns` whose sector matches, skipping others.
PooledSample pool_matching(std::span<const ReturnSeries> returns, const std::string& sector);

/// Sorted, de-duplicated sector names present in the panel.
std::vector<std::string> sectors_of(const PricePanel& panel);

}  // namespace fsdaudit
