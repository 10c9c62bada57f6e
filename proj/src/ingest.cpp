#include "fsdaudit/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <optional>
#include <set>
#include <stdexcept>

#include "fsdaudit/errors.hpp"
#include "text_util.hpp"

namespace fsdaudit {

std::string ObservationDate::to_string() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02d", year, month);
  return buf;
}

std::size_t PricePanel::observation_count() const {
  std::size_t n = 0;
  for (const auto& [key, s] : series) n += s.points.size();
  return n;
}

DateFormat parse_date_format(const std::string& text) {
  if (text == "DD/MM/YY") return DateFormat::DayMonthYear2;
  if (text == "YYYY-MM") return DateFormat::YearMonth;
  throw ConfigError("unsupported date_format '" + text + "' (expected DD/MM/YY or YYYY-MM)");
}

std::string to_string(DateFormat format) {
  return format == DateFormat::DayMonthYear2 ? "DD/MM/YY" : "YYYY-MM";
}

namespace {

std::optional<int> parse_fixed_digits(std::string_view text) {
  if (text.empty()) return std::nullopt;
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
  if (!std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; }))
    return std::nullopt;
  return value;
}

}  // namespace

ObservationDate parse_date(const std::string& text, DateFormat format) {
  const std::string_view s = detail::trim(text);
  auto bad = [&]() {
    return InputError("malformed date '" + text + "' (expected " + to_string(format) + ")");
  };
  ObservationDate date;
  if (format == DateFormat::DayMonthYear2) {
    if (s.size() != 8 || s[2] != '/' || s[5] != '/') throw bad();
    auto day = parse_fixed_digits(s.substr(0, 2));
    auto month = parse_fixed_digits(s.substr(3, 2));
    auto year = parse_fixed_digits(s.substr(6, 2));
    if (!day || !month || !year || *day < 1 || *day > 31) throw bad();
    date.year = *year < 70 ? 2000 + *year : 1900 + *year;
    date.month = *month;
  } else {
    if (s.size() != 7 || s[4] != '-') throw bad();
    auto year = parse_fixed_digits(s.substr(0, 4));
    auto month = parse_fixed_digits(s.substr(5, 2));
    if (!year || !month) throw bad();
    date.year = *year;
    date.month = *month;
  }
  if (date.month < 1 || date.month > 12) throw bad();
  return date;
}

PricePanel parse_price_panel(std::istream& source, const PanelSchema& schema,
                             std::string provenance) {
  PricePanel panel;
  panel.provenance = std::move(provenance);

  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(source, line)) {
    ++line_no;
    detail::strip_cr(line);
    if (line_no == 1) detail::strip_bom(line);
    if (!detail::trim(line).empty()) {
      header = detail::split_delimited(line, schema.delimiter);
      break;
    }
  }
  if (header.empty()) return panel;

  auto column = [&](const std::string& name) -> std::size_t {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (detail::trim(header[i]) == name) return i;
    throw ParseError(line_no, "header has no column '" + name + "'");
  };
  const std::size_t date_col = column(schema.date_column);
  const std::size_t country_col = column(schema.country_column);
  const std::size_t sector_col = column(schema.sector_column);
  const std::size_t level_col = column(schema.level_column);
  const std::size_t needed = std::max({date_col, country_col, sector_col, level_col}) + 1;
  std::map<SeriesKey, std::set<std::int64_t>> seen;

  while (std::getline(source, line)) {
    ++line_no;
    detail::strip_cr(line);
    if (detail::trim(line).empty()) continue;
    const auto cells = detail::split_delimited(line, schema.delimiter);
    if (cells.size() < needed)
      throw ParseError(line_no, "expected at least " + std::to_string(needed) + " fields, got " +
                                    std::to_string(cells.size()));

    ObservationDate date;
    try {
      date = parse_date(cells[date_col], schema.date_format);
    } catch (const InputError& e) {
      throw ParseError(line_no, e.what());
    }
    SeriesKey key{std::string(detail::trim(cells[country_col])),
                  std::string(detail::trim(cells[sector_col]))};
    if (key.country.empty() || key.sector.empty())
      throw ParseError(line_no, "empty country or sector");

    auto [it, inserted] = panel.series.try_emplace(key);
    if (inserted) {
      it->second.country = key.country;
      it->second.sector = key.sector;
    }
    // Blank cells count as seen too: a date may appear once per series.
    if (!seen[key].insert(date.month_index()).second)
      throw ParseError(line_no, "duplicate observation for (" + key.country + ", " + key.sector +
                                    ", " + date.to_string() + ")");
    const std::string_view level_text = detail::trim(cells[level_col]);
    if (level_text.empty()) continue;

    auto level = detail::parse_double(level_text);
    if (!level) throw ParseError(line_no, "level '" + std::string(level_text) + "' is not a number");
    if (!std::isfinite(*level) || *level <= 0.0)
      throw ParseError(line_no, "level '" + std::string(level_text) + "' must be positive");
    it->second.points.push_back({date, *level});
  }

  for (auto& [key, s] : panel.series)
    std::sort(s.points.begin(), s.points.end(),
              [](const PricePoint& a, const PricePoint& b) { return a.date < b.date; });
  return panel;
}

ReturnSeries compute_log_returns(const PriceSeries& series) {
  ReturnSeries out{series.country, series.sector, {}};
  const auto& pts = series.points;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (!pts[i].date.immediately_follows(pts[i - 1].date)) continue;
    out.points.push_back({pts[i].date, 100.0 * std::log(pts[i].level / pts[i - 1].level)});
  }
  return out;
}

std::vector<ReturnSeries> compute_log_returns(const PricePanel& panel) {
  std::vector<ReturnSeries> out;
  out.reserve(panel.series.size());
  for (const auto& [key, s] : panel.series) out.push_back(compute_log_returns(s));
  return out;
}

PooledSample pool_sector(std::span<const ReturnSeries> returns, const std::string& sector) {
  PooledSample pooled{sector, {}};
  for (const auto& r : returns) {
    if (r.sector != sector)
      throw std::invalid_argument("pool_sector: series (" + r.country + ", " + r.sector +
                                  ") does not belong to sector " + sector);
    for (const auto& p : r.points) pooled.values.push_back(p.value);
  }
  return pooled;
}

PooledSample pool_matching(std::span<const ReturnSeries> returns, const std::string& sector) {
  PooledSample pooled{sector, {}};
  for (const auto& r : returns)
    if (r.sector == sector)
      for (const auto& p : r.points) pooled.values.push_back(p.value);
  return pooled;
}

std::vector<std::string> sectors_of(const PricePanel& panel) {
  std::vector<std::string> out;
  for (const auto& [key, s] : panel.series) out.push_back(key.sector);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace fsdaudit
