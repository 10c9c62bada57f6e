#include "fsdaudit/screening.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>


#include "fsdaudit/errors.hpp"
#include "fsdaudit/format.hpp"

namespace fsdaudit {

DeletionPolicy parse_deletion_policy(const std::string& text) {
  if (text == "drop-run-tail") return DeletionPolicy::DropRunTail;
  if (text == "drop-entire-run") return DeletionPolicy::DropEntireRun;
  throw ConfigError("unknown policy '" + text + "' (expected drop-run-tail or drop-entire-run)");
}

std::string to_string(DeletionPolicy policy) {
  return policy == DeletionPolicy::DropRunTail ? "drop-run-tail" : "drop-entire-run";
}

void ScreeningConfig::validate() const {
  if (min_run < 2) throw ConfigError("min_run must be at least 2, got " + std::to_string(min_run));
}

std::vector<RepetitionFlag> detect_repetitions(const PriceSeries& series,
                                               const ScreeningConfig& config) {
  config.validate();
  std::vector<RepetitionFlag> flags;
  const auto& pts = series.points;
  std::size_t start = 0;
  while (start < pts.size()) {
    std::size_t end = start + 1;
    while (end < pts.size() && pts[end].level == pts[start].level &&
           pts[end].date.immediately_follows(pts[end - 1].date))
      ++end;
    const auto length = static_cast<int>(end - start);
    if (length >= config.min_run)
      flags.push_back({series.country, series.sector, pts[start].date, length, pts[start].level});
    start = end;
  }
  return flags;
}

std::vector<RepetitionFlag> detect_repetitions(const PricePanel& panel,
                                               const ScreeningConfig& config) {
  std::vector<RepetitionFlag> flags;
  for (const auto& [key, s] : panel.series) {
    auto f = detect_repetitions(s, config);
    flags.insert(flags.end(), f.begin(), f.end());
  }
  return flags;
}

namespace {

std::map<std::string, std::size_t> returns_per_sector(const PricePanel& panel) {
  std::map<std::string, std::size_t> out;
  for (const auto& [key, s] : panel.series)
    out[key.sector] += compute_log_returns(s).points.size();
  return out;
}

}  // namespace

std::pair<PricePanel, ScreeningSummary> adapt_panel(const PricePanel& panel,
                                                    const std::vector<RepetitionFlag>& flags,
                                                    const ScreeningConfig& config) {
  config.validate();
  std::map<SeriesKey, std::set<std::int64_t>> doomed;
  for (const auto& flag : flags) {
    auto it = panel.series.find(flag.key());
    if (it == panel.series.end())
      throw std::invalid_argument("repetition flag references unknown series (" + flag.country +
                                  ", " + flag.sector + ")");
    const auto& pts = it->second.points;
    auto first = std::find_if(pts.begin(), pts.end(),
                              [&](const PricePoint& p) { return p.date == flag.start_date; });
    if (first == pts.end() || flag.run_length < 2 ||
        pts.end() - first < flag.run_length)
      throw std::invalid_argument("repetition flag does not match series (" + flag.country + ", " +
                                  flag.sector + ") at " + flag.start_date.to_string());
    auto& dates = doomed[flag.key()];
    const int skip = config.policy == DeletionPolicy::DropRunTail ? 1 : 0;
    for (int i = 0; i < flag.run_length; ++i) {
      const auto& p = first[i];
      if (p.level != flag.value || (i > 0 && !p.date.immediately_follows(first[i - 1].date)))
        throw std::invalid_argument("repetition flag does not match series (" + flag.country +
                                    ", " + flag.sector + ") at " + p.date.to_string());
      if (i >= skip) dates.insert(p.date.month_index());
    }
  }

  PricePanel adapted;
  adapted.provenance = panel.provenance;
  ScreeningSummary summary;
  summary.flags = flags;
  for (const auto& [key, s] : panel.series) {
    PriceSeries out{s.country, s.sector, {}};
    auto d = doomed.find(key);
    for (const auto& p : s.points)
      if (d == doomed.end() || !d->second.contains(p.date.month_index())) out.points.push_back(p);
    const std::size_t removed = s.points.size() - out.points.size();
    if (removed > 0) summary.removed_observations[key] = removed;
    adapted.series.emplace(key, std::move(out));
  }

  for (const auto& [sector, n] : returns_per_sector(panel)) summary.sectors[sector].n_before = n;
  for (const auto& [sector, n] : returns_per_sector(adapted)) summary.sectors[sector].n_after = n;
  return {std::move(adapted), std::move(summary)};
}

void to_json(nlohmann::json& j, const RepetitionFlag& flag) {
  j = {{"country", flag.country},
       {"sector", flag.sector},
       {"start_date", flag.start_date.to_string()},
       {"run_length", flag.run_length},
       {"value", flag.value}};
}

void to_json(nlohmann::json& j, const ScreeningSummary& summary) {
  j = nlohmann::json::object();
  j["flags"] = summary.flags;
  auto removed = nlohmann::json::array();
  for (const auto& [key, n] : summary.removed_observations)
    removed.push_back({{"country", key.country}, {"sector", key.sector}, {"count", n}});
  j["removed_observations"] = std::move(removed);
  auto sectors = nlohmann::json::array();
  for (const auto& [sector, c] : summary.sectors)
    sectors.push_back({{"sector", sector}, {"n_before", c.n_before}, {"n_after", c.n_after}});
  j["sectors"] = std::move(sectors);
}

std::string render_audit_log(const std::vector<RepetitionFlag>& flags) {
  std::ostringstream os;
  for (const auto& f : flags) {
    os << "REPETITION country=" << f.country << " sector=" << f.sector
       << " start=" << f.start_date.to_string() << " run_length=" << f.run_length
       << " value=" << format_shortest(f.value) << '\n';
  }
  return os.str();
}

}  // namespace fsdaudit
