#include "fsdaudit/reporting.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fsdaudit/errors.hpp"
#include "fsdaudit/format.hpp"
#include "text_util.hpp"

namespace fsdaudit {

std::string to_string(Variant v) { return v == Variant::Raw ? "raw" : "adapted"; }

SectorResult analyze_sample(PooledSample sample, const BenfordReference& ref, DStarMode mode) {
  SectorResult r;
  r.sector = sample.sector;
  if (sample.n() > 0) r.stats = descriptive_stats(sample);
  r.fsd = fsd_distribution(sample);
  if (!r.fsd.empty()) r.conformance = conformance_report(sample.sector, r.fsd, ref, mode);
  r.sample = std::move(sample);
  return r;
}

const VariantResults& ReportBundle::results(Variant v) const {
  const auto& slot = v == Variant::Raw ? raw : adapted;
  if (!slot) throw std::invalid_argument("report bundle has no " + to_string(v) + " results");
  return *slot;
}

void ReportBundle::validate() const {
  if (!raw || !adapted) return;
  auto names = [](const VariantResults& r) {
    std::vector<std::string> out;
    for (const auto& s : r.sectors) out.push_back(s.sector);
    return out;
  };
  if (names(*raw) != names(*adapted))
    throw std::invalid_argument("raw and adapted results cover different sectors");
}

namespace {

const std::string kNa = "NA";
const std::string kReferenceLabel = "FSD BL";

/// Pads columns; first column left-aligned, the rest right-aligned.
std::string layout(const std::vector<std::vector<std::string>>& rows, TableFormat format) {
  std::ostringstream os;
  if (format == TableFormat::Csv) {
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
      os << '\n';
    }
    return os.str();
  }
  std::vector<std::size_t> width;
  for (const auto& row : rows)
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (width.size() <= i) width.push_back(0);
      width[i] = std::max(width[i], row[i].size());
    }
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      const std::string pad(width[i] - row[i].size(), ' ');
      if (i == 0)
        line += row[i] + pad;
      else
        line += "  " + pad + row[i];
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    os << line << '\n';
  }
  return os.str();
}

const VariantResults& checked(const ReportBundle& bundle, Variant variant) {
  bundle.validate();
  return bundle.results(variant);
}

}  // namespace

std::string render_frequency_table(const ReportBundle& bundle, Variant variant,
                                   TableFormat format) {
  const auto& results = checked(bundle, variant);
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"sector", "obs", "1", "2", "3", "4", "5", "6", "7", "8", "9"});
  for (const auto& s : results.sectors) {
    std::vector<std::string> row{s.sector, std::to_string(s.fsd.total())};
    if (s.fsd.empty()) {
      row.insert(row.end(), 9, kNa);
    } else {
      for (double e : s.fsd.frequencies()) row.push_back(format_fixed(100.0 * e, 4));
    }
    rows.push_back(std::move(row));
  }
  std::vector<std::string> ref_row{kReferenceLabel, ""};
  for (double b : benford_reference().probabilities) ref_row.push_back(format_fixed(100.0 * b, 4));
  rows.push_back(std::move(ref_row));
  return layout(rows, format);
}

std::string render_conformance_table(const ReportBundle& bundle, Variant variant,
                                     TableFormat format) {
  const auto& results = checked(bundle, variant);
  if (format == TableFormat::Csv) {
    std::ostringstream os;
    os << conformance_csv_header() << '\n';
    for (const auto& s : results.sectors) {
      if (s.conformance)
        os << to_csv_row(*s.conformance) << '\n';
      else
        os << s.sector << ",NA,NA,NA,NA,NA," << s.fsd.total() << ",NA,NA,NA\n";
    }
    return os.str();
  }
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"sector", "n", "corr", "chi2", "M(pct)", "d*", "a*"});
  for (const auto& s : results.sectors) {
    if (!s.conformance) {
      rows.push_back({s.sector, std::to_string(s.fsd.total()), kNa, kNa, kNa, kNa, kNa});
      continue;
    }
    const auto& c = *s.conformance;
    std::string chi = format_fixed(c.chi_square.statistic, 4);
    if (c.chi_square.significant_1) chi += "**";
    rows.push_back({c.sector, std::to_string(c.n),
                    c.correlation ? format_fixed(*c.correlation, 4) : kNa, chi,
                    format_fixed(c.m_deviation, 4), format_fixed(c.d_star.value, 4),
                    format_fixed(c.a_star, 4)});
  }
  return layout(rows, format);
}

std::string render_descriptive_table(const ReportBundle& bundle, Variant variant,
                                     TableFormat format) {
  const auto& results = checked(bundle, variant);
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"sector", "n", "mean", "std_dev", "min", "max"});
  for (const auto& s : results.sectors) {
    if (!s.stats) {
      rows.push_back({s.sector, "0", kNa, kNa, kNa, kNa});
      continue;
    }
    const auto& st = *s.stats;
    rows.push_back({s.sector, std::to_string(st.n), format_fixed(st.mean, 6),
                    st.std_dev ? format_fixed(*st.std_dev, 6) : kNa, format_fixed(st.min, 6),
                    format_fixed(st.max, 6)});
  }
  return layout(rows, format);
}

nlohmann::json frequency_table_json(const ReportBundle& bundle, Variant variant) {
  const auto& results = checked(bundle, variant);
  auto sectors = nlohmann::json::array();
  for (const auto& s : results.sectors) {
    nlohmann::json row = s.fsd;
    row["sector"] = s.sector;
    sectors.push_back(std::move(row));
  }
  return {{"variant", to_string(variant)},
          {"sectors", std::move(sectors)},
          {"benford", benford_reference().probabilities}};
}

nlohmann::json conformance_table_json(const ReportBundle& bundle, Variant variant) {
  const auto& results = checked(bundle, variant);
  auto sectors = nlohmann::json::array();
  for (const auto& s : results.sectors) {
    nlohmann::json row;
    if (s.conformance) {
      row = *s.conformance;
    } else {
      row = {{"sector", s.sector}, {"n", s.fsd.total()}, {"undefined", "empty distribution"}};
    }
    if (s.stats) row["descriptive"] = *s.stats;
    sectors.push_back(std::move(row));
  }
  return {{"variant", to_string(variant)}, {"sectors", std::move(sectors)}};
}

std::vector<FrequencyRow> parse_frequency_table_csv(const std::string& csv) {
  std::vector<FrequencyRow> out;
  std::istringstream is(csv);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    detail::strip_cr(line);
    if (line_no == 1 || detail::trim(line).empty()) continue;
    const auto cells = detail::split_delimited(line, ',');
    if (cells.size() != 11) throw ParseError(line_no, "frequency row needs 11 fields");
    FrequencyRow row;
    row.sector = cells[0];
    if (!cells[1].empty()) {
      auto obs = detail::parse_double(cells[1]);
      if (!obs || *obs < 0) throw ParseError(line_no, "bad obs '" + cells[1] + "'");
      row.obs = static_cast<std::uint64_t>(*obs);
    }
    if (cells[2] != kNa) {
      std::array<double, 9> pct{};
      for (std::size_t i = 0; i < 9; ++i) {
        auto v = detail::parse_double(cells[i + 2]);
        if (!v) throw ParseError(line_no, "bad frequency '" + cells[i + 2] + "'");
        pct[i] = *v;
      }
      row.percent = pct;
    }
    out.push_back(std::move(row));
  }
  return out;
}

std::size_t HistogramSpec::total() const {
  std::size_t n = 0;
  for (const auto& b : bins) n += b.count;
  return n;
}

HistogramSpec histogram_data(const PooledSample& sample, double bin_width) {
  if (!(bin_width > 0.0) || !std::isfinite(bin_width))
    throw std::invalid_argument("histogram bin width must be positive");
  if (sample.values.empty())
    throw InputError("histogram of empty sample for sector " + sample.sector);
  const auto [min_it, max_it] = std::minmax_element(sample.values.begin(), sample.values.end());
  HistogramSpec h;
  h.bin_width = bin_width;
  h.lo = std::floor(*min_it / bin_width) * bin_width;
  const auto n_bins = static_cast<std::size_t>(std::floor((*max_it - h.lo) / bin_width)) + 1;
  h.hi = h.lo + static_cast<double>(n_bins) * bin_width;
  h.bins.resize(n_bins);
  for (std::size_t i = 0; i < n_bins; ++i) h.bins[i].left_edge = h.lo + static_cast<double>(i) * bin_width;
  for (double x : sample.values) {
    const double pos = std::floor((x - h.lo) / bin_width);
    auto idx = pos < 0 ? std::size_t{0} : static_cast<std::size_t>(pos);
    ++h.bins[std::min(idx, n_bins - 1)].count;
  }
  return h;
}

std::string render_histogram_csv(const ReportBundle& bundle, Variant variant, double bin_width) {
  const auto& results = checked(bundle, variant);
  std::ostringstream os;
  os << "sector,left_edge,count\n";
  for (const auto& s : results.sectors) {
    if (s.sample.values.empty()) continue;
    for (const auto& bin : histogram_data(s.sample, bin_width).bins)
      os << s.sector << ',' << format_fixed(bin.left_edge, 4) << ',' << bin.count << '\n';
  }
  return os.str();
}

std::array<BarChartRow, 9> bar_chart_data(const FsdDistribution& dist, const BenfordReference& ref) {
  const auto e = dist.frequencies();
  std::array<BarChartRow, 9> rows{};
  for (std::size_t i = 0; i < 9; ++i)
    rows[i] = {static_cast<int>(i + 1), 100.0 * e[i], 100.0 * ref.probabilities[i]};
  return rows;
}

std::string render_bar_chart_csv(const ReportBundle& bundle, Variant variant) {
  const auto& results = checked(bundle, variant);
  std::ostringstream os;
  os << "sector,digit,observed_percent,benford_percent\n";
  for (const auto& s : results.sectors) {
    if (s.fsd.empty()) continue;
    for (const auto& row : bar_chart_data(s.fsd, benford_reference()))
      os << s.sector << ',' << row.digit << ',' << format_fixed(row.observed_percent, 4) << ','
         << format_fixed(row.benford_percent, 4) << '\n';
  }
  return os.str();
}

}  // namespace fsdaudit
