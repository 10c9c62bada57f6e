#include "fsdaudit/conformance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "fsdaudit/errors.hpp"
#include "fsdaudit/format.hpp"

namespace fsdaudit {

namespace {

BenfordReference make_reference() {
  BenfordReference ref;
  for (int d = 1; d <= 9; ++d) {
    const double b = std::log10(1.0 + 1.0 / d);
    ref.probabilities[d - 1] = b;
    ref.mean_digit += d * b;
    const double delta = (d == 9 ? 1.0 : 0.0) - b;
    ref.d_star_normalizer += delta * delta;
  }
  return ref;
}

void require_nonempty(const ObservedFrequencies& obs) {
  if (obs.n == 0) throw EmptyDistributionError();
}

}  // namespace

const BenfordReference& benford_reference() {
  static const BenfordReference ref = make_reference();
  return ref;
}

ObservedFrequencies ObservedFrequencies::from(const FsdDistribution& dist) {
  return {dist.frequencies(), dist.total()};
}

ObservedFrequencies ObservedFrequencies::from_percent(const std::array<double, 9>& percent,
                                                      std::uint64_t n) {
  ObservedFrequencies obs{{}, n};
  for (std::size_t i = 0; i < 9; ++i) obs.fractions[i] = percent[i] / 100.0;
  return obs;
}

ChiSquareResult chi_square_verdicts(double statistic) {
  ChiSquareResult r;
  r.statistic = statistic;
  r.significant_10 = statistic > kChiSquareCritical10;
  r.significant_5 = statistic > kChiSquareCritical5;
  r.significant_1 = statistic > kChiSquareCritical1;
  return r;
}

ChiSquareResult chi_square(const FsdDistribution& dist, const BenfordReference& ref) {
  if (dist.empty()) throw EmptyDistributionError();
  const double n = static_cast<double>(dist.total());
  double stat = 0.0;
  for (std::size_t i = 0; i < 9; ++i) {
    const double expected = n * ref.probabilities[i];
    const double diff = static_cast<double>(dist.counts()[i]) - expected;
    stat += diff * diff / expected;
  }
  return chi_square_verdicts(stat);
}

ChiSquareResult chi_square(const ObservedFrequencies& obs, const BenfordReference& ref) {
  require_nonempty(obs);
  double sum = 0.0;
  for (std::size_t i = 0; i < 9; ++i) {
    const double diff = obs.fractions[i] - ref.probabilities[i];
    sum += diff * diff / ref.probabilities[i];
  }
  return chi_square_verdicts(static_cast<double>(obs.n) * sum);
}

std::optional<double> pearson_correlation(const ObservedFrequencies& obs,
                                          const BenfordReference& ref) {
  require_nonempty(obs);
  const auto& e = obs.fractions;
  const auto& b = ref.probabilities;
  const double mean_e = std::accumulate(e.begin(), e.end(), 0.0) / 9.0;
  const double mean_b = std::accumulate(b.begin(), b.end(), 0.0) / 9.0;
  double sxy = 0.0, sxx = 0.0, syy = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < 9; ++i) {
    const double dx = e[i] - mean_e;
    const double dy = b[i] - mean_b;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
    scale += e[i] * e[i];
  }
  // Equal frequencies leave only rounding noise in sxx.
  if (sxx <= 1e-24 * scale) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

namespace {

double max_abs_gap(const ObservedFrequencies& obs, const BenfordReference& ref) {
  double m = 0.0;
  for (std::size_t i = 0; i < 9; ++i)
    m = std::max(m, std::fabs(obs.fractions[i] - ref.probabilities[i]));
  return m;
}

}  // namespace

double max_deviation(const ObservedFrequencies& obs, const BenfordReference& ref) {
  require_nonempty(obs);
  return 100.0 * max_abs_gap(obs, ref);
}

DStarMode parse_dstar_mode(const std::string& text) {
  if (text == "table-consistent") return DStarMode::TableConsistent;
  if (text == "literal-eq3") return DStarMode::LiteralEq3;
  throw ConfigError("unknown d* mode '" + text + "' (expected table-consistent or literal-eq3)");
}

std::string to_string(DStarMode mode) {
  return mode == DStarMode::TableConsistent ? "table-consistent" : "literal-eq3";
}

DStarResult d_star(const ObservedFrequencies& obs, const BenfordReference& ref, DStarMode mode) {
  require_nonempty(obs);
  double ss = 0.0;
  for (std::size_t i = 0; i < 9; ++i) {
    const double diff = obs.fractions[i] - ref.probabilities[i];
    ss += diff * diff;
  }
  const double distance = std::sqrt(ss);
  if (mode == DStarMode::TableConsistent) return {distance / ref.d_star_normalizer, false};
  const double m = max_abs_gap(obs, ref);
  if (m == 0.0) return {0.0, true};
  return {distance / m, false};
}

double a_star(const ObservedFrequencies& obs, const BenfordReference& ref) {
  require_nonempty(obs);
  double mean_e = 0.0;
  for (std::size_t i = 0; i < 9; ++i) mean_e += static_cast<double>(i + 1) * obs.fractions[i];
  return std::fabs(mean_e - ref.mean_digit) / ref.max_mean_difference();
}

DescriptiveStats descriptive_stats(const PooledSample& sample) {
  const auto& v = sample.values;
  if (v.empty()) throw InputError("descriptive statistics of empty sample for sector " + sample.sector);
  DescriptiveStats s;
  s.n = v.size();
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  s.min = *lo;
  s.max = *hi;
  s.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(s.n);
  s.mean = std::clamp(s.mean, s.min, s.max);
  if (s.n >= 2) {
    double ss = 0.0;
    for (double x : v) ss += (x - s.mean) * (x - s.mean);
    s.std_dev = std::sqrt(ss / static_cast<double>(s.n - 1));
  }
  return s;
}

namespace {

ConformanceReport assemble(const std::string& sector, const ObservedFrequencies& obs,
                           ChiSquareResult chi, const BenfordReference& ref, DStarMode mode) {
  ConformanceReport r;
  r.sector = sector;
  r.n = obs.n;
  r.chi_square = chi;
  r.correlation = pearson_correlation(obs, ref);
  r.m_deviation = max_deviation(obs, ref);
  r.d_star = d_star(obs, ref, mode);
  r.d_star_mode = mode;
  r.a_star = a_star(obs, ref);
  return r;
}

}  // namespace

ConformanceReport conformance_report(const std::string& sector, const FsdDistribution& dist,
                                     const BenfordReference& ref, DStarMode mode) {
  if (dist.empty()) throw EmptyDistributionError();
  return assemble(sector, ObservedFrequencies::from(dist), chi_square(dist, ref), ref, mode);
}

ConformanceReport conformance_report(const std::string& sector, const ObservedFrequencies& obs,
                                     const BenfordReference& ref, DStarMode mode) {
  return assemble(sector, obs, chi_square(obs, ref), ref, mode);
}

void to_json(nlohmann::json& j, const ChiSquareResult& r) {
  j = {{"statistic", r.statistic},
       {"df", r.df},
       {"significant_10", r.significant_10},
       {"significant_5", r.significant_5},
       {"significant_1", r.significant_1}};
}

void to_json(nlohmann::json& j, const ConformanceReport& r) {
  j = {{"sector", r.sector},
       {"n", r.n},
       {"chi_square", r.chi_square},
       {"m_deviation_pct", r.m_deviation},
       {"d_star", r.d_star.value},
       {"d_star_mode", to_string(r.d_star_mode)},
       {"d_star_perfect_conformance", r.d_star.perfect_conformance},
       {"a_star", r.a_star}};
  if (r.correlation)
    j["correlation"] = *r.correlation;
  else
    j["correlation"] = nullptr;
}

void to_json(nlohmann::json& j, const DescriptiveStats& s) {
  j = {{"n", s.n}, {"mean", s.mean}, {"min", s.min}, {"max", s.max}};
  if (s.std_dev)
    j["std_dev"] = *s.std_dev;
  else
    j["std_dev"] = nullptr;
}

std::string conformance_csv_header() {
  return "sector,corr,chi2,M_pct,d_star,a_star,n,sig_10,sig_5,sig_1";
}

std::string to_csv_row(const ConformanceReport& r) {
  std::ostringstream os;
  os << r.sector << ',' << (r.correlation ? format_fixed(*r.correlation, 4) : "NA") << ','
     << format_fixed(r.chi_square.statistic, 4) << ',' << format_fixed(r.m_deviation, 4) << ','
     << format_fixed(r.d_star.value, 4) << ',' << format_fixed(r.a_star, 4) << ',' << r.n << ','
     << int(r.chi_square.significant_10) << ',' << int(r.chi_square.significant_5) << ','
     << int(r.chi_square.significant_1);
  return os.str();
}

}  // namespace fsdaudit
