#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"

#include "fsdaudit/digits.hpp"
#include "fsdaudit/ingest.hpp"

namespace fsdaudit {

/// Benford first-digit probabilities b_d = log10(1 + 1/d) and constants
/// derived from them.
struct BenfordReference {
  std::array<double, 9> probabilities{};
  double mean_digit = 0.0;         // sum d * b_d
  double d_star_normalizer = 0.0;  // sum (1[d=9] - b_d)^2, squared distance to all-mass-on-9

  /// Largest possible |m_e - m_b|, attained by all mass on digit 9.
  double max_mean_difference() const noexcept { return 9.0 - mean_digit; }
};

const BenfordReference& benford_reference();

/// Digit frequencies as fractions plus the sample size they came from. Lets
/// published frequency tables be scored without integer counts.
struct ObservedFrequencies {
  std::array<double, 9> fractions{};
  std::uint64_t n = 0;

  static ObservedFrequencies from(const FsdDistribution& dist);
  /// Percentages as printed in a frequency table (e.g. 23.2044).
  static ObservedFrequencies from_percent(const std::array<double, 9>& percent, std::uint64_t n);
};

/// 8 degrees of freedom critical values.
inline constexpr double kChiSquareCritical10 = 13.36;
inline constexpr double kChiSquareCritical5 = 15.51;
inline constexpr double kChiSquareCritical1 = 20.09;

struct ChiSquareResult {
  double statistic = 0.0;
  int df = 8;
  bool significant_10 = false;
  bool significant_5 = false;
  bool significant_1 = false;
};

/// Applies the fixed critical values; a statistic strictly above a threshold is significant.
ChiSquareResult chi_square_verdicts(double statistic);

/// Pearson statistic on counts: sum (O_d - E_d)^2 / E_d with E_d = N b_d.
/// Throws EmptyDistributionError when N = 0.
ChiSquareResult chi_square(const FsdDistribution& dist, const BenfordReference& ref);
/// Same statistic written as N * sum (e_d - b_d)^2 / b_d.
ChiSquareResult chi_square(const ObservedFrequencies& obs, const BenfordReference& ref);

/// Pearson correlation of the observed and reference 9-vectors; nullopt when
/// the observed frequencies have zero variance.
std::optional<double> pearson_correlation(const ObservedFrequencies& obs,
                                          const BenfordReference& ref);

/// max_d |e_d - b_d| in percentage points.
double max_deviation(const ObservedFrequencies& obs, const BenfordReference& ref);

enum class DStarMode {
  TableConsistent,  // divide by the reference normalizer
  LiteralEq3,       // divide by the sample's own max deviation (fraction units)
};

DStarMode parse_dstar_mode(const std::string& text);
std::string to_string(DStarMode mode);

struct DStarResult {
  double value = 0.0;
  /// Set in literal mode when M = 0; value is then 0 by convention.
  bool perfect_conformance = false;
};

DStarResult d_star(const ObservedFrequencies& obs, const BenfordReference& ref,
                   DStarMode mode = DStarMode::TableConsistent);

/// |m_e - m_b| / (9 - m_b).
double a_star(const ObservedFrequencies& obs, const BenfordReference& ref);

struct DescriptiveStats {
  std::size_t n = 0;
  double mean = 0.0;
  std::optional<double> std_dev;  // n-1 denominator; absent when n < 2
  double min = 0.0;
  double max = 0.0;
};

/// Throws InputError for an empty sample.
DescriptiveStats descriptive_stats(const PooledSample& sample);

struct ConformanceReport {
  std::string sector;
  std::uint64_t n = 0;
  ChiSquareResult chi_square;
  std::optional<double> correlation;
  double m_deviation = 0.0;  // percentage points
  DStarResult d_star;
  DStarMode d_star_mode = DStarMode::TableConsistent;
  double a_star = 0.0;
};

ConformanceReport conformance_report(const std::string& sector, const FsdDistribution& dist,
                                     const BenfordReference& ref,
                                     DStarMode mode = DStarMode::TableConsistent);
ConformanceReport conformance_report(const std::string& sector, const ObservedFrequencies& obs,
                                     const BenfordReference& ref,
                                     DStarMode mode = DStarMode::TableConsistent);

void to_json(nlohmann::json& j, const ChiSquareResult& r);
void to_json(nlohmann::json& j, const ConformanceReport& r);
void to_json(nlohmann::json& j, const DescriptiveStats& s);

/// Header for conformance CSV rows.
std::string conformance_csv_header();
/// sector,corr,chi2,M,d_star,a_star,n,sig_10,sig_5,sig_1
std::string to_csv_row(const ConformanceReport& r);

}  // namespace fsdaudit
