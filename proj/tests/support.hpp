#pragma once

// Shared fixtures and independent oracles for the test binaries.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace fsdaudit::testing {

inline std::filesystem::path data_path(const std::string& name) {
  return std::filesystem::path(FSDAUDIT_TEST_DATA) / name;
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

/// Published first-digit frequency table (percent) with its observation counts.
struct PublishedRow {
  const char* sector;
  std::uint64_t obs;
  std::array<double, 9> percent;
};

// Raw-data FSD frequencies, one row per FTSE sector.
inline const std::array<PublishedRow, 10> kRawFrequencies = {{
    {"MATS", 1086, {23.2044, 18.3241, 17.9558, 13.2597, 8.6556, 5.5249, 4.8803, 4.4199, 3.7753}},
    {"GDS", 1013, {35.5380, 14.1165, 7.5025, 8.1935, 12.4383, 4.7384, 5.4294, 6.1204, 5.9230}},
    {"SVS", 1086, {33.0571, 14.5488, 10.9576, 7.7348, 12.2468, 5.5249, 5.9853, 6.9061, 3.0387}},
    {"FIN", 1086, {36.2799, 24.1252, 9.0239, 4.6961, 3.9595, 5.8932, 6.2615, 4.9724, 4.7882}},
    {"HEA", 1066, {21.8574, 4.2214, 9.5685, 9.0056, 9.1932, 7.4109, 12.2889, 10.9756, 15.4784}},
    {"INDUS", 1086, {20.9024, 17.6796, 22.5599, 4.7882, 5.2486, 9.1160, 10.4052, 5.3407, 3.9595}},
    {"OIL", 969, {23.4262, 26.4190, 12.6935, 8.5655, 8.2559, 4.8504, 8.3591, 3.7152, 3.7152}},
    {"TECH", 568, {41.7254, 16.0211, 11.9718, 11.6197, 9.1549, 4.5775, 1.7606, 1.4085, 1.7606}},
    {"TELE", 1042, {39.4434, 15.6430, 4.7985, 5.5662, 6.1420, 4.9904, 7.2937, 8.6372, 7.4856}},
    {"UTIL", 920, {32.5000, 9.8913, 8.0435, 19.0217, 4.8913, 9.0217, 4.5652, 6.4130, 5.6522}},
}};

/// Printed reference row, percent.
inline constexpr std::array<double, 9> kPrintedBenfordPercent = {
    30.1030, 17.6091, 12.4939, 9.6910, 7.9181, 6.6947, 5.7992, 5.1153, 4.5757};

/// Published raw-data conformance row. M is in fraction units as printed.
struct PublishedMeasures {
  const char* sector;
  double corr;
  double chi2;
  double m_fraction;
  double d_star;
  double a_star;
};

inline const std::array<PublishedMeasures, 10> kRawMeasures = {{
    {"MATS", 0.9092, 40.5876, 0.06898, 0.09054, 0.00479},
    {"GDS", 0.9383, 57.4226, 0.05435, 0.09129, 0.01066},
    {"SVS", 0.9616, 54.1127, 0.04328, 0.06584, 0.00147},
    {"FIN", 0.9614, 25.1805, 0.06516, 0.10787, 0.05716},
    {"HEA", 0.4426, 90.1797, 0.13387, 0.19834, 0.27801},
    {"INDUS", 0.7543, 39.9240, 0.10065, 0.14564, 0.05613},
    {"OIL", 0.8765, 41.2437, 0.08809, 0.10870, 0.00605},
    {"TECH", 0.9814, 49.7493, 0.11622, 0.12685, 0.13523},
    {"TELE", 0.9113, 39.6741, 0.09340, 0.13053, 0.02076},
    {"UTIL", 0.8469, 36.5188, 0.09330, 0.12873, 0.03812},
}};

/// Brute-force Pearson statistic in long double, straight from the textbook
/// definition with the Benford probabilities recomputed locally.
inline double brute_force_chi_square(const std::array<double, 9>& observed) {
  long double n = 0;
  for (double o : observed) n += o;
  long double stat = 0;
  for (int d = 1; d <= 9; ++d) {
    const long double expected = n * std::log10(1.0L + 1.0L / d);
    const long double diff = observed[d - 1] - expected;
    stat += diff * diff / expected;
  }
  return static_cast<double>(stat);
}

/// Leading digit via shortest decimal text; only used to cross-check the
/// arithmetic extraction in tests.
inline int leading_digit_by_text(double x) {
  std::ostringstream os;
  os.precision(15);
  os << std::scientific << std::fabs(x);
  return os.str()[0] - '0';
}

/// Uniform double in [0, 1) from 53 random bits; identical on every platform.
inline double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Random count vector with total in [1, 5000]; some cells may be zero.
inline std::array<std::uint64_t, 9> random_counts(std::mt19937_64& rng) {
  std::array<std::uint64_t, 9> c{};
  const auto shape = rng() % 3;
  for (auto& x : c) {
    if (shape == 0 && rng() % 3 == 0) continue;
    x = rng() % (shape == 2 ? 20 : 600);
  }
  if (std::all_of(c.begin(), c.end(), [](auto v) { return v == 0; })) c[rng() % 9] = 1 + rng() % 50;
  return c;
}

}  // namespace fsdaudit::testing
