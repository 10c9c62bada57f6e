#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "json.hpp"

#include "fsdaudit/ingest.hpp"

namespace fsdaudit {

/// A first significant digit, always in 1..9.
class Digit {
 public:
  explicit Digit(int d);
  int value() const noexcept { return d_; }
  std::size_t index() const noexcept { return static_cast<std::size_t>(d_ - 1); }
  auto operator<=>(const Digit&) const = default;

 private:
  int d_;
};

/// Leading nonzero decimal digit of |x|, found by scaling into [1, 10).
/// Returns nullopt for zero; throws std::domain_error for NaN or infinity.
///
/// Scaling is done in extended precision, then a candidate that lies within a
/// few ulps below the next integer is snapped upward. This makes 2e-6 (stored
/// as 1.99999...e-6) report 2, matching its shortest decimal spelling.
std::optional<Digit> first_significant_digit(double x);

/// Counts of first significant digits over a sample. Exact zeros carry no
/// digit and are tallied in `excluded`.
class FsdDistribution {
 public:
  FsdDistribution() = default;
  FsdDistribution(const std::array<std::uint64_t, 9>& counts, std::uint64_t excluded = 0);

  const std::array<std::uint64_t, 9>& counts() const noexcept { return counts_; }
  std::uint64_t count(Digit d) const noexcept { return counts_[d.index()]; }
  std::uint64_t total() const noexcept { return total_; }
  std::uint64_t excluded() const noexcept { return excluded_; }
  std::uint64_t sample_size() const noexcept { return total_ + excluded_; }
  bool empty() const noexcept { return total_ == 0; }

  /// e_d = N_d / N as fractions. Throws EmptyDistributionError when N = 0.
  std::array<double, 9> frequencies() const;

  void add(double x);
  /// Associative merge of two tallies.
  FsdDistribution& operator+=(const FsdDistribution& other);

  bool operator==(const FsdDistribution&) const = default;

 private:
  std::array<std::uint64_t, 9> counts_{};
  std::uint64_t total_ = 0;
  std::uint64_t excluded_ = 0;
};

FsdDistribution fsd_distribution(std::span<const double> sample);
FsdDistribution fsd_distribution(const PooledSample& sample);

void to_json(nlohmann::json& j, const FsdDistribution& dist);

/// digit,count,frequency_percent (percent to 4 decimals, NA when empty).
std::string to_csv(const FsdDistribution& dist);

}  // namespace fsdaudit
