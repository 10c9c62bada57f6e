#include "fsdaudit/digits.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fsdaudit/errors.hpp"
#include "fsdaudit/format.hpp"

namespace fsdaudit {

Digit::Digit(int d) : d_(d) {
  if (d < 1 || d > 9) throw std::out_of_range("digit must be in 1..9, got " + std::to_string(d));
}

std::optional<Digit> first_significant_digit(double x) {
  if (!std::isfinite(x)) throw std::domain_error("first_significant_digit: non-finite input");
  if (x == 0.0) return std::nullopt;

  long double m = std::fabs(static_cast<long double>(x));
  const int exponent = static_cast<int>(std::floor(std::log10(m)));
  if (exponent > 0) {
    m /= std::pow(10.0L, exponent);
  } else if (exponent < 0) {
    // Two steps keep 10^-exponent finite for subnormal inputs.
    const int half = -exponent / 2;
    m *= std::pow(10.0L, half);
    m *= std::pow(10.0L, -exponent - half);
  }
  // log10 can be off by one near powers of ten.
  while (m >= 10.0L) m /= 10.0L;
  while (m < 1.0L) m *= 10.0L;

  int d = static_cast<int>(m);
  constexpr long double kSnap = 1e-12L;
  if (static_cast<long double>(d + 1) - m < kSnap * m) ++d;
  if (d == 10) d = 1;
  return Digit(d);
}

FsdDistribution::FsdDistribution(const std::array<std::uint64_t, 9>& counts,
                                 std::uint64_t excluded)
    : counts_(counts), excluded_(excluded) {
  for (auto c : counts_) total_ += c;
}

std::array<double, 9> FsdDistribution::frequencies() const {
  if (total_ == 0) throw EmptyDistributionError();
  std::array<double, 9> e{};
  for (std::size_t i = 0; i < 9; ++i)
    e[i] = static_cast<double>(counts_[i]) / static_cast<double>(total_);
  return e;
}

void FsdDistribution::add(double x) {
  if (auto d = first_significant_digit(x)) {
    ++counts_[d->index()];
    ++total_;
  } else {
    ++excluded_;
  }
}

FsdDistribution& FsdDistribution::operator+=(const FsdDistribution& other) {
  for (std::size_t i = 0; i < 9; ++i) counts_[i] += other.counts_[i];
  total_ += other.total_;
  excluded_ += other.excluded_;
  return *this;
}

FsdDistribution fsd_distribution(std::span<const double> sample) {
  FsdDistribution dist;
  for (double x : sample) dist.add(x);
  return dist;
}

FsdDistribution fsd_distribution(const PooledSample& sample) {
  return fsd_distribution(std::span<const double>(sample.values));
}

void to_json(nlohmann::json& j, const FsdDistribution& dist) {
  j = {{"counts", dist.counts()}, {"total", dist.total()}, {"excluded", dist.excluded()}};
  if (dist.empty())
    j["frequencies"] = nullptr;
  else
    j["frequencies"] = dist.frequencies();
}

std::string to_csv(const FsdDistribution& dist) {
  std::ostringstream os;
  os << "digit,count,frequency_percent\n";
  for (int d = 1; d <= 9; ++d) {
    os << d << ',' << dist.counts()[d - 1] << ',';
    os << (dist.empty() ? std::string("NA") : format_fixed(100.0 * dist.frequencies()[d - 1], 4));
    os << '\n';
  }
  return os.str();
}

}  // namespace fsdaudit
