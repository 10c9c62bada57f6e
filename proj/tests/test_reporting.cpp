#include <random>
#include <sstream>

#include "doctest.h"
#include "fsdaudit/errors.hpp"
#include "fsdaudit/format.hpp"
#include "fsdaudit/reporting.hpp"
#include "support.hpp"

using namespace fsdaudit;
namespace t = fsdaudit::testing;

namespace {

/// Sector whose FSD counts are given directly; the sample holds matching values.
SectorResult sector_with_counts(const std::string& name, const std::array<std::uint64_t, 9>& counts) {
  PooledSample sample{name, {}};
  for (int d = 1; d <= 9; ++d)
    for (std::uint64_t k = 0; k < counts[d - 1]; ++k) sample.values.push_back(d + 0.5);
  return analyze_sample(sample, benford_reference(), DStarMode::TableConsistent);
}

ReportBundle raw_bundle(std::vector<SectorResult> sectors) {
  ReportBundle b;
  b.raw = VariantResults{std::move(sectors)};
  return b;
}

std::string last_line(const std::string& text) {
  auto trimmed = text.substr(0, text.size() - 1);
  return trimmed.substr(trimmed.rfind('\n') + 1);
}

}  // namespace

TEST_CASE("fixed formatting") {
  CHECK(format_fixed(30.10299957, 4) == "30.1030");
  CHECK(format_fixed(0.125, 2) == "0.12");  // exact tie, to even
  CHECK(format_fixed(0.375, 2) == "0.38");
  CHECK(format_fixed(2.5, 0) == "2");
  CHECK(format_fixed(-0.00001, 4) == "0.0000");
  CHECK(format_fixed(-1.5, 4) == "-1.5000");
  CHECK(format_shortest(444.19) == "444.19");
}

TEST_CASE("frequency table") {
  SUBCASE("empty bundle has header and reference row") {
    const auto csv = render_frequency_table(raw_bundle({}), Variant::Raw);
    CHECK(csv ==
          "sector,obs,1,2,3,4,5,6,7,8,9\n"
          "FSD BL,,30.1030,17.6091,12.4939,9.6910,7.9181,6.6947,5.7992,5.1153,4.5757\n");
  }
  SUBCASE("e = b sector renders the reference row values") {
    // counts proportional to b are not integral; use a huge N so rounding is below 5e-5 percent
    std::array<std::uint64_t, 9> counts{};
    for (std::size_t i = 0; i < 9; ++i)
      counts[i] = static_cast<std::uint64_t>(std::llround(benford_reference().probabilities[i] * 1e9));
    ReportBundle b;
    SectorResult s;
    s.sector = "B";
    s.fsd = FsdDistribution(counts);
    s.conformance = conformance_report("B", s.fsd, benford_reference());
    b.raw = VariantResults{{s}};
    const auto csv = render_frequency_table(b, Variant::Raw);
    std::istringstream is(csv);
    std::string header, data, ref;
    std::getline(is, header);
    std::getline(is, data);
    std::getline(is, ref);
    CHECK(data.substr(data.find(',', 2) + 1) == ref.substr(ref.find(",,") + 2));
  }
  SUBCASE("missing variant is an error") {
    CHECK_THROWS_AS(render_frequency_table(raw_bundle({}), Variant::Adapted), std::invalid_argument);
  }
  SUBCASE("empty sector renders NA") {
    const auto csv = render_frequency_table(raw_bundle({sector_with_counts("TELE", {})}), Variant::Raw);
    CHECK(csv.find("TELE,0,NA,NA,NA,NA,NA,NA,NA,NA,NA\n") != std::string::npos);
  }
}

TEST_CASE("raw and adapted must cover the same sectors") {
  ReportBundle b = raw_bundle({sector_with_counts("A", {1})});
  b.adapted = VariantResults{{sector_with_counts("B", {1})}};
  CHECK_THROWS_AS(render_frequency_table(b, Variant::Raw), std::invalid_argument);
}

TEST_CASE("property: frequency csv round-trips to printed precision") {
  std::mt19937_64 rng(4);
  std::vector<SectorResult> sectors;
  for (int i = 0; i < 12; ++i) sectors.push_back(sector_with_counts("S" + std::to_string(i), t::random_counts(rng)));
  const auto bundle = raw_bundle(sectors);
  const auto rows = parse_frequency_table_csv(render_frequency_table(bundle, Variant::Raw));
  REQUIRE(rows.size() == sectors.size() + 1);
  for (std::size_t s = 0; s < sectors.size(); ++s) {
    CHECK(rows[s].sector == sectors[s].sector);
    CHECK(rows[s].obs.value() == sectors[s].fsd.total());
    const auto e = sectors[s].fsd.frequencies();
    for (std::size_t i = 0; i < 9; ++i) CHECK(std::fabs(rows[s].percent.value()[i] - 100.0 * e[i]) <= 5e-5 + 1e-12);
  }
  CHECK(rows.back().sector == "FSD BL");
  CHECK_FALSE(rows.back().obs.has_value());
}

TEST_CASE("conformance table") {
  // MATS from the published percentages at a sample size where they are exact counts.
  std::array<std::uint64_t, 9> mats{};
  for (std::size_t i = 0; i < 9; ++i)
    mats[i] = static_cast<std::uint64_t>(std::llround(t::kRawFrequencies[0].percent[i] / 100.0 * 1086));
  const auto bundle = raw_bundle({sector_with_counts("MATS", mats)});

  const auto text = render_conformance_table(bundle, Variant::Raw, TableFormat::Text);
  CHECK(text.find("0.9092") != std::string::npos);
  CHECK(text.find("6.8986") != std::string::npos);
  CHECK(text.find("0.0905") != std::string::npos);
  CHECK(text.find("0.0048") != std::string::npos);
  CHECK(text.find("**") != std::string::npos);

  const auto csv = render_conformance_table(bundle, Variant::Raw);
  CHECK(csv.rfind(conformance_csv_header() + "\nMATS,0.9092,", 0) == 0);
  CHECK(last_line(csv).substr(last_line(csv).size() - 5) == "1,1,1");

  const auto json = conformance_table_json(bundle, Variant::Raw);
  CHECK(json["sectors"][0]["sector"] == "MATS");
  CHECK(json["sectors"][0]["descriptive"]["n"] == 1086);
}

TEST_CASE("conformance table without significance") {
  std::array<std::uint64_t, 9> counts{};
  for (std::size_t i = 0; i < 9; ++i)
    counts[i] = static_cast<std::uint64_t>(std::llround(benford_reference().probabilities[i] * 1e7));
  const auto bundle = raw_bundle({sector_with_counts("B", counts)});
  const auto text = render_conformance_table(bundle, Variant::Raw, TableFormat::Text);
  CHECK(text.find("1.0000") != std::string::npos);
  CHECK(text.find("**") == std::string::npos);
}

TEST_CASE("descriptive table") {
  const auto bundle = raw_bundle({analyze_sample({"X", {5.0}}, benford_reference(), DStarMode::TableConsistent)});
  CHECK(render_descriptive_table(bundle, Variant::Raw) ==
        "sector,n,mean,std_dev,min,max\nX,1,5.000000,NA,5.000000,5.000000\n");
}

TEST_CASE("histogram") {
  const auto h = histogram_data({"S", {0.1, 0.4, 1.2}}, 1.0);
  REQUIRE(h.bins.size() == 2);
  CHECK(h.bins[0].left_edge == 0.0);
  CHECK(h.bins[0].count == 2);
  CHECK(h.bins[1].left_edge == 1.0);
  CHECK(h.bins[1].count == 1);

  const auto same = histogram_data({"S", {3.3, 3.3, 3.3}});
  REQUIRE(same.bins.size() == 1);
  CHECK(same.bins[0].count == 3);

  CHECK_THROWS_AS(histogram_data({"S", {}}), InputError);
  CHECK_THROWS_AS(histogram_data({"S", {1.0}}, 0.0), std::invalid_argument);

  const auto neg = histogram_data({"S", {-0.5, -1.0, 2.0}});
  CHECK(neg.lo == -1.0);
  CHECK(neg.total() == 3);
}

TEST_CASE("property: histogram counts sum to the sample size") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    PooledSample s{"S", {}};
    const int n = 1 + static_cast<int>(rng() % 300);
    for (int i = 0; i < n; ++i) s.values.push_back((t::unit_uniform(rng) - 0.5) * 100.0);
    const double w = 0.05 + 5.0 * t::unit_uniform(rng);
    const auto h = histogram_data(s, w);
    CHECK(h.total() == s.n());
    for (std::size_t i = 1; i < h.bins.size(); ++i)
      CHECK(h.bins[i].left_edge == doctest::Approx(h.bins[i - 1].left_edge + w));
  }
}

TEST_CASE("bar chart") {
  std::array<std::uint64_t, 9> mats{};
  for (std::size_t i = 0; i < 9; ++i)
    mats[i] = static_cast<std::uint64_t>(std::llround(t::kRawFrequencies[0].percent[i] / 100.0 * 1086));
  const auto rows = bar_chart_data(FsdDistribution(mats), benford_reference());
  CHECK(rows[0].digit == 1);
  CHECK(format_fixed(rows[0].observed_percent, 4) == "23.2044");
  CHECK(format_fixed(rows[0].benford_percent, 4) == "30.1030");

  const auto nine = bar_chart_data(FsdDistribution({0, 0, 0, 0, 0, 0, 0, 0, 5}), benford_reference());
  CHECK(nine[8].digit == 9);
  CHECK(format_fixed(nine[8].observed_percent, 4) == "100.0000");
  CHECK(format_fixed(nine[8].benford_percent, 4) == "4.5757");

  CHECK_THROWS_AS(bar_chart_data(FsdDistribution{}, benford_reference()), EmptyDistributionError);
}

TEST_CASE("rendering is deterministic") {
  std::mt19937_64 rng(1);
  std::vector<SectorResult> sectors;
  for (int i = 0; i < 4; ++i) sectors.push_back(sector_with_counts("S" + std::to_string(i), t::random_counts(rng)));
  const auto a = raw_bundle(sectors);
  const auto b = raw_bundle(sectors);
  CHECK(render_conformance_table(a, Variant::Raw, TableFormat::Text) ==
        render_conformance_table(b, Variant::Raw, TableFormat::Text));
  CHECK(render_histogram_csv(a, Variant::Raw) == render_histogram_csv(b, Variant::Raw));
  CHECK(frequency_table_json(a, Variant::Raw).dump() == frequency_table_json(b, Variant::Raw).dump());
}
