#include "fsdaudit/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <optional>
#include <ostream>
#include <thread>

#include "fsdaudit/errors.hpp"
#include "text_util.hpp"

namespace fsdaudit {

PricePanel load_panel(const std::vector<std::filesystem::path>& inputs, const PanelSchema& schema) {
  PricePanel merged;
  for (const auto& path : inputs) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open input file " + path.string());
    PricePanel panel;
    try {
      panel = parse_price_panel(in, schema, path.filename().string());
    } catch (const ParseError& e) {
      throw InputError(path.string() + ": " + e.what());
    }
    for (auto& [key, series] : panel.series) {
      if (merged.series.contains(key))
        throw InputError(path.string() + ": series (" + key.country + ", " + key.sector +
                         ") already defined by an earlier input");
      merged.series.emplace(key, std::move(series));
    }
    if (!merged.provenance.empty()) merged.provenance += ";";
    merged.provenance += panel.provenance;
  }
  return merged;
}

PricePanel filter_sectors(const PricePanel& panel, const std::vector<std::string>& sectors) {
  if (sectors.empty()) return panel;
  PricePanel out;
  out.provenance = panel.provenance;
  for (const auto& [key, s] : panel.series)
    if (std::find(sectors.begin(), sectors.end(), key.sector) != sectors.end())
      out.series.emplace(key, s);
  return out;
}

VariantResults analyze_panel(const PricePanel& panel, DStarMode mode, unsigned workers) {
  const auto returns = compute_log_returns(panel);
  const auto sectors = sectors_of(panel);
  const auto& ref = benford_reference();

  std::vector<std::optional<SectorResult>> slots(sectors.size());
  std::vector<std::exception_ptr> errors(sectors.size());
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (std::size_t i = next++; i < sectors.size(); i = next++) {
      try {
        slots[i] = analyze_sample(pool_matching(returns, sectors[i]), ref, mode);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  const auto n_threads = std::min<std::size_t>(workers, sectors.size());
  if (n_threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(work);
  }

  VariantResults results;
  for (std::size_t i = 0; i < sectors.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    results.sectors.push_back(std::move(*slots[i]));
  }
  return results;
}

ReportBundle build_report(const PricePanel& panel, const RunConfig& config) {
  const auto filtered = filter_sectors(panel, config.sectors);
  const auto flags = detect_repetitions(filtered, config.screening);
  auto [adapted, summary] = adapt_panel(filtered, flags, config.screening);

  ReportBundle bundle;
  bundle.screening = std::move(summary);
  if (config.variants != VariantSelection::AdaptedOnly)
    bundle.raw = analyze_panel(filtered, config.dstar_mode, config.workers);
  if (config.variants != VariantSelection::RawOnly)
    bundle.adapted = analyze_panel(adapted, config.dstar_mode, config.workers);
  bundle.validate();
  return bundle;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw InputError("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

void write_report(const ReportBundle& bundle, const std::filesystem::path& dir, double bin_width) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw InputError("cannot create output directory " + dir.string() + ": " + ec.message());

  for (Variant v : {Variant::Raw, Variant::Adapted}) {
    if (!(v == Variant::Raw ? bundle.raw : bundle.adapted)) continue;
    const auto suffix = "_" + to_string(v);
    write_file_atomic(dir / ("table_descriptive" + suffix + ".csv"),
                      render_descriptive_table(bundle, v));
    write_file_atomic(dir / ("table_frequency" + suffix + ".csv"), render_frequency_table(bundle, v));
    write_file_atomic(dir / ("table_frequency" + suffix + ".json"),
                      frequency_table_json(bundle, v).dump(2) + "\n");
    write_file_atomic(dir / ("table_conformance" + suffix + ".csv"),
                      render_conformance_table(bundle, v));
    write_file_atomic(dir / ("table_conformance" + suffix + ".json"),
                      conformance_table_json(bundle, v).dump(2) + "\n");
    write_file_atomic(dir / ("fig_histogram" + suffix + ".csv"),
                      render_histogram_csv(bundle, v, bin_width));
    write_file_atomic(dir / ("fig_barchart" + suffix + ".csv"), render_bar_chart_csv(bundle, v));
  }
  if (bundle.screening) {
    write_file_atomic(dir / "screening_audit.log", render_audit_log(bundle.screening->flags));
    write_file_atomic(dir / "screening_summary.json",
                      nlohmann::json(*bundle.screening).dump(2) + "\n");
  }
}

std::vector<double> read_value_list(std::istream& in) {
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = detail::trim(line);
    if (text.empty()) continue;
    auto v = detail::parse_double(text);
    if (!v || !std::isfinite(*v))
      throw ParseError(line_no, "'" + std::string(text) + "' is not a finite number");
    values.push_back(*v);
  }
  return values;
}

namespace {

template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 2;
  }
}

void require_inputs(const RunConfig& config) {
  if (config.inputs.empty()) throw ConfigError("no input file given");
}

}  // namespace

int cmd_analyze(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    require_inputs(config);
    config.screening.validate();
    const auto panel = load_panel(config.inputs, config.schema);
    const auto bundle = build_report(panel, config);
    if (!config.out_dir.empty()) write_report(bundle, config.out_dir, config.bin_width);

    for (Variant v : {Variant::Raw, Variant::Adapted}) {
      if (!(v == Variant::Raw ? bundle.raw : bundle.adapted)) continue;
      out << "== " << to_string(v) << " ==\n"
          << render_frequency_table(bundle, v, TableFormat::Text) << '\n'
          << render_conformance_table(bundle, v, TableFormat::Text) << '\n';
    }
    out << "repetition flags: " << bundle.screening->flags.size() << '\n';
    return 0;
  });
}

int cmd_screen(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    require_inputs(config);
    config.screening.validate();
    const auto panel = filter_sectors(load_panel(config.inputs, config.schema), config.sectors);
    const auto flags = detect_repetitions(panel, config.screening);
    const auto summary = adapt_panel(panel, flags, config.screening).second;
    const auto log = render_audit_log(flags);
    out << log;
    if (!config.out_dir.empty()) {
      std::error_code ec;
      std::filesystem::create_directories(config.out_dir, ec);
      if (ec) throw InputError("cannot create output directory " + config.out_dir.string());
      write_file_atomic(config.out_dir / "screening_audit.log", log);
      write_file_atomic(config.out_dir / "screening_summary.json",
                        nlohmann::json(summary).dump(2) + "\n");
    }
    return 0;
  });
}

int cmd_fsd(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    require_inputs(config);
    std::vector<double> values;
    for (const auto& path : config.inputs) {
      std::ifstream in(path);
      if (!in) throw InputError("cannot open input file " + path.string());
      try {
        auto v = read_value_list(in);
        values.insert(values.end(), v.begin(), v.end());
      } catch (const ParseError& e) {
        throw InputError(path.string() + ": " + e.what());
      }
    }
    const std::string label = config.sectors.empty() ? "SAMPLE" : config.sectors.front();
    auto result = analyze_sample(PooledSample{label, std::move(values)}, benford_reference(),
                                 config.dstar_mode);
    if (result.fsd.empty()) throw EmptyDistributionError();

    ReportBundle bundle;
    bundle.raw = VariantResults{};
    bundle.raw->sectors.push_back(std::move(result));
    const auto& fsd = bundle.raw->sectors.front().fsd;
    out << to_csv(fsd) << "excluded," << fsd.excluded() << "\n\n"
        << render_conformance_table(bundle, Variant::Raw, TableFormat::Csv);
    if (!config.out_dir.empty()) write_report(bundle, config.out_dir, config.bin_width);
    return 0;
  });
}

}  // namespace fsdaudit
