// fsdaudit: first-significant-digit audit of price-index panels.
//
//   fsdaudit analyze --input panel.csv --out reports/
//   fsdaudit screen  --input panel.csv --min-run 4
//   fsdaudit fsd     --input values.txt
//
// Settings come from a flat key = value file (--config, or $FSDAUDIT_CONFIG);
// any flag given on the command line overrides the same key from the file.

#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "fsdaudit/config.hpp"
#include "fsdaudit/errors.hpp"
#include "fsdaudit/pipeline.hpp"

namespace {

struct Overrides {
  std::string config;
  std::map<std::string, std::string> values;
};

void add_common_options(CLI::App& cmd, Overrides& o) {
  cmd.add_option("--config", o.config, "key = value settings file");
  auto opt = [&](const char* flag, const char* key, const char* help) {
    cmd.add_option_function<std::string>(
        flag, [&o, key](const std::string& v) { o.values[key] = v; }, help);
  };
  opt("--input", "input", "input file(s), comma-separated");
  opt("--out", "out", "output directory");
  opt("--min-run", "min_run", "minimum identical-level run to flag (>= 2, default 4)");
  opt("--policy", "policy", "drop-run-tail | drop-entire-run");
  opt("--dstar-mode", "dstar_mode", "table-consistent | literal-eq3");
  opt("--sectors", "sectors", "comma-separated sector filter");
  opt("--variant", "variant", "raw | adapted | both");
  opt("--workers", "workers", "worker threads (default: number of processors)");
  opt("--bin-width", "bin_width", "histogram bin width in percent (default 1)");
  opt("--delimiter", "delimiter", "input field delimiter (default comma)");
  opt("--date-format", "date_format", "DD/MM/YY | YYYY-MM");
}

fsdaudit::RunConfig resolve(const Overrides& o) {
  fsdaudit::KeyValues kv;
  std::string path = o.config;
  if (path.empty()) {
    if (const char* env = std::getenv("FSDAUDIT_CONFIG")) path = env;
  }
  if (!path.empty()) kv = fsdaudit::load_key_values(path);
  for (const auto& [key, value] : o.values) kv[key] = value;
  return fsdaudit::run_config_from(kv);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Benford first-significant-digit audit for price-index panels"};
  app.require_subcommand(1);

  Overrides analyze_opts, screen_opts, fsd_opts;
  auto* analyze = app.add_subcommand("analyze", "screen, score and report a panel");
  add_common_options(*analyze, analyze_opts);
  auto* screen = app.add_subcommand("screen", "detect repeated-level runs only");
  add_common_options(*screen, screen_opts);
  auto* fsd = app.add_subcommand("fsd", "score a file of raw numbers, one per line");
  add_common_options(*fsd, fsd_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (analyze->parsed()) return fsdaudit::cmd_analyze(resolve(analyze_opts), std::cout, std::cerr);
    if (screen->parsed()) return fsdaudit::cmd_screen(resolve(screen_opts), std::cout, std::cerr);
    return fsdaudit::cmd_fsd(resolve(fsd_opts), std::cout, std::cerr);
  } catch (const fsdaudit::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  }
}
