#include "fsdaudit/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>

#include "fsdaudit/errors.hpp"
#include "text_util.hpp"

namespace fsdaudit {

KeyValues parse_key_values(std::istream& in) {
  KeyValues kv;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = detail::trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected key = value");
    const auto key = detail::trim(text.substr(0, eq));
    if (key.empty()) throw ParseError(line_no, "empty key");
    kv[std::string(key)] = std::string(detail::trim(text.substr(eq + 1)));
  }
  return kv;
}

KeyValues load_key_values(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  try {
    return parse_key_values(in);
  } catch (const ParseError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

namespace {

char parse_delimiter(const std::string& text) {
  if (text == "comma" || text == ",") return ',';
  if (text == "tab" || text == "\\t" || text == "\t") return '\t';
  if (text == "semicolon" || text == ";") return ';';
  if (text == "pipe" || text == "|") return '|';
  if (text.size() == 1 && text != "\"") return text[0];
  throw ConfigError("unsupported delimiter '" + text + "'");
}

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw ConfigError("invalid value '" + text + "' for " + key);
  return value;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  for (const auto& item : detail::split_delimited(text, ',')) {
    auto t = detail::trim(item);
    if (!t.empty()) out.emplace_back(t);
  }
  return out;
}

const std::set<std::string> kKnownKeys = {
    "delimiter",   "date_format", "date_column", "country_column", "sector_column",
    "level_column", "input",      "out",         "min_run",        "policy",
    "dstar_mode",  "sectors",     "variant",     "workers",        "bin_width"};

}  // namespace

PanelSchema schema_from(const KeyValues& kv) {
  PanelSchema schema;
  auto get = [&](const char* key, std::string& target) {
    if (auto it = kv.find(key); it != kv.end()) target = it->second;
  };
  if (auto it = kv.find("delimiter"); it != kv.end()) schema.delimiter = parse_delimiter(it->second);
  if (auto it = kv.find("date_format"); it != kv.end())
    schema.date_format = parse_date_format(it->second);
  get("date_column", schema.date_column);
  get("country_column", schema.country_column);
  get("sector_column", schema.sector_column);
  get("level_column", schema.level_column);
  return schema;
}

VariantSelection parse_variant_selection(const std::string& text) {
  if (text == "raw") return VariantSelection::RawOnly;
  if (text == "adapted") return VariantSelection::AdaptedOnly;
  if (text == "both") return VariantSelection::Both;
  throw ConfigError("unknown variant '" + text + "' (expected raw, adapted or both)");
}

RunConfig run_config_from(const KeyValues& kv) {
  for (const auto& [key, value] : kv)
    if (!kKnownKeys.contains(key)) throw ConfigError("unknown config key '" + key + "'");

  RunConfig cfg;
  cfg.schema = schema_from(kv);
  if (auto it = kv.find("input"); it != kv.end())
    for (const auto& p : split_list(it->second)) cfg.inputs.emplace_back(p);
  if (auto it = kv.find("out"); it != kv.end()) cfg.out_dir = it->second;
  if (auto it = kv.find("min_run"); it != kv.end())
    cfg.screening.min_run = parse_number<int>("min_run", it->second);
  if (auto it = kv.find("policy"); it != kv.end())
    cfg.screening.policy = parse_deletion_policy(it->second);
  if (auto it = kv.find("dstar_mode"); it != kv.end()) cfg.dstar_mode = parse_dstar_mode(it->second);
  if (auto it = kv.find("sectors"); it != kv.end()) cfg.sectors = split_list(it->second);
  if (auto it = kv.find("variant"); it != kv.end())
    cfg.variants = parse_variant_selection(it->second);
  if (auto it = kv.find("workers"); it != kv.end())
    cfg.workers = parse_number<unsigned>("workers", it->second);
  if (auto it = kv.find("bin_width"); it != kv.end()) {
    auto w = detail::parse_double(it->second);
    if (!w || !(*w > 0.0)) throw ConfigError("bin_width must be a positive number");
    cfg.bin_width = *w;
  }
  cfg.screening.validate();
  return cfg;
}

}  // namespace fsdaudit
