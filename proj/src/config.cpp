#include "splboard/config.hpp"

#include <fnmatch.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "text_util.hpp"

namespace splboard {

namespace fs = std::filesystem;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

namespace {

std::string unquote(std::string_view v) {
  if (v.size() >= 2 && ((v.front() == '"' && v.back() == '"') ||
                        (v.front() == '\'' && v.back() == '\'')))
    v = v.substr(1, v.size() - 2);
  return std::string(v);
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size())
    throw ConfigError("config: '" + key + "' expects a number, got '" + value +
                      "'");
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "yes" || value == "1") return true;
  if (value == "false" || value == "no" || value == "0") return false;
  throw ConfigError("config: '" + key + "' expects true/false");
}

}  // namespace

void ProjectConfig::validate_parameters() const {
  const Parameters& p = params;
  if (!(p.lambda >= 0.0 && p.lambda <= 1.0))
    throw ConfigError("lambda must lie in [0, 1]");
  if (p.k < 1) throw ConfigError("k must be >= 1");
  if (p.window < 2) throw ConfigError("window must be >= 2");
  if (p.topics < 1) throw ConfigError("topics must be >= 1");
  if (p.alpha && !(*p.alpha > 0.0)) throw ConfigError("alpha must be > 0");
  if (!(p.beta > 0.0)) throw ConfigError("beta must be > 0");
  if (p.iterations < 1) throw ConfigError("iterations must be >= 1");
  if (!(p.threshold >= 0.0 && p.threshold < 1.0))
    throw ConfigError("threshold must satisfy 0 <= threshold < 1");
  if (p.suggest_threshold < 1) throw ConfigError("suggest_threshold must be >= 1");
}

ProjectConfig parse_config(std::string_view text, const fs::path& base_dir) {
  ProjectConfig cfg;
  cfg.base_dir = base_dir;
  cfg.output_dir = base_dir / "out";
  std::string section;
  bool have_model = false;
  int line_no = 0;

  auto path_of = [&](const std::string& v) { return base_dir / v; };

  for (std::string_view raw : detail::split_lines(text)) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("config line " + std::to_string(line_no) +
                          ": malformed section header");
      section = std::string(detail::trim(line.substr(1, line.size() - 2)));
      if (section != "parameters" && section != "backgrounds" && section != "paths")
        throw ConfigError("config line " + std::to_string(line_no) +
                          ": unknown section '" + section + "'");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected 'key = value'");
    const std::string key(detail::trim(line.substr(0, eq)));
    const std::string value = unquote(detail::trim(line.substr(eq + 1)));

    if (section == "backgrounds") {
      cfg.backgrounds[key] = path_of(value);
      continue;
    }
    if (section == "parameters") {
      Parameters& p = cfg.params;
      if (key == "lambda") p.lambda = parse_number<double>(key, value);
      else if (key == "k") p.k = parse_number<int>(key, value);
      else if (key == "window") p.window = parse_number<int>(key, value);
      else if (key == "topics" || key == "K") p.topics = parse_number<int>(key, value);
      else if (key == "alpha") p.alpha = parse_number<double>(key, value);
      else if (key == "beta") p.beta = parse_number<double>(key, value);
      else if (key == "iterations") p.iterations = parse_number<int>(key, value);
      else if (key == "seed") p.seed = parse_number<std::uint64_t>(key, value);
      else if (key == "threshold") p.threshold = parse_number<double>(key, value);
      else if (key == "suggest_threshold")
        p.suggest_threshold = parse_number<int>(key, value);
      else if (key == "stem") p.stem = parse_bool(key, value);
      else
        throw ConfigError("config line " + std::to_string(line_no) +
                          ": unknown parameter '" + key + "'");
      continue;
    }
    if (key == "feature_model") {
      cfg.feature_model = path_of(value);
      have_model = true;
    } else if (key == "sources") {
      std::stringstream ss(value);
      std::string item;
      while (std::getline(ss, item, ',')) {
        std::string pattern(detail::trim(item));
        if (!pattern.empty()) cfg.sources.push_back(pattern);
      }
    } else if (key == "macro_map") {
      cfg.macro_map = path_of(value);
    } else if (key == "doc_map") {
      cfg.doc_map = path_of(value);
    } else if (key == "stopwords") {
      cfg.stopwords = path_of(value);
    } else if (key == "background") {
      cfg.backgrounds["default"] = path_of(value);
    } else if (key == "ledger") {
      cfg.ledger = path_of(value);
    } else if (key == "output") {
      cfg.output_dir = path_of(value);
    } else {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": unknown key '" + key + "'");
    }
  }
  if (!have_model) throw ConfigError("config: 'feature_model' is required");
  cfg.validate_parameters();
  return cfg;
}

ProjectConfig load_config(const fs::path& file) {
  std::string text;
  try {
    text = read_file(file);
  } catch (const Error&) {
    throw ConfigError("cannot read config '" + file.string() + "'");
  }
  fs::path base = file.parent_path();
  if (base.empty()) base = ".";
  return parse_config(text, base);
}

std::vector<std::string> expand_sources(const ProjectConfig& config) {
  std::set<std::string> found;
  for (const std::string& pattern : config.sources) {
    const fs::path rel(pattern);
    const std::string name = rel.filename().string();
    const fs::path dir_part = rel.parent_path();
    if (dir_part.string().find_first_of("*?[") != std::string::npos)
      throw ConfigError("source pattern '" + pattern +
                        "': wildcards are only allowed in the file name");
    if (name.find_first_of("*?[") == std::string::npos) {
      if (!fs::is_regular_file(config.base_dir / rel))
        throw ConfigError("source file '" + pattern + "' does not exist");
      found.insert(rel.generic_string());
      continue;
    }
    const fs::path dir = config.base_dir / dir_part;
    if (!fs::is_directory(dir))
      throw ConfigError("source directory '" + dir_part.string() +
                        "' does not exist");
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (!entry.is_regular_file()) continue;
      const std::string fname = entry.path().filename().string();
      if (fnmatch(name.c_str(), fname.c_str(), 0) == 0)
        found.insert((dir_part / fname).generic_string());
    }
  }
  return {found.begin(), found.end()};
}

}  // namespace splboard
