#ifndef SPLBOARD_CONFIG_HPP
#define SPLBOARD_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "splboard/error.hpp"

namespace splboard {

class ConfigError : public Error {
 public:
  using Error::Error;
};

struct Parameters {
  double lambda = 0.5;
  int k = 10;
  int window = 4;
  int topics = 10;
  std::optional<double> alpha;  // defaults to 50 / topics
  double beta = 0.01;
  int iterations = 1000;
  std::uint64_t seed = 42;
  double threshold = 0.0;
  int suggest_threshold = 3;
  bool stem = false;

  double effective_alpha() const { return alpha ? *alpha : 50.0 / topics; }
};

// A project file is `key = value` lines with optional `[section]` headers:
//
//   feature_model = navspl.fm
//   sources = src/*.c, src/*.h
//   macro_map = macros.map
//   doc_map = docs.map
//   background = background.txt
//   ledger = ledger.jsonl
//   output = out
//
//   [parameters]
//   lambda = 0.5
//   topics = 10
//
//   [backgrounds]
//   alice = alice.txt
//
// Relative paths resolve against the directory holding the file.
struct ProjectConfig {
  std::filesystem::path base_dir;
  std::filesystem::path feature_model;
  std::vector<std::string> sources;  // glob patterns, relative to base_dir
  std::optional<std::filesystem::path> macro_map;
  std::optional<std::filesystem::path> doc_map;
  std::optional<std::filesystem::path> stopwords;
  std::optional<std::filesystem::path> ledger;
  std::filesystem::path output_dir;
  // Background manifests by id; `background = ...` registers id "default".
  std::map<std::string, std::filesystem::path> backgrounds;
  Parameters params;

  // Throws ConfigError for out-of-range parameters.
  void validate_parameters() const;
};

ProjectConfig parse_config(std::string_view text,
                           const std::filesystem::path& base_dir);
ProjectConfig load_config(const std::filesystem::path& file);

// Expands the source globs (wildcards allowed in the file name part only)
// into sorted paths relative to base_dir. Plain paths must exist.
std::vector<std::string> expand_sources(const ProjectConfig& config);

std::string read_file(const std::filesystem::path& path);

}  // namespace splboard

#endif  // SPLBOARD_CONFIG_HPP
