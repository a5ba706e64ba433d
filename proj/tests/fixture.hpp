#ifndef SPLBOARD_TESTS_FIXTURE_HPP
#define SPLBOARD_TESTS_FIXTURE_HPP

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "splboard/config.hpp"

namespace fixture {

inline std::filesystem::path dir() { return SPLBOARD_FIXTURE_DIR; }
inline std::filesystem::path config_file() { return dir() / "proj.toml"; }

// Fresh, empty scratch directory unique to this process and tag.
inline std::filesystem::path scratch(const std::string& tag) {
  const auto path = std::filesystem::temp_directory_path() /
                    ("splboard-" + tag + "-" + std::to_string(::getpid()));
  std::filesystem::remove_all(path);
  std::filesystem::create_directories(path);
  return path;
}

// The bundled project with its output redirected to `out`.
inline splboard::ProjectConfig config(const std::filesystem::path& out) {
  splboard::ProjectConfig cfg = splboard::load_config(config_file());
  cfg.output_dir = out;
  return cfg;
}

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace fixture

#endif  // SPLBOARD_TESTS_FIXTURE_HPP
