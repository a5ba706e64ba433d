#ifndef SPLBOARD_SCANNER_HPP
#define SPLBOARD_SCANNER_HPP

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "splboard/error.hpp"
#include "splboard/feature_model.hpp"

namespace splboard {

enum class FragmentKind { kCode, kComment, kDoc };

const char* to_string(FragmentKind kind);

struct Fragment {
  std::string source;
  int first_line = 1;  // 1-based, inclusive
  int last_line = 1;   // inclusive, >= first_line
  FragmentKind kind = FragmentKind::kCode;
  std::string text;

  friend bool operator==(const Fragment&, const Fragment&) = default;
};

// Everything attributed to one feature.
struct FeatureDocument {
  std::string feature;
  std::vector<Fragment> fragments;

  friend bool operator==(const FeatureDocument&,
                         const FeatureDocument&) = default;
};

struct SourceFile {
  std::string path;
  std::string text;
};

struct ScanWarning {
  std::string file;
  int line = 0;
  std::string message;
};

struct ScanResult {
  // One document per model feature, in model order.
  std::vector<FeatureDocument> documents;
  std::vector<ScanWarning> warnings;
  std::set<std::string> unmapped_macros;
};

// Unbalanced conditional directives.
class ScanError : public Error {
 public:
  ScanError(std::string file, int line, const std::string& message);
  const std::string& file() const { return file_; }
  int line() const { return line_; }

 private:
  std::string file_;
  int line_;
};

// Macro name -> feature name. Macros absent from the map fall back to the
// feature of the same name, if the model has one.
using MacroMap = std::map<std::string, std::string, std::less<>>;

// Attributes every non-directive source line to the features whose positive
// conditional regions enclose it (`#ifdef X`, `#if defined(X)`, and the
// `#else` of `#ifndef X`). Lines with no positive feature go to the root.
// Conditional directive lines are attributed to nothing.
ScanResult scan_sources(const std::vector<SourceFile>& files,
                        const FeatureModel& model, const MacroMap& macro_map);

// Per-line view of the same attribution, used by tests and diagnostics:
// for each line (index 0 = line 1) the attributed features, or an empty set
// for conditional directive lines.
std::vector<std::set<std::string>> attribute_lines(
    const SourceFile& file, const FeatureModel& model,
    const MacroMap& macro_map, std::vector<ScanWarning>* warnings = nullptr,
    std::set<std::string>* unmapped = nullptr);

// Lines whose first non-blank characters are `//`, `/*`, `*` or a
// non-conditional `#`.
bool is_comment_line(std::string_view line);

struct DocEntry {
  std::string feature;
  std::string path;
  std::string text;
};

class UnresolvedFeatureError : public Error {
 public:
  explicit UnresolvedFeatureError(std::vector<std::string> names);
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::vector<std::string> names_;
};

// Appends one kDoc fragment per entry to its feature's document. Throws
// UnresolvedFeatureError listing every unknown feature name.
void ingest_docs(std::vector<FeatureDocument>& documents,
                 const std::vector<DocEntry>& entries);

// `MACRO = FeatureName` per line; `#` comments and blank lines allowed.
MacroMap parse_macro_map(std::string_view text);

struct DocMapEntry {
  std::string feature;
  std::string path;
};

// `FeatureName = path` per line.
std::vector<DocMapEntry> parse_doc_map(std::string_view text);

}  // namespace splboard

#endif  // SPLBOARD_SCANNER_HPP
