#include "splboard/scanner.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <unordered_map>

#include "text_util.hpp"

namespace splboard {

const char* to_string(FragmentKind kind) {
  switch (kind) {
    case FragmentKind::kCode: return "code";
    case FragmentKind::kComment: return "comment";
    case FragmentKind::kDoc: return "doc";
  }
  return "unknown";
}

ScanError::ScanError(std::string file, int line, const std::string& message)
    : Error(file + ":" + std::to_string(line) + ": " + message),
      file_(std::move(file)),
      line_(line) {}

UnresolvedFeatureError::UnresolvedFeatureError(std::vector<std::string> names)
    : Error([&] {
        std::string msg = "unresolved feature name(s):";
        for (const auto& n : names) msg += " " + n;
        return msg;
      }()),
      names_(std::move(names)) {}

namespace {

enum class DirectiveKind { kNone, kIf, kElif, kElse, kEndif, kOther };

struct Directive {
  DirectiveKind kind = DirectiveKind::kNone;
  // For kIf: the tested macro and whether the then-branch is the positive
  // one. Empty macro means the condition is not understood.
  std::string macro;
  bool positive = true;
  std::string problem;  // warning text for unsupported forms
};

bool is_ident_char(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
         (c >= '0' && c <= '9') || c == '_';
}

std::string_view strip_trailing_comment(std::string_view s) {
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    if (s[i] == '/' && (s[i + 1] == '/' || s[i + 1] == '*'))
      return detail::rtrim(s.substr(0, i));
  }
  return detail::rtrim(s);
}

std::string_view take_ident(std::string_view& s) {
  s = detail::ltrim(s);
  std::size_t n = 0;
  while (n < s.size() && is_ident_char(s[n])) ++n;
  std::string_view id = s.substr(0, n);
  s.remove_prefix(n);
  return id;
}

// Recognizes `defined(X)`, `defined X` and their `!` negations.
bool parse_defined(std::string_view expr, std::string& macro, bool& positive) {
  expr = detail::trim(expr);
  positive = true;
  if (!expr.empty() && expr.front() == '!') {
    positive = false;
    expr.remove_prefix(1);
    expr = detail::ltrim(expr);
  }
  if (take_ident(expr) != "defined") return false;
  expr = detail::ltrim(expr);
  bool paren = false;
  if (!expr.empty() && expr.front() == '(') {
    paren = true;
    expr.remove_prefix(1);
  }
  std::string_view id = take_ident(expr);
  if (id.empty()) return false;
  expr = detail::ltrim(expr);
  if (paren) {
    if (expr.empty() || expr.front() != ')') return false;
    expr.remove_prefix(1);
    expr = detail::ltrim(expr);
  }
  if (!expr.empty()) return false;
  macro = std::string(id);
  return true;
}

Directive parse_directive(std::string_view line) {
  Directive d;
  std::string_view s = detail::ltrim(line);
  if (s.empty() || s.front() != '#') return d;
  s.remove_prefix(1);
  std::string_view keyword = take_ident(s);
  std::string_view rest = strip_trailing_comment(s);

  if (keyword == "ifdef" || keyword == "ifndef") {
    d.kind = DirectiveKind::kIf;
    d.positive = keyword == "ifdef";
    std::string_view tmp = rest;
    std::string_view id = take_ident(tmp);
    if (id.empty() || !detail::trim(tmp).empty()) {
      d.problem = "malformed #" + std::string(keyword) + "; region left unattributed";
    } else {
      d.macro = std::string(id);
    }
  } else if (keyword == "if") {
    d.kind = DirectiveKind::kIf;
    if (rest.find("&&") != std::string_view::npos ||
        rest.find("||") != std::string_view::npos) {
      d.problem = "boolean #if expression not supported; region left unattributed";
    } else if (!parse_defined(rest, d.macro, d.positive)) {
      d.macro.clear();
      d.problem = "unsupported #if expression '" + std::string(rest) +
                  "'; region left unattributed";
    }
  } else if (keyword == "elif" || keyword == "elifdef" ||
             keyword == "elifndef") {
    d.kind = DirectiveKind::kElif;
    d.problem = "#" + std::string(keyword) +
                " not supported; remaining branches left unattributed";
  } else if (keyword == "else") {
    d.kind = DirectiveKind::kElse;
  } else if (keyword == "endif") {
    d.kind = DirectiveKind::kEndif;
  } else {
    d.kind = DirectiveKind::kOther;
  }
  return d;
}

struct Frame {
  std::string macro;  // empty when opaque
  bool positive_then = true;
  bool in_else = false;
  bool opaque = false;
  int open_line = 0;
};

}  // namespace

bool is_comment_line(std::string_view line) {
  std::string_view s = detail::ltrim(line);
  if (s.empty()) return false;
  if (s.starts_with("//") || s.starts_with("/*") || s.front() == '*')
    return true;
  if (s.front() == '#') {
    const auto kind = parse_directive(s).kind;
    return kind == DirectiveKind::kOther;
  }
  return false;
}

std::vector<std::set<std::string>> attribute_lines(
    const SourceFile& file, const FeatureModel& model,
    const MacroMap& macro_map, std::vector<ScanWarning>* warnings,
    std::set<std::string>* unmapped) {
  const std::string& root = model.root().name;
  std::vector<std::set<std::string>> result;
  std::vector<Frame> stack;
  std::unordered_map<std::string, std::optional<std::string>> resolved;

  auto warn = [&](int line, const std::string& msg) {
    if (warnings) warnings->push_back({file.path, line, msg});
  };
  auto feature_of = [&](const std::string& macro,
                        int line) -> const std::optional<std::string>& {
    auto it = resolved.find(macro);
    if (it != resolved.end()) return it->second;
    std::optional<std::string> feature;
    if (auto m = macro_map.find(macro); m != macro_map.end()) {
      feature = m->second;
    } else if (model.contains(macro)) {
      feature = macro;
    } else {
      if (unmapped) unmapped->insert(macro);
      warn(line, "macro '" + macro + "' is not mapped to any feature");
    }
    return resolved.emplace(macro, std::move(feature)).first->second;
  };

  const auto lines = detail::split_lines(file.text);
  result.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const int line_no = static_cast<int>(i) + 1;
    const Directive d = parse_directive(lines[i]);
    switch (d.kind) {
      case DirectiveKind::kIf: {
        Frame f;
        f.open_line = line_no;
        if (d.macro.empty()) {
          f.opaque = true;
          warn(line_no, d.problem);
        } else {
          f.macro = d.macro;
          f.positive_then = d.positive;
          feature_of(d.macro, line_no);
        }
        stack.push_back(std::move(f));
        result.emplace_back();
        continue;
      }
      case DirectiveKind::kElif:
        if (stack.empty())
          throw ScanError(file.path, line_no, "#elif without matching #if");
        if (stack.back().in_else)
          throw ScanError(file.path, line_no, "#elif after #else");
        stack.back().opaque = true;
        warn(line_no, d.problem);
        result.emplace_back();
        continue;
      case DirectiveKind::kElse:
        if (stack.empty())
          throw ScanError(file.path, line_no, "#else without matching #if");
        if (stack.back().in_else)
          throw ScanError(file.path, line_no, "duplicate #else");
        stack.back().in_else = true;
        result.emplace_back();
        continue;
      case DirectiveKind::kEndif:
        if (stack.empty())
          throw ScanError(file.path, line_no, "#endif without matching #if");
        stack.pop_back();
        result.emplace_back();
        continue;
      case DirectiveKind::kNone:
      case DirectiveKind::kOther:
        break;
    }

    // Conjunction of macro literals guarding this line.
    std::map<std::string, bool> literals;
    bool dead = false;
    for (const Frame& f : stack) {
      if (f.opaque) continue;
      const bool polarity = f.in_else ? !f.positive_then : f.positive_then;
      auto [it, inserted] = literals.emplace(f.macro, polarity);
      if (!inserted && it->second != polarity) dead = true;
    }
    std::set<std::string> features;
    if (!dead) {
      for (const auto& [macro, polarity] : literals) {
        if (!polarity) continue;
        if (const auto& feature = feature_of(macro, line_no))
          features.insert(*feature);
      }
    }
    if (features.empty()) features.insert(root);
    result.push_back(std::move(features));
  }

  if (!stack.empty())
    throw ScanError(file.path, stack.back().open_line,
                    "conditional opened here is not closed before end of file");
  return result;
}

ScanResult scan_sources(const std::vector<SourceFile>& files,
                        const FeatureModel& model, const MacroMap& macro_map) {
  for (const auto& [macro, feature] : macro_map)
    if (!model.contains(feature))
      throw UnresolvedFeatureError({feature});

  ScanResult out;
  std::unordered_map<std::string, std::size_t> doc_index;
  for (const Feature& f : model.features()) {
    doc_index.emplace(f.name, out.documents.size());
    out.documents.push_back({f.name, {}});
  }

  for (const SourceFile& file : files) {
    const auto attribution = attribute_lines(file, model, macro_map,
                                             &out.warnings,
                                             &out.unmapped_macros);
    const auto lines = detail::split_lines(file.text);

    // Open run per feature; closed when the next line breaks it.
    std::map<std::string, Fragment> open;
    std::vector<std::pair<std::string, Fragment>> closed;
    auto close = [&](const std::string& feature) {
      auto it = open.find(feature);
      if (it == open.end()) return;
      closed.emplace_back(feature, std::move(it->second));
      open.erase(it);
    };

    for (std::size_t i = 0; i < lines.size(); ++i) {
      const int line_no = static_cast<int>(i) + 1;
      const auto& features = attribution[i];
      const FragmentKind kind = is_comment_line(lines[i]) ? FragmentKind::kComment
                                                          : FragmentKind::kCode;
      for (auto it = open.begin(); it != open.end();) {
        const std::string name = it->first;
        ++it;
        if (!features.count(name) || open.at(name).kind != kind) close(name);
      }
      for (const std::string& feature : features) {
        auto it = open.find(feature);
        if (it == open.end()) {
          open.emplace(feature, Fragment{file.path, line_no, line_no, kind,
                                         std::string(lines[i])});
        } else {
          it->second.last_line = line_no;
          it->second.text += '\n';
          it->second.text += lines[i];
        }
      }
    }
    while (!open.empty()) close(open.begin()->first);

    std::stable_sort(closed.begin(), closed.end(),
                     [](const auto& a, const auto& b) {
                       return a.second.first_line < b.second.first_line;
                     });
    for (auto& [feature, fragment] : closed)
      out.documents[doc_index.at(feature)].fragments.push_back(
          std::move(fragment));
  }
  return out;
}

void ingest_docs(std::vector<FeatureDocument>& documents,
                 const std::vector<DocEntry>& entries) {
  std::vector<std::string> missing;
  for (const DocEntry& e : entries) {
    const bool known = std::any_of(
        documents.begin(), documents.end(),
        [&](const FeatureDocument& d) { return d.feature == e.feature; });
    if (!known &&
        std::find(missing.begin(), missing.end(), e.feature) == missing.end())
      missing.push_back(e.feature);
  }
  if (!missing.empty()) throw UnresolvedFeatureError(std::move(missing));

  for (const DocEntry& e : entries) {
    auto doc = std::find_if(
        documents.begin(), documents.end(),
        [&](const FeatureDocument& d) { return d.feature == e.feature; });
    const auto n = detail::split_lines(e.text).size();
    doc->fragments.push_back({e.path, 1, std::max<int>(1, static_cast<int>(n)),
                              FragmentKind::kDoc, e.text});
  }
}

namespace {

std::vector<std::pair<std::string, std::string>> parse_assignments(
    std::string_view text, const char* what) {
  std::vector<std::pair<std::string, std::string>> out;
  int line_no = 0;
  for (std::string_view raw : detail::split_lines(text)) {
    ++line_no;
    std::string_view line = detail::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw Error(std::string(what) + " line " + std::to_string(line_no) +
                  ": expected 'key = value'");
    std::string key(detail::trim(line.substr(0, eq)));
    std::string value(detail::trim(line.substr(eq + 1)));
    if (key.empty() || value.empty())
      throw Error(std::string(what) + " line " + std::to_string(line_no) +
                  ": empty key or value");
    out.emplace_back(std::move(key), std::move(value));
  }
  return out;
}

}  // namespace

MacroMap parse_macro_map(std::string_view text) {
  MacroMap out;
  for (auto& [macro, feature] : parse_assignments(text, "macro map"))
    out[macro] = feature;
  return out;
}

std::vector<DocMapEntry> parse_doc_map(std::string_view text) {
  std::vector<DocMapEntry> out;
  for (auto& [feature, path] : parse_assignments(text, "doc map"))
    out.push_back({feature, path});
  return out;
}

}  // namespace splboard
