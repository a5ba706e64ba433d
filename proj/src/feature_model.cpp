#include "splboard/feature_model.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "text_util.hpp"

namespace splboard {

const char* to_string(FeatureModelErrorKind kind) {
  switch (kind) {
    case FeatureModelErrorKind::kSyntax: return "syntax";
    case FeatureModelErrorKind::kDuplicateName: return "duplicate-name";
    case FeatureModelErrorKind::kDanglingReference: return "dangling-reference";
    case FeatureModelErrorKind::kInvalidCardinality:
      return "invalid-cardinality";
    case FeatureModelErrorKind::kSelfConstraint: return "self-constraint";
  }
  return "unknown";
}

namespace {

std::string format_message(FeatureModelErrorKind kind, int line,
                           const std::string& message) {
  std::ostringstream out;
  out << "feature model " << to_string(kind) << " error";
  if (line > 0) out << " at line " << line;
  out << ": " << message;
  return out.str();
}

}  // namespace

FeatureModelError::FeatureModelError(FeatureModelErrorKind kind, int line,
                                     const std::string& message)
    : Error(format_message(kind, line, message)), kind_(kind), line_(line) {}

bool is_valid_feature_name(std::string_view name) {
  if (name.empty()) return false;
  auto is_head = [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
  };
  if (!is_head(name.front())) return false;
  return std::all_of(name.begin() + 1, name.end(), [&](char c) {
    return is_head(c) || (c >= '0' && c <= '9');
  });
}

FeatureModel::FeatureModel(std::vector<Feature> features,
                           std::vector<Constraint> constraints) {
  using Kind = FeatureModelErrorKind;
  if (features.empty()) throw FeatureModelError(Kind::kSyntax, 0, "no features");

  std::unordered_map<std::string, std::size_t> index;
  const Feature* root = nullptr;
  for (std::size_t i = 0; i < features.size(); ++i) {
    const Feature& f = features[i];
    if (!is_valid_feature_name(f.name))
      throw FeatureModelError(Kind::kSyntax, 0,
                              "invalid feature name '" + f.name + "'");
    if (!index.emplace(f.name, i).second)
      throw FeatureModelError(Kind::kDuplicateName, 0,
                              "duplicate feature '" + f.name + "'");
    if (!f.parent) {
      if (root)
        throw FeatureModelError(Kind::kSyntax, 0,
                                "more than one root: '" + root->name +
                                    "' and '" + f.name + "'");
      root = &f;
    }
    if ((f.variability == Variability::kGroupMember) != f.group.has_value())
      throw FeatureModelError(Kind::kSyntax, 0,
                              "feature '" + f.name +
                                  "' group membership does not match its "
                                  "variability");
  }
  if (!root) throw FeatureModelError(Kind::kSyntax, 0, "model has no root");
  if (root->variability != Variability::kMandatory)
    throw FeatureModelError(Kind::kSyntax, 0, "root must be mandatory");

  std::map<std::string, std::vector<std::size_t>> kids;
  for (std::size_t i = 0; i < features.size(); ++i) {
    const Feature& f = features[i];
    if (!f.parent) continue;
    if (!index.count(*f.parent))
      throw FeatureModelError(Kind::kDanglingReference, 0,
                              "feature '" + f.name + "' has unknown parent '" +
                                  *f.parent + "'");
    kids[*f.parent].push_back(i);
  }

  // Groups: one parent, one cardinality, 1 <= lo <= hi <= members.
  struct GroupInfo {
    std::string parent;
    GroupRef ref;
    int members = 0;
  };
  std::map<std::string, GroupInfo> groups;
  for (const Feature& f : features) {
    if (!f.group) continue;
    auto [it, inserted] =
        groups.emplace(f.group->id, GroupInfo{*f.parent, *f.group, 0});
    if (!inserted) {
      if (it->second.parent != *f.parent)
        throw FeatureModelError(Kind::kDuplicateName, 0,
                                "group id '" + f.group->id +
                                    "' used under two parents");
      if (!(it->second.ref == *f.group))
        throw FeatureModelError(Kind::kInvalidCardinality, 0,
                                "group '" + f.group->id +
                                    "' members disagree on cardinality");
    }
    ++it->second.members;
  }
  for (const auto& [id, info] : groups) {
    if (info.ref.lo < 1 || info.ref.lo > info.ref.hi ||
        info.ref.hi > info.members)
      throw FeatureModelError(
          Kind::kInvalidCardinality, 0,
          "group '" + id + "' cardinality [" + std::to_string(info.ref.lo) +
              ".." + std::to_string(info.ref.hi) + "] with " +
              std::to_string(info.members) + " member(s)");
  }

  // Canonical pre-order; group members are pulled together at the position
  // of the first member. Also detects cycles and unreachable features.
  std::vector<Feature> ordered;
  ordered.reserve(features.size());
  std::vector<bool> placed(features.size(), false);
  std::function<void(std::size_t)> visit = [&](std::size_t i) {
    placed[i] = true;
    ordered.push_back(features[i]);
    auto it = kids.find(features[i].name);
    if (it == kids.end()) return;
    const auto& children = it->second;
    for (std::size_t c : children) {
      if (placed[c]) continue;
      if (features[c].group) {
        const std::string& gid = features[c].group->id;
        for (std::size_t m : children)
          if (!placed[m] && features[m].group && features[m].group->id == gid)
            visit(m);
      } else {
        visit(c);
      }
    }
  };
  visit(index.at(root->name));
  if (ordered.size() != features.size()) {
    for (std::size_t i = 0; i < features.size(); ++i)
      if (!placed[i])
        throw FeatureModelError(Kind::kDanglingReference, 0,
                                "feature '" + features[i].name +
                                    "' is not reachable from the root");
  }

  for (const Constraint& c : constraints) {
    for (const std::string* end : {&c.lhs, &c.rhs})
      if (!index.count(*end))
        throw FeatureModelError(Kind::kDanglingReference, 0,
                                "constraint references unknown feature '" +
                                    *end + "'");
    if (c.lhs == c.rhs)
      throw FeatureModelError(Kind::kSelfConstraint, 0,
                              "constraint relates '" + c.lhs + "' to itself");
  }

  features_ = std::move(ordered);
  constraints_ = std::move(constraints);
}

bool FeatureModel::contains(std::string_view name) const {
  return find(name) != nullptr;
}

const Feature* FeatureModel::find(std::string_view name) const {
  for (const Feature& f : features_)
    if (f.name == name) return &f;
  return nullptr;
}

std::vector<const Feature*> FeatureModel::children(std::string_view name) const {
  std::vector<const Feature*> out;
  for (const Feature& f : features_)
    if (f.parent && *f.parent == name) out.push_back(&f);
  return out;
}

namespace {

using Kind = FeatureModelErrorKind;

struct ParsedGroup {
  GroupRef ref;
  std::string parent;
  int line = 0;
  int members = 0;
};

// One open level of the indentation stack.
struct Frame {
  bool is_group = false;
  std::string feature;      // owning feature (the group's parent for groups)
  std::size_t group = 0;    // index into groups when is_group
};

bool parse_int(std::string_view s, int& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

// "[lo..hi]"
bool parse_cardinality(std::string_view s, int& lo, int& hi) {
  if (s.size() < 6 || s.front() != '[' || s.back() != ']') return false;
  s = s.substr(1, s.size() - 2);
  auto dots = s.find("..");
  if (dots == std::string_view::npos) return false;
  return parse_int(s.substr(0, dots), lo) && parse_int(s.substr(dots + 2), hi);
}

}  // namespace

FeatureModel parse_feature_model(std::string_view text) {
  std::vector<Feature> features;
  std::vector<Constraint> constraints;
  std::vector<ParsedGroup> groups;
  std::unordered_map<std::string, int> seen;  // name -> declaring line
  std::set<std::string> group_ids;
  std::vector<Frame> stack;
  bool in_constraints = false;
  bool have_root = false;

  auto fail = [](Kind kind, int line, const std::string& msg) {
    throw FeatureModelError(kind, line, msg);
  };
  auto declare = [&](const std::string& name, int line) {
    if (!is_valid_feature_name(name))
      fail(Kind::kSyntax, line, "invalid feature name '" + name + "'");
    auto [it, inserted] = seen.emplace(name, line);
    if (!inserted)
      fail(Kind::kDuplicateName, line,
           "feature '" + name + "' already declared at line " +
               std::to_string(it->second));
  };

  int line_no = 0;
  for (std::string_view raw : detail::split_lines(text)) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = detail::rtrim(line);
    if (line.empty()) continue;

    std::size_t indent = 0;
    while (indent < line.size() && line[indent] == ' ') ++indent;
    if (indent < line.size() && line[indent] == '\t')
      fail(Kind::kSyntax, line_no, "tabs are not allowed for indentation");
    const std::vector<std::string_view> words =
        detail::split_words(line.substr(indent));

    if (!have_root) {
      if (indent != 0 || words.size() != 2 || words[0] != "root")
        fail(Kind::kSyntax, line_no, "expected 'root <Name>' first");
      std::string name(words[1]);
      declare(name, line_no);
      features.push_back({name, std::nullopt, Variability::kMandatory, {}});
      stack.push_back({false, name, 0});
      have_root = true;
      continue;
    }

    if (indent == 0) {
      if (words.size() == 1 && words[0] == "constraints" && !in_constraints) {
        in_constraints = true;
        continue;
      }
      fail(Kind::kSyntax, line_no,
           "unexpected top-level line '" + std::string(line) + "'");
    }

    if (in_constraints) {
      if (words.size() != 3 || (words[1] != "requires" && words[1] != "excludes"))
        fail(Kind::kSyntax, line_no,
             "expected '<A> requires <B>' or '<A> excludes <B>'");
      Constraint c{std::string(words[0]),
                   words[1] == "requires" ? ConstraintKind::kRequires
                                          : ConstraintKind::kExcludes,
                   std::string(words[2])};
      for (const std::string* end : {&c.lhs, &c.rhs})
        if (!seen.count(*end))
          fail(Kind::kDanglingReference, line_no,
               "constraint references unknown feature '" + *end + "'");
      if (c.lhs == c.rhs)
        fail(Kind::kSelfConstraint, line_no,
             "constraint relates '" + c.lhs + "' to itself");
      constraints.push_back(std::move(c));
      continue;
    }

    if (indent % 2 != 0)
      fail(Kind::kSyntax, line_no, "indentation must be a multiple of 2");
    const std::size_t level = indent / 2;
    if (level > stack.size())
      fail(Kind::kSyntax, line_no, "line is indented too deeply");
    stack.resize(level);
    const Frame parent = stack.back();

    if (words[0] == "mandatory" || words[0] == "optional") {
      if (words.size() != 2) fail(Kind::kSyntax, line_no, "expected one name");
      if (parent.is_group)
        fail(Kind::kSyntax, line_no, "groups may only contain 'member' lines");
      std::string name(words[1]);
      declare(name, line_no);
      features.push_back({name, parent.feature,
                          words[0] == "mandatory" ? Variability::kMandatory
                                                  : Variability::kOptional,
                          {}});
      stack.push_back({false, name, 0});
    } else if (words[0] == "member") {
      if (words.size() != 2) fail(Kind::kSyntax, line_no, "expected one name");
      if (!parent.is_group)
        fail(Kind::kSyntax, line_no, "'member' must appear inside a group");
      std::string name(words[1]);
      declare(name, line_no);
      ParsedGroup& g = groups[parent.group];
      ++g.members;
      features.push_back({name, g.parent, Variability::kGroupMember, g.ref});
      stack.push_back({false, name, 0});
    } else if (words[0] == "group") {
      if (parent.is_group)
        fail(Kind::kSyntax, line_no, "groups cannot nest directly");
      int lo = 0;
      int hi = 0;
      if (words.size() != 3 || !parse_cardinality(words[2], lo, hi))
        fail(Kind::kSyntax, line_no, "expected 'group <id> [lo..hi]'");
      std::string id(words[1]);
      if (!is_valid_feature_name(id))
        fail(Kind::kSyntax, line_no, "invalid group id '" + id + "'");
      if (!group_ids.insert(id).second)
        fail(Kind::kDuplicateName, line_no, "duplicate group id '" + id + "'");
      groups.push_back({GroupRef{id, lo, hi}, parent.feature, line_no, 0});
      stack.push_back({true, parent.feature, groups.size() - 1});
    } else {
      fail(Kind::kSyntax, line_no,
           "unknown keyword '" + std::string(words[0]) + "'");
    }
  }

  if (!have_root) fail(Kind::kSyntax, 0, "empty feature model");
  for (const ParsedGroup& g : groups) {
    if (g.ref.lo < 1 || g.ref.lo > g.ref.hi || g.ref.hi > g.members)
      fail(Kind::kInvalidCardinality, g.line,
           "group '" + g.ref.id + "' cardinality [" + std::to_string(g.ref.lo) +
               ".." + std::to_string(g.ref.hi) + "] with " +
               std::to_string(g.members) + " member(s)");
  }
  return FeatureModel(std::move(features), std::move(constraints));
}

std::string serialize_feature_model(const FeatureModel& model) {
  std::ostringstream out;
  std::function<void(const Feature&, int)> emit_children =
      [&](const Feature& parent, int level) {
        const auto kids = model.children(parent.name);
        std::set<std::string> emitted_groups;
        for (const Feature* child : kids) {
          const std::string pad(2 * level, ' ');
          if (!child->group) {
            out << pad
                << (child->variability == Variability::kMandatory ? "mandatory "
                                                                  : "optional ")
                << child->name << '\n';
            emit_children(*child, level + 1);
            continue;
          }
          const GroupRef& g = *child->group;
          if (!emitted_groups.insert(g.id).second) continue;
          out << pad << "group " << g.id << " [" << g.lo << ".." << g.hi
              << "]\n";
          for (const Feature* m : kids) {
            if (!m->group || m->group->id != g.id) continue;
            out << pad << "  member " << m->name << '\n';
            emit_children(*m, level + 2);
          }
        }
      };
  out << "root " << model.root().name << '\n';
  emit_children(model.root(), 1);
  if (!model.constraints().empty()) {
    out << "constraints\n";
    for (const Constraint& c : model.constraints())
      out << "  " << c.lhs
          << (c.kind == ConstraintKind::kRequires ? " requires " : " excludes ")
          << c.rhs << '\n';
  }
  return out.str();
}

}  // namespace splboard
