#ifndef SPLBOARD_FEATURE_MODEL_HPP
#define SPLBOARD_FEATURE_MODEL_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "splboard/error.hpp"

namespace splboard {

enum class Variability { kMandatory, kOptional, kGroupMember };

struct GroupRef {
  std::string id;
  int lo = 1;
  int hi = 1;

  friend bool operator==(const GroupRef&, const GroupRef&) = default;
};

struct Feature {
  std::string name;
  std::optional<std::string> parent;  // empty only for the root
  Variability variability = Variability::kMandatory;
  std::optional<GroupRef> group;      // set iff variability == kGroupMember

  friend bool operator==(const Feature&, const Feature&) = default;
};

enum class ConstraintKind { kRequires, kExcludes };

struct Constraint {
  std::string lhs;
  ConstraintKind kind = ConstraintKind::kRequires;
  std::string rhs;

  friend bool operator==(const Constraint&, const Constraint&) = default;
};

// A feature tree plus cross-tree constraints. Features are kept in
// declaration (pre-)order; the first one is the root.
class FeatureModel {
 public:
  FeatureModel() = default;

  // Validates every invariant and throws FeatureModelError on violation.
  FeatureModel(std::vector<Feature> features,
               std::vector<Constraint> constraints);

  const std::vector<Feature>& features() const { return features_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  const Feature& root() const { return features_.front(); }

  bool contains(std::string_view name) const;
  const Feature* find(std::string_view name) const;

  // Direct children of `name`, in declaration order.
  std::vector<const Feature*> children(std::string_view name) const;

  friend bool operator==(const FeatureModel&, const FeatureModel&) = default;

 private:
  std::vector<Feature> features_;
  std::vector<Constraint> constraints_;
};

enum class FeatureModelErrorKind {
  kSyntax,
  kDuplicateName,
  kDanglingReference,
  kInvalidCardinality,
  kSelfConstraint,
};

const char* to_string(FeatureModelErrorKind kind);

class FeatureModelError : public Error {
 public:
  // line is 1-based; 0 when the error is not tied to a source line.
  FeatureModelError(FeatureModelErrorKind kind, int line,
                    const std::string& message);

  FeatureModelErrorKind kind() const { return kind_; }
  int line() const { return line_; }

 private:
  FeatureModelErrorKind kind_;
  int line_;
};

bool is_valid_feature_name(std::string_view name);

// Parses the line-oriented `.fm` format:
//
//   root Nav
//     mandatory Engine
//     optional GPS
//     group display [1..1]
//       member Display2D
//       member Display3D
//   constraints
//     GPS requires Engine
//
// Indentation is two spaces per level and `#` starts a comment.
FeatureModel parse_feature_model(std::string_view text);

// Canonical `.fm` text; parse_feature_model(serialize(m)) == m.
std::string serialize_feature_model(const FeatureModel& model);

}  // namespace splboard

#endif  // SPLBOARD_FEATURE_MODEL_HPP
