#ifndef SPLBOARD_JOURNEY_HPP
#define SPLBOARD_JOURNEY_HPP

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "splboard/concepts.hpp"
#include "splboard/error.hpp"
#include "splboard/feature_model.hpp"
#include "splboard/topics.hpp"

namespace splboard {

inline constexpr std::string_view kBackgroundLabel = "background";

struct WeightedEdge {
  std::string a;
  std::string b;
  double weight = 0.0;
};

// Undirected graph, one edge per unordered pair, no self edges.
class WeightedGraph {
 public:
  WeightedGraph() = default;
  WeightedGraph(std::vector<std::string> nodes, std::vector<WeightedEdge> edges);

  const std::vector<std::string>& nodes() const { return nodes_; }
  const std::vector<WeightedEdge>& edges() const { return edges_; }
  bool contains(std::string_view node) const;
  std::size_t index(std::string_view node) const;  // npos when unknown

  // Weight of edge (a, b) by node index, or negative when absent.
  double weight(std::size_t a, std::size_t b) const { return adj_[a][b]; }

 private:
  std::vector<std::string> nodes_;
  std::vector<WeightedEdge> edges_;
  std::vector<std::vector<double>> adj_;
};

// Keeps edge (a, b) iff S[a][b] >= threshold; 0 <= threshold < 1.
WeightedGraph build_graph(const SimilarityMatrix& matrix, double threshold);

struct JourneyStep {
  std::string feature;
  std::string anchor;
  double weight = 0.0;
  std::vector<std::string> warnings;
};

struct Journey {
  std::string source;
  std::vector<JourneyStep> steps;
  std::vector<std::string> unreachable;  // sorted

  double total_weight() const;
};

class JourneyError : public Error {
 public:
  using Error::Error;
};

// Maximum-spanning-tree growth from `source`: each step adds the unvisited
// node with the heaviest edge to any visited node. Ties go to the higher
// weight, then the smaller node label, then the smaller anchor label.
Journey recommend_journey(const WeightedGraph& graph, std::string_view source);

// Adds a warning to each step whose feature `requires` a feature that has
// not been visited before that step.
void attach_constraint_warnings(Journey& journey, const FeatureModel& model);

struct StepExplanation {
  std::string feature;
  std::string anchor;
  double weight = 0.0;
  std::vector<std::string> concepts;  // accepted concept labels, sorted
};

StepExplanation explain_step(const Journey& journey, std::string_view feature,
                             const ConceptMap& map);

// {"source":..,"steps":[{"feature","anchor","weight","warnings"}],
//  "unreachable":[..]} with weights printed to 6 decimals.
std::string export_journey_json(const Journey& journey);

}  // namespace splboard

#endif  // SPLBOARD_JOURNEY_HPP
