#include "splboard/journey.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "text_util.hpp"

namespace splboard {

namespace {
constexpr std::size_t npos = static_cast<std::size_t>(-1);
constexpr double kNoEdge = -1.0;
}  // namespace

WeightedGraph::WeightedGraph(std::vector<std::string> nodes,
                             std::vector<WeightedEdge> edges)
    : nodes_(std::move(nodes)), edges_(std::move(edges)) {
  const std::set<std::string> unique(nodes_.begin(), nodes_.end());
  if (unique.size() != nodes_.size())
    throw PreconditionError("graph nodes must be unique");
  adj_.assign(nodes_.size(), std::vector<double>(nodes_.size(), kNoEdge));
  for (const WeightedEdge& e : edges_) {
    const std::size_t a = index(e.a);
    const std::size_t b = index(e.b);
    if (a == npos || b == npos)
      throw PreconditionError("edge endpoint is not a graph node");
    if (a == b) throw PreconditionError("self edge on '" + e.a + "'");
    if (adj_[a][b] != kNoEdge)
      throw PreconditionError("duplicate edge " + e.a + " - " + e.b);
    if (!(e.weight >= 0.0 && e.weight <= 1.0))
      throw PreconditionError("edge weight outside [0, 1]");
    adj_[a][b] = e.weight;
    adj_[b][a] = e.weight;
  }
}

bool WeightedGraph::contains(std::string_view node) const {
  return index(node) != npos;
}

std::size_t WeightedGraph::index(std::string_view node) const {
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (nodes_[i] == node) return i;
  return npos;
}

WeightedGraph build_graph(const SimilarityMatrix& matrix, double threshold) {
  if (!(threshold >= 0.0 && threshold < 1.0))
    throw PreconditionError("threshold must satisfy 0 <= threshold < 1");
  std::vector<WeightedEdge> edges;
  const std::size_t n = matrix.labels.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (matrix.values[i][j] >= threshold)
        edges.push_back({matrix.labels[i], matrix.labels[j], matrix.values[i][j]});
  return WeightedGraph(matrix.labels, std::move(edges));
}

double Journey::total_weight() const {
  double total = 0.0;
  for (const JourneyStep& s : steps) total += s.weight;
  return total;
}

Journey recommend_journey(const WeightedGraph& graph, std::string_view source) {
  const auto& nodes = graph.nodes();
  if (nodes.empty()) throw JourneyError("graph is empty");
  const std::size_t src = graph.index(source);
  if (src == npos)
    throw JourneyError("source '" + std::string(source) + "' is not a node");

  const std::size_t n = nodes.size();
  std::vector<bool> visited(n, false);
  // Best known (weight, anchor) per unvisited node.
  std::vector<double> best(n, kNoEdge);
  std::vector<std::size_t> anchor(n, npos);

  auto relax = [&](std::size_t from) {
    for (std::size_t v = 0; v < n; ++v) {
      if (visited[v]) continue;
      const double w = graph.weight(from, v);
      if (w == kNoEdge) continue;
      if (w > best[v] ||
          (w == best[v] && nodes[from] < nodes[anchor[v]])) {
        best[v] = w;
        anchor[v] = from;
      }
    }
  };

  Journey journey;
  journey.source = std::string(source);
  visited[src] = true;
  relax(src);
  for (;;) {
    std::size_t pick = npos;
    for (std::size_t v = 0; v < n; ++v) {
      if (visited[v] || anchor[v] == npos) continue;
      if (pick == npos || best[v] > best[pick] ||
          (best[v] == best[pick] && nodes[v] < nodes[pick]))
        pick = v;
    }
    if (pick == npos) break;
    visited[pick] = true;
    journey.steps.push_back({nodes[pick], nodes[anchor[pick]], best[pick], {}});
    relax(pick);
  }
  for (std::size_t v = 0; v < n; ++v)
    if (!visited[v]) journey.unreachable.push_back(nodes[v]);
  std::sort(journey.unreachable.begin(), journey.unreachable.end());
  return journey;
}

void attach_constraint_warnings(Journey& journey, const FeatureModel& model) {
  std::set<std::string> seen{journey.source};
  for (JourneyStep& step : journey.steps) {
    for (const Constraint& c : model.constraints()) {
      if (c.kind != ConstraintKind::kRequires || c.lhs != step.feature) continue;
      if (!seen.count(c.rhs))
        step.warnings.push_back("requires " + c.rhs +
                                ", which is not visited yet");
    }
    seen.insert(step.feature);
  }
}

StepExplanation explain_step(const Journey& journey, std::string_view feature,
                             const ConceptMap& map) {
  auto it = std::find_if(journey.steps.begin(), journey.steps.end(),
                         [&](const JourneyStep& s) { return s.feature == feature; });
  if (it == journey.steps.end())
    throw JourneyError("feature '" + std::string(feature) +
                       "' is not part of the journey");
  StepExplanation out{it->feature, it->anchor, it->weight, {}};
  for (const auto& [id, c] : map.concepts)
    if (c.features.count(it->feature)) out.concepts.push_back(c.label);
  std::sort(out.concepts.begin(), out.concepts.end());
  return out;
}

std::string export_journey_json(const Journey& journey) {
  using detail::json_quote;
  std::ostringstream out;
  out << "{\n  \"source\": " << json_quote(journey.source) << ",\n";
  out << "  \"steps\": [";
  for (std::size_t i = 0; i < journey.steps.size(); ++i) {
    const JourneyStep& s = journey.steps[i];
    out << (i ? ",\n" : "\n") << "    {\"feature\": " << json_quote(s.feature)
        << ", \"anchor\": " << json_quote(s.anchor)
        << ", \"weight\": " << detail::fixed6(s.weight) << ", \"warnings\": [";
    for (std::size_t w = 0; w < s.warnings.size(); ++w)
      out << (w ? ", " : "") << json_quote(s.warnings[w]);
    out << "]}";
  }
  out << (journey.steps.empty() ? "],\n" : "\n  ],\n");
  out << "  \"unreachable\": [";
  for (std::size_t i = 0; i < journey.unreachable.size(); ++i)
    out << (i ? ", " : "") << json_quote(journey.unreachable[i]);
  out << "]\n}\n";
  return out.str();
}

}  // namespace splboard
