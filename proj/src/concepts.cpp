#include "splboard/concepts.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "text_util.hpp"

namespace splboard {

using ordered_json = nlohmann::ordered_json;

std::vector<CooccurrenceGraph> feature_graphs(const Corpus& corpus, int window) {
  std::vector<CooccurrenceGraph> graphs;
  graphs.reserve(corpus.size());
  for (const CorpusDocument& doc : corpus.docs)
    graphs.push_back(cooccurrence(doc.tokens, window));
  return graphs;
}

CandidateTable candidate_concepts(const Corpus& corpus, const TfidfTable& scores,
                                  const std::vector<CooccurrenceGraph>& graphs,
                                  double lambda, int k) {
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw PreconditionError("lambda must lie in [0, 1]");
  if (k < 1) throw PreconditionError("k must be >= 1");
  if (graphs.size() != corpus.size())
    throw PreconditionError("need one co-occurrence graph per corpus document");

  CandidateTable table;
  for (std::size_t d = 0; d < corpus.size(); ++d) {
    const std::string& feature = corpus.docs[d].feature;
    const auto& row = scores.row(d);

    std::map<std::string, int> degree;
    for (const auto& [key, w] : graphs[d].edges) {
      ++degree[key.first];
      ++degree[key.second];
    }
    double max_score = 0.0;
    int max_degree = 0;
    for (const auto& [term, score] : row) {
      max_score = std::max(max_score, score);
      max_degree = std::max(max_degree, degree[term]);
    }

    std::vector<CandidateConcept> list;
    list.reserve(row.size());
    for (const auto& [term, score] : row) {
      CandidateConcept c;
      c.feature = feature;
      c.term = term;
      c.tfidf_norm = max_score > 0.0 ? score / max_score : 0.0;
      c.centrality_norm =
          max_degree > 0 ? static_cast<double>(degree[term]) / max_degree : 0.0;
      c.relevance = std::clamp(
          lambda * c.tfidf_norm + (1.0 - lambda) * c.centrality_norm, 0.0, 1.0);
      list.push_back(std::move(c));
    }
    std::sort(list.begin(), list.end(),
              [](const CandidateConcept& a, const CandidateConcept& b) {
                if (a.relevance != b.relevance) return a.relevance > b.relevance;
                return a.term < b.term;
              });
    if (list.size() > static_cast<std::size_t>(k)) list.resize(k);
    table.emplace(feature, std::move(list));
  }
  return table;
}

// -- ledger ------------------------------------------------------------------

LedgerFormatError::LedgerFormatError(int line, const std::string& message)
    : Error("ledger line " + std::to_string(line) + ": " + message),
      line_(line) {}

namespace {

std::string required_string(const nlohmann::json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string())
    throw Error(std::string("missing string field '") + key + "'");
  std::string value = it->get<std::string>();
  if (value.empty()) throw Error(std::string("field '") + key + "' is empty");
  return value;
}

}  // namespace

CurationAction parse_action(std::string_view json_line) {
  nlohmann::json obj;
  try {
    obj = nlohmann::json::parse(json_line);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(std::string("invalid JSON: ") + e.what());
  }
  if (!obj.is_object()) throw Error("action must be a JSON object");
  const std::string op = required_string(obj, "op");
  if (op == "accept")
    return Accept{required_string(obj, "feature"), required_string(obj, "term")};
  if (op == "reject")
    return Reject{required_string(obj, "feature"), required_string(obj, "term")};
  if (op == "rename")
    return Rename{required_string(obj, "term"), required_string(obj, "label")};
  if (op == "relate")
    return Relate{required_string(obj, "a"), required_string(obj, "label"),
                  required_string(obj, "b")};
  throw Error("unknown op '" + op + "'");
}

CurationLedger parse_ledger(std::string_view jsonl) {
  CurationLedger ledger;
  int line_no = 0;
  for (std::string_view line : detail::split_lines(jsonl)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    try {
      ledger.push_back(parse_action(line));
    } catch (const LedgerFormatError&) {
      throw;
    } catch (const Error& e) {
      throw LedgerFormatError(line_no, e.what());
    }
  }
  return ledger;
}

std::string action_to_json(const CurationAction& action) {
  ordered_json obj;
  std::visit(
      [&](const auto& a) {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, Accept>) {
          obj["op"] = "accept";
          obj["feature"] = a.feature;
          obj["term"] = a.term;
        } else if constexpr (std::is_same_v<T, Reject>) {
          obj["op"] = "reject";
          obj["feature"] = a.feature;
          obj["term"] = a.term;
        } else if constexpr (std::is_same_v<T, Rename>) {
          obj["op"] = "rename";
          obj["term"] = a.term;
          obj["label"] = a.label;
        } else {
          obj["op"] = "relate";
          obj["a"] = a.a;
          obj["label"] = a.label;
          obj["b"] = a.b;
        }
      },
      action);
  return obj.dump();
}

std::string ledger_to_jsonl(const CurationLedger& ledger) {
  std::string out;
  for (const CurationAction& action : ledger) {
    out += action_to_json(action);
    out += '\n';
  }
  return out;
}

// -- replay ------------------------------------------------------------------

std::set<std::pair<std::string, std::string>> ConceptMap::feature_links() const {
  std::set<std::pair<std::string, std::string>> links;
  for (const auto& [id, c] : concepts)
    for (const std::string& f : c.features) links.emplace(f, id);
  return links;
}

CurationError::CurationError(std::size_t index, const std::string& message)
    : Error("curation action #" + std::to_string(index) + ": " + message),
      index_(index) {}

ConceptMap apply_curation(const CandidateTable& candidates,
                          const CurationLedger& ledger) {
  std::map<std::pair<std::string, std::string>, bool> accepted;  // last wins
  std::map<std::string, std::string> labels;
  std::vector<std::pair<std::size_t, Relate>> relates;

  for (std::size_t i = 0; i < ledger.size(); ++i) {
    const CurationAction& action = ledger[i];
    if (const auto* a = std::get_if<Accept>(&action)) {
      if (!candidates.count(a->feature))
        throw CurationError(i, "unknown feature '" + a->feature + "'");
      accepted[{a->feature, a->term}] = true;
    } else if (const auto* r = std::get_if<Reject>(&action)) {
      if (!candidates.count(r->feature))
        throw CurationError(i, "unknown feature '" + r->feature + "'");
      accepted[{r->feature, r->term}] = false;
    } else if (const auto* n = std::get_if<Rename>(&action)) {
      labels[n->term] = n->label;
    } else {
      relates.emplace_back(i, std::get<Relate>(action));
    }
  }

  std::set<std::string> candidate_terms;
  for (const auto& [feature, list] : candidates)
    for (const CandidateConcept& c : list) candidate_terms.insert(c.term);

  ConceptMap map;
  for (const auto& [key, yes] : accepted) {
    if (!yes) continue;
    const auto& [feature, term] = key;
    Concept& c = map.concepts[term];
    c.id = term;
    c.features.insert(feature);
  }
  for (auto& [id, c] : map.concepts) {
    auto it = labels.find(id);
    c.label = it == labels.end() ? id : it->second;
    c.expert_added = !candidate_terms.count(id);
  }
  for (const auto& [index, rel] : relates) {
    for (const std::string* end : {&rel.a, &rel.b})
      if (!map.concepts.count(*end))
        throw CurationError(index, "relation endpoint '" + *end +
                                       "' is not an accepted concept");
    map.relations.insert({rel.a, rel.label, rel.b, false});
  }
  return map;
}

const char* to_string(CandidateStatus status) {
  switch (status) {
    case CandidateStatus::kPending: return "pending";
    case CandidateStatus::kAccepted: return "accepted";
    case CandidateStatus::kRejected: return "rejected";
  }
  return "unknown";
}

CandidateStatus curation_status(const CurationLedger& ledger,
                                std::string_view feature,
                                std::string_view term) {
  CandidateStatus status = CandidateStatus::kPending;
  for (const CurationAction& action : ledger) {
    if (const auto* a = std::get_if<Accept>(&action);
        a && a->feature == feature && a->term == term)
      status = CandidateStatus::kAccepted;
    if (const auto* r = std::get_if<Reject>(&action);
        r && r->feature == feature && r->term == term)
      status = CandidateStatus::kRejected;
  }
  return status;
}

std::vector<SuggestedRelation> suggest_relations(
    const ConceptMap& map, const std::vector<CooccurrenceGraph>& graphs,
    int threshold) {
  std::set<std::pair<std::string, std::string>> related;
  for (const Relation& r : map.relations)
    related.insert(r.a < r.b ? std::pair{r.a, r.b} : std::pair{r.b, r.a});

  std::map<std::pair<std::string, std::string>, int> best;
  for (const CooccurrenceGraph& g : graphs) {
    for (const auto& [key, w] : g.edges) {
      if (w < threshold) continue;
      if (!map.concepts.count(key.first) || !map.concepts.count(key.second))
        continue;
      if (related.count(key)) continue;
      int& slot = best[key];
      slot = std::max(slot, w);
    }
  }
  std::vector<SuggestedRelation> out;
  for (const auto& [key, w] : best) out.push_back({key.first, key.second, w});
  return out;
}

ConceptMap with_suggestions(ConceptMap map,
                            const std::vector<SuggestedRelation>& suggestions) {
  for (const SuggestedRelation& s : suggestions)
    map.relations.insert({s.a, std::string(kSuggestedLabel), s.b, true});
  return map;
}

// -- export ------------------------------------------------------------------

namespace {

std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

std::string export_map(const ConceptMap& map, MapFormat format) {
  if (format == MapFormat::kDot) {
    std::ostringstream out;
    out << "digraph conceptmap {\n";
    for (const auto& [id, c] : map.concepts)
      out << "  " << dot_quote(id) << " [label=" << dot_quote(c.label)
          << "];\n";
    for (const Relation& r : map.relations) {
      out << "  " << dot_quote(r.a) << " -> " << dot_quote(r.b)
          << " [label=" << dot_quote(r.label);
      if (r.suggested) out << ", style=dashed";
      out << "];\n";
    }
    out << "}\n";
    return out.str();
  }

  ordered_json doc;
  doc["concepts"] = ordered_json::array();
  for (const auto& [id, c] : map.concepts) {
    ordered_json node;
    node["id"] = c.id;
    node["label"] = c.label;
    node["features"] = c.features;
    node["expert_added"] = c.expert_added;
    doc["concepts"].push_back(std::move(node));
  }
  doc["relations"] = ordered_json::array();
  for (const Relation& r : map.relations) {
    ordered_json edge;
    edge["a"] = r.a;
    edge["label"] = r.label;
    edge["b"] = r.b;
    edge["suggested"] = r.suggested;
    doc["relations"].push_back(std::move(edge));
  }
  return doc.dump(2) + "\n";
}

ConceptMap parse_concept_map_json(std::string_view json) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(std::string("concept map: invalid JSON: ") + e.what());
  }
  ConceptMap map;
  try {
    for (const auto& node : doc.at("concepts")) {
      Concept c;
      c.id = node.at("id").get<std::string>();
      c.label = node.at("label").get<std::string>();
      for (const auto& f : node.at("features")) c.features.insert(f.get<std::string>());
      c.expert_added = node.value("expert_added", false);
      if (c.features.empty())
        throw Error("concept map: concept '" + c.id + "' has no feature link");
      if (!map.concepts.emplace(c.id, c).second)
        throw Error("concept map: duplicate concept '" + c.id + "'");
    }
    for (const auto& edge : doc.at("relations")) {
      Relation r{edge.at("a").get<std::string>(),
                 edge.at("label").get<std::string>(),
                 edge.at("b").get<std::string>(),
                 edge.value("suggested", false)};
      if (!map.concepts.count(r.a) || !map.concepts.count(r.b))
        throw Error("concept map: relation endpoint missing");
      map.relations.insert(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("concept map: ") + e.what());
  }
  return map;
}

}  // namespace splboard
