#ifndef SPLBOARD_CONCEPTS_HPP
#define SPLBOARD_CONCEPTS_HPP

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "splboard/error.hpp"
#include "splboard/text.hpp"

namespace splboard {

struct CandidateConcept {
  std::string feature;
  std::string term;
  double relevance = 0.0;
  double tfidf_norm = 0.0;
  double centrality_norm = 0.0;
};

constexpr double kDefaultLambda = 0.5;
constexpr int kDefaultTopK = 10;

// feature -> candidates, best first. Every corpus feature has an entry.
using CandidateTable = std::map<std::string, std::vector<CandidateConcept>>;

// One co-occurrence graph per corpus document, same order as corpus.docs.
std::vector<CooccurrenceGraph> feature_graphs(const Corpus& corpus,
                                              int window = kDefaultWindow);

// Per feature: relevance = lambda * tfidf_norm + (1 - lambda) *
// centrality_norm, where both components are normalized by their maximum
// within the feature (degree centrality on the feature's graph). Returns the
// top k, ties broken by ascending term.
CandidateTable candidate_concepts(const Corpus& corpus, const TfidfTable& scores,
                                  const std::vector<CooccurrenceGraph>& graphs,
                                  double lambda = kDefaultLambda,
                                  int k = kDefaultTopK);

// Curation ledger actions.
struct Accept {
  std::string feature;
  std::string term;
  friend bool operator==(const Accept&, const Accept&) = default;
};
struct Reject {
  std::string feature;
  std::string term;
  friend bool operator==(const Reject&, const Reject&) = default;
};
struct Rename {
  std::string term;
  std::string label;
  friend bool operator==(const Rename&, const Rename&) = default;
};
struct Relate {
  std::string a;
  std::string label;
  std::string b;
  friend bool operator==(const Relate&, const Relate&) = default;
};

using CurationAction = std::variant<Accept, Reject, Rename, Relate>;
using CurationLedger = std::vector<CurationAction>;

class LedgerFormatError : public Error {
 public:
  LedgerFormatError(int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

// One JSON object per line, e.g. {"op":"accept","feature":"GPS","term":"route"}.
CurationAction parse_action(std::string_view json_line);
CurationLedger parse_ledger(std::string_view jsonl);
std::string action_to_json(const CurationAction& action);  // no newline
std::string ledger_to_jsonl(const CurationLedger& ledger);

struct Concept {
  std::string id;  // the curated term
  std::string label;
  std::set<std::string> features;
  bool expert_added = false;  // accepted although never a candidate

  friend bool operator==(const Concept&, const Concept&) = default;
};

struct Relation {
  std::string a;
  std::string label;
  std::string b;
  bool suggested = false;

  friend auto operator<=>(const Relation&, const Relation&) = default;
};

struct ConceptMap {
  std::map<std::string, Concept> concepts;  // by id
  std::set<Relation> relations;

  std::set<std::pair<std::string, std::string>> feature_links() const;
  friend bool operator==(const ConceptMap&, const ConceptMap&) = default;
};

// Invalid action during replay; index is 0-based into the ledger.
class CurationError : public Error {
 public:
  CurationError(std::size_t index, const std::string& message);
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

// Replays the ledger in order; the last accept/reject on a (feature, term)
// wins, renames relabel a term everywhere, relations need both endpoints to
// be accepted once replay finishes.
ConceptMap apply_curation(const CandidateTable& candidates,
                          const CurationLedger& ledger);

enum class CandidateStatus { kPending, kAccepted, kRejected };
const char* to_string(CandidateStatus status);

// Status of (feature, term) after replaying the ledger.
CandidateStatus curation_status(const CurationLedger& ledger,
                                std::string_view feature, std::string_view term);

struct SuggestedRelation {
  std::string a;  // a < b
  std::string b;
  int weight = 0;
};

constexpr int kDefaultSuggestThreshold = 3;
inline constexpr std::string_view kSuggestedLabel = "co-occurs-with";

// Pairs of concepts whose co-occurrence weight in some feature graph is at
// least `threshold` and that the expert has not already related.
std::vector<SuggestedRelation> suggest_relations(
    const ConceptMap& map, const std::vector<CooccurrenceGraph>& graphs,
    int threshold = kDefaultSuggestThreshold);

// Copy of `map` with the suggestions added as `suggested` relations.
ConceptMap with_suggestions(ConceptMap map,
                            const std::vector<SuggestedRelation>& suggestions);

enum class MapFormat { kDot, kJson };

std::string export_map(const ConceptMap& map, MapFormat format);
ConceptMap parse_concept_map_json(std::string_view json);

}  // namespace splboard

#endif  // SPLBOARD_CONCEPTS_HPP
