#ifndef SPLBOARD_PIPELINE_HPP
#define SPLBOARD_PIPELINE_HPP

// End-to-end orchestration shared by the CLI and the curation service, so
// both produce the same bytes for the same inputs.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "splboard/concepts.hpp"
#include "splboard/config.hpp"
#include "splboard/feature_model.hpp"
#include "splboard/journey.hpp"
#include "splboard/scanner.hpp"
#include "splboard/text.hpp"
#include "splboard/topics.hpp"

namespace splboard {

struct Project {
  ProjectConfig config;
  FeatureModel model;
  Stopwords stopwords;
  std::vector<FeatureDocument> documents;
  std::vector<ScanWarning> warnings;
  Corpus corpus;
  TfidfTable scores;
  std::vector<CooccurrenceGraph> graphs;
  CandidateTable candidates;

  TokenizerOptions tokenizer() const { return {&stopwords, config.params.stem}; }
};

// Parses the model, scans sources, ingests docs, builds the corpus and
// candidate table. Warnings are written to `diag`.
Project load_project(const ProjectConfig& config, std::ostream& diag);

CurationLedger load_ledger(const std::filesystem::path& path);

// Concept map for the ledger, including suggested relations.
ConceptMap curated_map(const Project& project, const CurationLedger& ledger);

LdaParams lda_params(const Parameters& params);

// Tokens of the crosscomer's former codebase: the files listed in the
// manifest (paths relative to the manifest), concatenated.
std::vector<std::string> background_tokens(const Project& project,
                                           const std::filesystem::path& manifest);

struct JourneyResult {
  SimilarityMatrix similarity;  // features + background
  Journey journey;
  std::size_t dropped_tokens = 0;
};

JourneyResult compute_journey(const Project& project, const TopicModel& model,
                              const std::vector<std::string>& background,
                              int iterations, std::uint64_t seed,
                              double threshold);

// JSON renderings used by both front ends.
std::string documents_to_json(const std::vector<FeatureDocument>& documents);
std::string candidates_to_json(const CandidateTable& table);
std::string candidate_list_to_json(const std::string& feature,
                                   const std::vector<CandidateConcept>& list,
                                   const CurationLedger& ledger);

// Stable 64-bit FNV-1a over the corpus tokens.
std::uint64_t corpus_hash(const Corpus& corpus);

void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace splboard

#endif  // SPLBOARD_PIPELINE_HPP
