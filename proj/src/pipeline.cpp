#include "splboard/pipeline.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "text_util.hpp"

namespace splboard {

namespace fs = std::filesystem;

Project load_project(const ProjectConfig& config, std::ostream& diag) {
  Project p;
  p.config = config;
  p.model = parse_feature_model(read_file(config.feature_model));
  p.stopwords = config.stopwords ? parse_stopwords(read_file(*config.stopwords))
                                 : default_stopwords();

  MacroMap macros;
  if (config.macro_map) macros = parse_macro_map(read_file(*config.macro_map));

  std::vector<SourceFile> files;
  for (const std::string& rel : expand_sources(config))
    files.push_back({rel, read_file(config.base_dir / rel)});
  ScanResult scan = scan_sources(files, p.model, macros);
  for (const ScanWarning& w : scan.warnings)
    diag << "warning: " << w.file << ":" << w.line << ": " << w.message << '\n';
  p.warnings = std::move(scan.warnings);
  p.documents = std::move(scan.documents);

  if (config.doc_map) {
    std::vector<DocEntry> entries;
    const fs::path doc_base = config.doc_map->parent_path();
    for (const DocMapEntry& e : parse_doc_map(read_file(*config.doc_map))) {
      fs::path resolved = doc_base / e.path;
      std::string text = read_file(resolved);
      entries.push_back({e.feature, fs::relative(resolved, config.base_dir)
                                        .generic_string(),
                         std::move(text)});
    }
    ingest_docs(p.documents, entries);
  }

  p.corpus = build_corpus(p.documents, p.tokenizer());
  p.scores = tfidf(p.corpus);
  p.graphs = feature_graphs(p.corpus, config.params.window);
  p.candidates = candidate_concepts(p.corpus, p.scores, p.graphs,
                                    config.params.lambda, config.params.k);
  return p;
}

CurationLedger load_ledger(const fs::path& path) {
  if (!fs::exists(path)) return {};
  return parse_ledger(read_file(path));
}

ConceptMap curated_map(const Project& project, const CurationLedger& ledger) {
  ConceptMap map = apply_curation(project.candidates, ledger);
  return with_suggestions(
      map, suggest_relations(map, project.graphs,
                             project.config.params.suggest_threshold));
}

LdaParams lda_params(const Parameters& params) {
  LdaParams lda;
  lda.topics = params.topics;
  lda.alpha = params.effective_alpha();
  lda.beta = params.beta;
  lda.iterations = params.iterations;
  lda.seed = params.seed;
  return lda;
}

std::vector<std::string> background_tokens(const Project& project,
                                           const fs::path& manifest) {
  const std::string listing = read_file(manifest);
  const fs::path base = manifest.parent_path();
  std::string text;
  bool any = false;
  for (std::string_view line : detail::split_lines(listing)) {
    line = detail::trim(line);
    if (line.empty() || line.front() == '#') continue;
    text += read_file(base / std::string(line));
    text += '\n';
    any = true;
  }
  if (!any)
    throw Error("background manifest '" + manifest.string() +
                "' lists no files");
  auto tokens = tokenize(text, project.tokenizer());
  if (tokens.empty())
    throw Error("background document is empty after tokenization");
  return tokens;
}

JourneyResult compute_journey(const Project& project, const TopicModel& model,
                              const std::vector<std::string>& background,
                              int iterations, std::uint64_t seed,
                              double threshold) {
  if (project.model.contains(kBackgroundLabel))
    throw Error("a feature is named '" + std::string(kBackgroundLabel) +
                "', which is reserved for the background node");
  JourneyResult out;
  const Inference bg = infer_theta(model, background, iterations, seed);
  out.dropped_tokens = bg.dropped;

  std::vector<std::pair<std::string, std::vector<double>>> thetas;
  for (std::size_t d = 0; d < model.labels.size(); ++d)
    thetas.emplace_back(model.labels[d], model.theta[d]);
  thetas.emplace_back(std::string(kBackgroundLabel), bg.theta);
  out.similarity = similarity_matrix(thetas);

  const WeightedGraph graph = build_graph(out.similarity, threshold);
  out.journey = recommend_journey(graph, kBackgroundLabel);
  attach_constraint_warnings(out.journey, project.model);
  return out;
}

std::string documents_to_json(const std::vector<FeatureDocument>& documents) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const FeatureDocument& d : documents) {
    nlohmann::ordered_json entry;
    entry["feature"] = d.feature;
    entry["fragments"] = nlohmann::ordered_json::array();
    for (const Fragment& f : d.fragments) {
      nlohmann::ordered_json frag;
      frag["source"] = f.source;
      frag["first_line"] = f.first_line;
      frag["last_line"] = f.last_line;
      frag["kind"] = to_string(f.kind);
      frag["text"] = f.text;
      entry["fragments"].push_back(std::move(frag));
    }
    doc.push_back(std::move(entry));
  }
  return doc.dump(2) + "\n";
}

namespace {

void write_candidate(std::ostream& out, const CandidateConcept& c,
                     const char* status) {
  out << "{\"term\": " << detail::json_quote(c.term)
      << ", \"relevance\": " << detail::fixed6(c.relevance)
      << ", \"tfidf_norm\": " << detail::fixed6(c.tfidf_norm)
      << ", \"centrality_norm\": " << detail::fixed6(c.centrality_norm);
  if (status) out << ", \"status\": " << detail::json_quote(status);
  out << "}";
}

}  // namespace

std::string candidates_to_json(const CandidateTable& table) {
  std::ostringstream out;
  out << "{\n  \"features\": [";
  bool first = true;
  for (const auto& [feature, list] : table) {
    out << (first ? "\n" : ",\n") << "    {\"feature\": "
        << detail::json_quote(feature) << ", \"candidates\": [";
    for (std::size_t i = 0; i < list.size(); ++i) {
      out << (i ? ",\n      " : "\n      ");
      write_candidate(out, list[i], nullptr);
    }
    out << (list.empty() ? "]}" : "\n    ]}");
    first = false;
  }
  out << (table.empty() ? "]\n}\n" : "\n  ]\n}\n");
  return out.str();
}

std::string candidate_list_to_json(const std::string& feature,
                                   const std::vector<CandidateConcept>& list,
                                   const CurationLedger& ledger) {
  std::ostringstream out;
  out << "{\"feature\": " << detail::json_quote(feature) << ", \"candidates\": [";
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (i) out << ", ";
    write_candidate(out, list[i],
                    to_string(curation_status(ledger, feature, list[i].term)));
  }
  out << "]}";
  return out.str();
}

std::uint64_t corpus_hash(const Corpus& corpus) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&](std::string_view s) {
    for (char c : s) {
      h ^= static_cast<unsigned char>(c);
      h *= 1099511628211ULL;
    }
    h ^= 0xff;
    h *= 1099511628211ULL;
  };
  for (const CorpusDocument& d : corpus.docs) {
    mix(d.feature);
    for (const std::string& t : d.tokens) mix(t);
  }
  return h;
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

}  // namespace splboard
