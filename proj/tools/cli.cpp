#include "cli.hpp"

#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "splboard/pipeline.hpp"
#include "splboard/session.hpp"

namespace splboard::cli {

namespace fs = std::filesystem;

namespace {

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> background;
  std::optional<double> threshold;
  std::optional<int> k;
  std::optional<int> topics;
  std::optional<std::string> ledger;
  std::string host = "127.0.0.1";
  int port = 7878;
  std::optional<std::string> ui_dir;
};

ProjectConfig resolve_config(const Flags& flags) {
  ProjectConfig cfg = load_config(flags.config);
  if (flags.seed) cfg.params.seed = *flags.seed;
  if (flags.out) cfg.output_dir = *flags.out;
  if (flags.threshold) cfg.params.threshold = *flags.threshold;
  if (flags.k) cfg.params.k = *flags.k;
  if (flags.topics) cfg.params.topics = *flags.topics;
  if (flags.ledger) cfg.ledger = *flags.ledger;
  cfg.validate_parameters();
  return cfg;
}

int cmd_validate(const ProjectConfig& cfg, std::ostream& err) {
  const Project p = load_project(cfg, err);
  const CurationLedger ledger = cfg.ledger ? load_ledger(*cfg.ledger) : CurationLedger{};
  const ConceptMap map = apply_curation(p.candidates, ledger);
  for (const auto& [id, path] : cfg.backgrounds)
    if (!fs::is_regular_file(path))
      throw Error("background '" + id + "' manifest '" + path.string() +
                  "' does not exist");
  std::size_t fragments = 0;
  for (const auto& d : p.documents) fragments += d.fragments.size();
  err << "ok: " << p.model.features().size() << " features, " << fragments
      << " fragments, " << p.corpus.vocab.size() << " terms, " << ledger.size()
      << " ledger actions, " << map.concepts.size() << " concepts\n";
  return kExitOk;
}

int cmd_ingest(const ProjectConfig& cfg, std::ostream& err) {
  const Project p = load_project(cfg, err);
  write_file(cfg.output_dir / "documents.json", documents_to_json(p.documents));
  return kExitOk;
}

int cmd_concepts(const ProjectConfig& cfg, std::ostream& err) {
  const Project p = load_project(cfg, err);
  write_file(cfg.output_dir / "corpus.tsv", export_corpus_tsv(p.corpus, p.scores));
  write_file(cfg.output_dir / "candidates.json", candidates_to_json(p.candidates));
  return kExitOk;
}

int cmd_curate_apply(const ProjectConfig& cfg, std::ostream& err) {
  const Project p = load_project(cfg, err);
  if (!cfg.ledger) throw Error("no ledger configured (set 'ledger' or --ledger)");
  const ConceptMap map = curated_map(p, load_ledger(*cfg.ledger));
  write_file(cfg.output_dir / "conceptmap.json", export_map(map, MapFormat::kJson));
  write_file(cfg.output_dir / "conceptmap.dot", export_map(map, MapFormat::kDot));
  return kExitOk;
}

int cmd_topics(const ProjectConfig& cfg, std::ostream& err) {
  const Project p = load_project(cfg, err);
  const TopicModel model = train_lda(p.corpus, lda_params(cfg.params));
  std::vector<std::pair<std::string, std::vector<double>>> thetas;
  for (std::size_t d = 0; d < model.labels.size(); ++d)
    thetas.emplace_back(model.labels[d], model.theta[d]);
  write_file(cfg.output_dir / "model.json", export_model_json(model));
  write_file(cfg.output_dir / "similarity.csv",
             export_similarity_csv(similarity_matrix(thetas)));
  return kExitOk;
}

int cmd_journey(const ProjectConfig& cfg, const Flags& flags, std::ostream& err) {
  fs::path manifest;
  if (flags.background) {
    manifest = *flags.background;
  } else if (auto it = cfg.backgrounds.find("default"); it != cfg.backgrounds.end()) {
    manifest = it->second;
  } else {
    throw Error("no background manifest (set 'background' or --background)");
  }
  const Project p = load_project(cfg, err);
  const auto tokens = background_tokens(p, manifest);
  const TopicModel model = train_lda(p.corpus, lda_params(cfg.params));
  const JourneyResult result =
      compute_journey(p, model, tokens, cfg.params.iterations, cfg.params.seed,
                      cfg.params.threshold);
  if (result.dropped_tokens > 0)
    err << "note: " << result.dropped_tokens
        << " background token(s) are not in the corpus vocabulary\n";
  for (const std::string& u : result.journey.unreachable)
    err << "warning: feature '" << u << "' is unreachable at threshold "
        << cfg.params.threshold << '\n';
  write_file(cfg.output_dir / "journey.json", export_journey_json(result.journey));
  write_file(cfg.output_dir / "journey_similarity.csv",
             export_similarity_csv(result.similarity));
  return kExitOk;
}

int cmd_serve(const ProjectConfig& cfg, const Flags& flags, std::ostream& err) {
  Session session(cfg, err);
  std::optional<fs::path> ui;
  if (flags.ui_dir) ui = fs::path(*flags.ui_dir);
  err << "serving on http://" << flags.host << ":" << flags.port << "/api\n";
  if (!serve(session, flags.host, flags.port, ui)) {
    err << "error: cannot listen on " << flags.host << ":" << flags.port << '\n';
    return kExitValidation;
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& err) {
  CLI::App app{"Crossboarding assistant for software product lines", "splboard"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  Flags flags;
  app.add_option("-c,--config", flags.config, "Project config file")->required();
  app.add_option("--seed", flags.seed, "RNG seed for topic modelling");
  app.add_option("--out", flags.out, "Output directory");
  app.add_option("--background", flags.background, "Background manifest");
  app.add_option("--threshold", flags.threshold, "Similarity graph threshold");
  app.add_option("--k", flags.k, "Candidates per feature");
  app.add_option("--topics", flags.topics, "Number of topics");

  auto* validate = app.add_subcommand("validate", "Check the project inputs");
  auto* ingest = app.add_subcommand("ingest", "Attribute sources and docs to features");
  auto* concepts = app.add_subcommand("concepts", "Rank candidate concepts");
  auto* curate = app.add_subcommand("curate-apply", "Replay the curation ledger");
  curate->add_option("--ledger", flags.ledger, "Ledger file (JSON Lines)");
  auto* topics = app.add_subcommand("topics", "Train the topic model");
  auto* journey = app.add_subcommand("journey", "Recommend a crossboarding journey");
  auto* serve_cmd = app.add_subcommand("serve", "Run the curation HTTP service");
  serve_cmd->add_option("--host", flags.host, "Listen address");
  serve_cmd->add_option("--port", flags.port, "Listen port");
  serve_cmd->add_option("--ui", flags.ui_dir, "Static UI directory");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    err << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    const ProjectConfig cfg = resolve_config(flags);
    if (validate->parsed()) return cmd_validate(cfg, err);
    if (ingest->parsed()) return cmd_ingest(cfg, err);
    if (concepts->parsed()) return cmd_concepts(cfg, err);
    if (curate->parsed()) return cmd_curate_apply(cfg, err);
    if (topics->parsed()) return cmd_topics(cfg, err);
    if (journey->parsed()) return cmd_journey(cfg, flags, err);
    if (serve_cmd->parsed()) return cmd_serve(cfg, flags, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitUsage;
}

}  // namespace splboard::cli
