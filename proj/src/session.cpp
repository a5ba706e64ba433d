#include "splboard/session.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <ostream>
#include <sstream>

#include <httplib.h>

#include "text_util.hpp"

namespace splboard {

namespace fs = std::filesystem;

namespace {

ApiResponse error_response(int status, const std::string& message,
                           std::uint64_t revision) {
  return {status,
          "{\"error\": " + detail::json_quote(message) +
              ", \"revision\": " + std::to_string(revision) + "}",
          revision};
}

// Appends one line and syncs it to disk.
void append_durably(const fs::path& path, const std::string& line) {
  const int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_APPEND, 0644);
  if (fd < 0)
    throw Error("cannot open ledger '" + path.string() +
                "': " + std::strerror(errno));
  const std::string data = line + "\n";
  std::size_t written = 0;
  while (written < data.size()) {
    const ssize_t n = ::write(fd, data.data() + written, data.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      const std::string err = std::strerror(errno);
      ::close(fd);
      throw Error("ledger write failed: " + err);
    }
    written += static_cast<std::size_t>(n);
  }
  const bool synced = ::fsync(fd) == 0;
  ::close(fd);
  if (!synced) throw Error("ledger fsync failed");
}

}  // namespace

Session::Session(const ProjectConfig& config, std::ostream& diag)
    : project_(load_project(config, diag)),
      ledger_path_(config.output_dir / "ledger.jsonl") {
  fs::create_directories(config.output_dir);
  if (!fs::exists(ledger_path_)) {
    std::string seed_text;
    if (config.ledger && fs::exists(*config.ledger))
      seed_text = ledger_to_jsonl(parse_ledger(read_file(*config.ledger)));
    write_file(ledger_path_, seed_text);
  }
  ledger_ = parse_ledger(read_file(ledger_path_));
  map_ = apply_curation(project_.candidates, ledger_);
  revision_ = ledger_.size();
}

std::uint64_t Session::revision() const {
  std::shared_lock lock(mutex_);
  return revision_;
}

ConceptMap Session::concept_map() const {
  std::shared_lock lock(mutex_);
  return map_;
}

CurationLedger Session::ledger() const {
  std::shared_lock lock(mutex_);
  return ledger_;
}

ApiResponse Session::get_features() const {
  std::shared_lock lock(mutex_);
  std::ostringstream out;
  out << "{\"revision\": " << revision_ << ", \"features\": [";
  bool first = true;
  for (const auto& [feature, list] : project_.candidates) {
    std::size_t accepted = 0;
    for (const auto& [id, c] : map_.concepts)
      if (c.features.count(feature)) ++accepted;
    out << (first ? "" : ", ") << "{\"feature\": " << detail::json_quote(feature)
        << ", \"candidates\": " << list.size()
        << ", \"accepted\": " << accepted << "}";
    first = false;
  }
  out << "]}";
  return {200, out.str(), revision_};
}

ApiResponse Session::get_candidates(const std::string& feature) const {
  std::shared_lock lock(mutex_);
  auto it = project_.candidates.find(feature);
  if (it == project_.candidates.end())
    return error_response(404, "unknown feature '" + feature + "'", revision_);
  return {200, candidate_list_to_json(feature, it->second, ledger_), revision_};
}

ApiResponse Session::post_curation(const std::string& body) {
  CurationAction action;
  try {
    action = parse_action(body);
  } catch (const Error& e) {
    return error_response(422, e.what(), revision());
  }

  std::unique_lock lock(mutex_);
  CurationLedger next = ledger_;
  next.push_back(action);
  ConceptMap next_map;
  try {
    next_map = apply_curation(project_.candidates, next);
  } catch (const CurationError& e) {
    return error_response(422, e.what(), revision_);
  }
  try {
    append_durably(ledger_path_, action_to_json(action));
  } catch (const Error& e) {
    return error_response(500, e.what(), revision_);
  }
  ledger_ = std::move(next);
  map_ = std::move(next_map);
  ++revision_;
  return {200, "{\"revision\": " + std::to_string(revision_) + "}", revision_};
}

ApiResponse Session::get_map() const {
  std::shared_lock lock(mutex_);
  const ConceptMap full = with_suggestions(
      map_, suggest_relations(map_, project_.graphs,
                              project_.config.params.suggest_threshold));
  return {200, export_map(full, MapFormat::kJson), revision_};
}

ApiResponse Session::get_suggested_relations() const {
  std::shared_lock lock(mutex_);
  const auto suggestions = suggest_relations(
      map_, project_.graphs, project_.config.params.suggest_threshold);
  std::ostringstream out;
  out << "{\"revision\": " << revision_ << ", \"relations\": [";
  for (std::size_t i = 0; i < suggestions.size(); ++i) {
    const auto& s = suggestions[i];
    out << (i ? ", " : "") << "{\"a\": " << detail::json_quote(s.a)
        << ", \"label\": " << detail::json_quote(kSuggestedLabel)
        << ", \"b\": " << detail::json_quote(s.b)
        << ", \"suggested\": true, \"weight\": " << s.weight << "}";
  }
  out << "]}";
  return {200, out.str(), revision_};
}

ApiResponse Session::get_journey(const std::string& background,
                                 std::optional<std::uint64_t> seed) {
  const std::uint64_t rev = revision();
  auto bg = project_.config.backgrounds.find(background);
  if (bg == project_.config.backgrounds.end())
    return error_response(404, "unknown background '" + background + "'", rev);

  Parameters params = project_.config.params;
  if (seed) params.seed = *seed;
  try {
    std::shared_ptr<const TopicModel> model;
    {
      std::lock_guard lock(topics_mutex_);
      const auto key =
          std::make_tuple(corpus_hash(project_.corpus), params.topics, params.seed);
      auto& slot = topic_cache_[key];
      if (!slot)
        slot = std::make_shared<const TopicModel>(
            train_lda(project_.corpus, lda_params(params)));
      model = slot;
    }
    const auto tokens = background_tokens(project_, bg->second);
    const JourneyResult result =
        compute_journey(project_, *model, tokens, params.iterations,
                        params.seed, params.threshold);
    return {200, export_journey_json(result.journey), rev};
  } catch (const Error& e) {
    return error_response(422, e.what(), rev);
  }
}

namespace {

void reply(httplib::Response& res, const ApiResponse& api) {
  res.status = api.status;
  res.set_header("X-Splboard-Revision", std::to_string(api.revision));
  res.set_content(api.body, "application/json; charset=utf-8");
}

}  // namespace

void register_routes(httplib::Server& server, Session& session) {
  server.Get("/api/features", [&](const httplib::Request&, httplib::Response& res) {
    reply(res, session.get_features());
  });
  server.Get(R"(/api/features/([A-Za-z_][A-Za-z0-9_]*)/candidates)",
             [&](const httplib::Request& req, httplib::Response& res) {
               reply(res, session.get_candidates(req.matches[1]));
             });
  server.Post("/api/curation", [&](const httplib::Request& req, httplib::Response& res) {
    reply(res, session.post_curation(req.body));
  });
  server.Get("/api/map", [&](const httplib::Request&, httplib::Response& res) {
    reply(res, session.get_map());
  });
  server.Get("/api/suggested-relations",
             [&](const httplib::Request&, httplib::Response& res) {
               reply(res, session.get_suggested_relations());
             });
  server.Get("/api/journey", [&](const httplib::Request& req, httplib::Response& res) {
    const std::string background =
        req.has_param("background") ? req.get_param_value("background") : "default";
    std::optional<std::uint64_t> seed;
    if (req.has_param("seed")) {
      try {
        seed = std::stoull(req.get_param_value("seed"));
      } catch (const std::exception&) {
        reply(res, error_response(400, "seed must be a non-negative integer",
                                  session.revision()));
        return;
      }
    }
    reply(res, session.get_journey(background, seed));
  });
}

bool serve(Session& session, const std::string& host, int port,
           const std::optional<fs::path>& static_dir) {
  httplib::Server server;
  register_routes(server, session);
  if (static_dir) server.set_mount_point("/", static_dir->string());
  return server.listen(host, port);
}

}  // namespace splboard
