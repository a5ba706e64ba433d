#ifndef SPLBOARD_SESSION_HPP
#define SPLBOARD_SESSION_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <tuple>

#include "splboard/pipeline.hpp"

namespace httplib {
class Server;
}

namespace splboard {

struct ApiResponse {
  int status = 200;
  std::string body;
  std::uint64_t revision = 0;
};

// State behind the curation service. The ledger file in the output
// directory is the source of truth: it is seeded from the project ledger on
// first start and every accepted mutation is appended and synced before the
// response is produced. Reads take a shared lock; mutations are serialized.
class Session {
 public:
  Session(const ProjectConfig& config, std::ostream& diag);

  ApiResponse get_features() const;
  ApiResponse get_candidates(const std::string& feature) const;
  ApiResponse post_curation(const std::string& body);
  ApiResponse get_map() const;
  ApiResponse get_suggested_relations() const;
  ApiResponse get_journey(const std::string& background,
                          std::optional<std::uint64_t> seed);

  std::uint64_t revision() const;
  ConceptMap concept_map() const;
  CurationLedger ledger() const;
  const std::filesystem::path& ledger_path() const { return ledger_path_; }

 private:
  Project project_;
  std::filesystem::path ledger_path_;

  mutable std::shared_mutex mutex_;
  CurationLedger ledger_;
  ConceptMap map_;  // == apply_curation(candidates, ledger_)
  std::uint64_t revision_ = 0;

  std::mutex topics_mutex_;
  std::map<std::tuple<std::uint64_t, int, std::uint64_t>,
           std::shared_ptr<const TopicModel>>
      topic_cache_;
};

// Mounts the JSON endpoints under /api on `server`.
void register_routes(httplib::Server& server, Session& session);

// Blocks serving on host:port until the server is stopped.
bool serve(Session& session, const std::string& host, int port,
           const std::optional<std::filesystem::path>& static_dir);

}  // namespace splboard

#endif  // SPLBOARD_SESSION_HPP
