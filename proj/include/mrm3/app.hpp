#pragma once

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "mrm3/store.hpp"

namespace mrm3::app {

inline constexpr std::size_t kDefaultMaxRows = 10000;

struct Response {
  int status = 200;
  std::string body;
  std::string contentType = "application/json";
};

// Shared state behind the HTTP endpoints: one graph, optionally persisted to
// a snapshot after every successful write. Reads run concurrently; writes
// are serialized.
class KnowledgeGraphService {
public:
  explicit KnowledgeGraphService(std::optional<std::filesystem::path> snapshot = std::nullopt,
                                 std::size_t maxRows = kDefaultMaxRows);

  Response post_document(std::string_view body);
  Response post_query(std::string_view body) const;
  Response get_stats() const;
  Response get_graph(std::string_view format) const;
  Response health() const;

  GraphStats stats() const;

private:
  PropertyGraph graph_;
  std::optional<std::filesystem::path> snapshot_;
  std::size_t max_rows_;
  mutable std::shared_mutex mutex_;
};

class HttpServer {
public:
  explicit HttpServer(KnowledgeGraphService &service);
  ~HttpServer();

  // Binds and returns the port; port 0 picks a free one.
  int bind(const std::string &host, int port);
  // Blocks until stop().
  void listen();
  void stop();

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Loads `path` when it exists, otherwise returns an empty graph.
PropertyGraph open_graph(const std::filesystem::path &path);

/// Command-line entry point. Exit codes: 0 success, 1 validation or query
/// failure, 2 usage error.
int cli_main(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);
int cli_main(int argc, char **argv);

} // namespace mrm3::app
