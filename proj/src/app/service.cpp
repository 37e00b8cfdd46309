#include <mutex>

#include "httplib.h"
#include "mrm3/app.hpp"
#include "mrm3/error.hpp"
#include "mrm3/interchange.hpp"
#include "mrm3/ontology.hpp"
#include "mrm3/query/executor.hpp"
#include "mrm3/schema.hpp"

namespace mrm3::app {

namespace {

Response json_response(int status, const nlohmann::json &body) { return {status, body.dump(), "application/json"}; }

Response error_response(int status, const std::string &message) {
  return json_response(status, {{"error", message}});
}

} // namespace

PropertyGraph open_graph(const std::filesystem::path &path) {
  PropertyGraph graph = std::filesystem::exists(path) ? load_snapshot(path) : PropertyGraph{};
  ontology::prepare(graph);
  return graph;
}

KnowledgeGraphService::KnowledgeGraphService(std::optional<std::filesystem::path> snapshot, std::size_t maxRows)
    : snapshot_(std::move(snapshot)), max_rows_(maxRows) {
  if (snapshot_)
    graph_ = open_graph(*snapshot_);
  else
    ontology::prepare(graph_);
}

Response KnowledgeGraphService::post_document(std::string_view body) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(body);
  } catch (const nlohmann::json::parse_error &e) {
    return error_response(400, std::string("malformed JSON body: ") + e.what());
  }
  auto report = schema::validate_json(doc);
  if (!report.valid)
    return json_response(422, report.to_json());
  auto parsed = schema::from_json(doc);

  std::unique_lock lock(mutex_);
  graph_.begin_batch();
  try {
    auto ingest = ontology::ingest(graph_, parsed);
    if (snapshot_)
      save_snapshot(graph_, *snapshot_);
    graph_.commit_batch();
    return json_response(200, ingest.to_json());
  } catch (const Error &e) {
    graph_.rollback_batch();
    return error_response(500, e.what());
  }
}

Response KnowledgeGraphService::post_query(std::string_view body) const {
  nlohmann::json request;
  try {
    request = nlohmann::json::parse(body);
  } catch (const nlohmann::json::parse_error &e) {
    return error_response(400, std::string("malformed JSON body: ") + e.what());
  }
  if (!request.is_object() || !request.contains("query") || !request["query"].is_string())
    return error_response(400, "body must be an object with a string field 'query'");

  query::ExecuteOptions options{max_rows_};
  if (auto m = request.find("maxRows"); m != request.end()) {
    if (!m->is_number_unsigned())
      return error_response(400, "'maxRows' must be a non-negative integer");
    options.maxRows = m->get<std::size_t>();
  }
  try {
    auto ast = query::parse(request["query"].get<std::string>());
    std::shared_lock lock(mutex_);
    return json_response(200, query::execute(graph_, ast, options).to_json());
  } catch (const query::SyntaxError &e) {
    return json_response(400, {{"error", e.message()},
                               {"line", e.line()},
                               {"column", e.column()},
                               {"expected", e.expected()}});
  } catch (const query::QueryError &e) {
    nlohmann::json body = {{"error", e.message()}};
    if (e.line()) {
      body["line"] = e.line();
      body["column"] = e.column();
    }
    return json_response(400, body);
  }
}

GraphStats KnowledgeGraphService::stats() const {
  std::shared_lock lock(mutex_);
  return graph_.stats();
}

Response KnowledgeGraphService::get_stats() const { return json_response(200, stats().to_json()); }

Response KnowledgeGraphService::get_graph(std::string_view format) const {
  std::shared_lock lock(mutex_);
  if (format.empty() || format == "graphml")
    return {200, interchange::export_graphml(graph_), "application/graphml+xml"};
  if (format == "dot")
    return {200, interchange::export_dot(graph_), "text/vnd.graphviz"};
  return error_response(400, "unsupported format '" + std::string(format) + "', use graphml or dot");
}

Response KnowledgeGraphService::health() const { return json_response(200, {{"status", "ok"}}); }

// ---------------------------------------------------------------------------

struct HttpServer::Impl {
  KnowledgeGraphService &service;
  httplib::Server server;

  explicit Impl(KnowledgeGraphService &s) : service(s) {
    auto send = [](httplib::Response &res, const Response &r) {
      res.status = r.status;
      res.set_content(r.body, r.contentType);
    };
    server.Post("/api/documents", [this, send](const httplib::Request &req, httplib::Response &res) {
      send(res, service.post_document(req.body));
    });
    server.Post("/api/query", [this, send](const httplib::Request &req, httplib::Response &res) {
      send(res, service.post_query(req.body));
    });
    server.Get("/api/stats", [this, send](const httplib::Request &, httplib::Response &res) {
      send(res, service.get_stats());
    });
    server.Get("/api/graph", [this, send](const httplib::Request &req, httplib::Response &res) {
      send(res, service.get_graph(req.has_param("format") ? req.get_param_value("format") : ""));
    });
    server.Get("/health", [this, send](const httplib::Request &, httplib::Response &res) {
      send(res, service.health());
    });
  }
};

HttpServer::HttpServer(KnowledgeGraphService &service) : impl_(std::make_unique<Impl>(service)) {}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string &host, int port) {
  if (port == 0)
    return impl_->server.bind_to_any_port(host);
  if (!impl_->server.bind_to_port(host, port))
    throw Error("cannot bind " + host + ":" + std::to_string(port));
  return port;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_ && impl_->server.is_running())
    impl_->server.stop();
}

} // namespace mrm3::app
