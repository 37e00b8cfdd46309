#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "mrm3/app.hpp"
#include "mrm3/error.hpp"
#include "mrm3/fixtures.hpp"
#include "mrm3/interchange.hpp"
#include "mrm3/ontology.hpp"
#include "mrm3/query/executor.hpp"
#include "mrm3/schema.hpp"

namespace mrm3::app {

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

std::string read_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error("cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_output(const std::string &target, const std::string &text, std::ostream &out) {
  if (target == "-") {
    out << text;
    return;
  }
  std::ofstream f(target, std::ios::binary | std::ios::trunc);
  if (!f)
    throw Error("cannot write " + target);
  f << text;
}

void print_stats(const GraphStats &s, std::ostream &out) {
  auto line = [&](const std::string &name, std::size_t n) {
    out << name << std::string(name.size() < 32 ? 32 - name.size() : 1, ' ') << n << "\n";
  };
  out << "KG Entities" << std::string(21, ' ') << "Quantity\n";
  line("All Relations", s.totalRelationships);
  line("All Nodes", s.totalNodes);
  for (auto type : kAllRelationTypes)
    line("Relation " + std::string(to_string(type)), s.relationships(type));
  for (auto label : kAllLabels)
    line("Node " + std::string(to_string(label)), s.nodes(label));
}

struct Options {
  std::string db;
  std::vector<std::string> files;
  bool json = false;
  std::string expr;
  std::string queryFile;
  std::string format;
  std::string out;
  std::size_t maxRows = kDefaultMaxRows;
  bool explain = false;
  std::uint64_t seed = fixtures::FixtureConfig{}.randomSeed;
  std::string host = "127.0.0.1";
  int port = 7474;
};

int cmd_schema_export(const Options &o, std::ostream &out) {
  write_output(o.out.empty() ? "-" : o.out, schema::load_schema().document.dump(2) + "\n", out);
  return kOk;
}

int cmd_validate(const Options &o, std::ostream &out) {
  bool all_valid = true;
  nlohmann::json reports = nlohmann::json::object();
  for (const auto &file : o.files) {
    schema::ValidationReport report;
    try {
      report = schema::validate_document(read_file(file));
    } catch (const Error &e) {
      report.valid = false;
      report.violations.push_back({"$", "io", e.what()});
    }
    all_valid = all_valid && report.valid;
    if (o.json) {
      reports[file] = report.to_json();
      continue;
    }
    if (report.valid) {
      out << file << ": valid\n";
      continue;
    }
    out << file << ": " << report.violations.size() << " violation(s)\n";
    for (const auto &v : report.violations)
      out << "  " << v.jsonPath << " [" << v.rule << "] " << v.message << "\n";
  }
  if (o.json)
    out << reports.dump(2) << "\n";
  return all_valid ? kOk : kFailure;
}

int cmd_ingest(const Options &o, std::ostream &out, std::ostream &err) {
  std::vector<std::pair<std::string, schema::ModelMetadataDocument>> docs;
  bool ok = true;
  for (const auto &file : o.files) {
    auto text = read_file(file);
    auto report = schema::validate_document(text);
    if (!report.valid) {
      ok = false;
      err << file << ": " << report.violations.size() << " violation(s)\n";
      for (const auto &v : report.violations)
        err << "  " << v.jsonPath << " [" << v.rule << "] " << v.message << "\n";
      continue;
    }
    docs.emplace_back(file, schema::parse_document(text));
  }
  if (!ok) {
    err << "nothing ingested: fix the invalid documents first\n";
    return kFailure;
  }

  auto graph = open_graph(o.db);
  nlohmann::json reports = nlohmann::json::object();
  graph.begin_batch();
  try {
    for (const auto &[file, doc] : docs) {
      auto report = ontology::ingest(graph, doc);
      reports[file] = report.to_json();
      if (!o.json)
        out << file << ": " << report.nodesCreated << " node(s) created, " << report.nodesMatched
            << " matched, " << report.relationshipsCreated << " relationship(s) created, "
            << report.relationshipsMatched << " matched\n";
    }
    save_snapshot(graph, o.db);
    graph.commit_batch();
  } catch (...) {
    graph.rollback_batch();
    throw;
  }
  if (o.json)
    out << nlohmann::json{{"documents", reports}, {"stats", graph.stats().to_json()}}.dump(2) << "\n";
  else
    out << "ingested " << docs.size() << " document(s) into " << o.db << "\n";
  return kOk;
}

PropertyGraph open_existing(const std::string &db) {
  if (!std::filesystem::exists(db))
    throw Error("database snapshot " + db + " does not exist");
  return open_graph(db);
}

int cmd_stats(const Options &o, std::ostream &out) {
  auto stats = open_existing(o.db).stats();
  if (o.json)
    out << stats.to_json().dump(2) << "\n";
  else
    print_stats(stats, out);
  return kOk;
}

int cmd_query(const Options &o, std::ostream &out, std::ostream &err) {
  std::string text = o.expr.empty() ? read_file(o.queryFile) : o.expr;
  auto graph = open_existing(o.db);
  try {
    auto ast = query::parse(text);
    if (o.explain) {
      out << query::explain(ast, graph).to_string();
      return kOk;
    }
    auto table = query::execute(graph, ast, {o.maxRows});
    if (o.format == "json")
      out << table.to_json().dump(2) << "\n";
    else if (o.format == "csv")
      out << table.to_csv();
    else
      out << table.to_text();
    if (table.truncated)
      err << "warning: output truncated to " << o.maxRows << " rows; add LIMIT or --max-rows\n";
    return kOk;
  } catch (const query::QueryError &e) {
    err << "query error: " << e.what() << "\n";
    if (e.line() > 0) {
      std::istringstream lines(text);
      std::string source;
      for (std::size_t n = 0; n < e.line() && std::getline(lines, source); ++n) {
      }
      err << "  " << source << "\n  " << std::string(e.column() > 0 ? e.column() - 1 : 0, ' ') << "^\n";
    }
    return kFailure;
  }
}

int cmd_export(const Options &o, std::ostream &out) {
  auto graph = open_existing(o.db);
  std::string text = o.format == "cypher" ? interchange::export_cypher(graph)
                     : o.format == "dot"  ? interchange::export_dot(graph)
                                          : interchange::export_graphml(graph);
  write_output(o.out, text, out);
  return kOk;
}

int cmd_fixture_generate(const Options &o, std::ostream &out) {
  fixtures::FixtureConfig config;
  config.randomSeed = o.seed;
  auto paths = fixtures::write_corpus(fixtures::generate(config), o.out);
  out << "wrote " << paths.size() << " document(s) to " << o.out << "\n";
  return kOk;
}

int cmd_fixture_calibrate(const Options &o, std::ostream &out) {
  fixtures::FixtureConfig config;
  config.randomSeed = o.seed;
  auto report = fixtures::calibrate(config);
  out << report.to_json().dump(2) << "\n";
  return report.matched ? kOk : kFailure;
}

HttpServer *g_server = nullptr;

extern "C" void handle_signal(int) {
  if (g_server)
    g_server->stop();
}

int cmd_serve(const Options &o, std::ostream &out) {
  KnowledgeGraphService service(std::filesystem::path(o.db));
  HttpServer server(service);
  int port = server.bind(o.host, o.port);
  out << "serving " << o.db << " on http://" << o.host << ":" << port << std::endl;
  g_server = &server;
  std::signal(SIGINT, handle_signal);
  std::signal(SIGTERM, handle_signal);
  server.listen();
  g_server = nullptr;
  return kOk;
}

} // namespace

int cli_main(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"mrm3: knowledge graph of machine-readable ML model metadata", "mrm3"};
  app.require_subcommand(1);
  Options o;

  auto db_option = [&](CLI::App *cmd) {
    cmd->add_option("--db", o.db, "Graph snapshot path")->envname("MRM3_DB")->required();
  };

  auto *schema_cmd = app.add_subcommand("schema", "Schema utilities")->require_subcommand(1);
  auto *schema_export = schema_cmd->add_subcommand("export", "Print the metadata JSON Schema");
  schema_export->add_option("--out", o.out, "Output file (default stdout)");

  auto *validate = app.add_subcommand("validate", "Validate metadata documents");
  validate->add_option("files", o.files, "JSON documents")->required()->check(CLI::ExistingFile);
  validate->add_flag("--json", o.json, "Machine-readable report");

  auto *ingest = app.add_subcommand("ingest", "Validate and merge documents into the graph");
  ingest->add_option("files", o.files, "JSON documents")->required()->check(CLI::ExistingFile);
  db_option(ingest);
  ingest->add_flag("--json", o.json, "Machine-readable report");

  auto *stats = app.add_subcommand("stats", "Node and relationship counts");
  db_option(stats);
  stats->add_flag("--json", o.json, "Machine-readable output");

  auto *query = app.add_subcommand("query", "Run a read query");
  db_option(query);
  auto *expr = query->add_option("-e,--execute", o.expr, "Query text");
  auto *file = query->add_option("-f,--file", o.queryFile, "File holding the query")->check(CLI::ExistingFile);
  expr->excludes(file);
  query->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"table", "json", "csv"}))
      ->default_val("table");
  query->add_option("--max-rows", o.maxRows, "Row cap when the query has no LIMIT")->default_val(kDefaultMaxRows);
  query->add_flag("--explain", o.explain, "Print the plan instead of running the query");

  auto *export_cmd = app.add_subcommand("export", "Export the graph");
  db_option(export_cmd);
  export_cmd->add_option("--format", o.format, "Export format")
      ->required()
      ->check(CLI::IsMember({"cypher", "dot", "graphml"}));
  export_cmd->add_option("--out", o.out, "Output file, '-' for stdout")->required();

  auto *fixture = app.add_subcommand("fixture", "Synthetic localization corpus")->require_subcommand(1);
  auto *fixture_generate = fixture->add_subcommand("generate", "Write the corpus as JSON files");
  fixture_generate->add_option("--out", o.out, "Output directory")->required();
  fixture_generate->add_option("--seed", o.seed, "Random seed");
  auto *fixture_calibrate = fixture->add_subcommand("calibrate", "Report the hyperparameter-set calibration");
  fixture_calibrate->add_option("--seed", o.seed, "Random seed");

  auto *serve = app.add_subcommand("serve", "Serve the HTTP API");
  db_option(serve);
  serve->add_option("--port", o.port, "TCP port")->required();
  serve->add_option("--host", o.host, "Bind address");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
    if (*query && o.expr.empty() && o.queryFile.empty())
      throw CLI::RequiredError("query needs -e TEXT or -f FILE");
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << "\n";
    const CLI::App *failed = &app;
    for (auto *sub : app.get_subcommands())
      failed = sub;
    err << failed->help();
    return kUsage;
  }

  try {
    if (*schema_export) return cmd_schema_export(o, out);
    if (*validate) return cmd_validate(o, out);
    if (*ingest) return cmd_ingest(o, out, err);
    if (*stats) return cmd_stats(o, out);
    if (*query) return cmd_query(o, out, err);
    if (*export_cmd) return cmd_export(o, out);
    if (*fixture_generate) return cmd_fixture_generate(o, out);
    if (*fixture_calibrate) return cmd_fixture_calibrate(o, out);
    if (*serve) return cmd_serve(o, out);
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}

int cli_main(int argc, char **argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cli_main(args, std::cout, std::cerr);
}

} // namespace mrm3::app
