// Thin pybind11 layer. Structured results cross the boundary as JSON text;
// python/mrm3/__init__.py turns them into dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "mrm3/fixtures.hpp"
#include "mrm3/interchange.hpp"
#include "mrm3/ontology.hpp"
#include "mrm3/query/executor.hpp"
#include "mrm3/query/parser.hpp"
#include "mrm3/schema.hpp"
#include "mrm3/store.hpp"

namespace py = pybind11;
using namespace mrm3;

namespace {

PropertyGraph fresh_graph() {
  PropertyGraph graph;
  ontology::prepare(graph);
  return graph;
}

std::string ingest_text(PropertyGraph &graph, const std::string &text) {
  return ontology::ingest(graph, schema::parse_document(text)).to_json().dump();
}

std::string export_text(const PropertyGraph &graph, const std::string &format) {
  if (format == "cypher")
    return interchange::export_cypher(graph);
  if (format == "dot")
    return interchange::export_dot(graph);
  if (format == "graphml")
    return interchange::export_graphml(graph);
  throw ContractError("unknown export format '" + format + "'");
}

} // namespace

PYBIND11_MODULE(_mrm3, m) {
  m.doc() = "Knowledge graph of machine-readable ML model metadata";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ContractError>(m, "ContractError", base);
  py::register_exception<StorageError>(m, "StorageError", base);
  py::register_exception<SnapshotError>(m, "SnapshotError", base);
  auto query_error = py::register_exception<query::QueryError>(m, "QueryError", base);
  py::register_exception<query::SyntaxError>(m, "SyntaxError", query_error);
  py::register_exception<query::SemanticError>(m, "SemanticError", query_error);

  m.def("schema_json", [] { return schema::load_schema().document.dump(); });
  m.def("validate_json", [](const std::string &text) { return schema::validate_document(text).to_json().dump(); });
  m.def("parse_query", [](const std::string &text) { return query::pretty_print(query::parse(text)); });
  m.def("fixture_documents", [](std::uint64_t seed) {
    fixtures::FixtureConfig config;
    config.randomSeed = seed;
    std::vector<std::string> out;
    for (const auto &doc : fixtures::generate(config))
      out.push_back(schema::to_json(doc).dump());
    return out;
  });
  m.def("calibrate_json", [] { return fixtures::calibrate(fixtures::FixtureConfig{}).to_json().dump(); });
  m.attr("DEFAULT_SEED") = fixtures::FixtureConfig{}.randomSeed;

  py::class_<PropertyGraph>(m, "Graph")
      .def(py::init(&fresh_graph))
      .def_static("load",
                  [](const std::filesystem::path &path) {
                    auto graph = load_snapshot(path);
                    ontology::prepare(graph);
                    return graph;
                  })
      .def("save", [](const PropertyGraph &g, const std::filesystem::path &path) { save_snapshot(g, path); })
      .def("ingest_json", &ingest_text)
      .def("stats_json", [](const PropertyGraph &g) { return g.stats().to_json().dump(); })
      .def(
          "query_json",
          [](const PropertyGraph &g, const std::string &text, std::optional<std::size_t> max_rows) {
            query::ExecuteOptions options;
            options.maxRows = max_rows;
            return query::execute(g, text, options).to_json().dump();
          },
          py::arg("text"), py::arg("max_rows") = std::optional<std::size_t>(10000))
      .def("query_csv", [](const PropertyGraph &g, const std::string &text) { return query::execute(g, text).to_csv(); })
      .def("explain", [](const PropertyGraph &g, const std::string &text) {
        return query::explain(query::parse(text), g).to_string();
      })
      .def("export", &export_text, py::arg("format"))
      .def_property_readonly("node_count", &PropertyGraph::node_count)
      .def_property_readonly("relationship_count", &PropertyGraph::relationship_count);
}
