#include "mrm3/interchange.hpp"

#include <algorithm>
#include <map>

#include "mrm3/ontology.hpp"
#include "mrm3/query/ast.hpp"

namespace mrm3::interchange {

namespace {

using KeyProps = std::vector<std::pair<std::string, PropertyValue>>;

std::string map_literal(const KeyProps &props) {
  std::string out = "{";
  for (std::size_t i = 0; i < props.size(); ++i)
    out += (i ? ", " : "") + query::quote_identifier(props[i].first) + ": " + cypher_literal(props[i].second);
  return out + "}";
}

// Identity-key properties per node, falling back to `_id` when missing or
// not unique within the label.
std::map<NodeId, KeyProps> node_keys(const PropertyGraph &graph) {
  std::map<NodeId, KeyProps> keys;
  std::map<std::pair<NodeLabel, std::string>, std::size_t> seen;
  for (const auto &n : graph.nodes()) {
    KeyProps k;
    for (const auto &name : ontology::identity_properties(n.label)) {
      auto it = n.properties.find(name);
      if (it == n.properties.end()) {
        k.clear();
        break;
      }
      k.emplace_back(name, it->second);
    }
    if (!k.empty())
      ++seen[{n.label, map_literal(k)}];
    keys[n.id] = std::move(k);
  }
  for (const auto &n : graph.nodes()) {
    auto &k = keys[n.id];
    if (k.empty() || seen[{n.label, map_literal(k)}] > 1)
      k = {{"_id", static_cast<std::int64_t>(n.id)}};
  }
  return keys;
}

std::string dot_escape(const std::string &s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\')
      out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out;
}

std::string xml_escape(const std::string &s) {
  std::string out;
  for (char c : s) {
    switch (c) {
    case '&': out += "&amp;"; break;
    case '<': out += "&lt;"; break;
    case '>': out += "&gt;"; break;
    case '"': out += "&quot;"; break;
    case '\'': out += "&apos;"; break;
    case '\t':
    case '\n':
    case '\r': out += c; break;
    default:
      // Other control characters are not allowed in XML 1.0 at all.
      if (static_cast<unsigned char>(c) < 0x20)
        out += "\xEF\xBF\xBD";
      else
        out += c;
    }
  }
  return out;
}

std::string caption(const GraphNode &n) {
  auto it = n.properties.find(display_property(n.label));
  if (it == n.properties.end())
    return std::string(to_string(n.label));
  return display_string(it->second);
}

const char *color(NodeLabel label) {
  switch (label) {
  case NodeLabel::Model: return "#4C8EDA";
  case NodeLabel::Dataset: return "#F79767";
  case NodeLabel::Service: return "#57C7E3";
  case NodeLabel::ProblemType: return "#F16667";
  case NodeLabel::ModelArchitecture: return "#D9C8AE";
  case NodeLabel::ModelTraining: return "#8DCC93";
  case NodeLabel::ModelInference: return "#ECB5C9";
  case NodeLabel::Parameters: return "#FFC454";
  case NodeLabel::Hyperparameters: return "#DA7194";
  case NodeLabel::Device: return "#569480";
  }
  return "#C0C0C0";
}

} // namespace

const char *display_property(NodeLabel label) {
  switch (label) {
  case NodeLabel::Model:
  case NodeLabel::Dataset:
  case NodeLabel::Service:
  case NodeLabel::ProblemType: return "name";
  case NodeLabel::ModelArchitecture: return "type";
  case NodeLabel::ModelTraining:
  case NodeLabel::ModelInference:
  case NodeLabel::Parameters: return "modelName";
  case NodeLabel::Hyperparameters: return ontology::kHyperparameterKey;
  case NodeLabel::Device: return "cpu";
  }
  return "name";
}

std::string export_cypher(const PropertyGraph &graph) {
  auto keys = node_keys(graph);
  std::string out = "// mrm3 knowledge graph export: " + std::to_string(graph.node_count()) + " nodes, " +
                    std::to_string(graph.relationship_count()) + " relationships\n";
  for (const auto &n : graph.nodes()) {
    const auto &key = keys.at(n.id);
    KeyProps rest;
    for (const auto &[name, value] : n.properties) {
      bool is_key = std::any_of(key.begin(), key.end(), [&](const auto &k) { return k.first == name; });
      if (!is_key)
        rest.emplace_back(name, value);
    }
    out += "MERGE (n:" + std::string(to_string(n.label)) + " " + map_literal(key) + ")";
    if (!rest.empty())
      out += " SET n += " + map_literal(rest);
    out += ";\n";
  }
  for (const auto &r : graph.relationships()) {
    const auto &src = graph.node(r.source);
    const auto &tgt = graph.node(r.target);
    out += "MATCH (a:" + std::string(to_string(src.label)) + " " + map_literal(keys.at(src.id)) + "), (b:" +
           std::string(to_string(tgt.label)) + " " + map_literal(keys.at(tgt.id)) + ") MERGE (a)-[r:" +
           std::string(to_string(r.type)) + "]->(b)";
    if (!r.properties.empty())
      out += " SET r += " + map_literal(KeyProps(r.properties.begin(), r.properties.end()));
    out += ";\n";
  }
  return out;
}

std::string export_dot(const PropertyGraph &graph) {
  std::string out = "digraph mrm3 {\n  node [shape=ellipse, style=filled];\n";
  for (const auto &n : graph.nodes())
    out += "  \"n" + std::to_string(n.id) + "\" [label=\"" + dot_escape(caption(n)) + "\", tooltip=\"" +
           std::string(to_string(n.label)) + "\", fillcolor=\"" + color(n.label) + "\"];\n";
  for (const auto &r : graph.relationships())
    out += "  \"n" + std::to_string(r.source) + "\" -> \"n" + std::to_string(r.target) + "\" [label=\"" +
           std::string(to_string(r.type)) + "\"];\n";
  return out + "}\n";
}

std::string export_graphml(const PropertyGraph &graph) {
  std::string out =
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\" "
      "xmlns:xsi=\"http://www.w3.org/2001/XMLSchema-instance\" "
      "xsi:schemaLocation=\"http://graphml.graphdrawing.org/xmlns "
      "http://graphml.graphdrawing.org/xmlns/1.0/graphml.xsd\">\n"
      "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n"
      "  <key id=\"display\" for=\"node\" attr.name=\"display\" attr.type=\"string\"/>\n"
      "  <key id=\"type\" for=\"edge\" attr.name=\"type\" attr.type=\"string\"/>\n"
      "  <key id=\"props\" for=\"all\" attr.name=\"properties\" attr.type=\"string\"/>\n"
      "  <graph id=\"mrm3\" edgedefault=\"directed\">\n";
  for (const auto &n : graph.nodes())
    out += "    <node id=\"n" + std::to_string(n.id) + "\"><data key=\"label\">" +
           std::string(to_string(n.label)) + "</data><data key=\"display\">" + xml_escape(caption(n)) +
           "</data><data key=\"props\">" + xml_escape(to_json(n.properties).dump()) + "</data></node>\n";
  for (const auto &r : graph.relationships())
    out += "    <edge id=\"e" + std::to_string(r.id) + "\" source=\"n" + std::to_string(r.source) +
           "\" target=\"n" + std::to_string(r.target) + "\"><data key=\"type\">" +
           std::string(to_string(r.type)) + "</data><data key=\"props\">" +
           xml_escape(to_json(r.properties).dump()) + "</data></edge>\n";
  return out + "  </graph>\n</graphml>\n";
}

} // namespace mrm3::interchange
