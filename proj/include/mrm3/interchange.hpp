#pragma once

#include <string>

#include "mrm3/store.hpp"

namespace mrm3::interchange {

// Property shown as a node's caption in visual exports.
const char *display_property(NodeLabel label);

/// MERGE script for loading the graph into an external Cypher database:
/// one statement per line, all nodes (ascending id) then all relationships.
/// Nodes are keyed by their identity properties, or by `_id` when a node
/// lacks them or shares them with another node of its label.
std::string export_cypher(const PropertyGraph &graph);

std::string export_dot(const PropertyGraph &graph);
std::string export_graphml(const PropertyGraph &graph);

} // namespace mrm3::interchange
