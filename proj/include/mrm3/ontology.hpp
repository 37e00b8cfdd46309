#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mrm3/schema.hpp"
#include "mrm3/store.hpp"

namespace mrm3::ontology {

// Identity of a logical entity: label plus ordered, canonicalized key
// properties. Equal keys denote the same node.
struct IdentityKey {
  NodeLabel label = NodeLabel::Model;
  std::vector<std::pair<std::string, std::string>> keyProperties;

  auto operator<=>(const IdentityKey &) const = default;
  std::string to_string() const;
};

struct NodeSlot {
  IdentityKey key;
  PropertyMap properties;
};

struct RelationSlot {
  RelationType type;
  IdentityKey source;
  IdentityKey target;
};

struct MappedDocument {
  std::vector<NodeSlot> nodes;
  std::vector<RelationSlot> relationships;
};

struct IngestReport {
  std::size_t nodesCreated = 0;
  std::size_t nodesMatched = 0;
  std::size_t relationshipsCreated = 0;
  std::size_t relationshipsMatched = 0;
  NodeId modelNodeId = 0;

  nlohmann::json to_json() const;
};

// Trim, collapse internal whitespace runs to one space, keep case.
std::string canonicalize(std::string_view text);

// Names of the identity properties stored on each label, in key order.
const std::vector<std::string> &identity_properties(NodeLabel label);

// Property naming the Hyperparameters node's canonical value signature.
inline constexpr const char *kHyperparameterKey = "setKey";

// Canonical sorted serialization of a hyperparameter map.
std::string hyperparameter_signature(const std::map<std::string, Scalar> &hyperparameters);

MappedDocument map_document(const schema::ModelMetadataDocument &doc);

// Registers identity-key indexes on `graph`; idempotent.
void prepare(PropertyGraph &graph);

// Get-or-create every slot, last writer wins on properties, relationships
// deduplicated by (type, source, target). All-or-nothing.
IngestReport merge_into(PropertyGraph &graph, const MappedDocument &mapped);

inline IngestReport ingest(PropertyGraph &graph, const schema::ModelMetadataDocument &doc) {
  return merge_into(graph, map_document(doc));
}

} // namespace mrm3::ontology
