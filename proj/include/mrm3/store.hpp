#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "mrm3/property_value.hpp"
#include "mrm3/vocabulary.hpp"

namespace mrm3 {

using NodeId = std::uint64_t;
using RelationshipId = std::uint64_t;

struct GraphNode {
  NodeId id = 0;
  NodeLabel label = NodeLabel::Model;
  PropertyMap properties;

  bool operator==(const GraphNode &) const = default;
};

struct GraphRelationship {
  RelationshipId id = 0;
  RelationType type = RelationType::TRAINED_ON;
  NodeId source = 0;
  NodeId target = 0;
  PropertyMap properties;

  bool operator==(const GraphRelationship &) const = default;
};

enum class Direction { Out, In, Both };

struct Neighbor {
  const GraphRelationship *relationship;
  const GraphNode *node;
};

struct GraphStats {
  std::map<std::string, std::size_t> nodeCountByLabel;
  std::map<std::string, std::size_t> relationshipCountByType;
  std::size_t totalNodes = 0;
  std::size_t totalRelationships = 0;

  std::size_t nodes(NodeLabel label) const { return nodeCountByLabel.at(std::string(to_string(label))); }
  std::size_t relationships(RelationType type) const {
    return relationshipCountByType.at(std::string(to_string(type)));
  }

  nlohmann::json to_json() const;
  bool operator==(const GraphStats &) const = default;
};

// Append/merge-only property graph. Node and relationship ids increase
// monotonically and are never reused; nothing is ever deleted except by
// rolling back an open batch.
//
// Not internally synchronized: any number of concurrent readers or one
// writer.
class PropertyGraph {
public:
  PropertyGraph() = default;

  NodeId create_node(NodeLabel label, PropertyMap properties);
  RelationshipId create_relationship(RelationType type, NodeId source, NodeId target,
                                     PropertyMap properties = {});

  // Overwrites the given keys, leaving other properties untouched.
  void update_properties(NodeId id, const PropertyMap &updates);

  const GraphNode &node(NodeId id) const;
  const GraphNode *find_node(NodeId id) const noexcept;
  const GraphRelationship &relationship(RelationshipId id) const;
  std::optional<RelationshipId> find_relationship(RelationType type, NodeId source,
                                                  NodeId target) const;

  /// Nodes with `label` (any label when empty) whose properties equal every
  /// filter entry, ascending by id. Uses the property index when a filter key
  /// is indexed for that label.
  std::vector<const GraphNode *> find_nodes(std::optional<NodeLabel> label,
                                            const PropertyMap &filters = {}) const;

  /// Incident relationships of `id`, ascending by relationship id. With
  /// Direction::Both a self-loop is reported once.
  std::vector<Neighbor> neighbors(NodeId id, Direction direction,
                                  std::optional<RelationType> type = std::nullopt) const;

  std::span<const GraphNode> nodes() const noexcept { return nodes_; }
  std::span<const GraphRelationship> relationships() const noexcept { return relationships_; }
  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t relationship_count() const noexcept { return relationships_.size(); }
  std::size_t count(NodeLabel label) const;

  GraphStats stats() const;

  void create_index(NodeLabel label, const std::string &property);
  bool has_index(NodeLabel label, const std::string &property) const;

  // Batches make a group of writes all-or-nothing. Only one batch may be open.
  void begin_batch();
  void commit_batch();
  void rollback_batch();
  bool in_batch() const noexcept { return undo_.has_value(); }

  // Deep equality: same ids, labels, types, endpoints and properties.
  bool same_content(const PropertyGraph &other) const;

  // Used by snapshot loading to keep stored ids.
  NodeId insert_node(GraphNode node);
  RelationshipId insert_relationship(GraphRelationship rel);

private:
  struct Adjacency {
    std::vector<RelationshipId> out;
    std::vector<RelationshipId> in;
  };
  struct Undo {
    std::size_t nodeCount;
    std::size_t relationshipCount;
    NodeId nextNode;
    RelationshipId nextRelationship;
    std::vector<std::pair<NodeId, PropertyMap>> previousProperties;
  };
  using IndexKey = std::pair<NodeLabel, std::string>;
  using ValueIndex = std::map<std::string, std::vector<NodeId>>;

  std::size_t slot(NodeId id) const;
  void index_node(const GraphNode &node);
  void unindex_property(const GraphNode &node, const std::string &key);
  void index_property(const GraphNode &node, const std::string &key);
  void pop_last_node();
  void pop_last_relationship();
  static void check_finite(const PropertyMap &map);

  std::vector<GraphNode> nodes_;
  std::vector<Adjacency> adjacency_;
  std::vector<GraphRelationship> relationships_;
  std::unordered_map<NodeId, std::size_t> node_slot_;
  std::unordered_map<RelationshipId, std::size_t> rel_slot_;
  std::map<NodeLabel, std::vector<NodeId>> by_label_;
  std::map<std::tuple<RelationType, NodeId, NodeId>, RelationshipId> by_triple_;
  std::map<IndexKey, ValueIndex> property_index_;
  NodeId next_node_ = 0;
  RelationshipId next_relationship_ = 0;
  std::optional<Undo> undo_;
};

// Line-delimited JSON snapshot: a header record, then nodes, then
// relationships, one per line.
void write_snapshot(const PropertyGraph &graph, std::ostream &out);
std::string snapshot_text(const PropertyGraph &graph);
PropertyGraph read_snapshot(std::istream &in);

// Writes to a sibling temp file and renames over `destination`.
void save_snapshot(const PropertyGraph &graph, const std::filesystem::path &destination);
PropertyGraph load_snapshot(const std::filesystem::path &source);

} // namespace mrm3
