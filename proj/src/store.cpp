#include "mrm3/store.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "mrm3/error.hpp"

namespace mrm3 {

namespace {

std::string index_value_key(const PropertyValue &value) { return to_json(value).dump(); }

void erase_id(std::vector<NodeId> &ids, NodeId id) {
  auto it = std::lower_bound(ids.begin(), ids.end(), id);
  if (it != ids.end() && *it == id)
    ids.erase(it);
}

void insert_sorted(std::vector<NodeId> &ids, NodeId id) {
  auto it = std::lower_bound(ids.begin(), ids.end(), id);
  if (it == ids.end() || *it != id)
    ids.insert(it, id);
}

} // namespace

nlohmann::json GraphStats::to_json() const {
  return {{"nodeCountByLabel", nodeCountByLabel},
          {"relationshipCountByType", relationshipCountByType},
          {"totalNodes", totalNodes},
          {"totalRelationships", totalRelationships}};
}

void PropertyGraph::check_finite(const PropertyMap &map) {
  for (const auto &[key, value] : map)
    if (!value.is_finite())
      throw StorageError("property '" + key + "' is not a finite number");
}

std::size_t PropertyGraph::slot(NodeId id) const {
  auto it = node_slot_.find(id);
  if (it == node_slot_.end())
    throw UnknownEntityError("unknown node id " + std::to_string(id));
  return it->second;
}

NodeId PropertyGraph::create_node(NodeLabel label, PropertyMap properties) {
  return insert_node(GraphNode{next_node_, label, std::move(properties)});
}

NodeId PropertyGraph::insert_node(GraphNode node) {
  if (node.id < next_node_)
    throw StorageError("node id " + std::to_string(node.id) + " is not above the last assigned id");
  check_finite(node.properties);
  next_node_ = node.id + 1;
  node_slot_.emplace(node.id, nodes_.size());
  nodes_.push_back(std::move(node));
  adjacency_.emplace_back();
  index_node(nodes_.back());
  return nodes_.back().id;
}

RelationshipId PropertyGraph::create_relationship(RelationType type, NodeId source, NodeId target,
                                                  PropertyMap properties) {
  return insert_relationship(
      GraphRelationship{next_relationship_, type, source, target, std::move(properties)});
}

RelationshipId PropertyGraph::insert_relationship(GraphRelationship rel) {
  if (!node_slot_.contains(rel.source))
    throw ReferentialIntegrityError("relationship source " + std::to_string(rel.source) +
                                    " does not exist");
  if (!node_slot_.contains(rel.target))
    throw ReferentialIntegrityError("relationship target " + std::to_string(rel.target) +
                                    " does not exist");
  auto triple = std::make_tuple(rel.type, rel.source, rel.target);
  if (by_triple_.contains(triple))
    throw DuplicateRelationshipError(std::string(to_string(rel.type)) + " from " +
                                     std::to_string(rel.source) + " to " +
                                     std::to_string(rel.target) + " already exists");
  if (rel.id < next_relationship_)
    throw StorageError("relationship id " + std::to_string(rel.id) +
                       " is not above the last assigned id");
  check_finite(rel.properties);

  next_relationship_ = rel.id + 1;
  by_triple_.emplace(triple, rel.id);
  rel_slot_.emplace(rel.id, relationships_.size());
  adjacency_[slot(rel.source)].out.push_back(rel.id);
  adjacency_[slot(rel.target)].in.push_back(rel.id);
  relationships_.push_back(std::move(rel));
  return relationships_.back().id;
}

void PropertyGraph::update_properties(NodeId id, const PropertyMap &updates) {
  check_finite(updates);
  auto &node = nodes_[slot(id)];
  if (undo_) {
    auto &prev = undo_->previousProperties;
    bool seen = std::any_of(prev.begin(), prev.end(), [&](const auto &p) { return p.first == id; });
    // Nodes created inside the batch disappear on rollback anyway.
    if (!seen && node_slot_.at(id) < undo_->nodeCount)
      prev.emplace_back(id, node.properties);
  }
  for (const auto &[key, value] : updates) {
    unindex_property(node, key);
    node.properties[key] = value;
    index_property(node, key);
  }
}

const GraphNode &PropertyGraph::node(NodeId id) const { return nodes_[slot(id)]; }

const GraphNode *PropertyGraph::find_node(NodeId id) const noexcept {
  auto it = node_slot_.find(id);
  return it == node_slot_.end() ? nullptr : &nodes_[it->second];
}

const GraphRelationship &PropertyGraph::relationship(RelationshipId id) const {
  auto it = rel_slot_.find(id);
  if (it == rel_slot_.end())
    throw UnknownEntityError("unknown relationship id " + std::to_string(id));
  return relationships_[it->second];
}

std::optional<RelationshipId> PropertyGraph::find_relationship(RelationType type, NodeId source,
                                                               NodeId target) const {
  auto it = by_triple_.find(std::make_tuple(type, source, target));
  if (it == by_triple_.end())
    return std::nullopt;
  return it->second;
}

std::vector<const GraphNode *> PropertyGraph::find_nodes(std::optional<NodeLabel> label,
                                                         const PropertyMap &filters) const {
  auto matches = [&](const GraphNode &n) {
    if (label && n.label != *label)
      return false;
    for (const auto &[key, value] : filters) {
      auto it = n.properties.find(key);
      if (it == n.properties.end() || !(it->second == value))
        return false;
    }
    return true;
  };

  std::vector<const GraphNode *> out;
  if (label) {
    for (const auto &[key, value] : filters) {
      auto idx = property_index_.find({*label, key});
      if (idx == property_index_.end())
        continue;
      auto hit = idx->second.find(index_value_key(value));
      if (hit == idx->second.end())
        return out;
      for (NodeId id : hit->second)
        if (const auto &n = nodes_[node_slot_.at(id)]; matches(n))
          out.push_back(&n);
      return out;
    }
    auto it = by_label_.find(*label);
    if (it == by_label_.end())
      return out;
    for (NodeId id : it->second)
      if (const auto &n = nodes_[node_slot_.at(id)]; matches(n))
        out.push_back(&n);
    return out;
  }
  for (const auto &n : nodes_)
    if (matches(n))
      out.push_back(&n);
  return out;
}

std::vector<Neighbor> PropertyGraph::neighbors(NodeId id, Direction direction,
                                               std::optional<RelationType> type) const {
  const auto &adj = adjacency_[slot(id)];
  std::vector<RelationshipId> ids;
  if (direction != Direction::In)
    ids.insert(ids.end(), adj.out.begin(), adj.out.end());
  if (direction != Direction::Out)
    ids.insert(ids.end(), adj.in.begin(), adj.in.end());
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

  std::vector<Neighbor> out;
  out.reserve(ids.size());
  for (RelationshipId rid : ids) {
    const auto &rel = relationships_[rel_slot_.at(rid)];
    if (type && rel.type != *type)
      continue;
    NodeId other = rel.source == id ? rel.target : rel.source;
    out.push_back({&rel, &nodes_[node_slot_.at(other)]});
  }
  return out;
}

std::size_t PropertyGraph::count(NodeLabel label) const {
  auto it = by_label_.find(label);
  return it == by_label_.end() ? 0 : it->second.size();
}

GraphStats PropertyGraph::stats() const {
  GraphStats s;
  for (auto label : kAllLabels)
    s.nodeCountByLabel[std::string(to_string(label))] = 0;
  for (auto type : kAllRelationTypes)
    s.relationshipCountByType[std::string(to_string(type))] = 0;
  for (const auto &[label, ids] : by_label_)
    s.nodeCountByLabel[std::string(to_string(label))] = ids.size();
  for (const auto &rel : relationships_)
    ++s.relationshipCountByType[std::string(to_string(rel.type))];
  s.totalNodes = nodes_.size();
  s.totalRelationships = relationships_.size();
  return s;
}

void PropertyGraph::create_index(NodeLabel label, const std::string &property) {
  auto [it, inserted] = property_index_.try_emplace({label, property});
  if (!inserted)
    return;
  for (NodeId id : by_label_[label]) {
    const auto &n = nodes_[node_slot_.at(id)];
    if (auto p = n.properties.find(property); p != n.properties.end())
      insert_sorted(it->second[index_value_key(p->second)], id);
  }
}

bool PropertyGraph::has_index(NodeLabel label, const std::string &property) const {
  return property_index_.contains({label, property});
}

void PropertyGraph::index_node(const GraphNode &node) {
  insert_sorted(by_label_[node.label], node.id);
  for (const auto &[key, value] : node.properties)
    index_property(node, key);
}

void PropertyGraph::index_property(const GraphNode &node, const std::string &key) {
  auto idx = property_index_.find({node.label, key});
  if (idx == property_index_.end())
    return;
  if (auto p = node.properties.find(key); p != node.properties.end())
    insert_sorted(idx->second[index_value_key(p->second)], node.id);
}

void PropertyGraph::unindex_property(const GraphNode &node, const std::string &key) {
  auto idx = property_index_.find({node.label, key});
  if (idx == property_index_.end())
    return;
  auto p = node.properties.find(key);
  if (p == node.properties.end())
    return;
  auto bucket = idx->second.find(index_value_key(p->second));
  if (bucket == idx->second.end())
    return;
  erase_id(bucket->second, node.id);
  if (bucket->second.empty())
    idx->second.erase(bucket);
}

void PropertyGraph::begin_batch() {
  if (undo_)
    throw StorageError("a write batch is already open");
  undo_ = Undo{nodes_.size(), relationships_.size(), next_node_, next_relationship_, {}};
}

void PropertyGraph::commit_batch() { undo_.reset(); }

void PropertyGraph::pop_last_relationship() {
  const auto rel = relationships_.back();
  adjacency_[slot(rel.source)].out.pop_back();
  adjacency_[slot(rel.target)].in.pop_back();
  by_triple_.erase(std::make_tuple(rel.type, rel.source, rel.target));
  rel_slot_.erase(rel.id);
  relationships_.pop_back();
}

void PropertyGraph::pop_last_node() {
  const auto &node = nodes_.back();
  for (const auto &[key, value] : node.properties)
    unindex_property(node, key);
  erase_id(by_label_[node.label], node.id);
  node_slot_.erase(node.id);
  nodes_.pop_back();
  adjacency_.pop_back();
}

void PropertyGraph::rollback_batch() {
  if (!undo_)
    return;
  Undo undo = std::move(*undo_);
  undo_.reset();
  while (relationships_.size() > undo.relationshipCount)
    pop_last_relationship();
  while (nodes_.size() > undo.nodeCount)
    pop_last_node();
  for (auto it = undo.previousProperties.rbegin(); it != undo.previousProperties.rend(); ++it) {
    auto &node = nodes_[slot(it->first)];
    for (const auto &[key, value] : node.properties)
      unindex_property(node, key);
    node.properties = std::move(it->second);
    for (const auto &[key, value] : node.properties)
      index_property(node, key);
  }
  next_node_ = undo.nextNode;
  next_relationship_ = undo.nextRelationship;
}

bool PropertyGraph::same_content(const PropertyGraph &other) const {
  return nodes_ == other.nodes_ && relationships_ == other.relationships_;
}

// ---------------------------------------------------------------------------
// Snapshots

void write_snapshot(const PropertyGraph &graph, std::ostream &out) {
  nlohmann::ordered_json header;
  header["formatVersion"] = 1;
  header["nodeCount"] = graph.node_count();
  header["relationshipCount"] = graph.relationship_count();
  out << header.dump() << '\n';
  for (const auto &n : graph.nodes()) {
    nlohmann::ordered_json rec;
    rec["kind"] = "node";
    rec["id"] = n.id;
    rec["label"] = to_string(n.label);
    rec["props"] = to_json(n.properties);
    out << rec.dump() << '\n';
  }
  for (const auto &r : graph.relationships()) {
    nlohmann::ordered_json rec;
    rec["kind"] = "rel";
    rec["id"] = r.id;
    rec["type"] = to_string(r.type);
    rec["source"] = r.source;
    rec["target"] = r.target;
    rec["props"] = to_json(r.properties);
    out << rec.dump() << '\n';
  }
}

std::string snapshot_text(const PropertyGraph &graph) {
  std::ostringstream out;
  write_snapshot(graph, out);
  return out.str();
}

namespace {

std::uint64_t required_id(const nlohmann::json &rec, const char *key, std::size_t line) {
  auto it = rec.find(key);
  if (it == rec.end() || !it->is_number_unsigned())
    throw SnapshotError(line, std::string("missing or invalid '") + key + "'");
  return it->get<std::uint64_t>();
}

std::string required_string(const nlohmann::json &rec, const char *key, std::size_t line) {
  auto it = rec.find(key);
  if (it == rec.end() || !it->is_string())
    throw SnapshotError(line, std::string("missing or invalid '") + key + "'");
  return it->get<std::string>();
}

PropertyMap required_props(const nlohmann::json &rec, std::size_t line) {
  auto it = rec.find("props");
  if (it == rec.end())
    throw SnapshotError(line, "missing 'props'");
  try {
    return property_map_from_json(*it);
  } catch (const Error &e) {
    throw SnapshotError(line, e.what());
  }
}

} // namespace

PropertyGraph read_snapshot(std::istream &in) {
  PropertyGraph graph;
  std::string text;
  std::size_t line = 0;

  auto next_record = [&](const char *what) {
    if (!std::getline(in, text))
      throw SnapshotError(line + 1, std::string("unexpected end of file, expected ") + what);
    ++line;
    try {
      auto rec = nlohmann::json::parse(text);
      if (!rec.is_object())
        throw SnapshotError(line, "record is not a JSON object");
      return rec;
    } catch (const nlohmann::json::parse_error &e) {
      throw SnapshotError(line, std::string("malformed JSON: ") + e.what());
    }
  };

  auto header = next_record("header");
  if (header.value("formatVersion", nlohmann::json()) != 1)
    throw SnapshotError(line, "unsupported or missing formatVersion");
  auto node_count = required_id(header, "nodeCount", line);
  auto rel_count = required_id(header, "relationshipCount", line);

  for (std::uint64_t i = 0; i < node_count; ++i) {
    auto rec = next_record("node record");
    if (required_string(rec, "kind", line) != "node")
      throw SnapshotError(line, "expected a node record");
    auto label = parse_label(required_string(rec, "label", line));
    if (!label)
      throw SnapshotError(line, "unknown label");
    try {
      graph.insert_node(GraphNode{required_id(rec, "id", line), *label, required_props(rec, line)});
    } catch (const SnapshotError &) {
      throw;
    } catch (const Error &e) {
      throw SnapshotError(line, e.what());
    }
  }
  for (std::uint64_t i = 0; i < rel_count; ++i) {
    auto rec = next_record("relationship record");
    if (required_string(rec, "kind", line) != "rel")
      throw SnapshotError(line, "expected a relationship record");
    auto type = parse_relation_type(required_string(rec, "type", line));
    if (!type)
      throw SnapshotError(line, "unknown relationship type");
    try {
      graph.insert_relationship(GraphRelationship{required_id(rec, "id", line), *type,
                                                  required_id(rec, "source", line),
                                                  required_id(rec, "target", line),
                                                  required_props(rec, line)});
    } catch (const SnapshotError &) {
      throw;
    } catch (const Error &e) {
      throw SnapshotError(line, e.what());
    }
  }
  while (std::getline(in, text)) {
    ++line;
    if (!text.empty())
      throw SnapshotError(line, "unexpected record after declared counts");
  }
  return graph;
}

void save_snapshot(const PropertyGraph &graph, const std::filesystem::path &destination) {
  auto tmp = destination;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
      throw StorageError("cannot open " + tmp.string() + " for writing");
    write_snapshot(graph, out);
    out.flush();
    if (!out)
      throw StorageError("failed writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, destination, ec);
  if (ec)
    throw StorageError("cannot rename snapshot into place: " + ec.message());
}

PropertyGraph load_snapshot(const std::filesystem::path &source) {
  std::ifstream in(source, std::ios::binary);
  if (!in)
    throw StorageError("cannot open snapshot " + source.string());
  return read_snapshot(in);
}

} // namespace mrm3
