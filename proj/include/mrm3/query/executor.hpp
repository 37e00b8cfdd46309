#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mrm3/query/ast.hpp"
#include "mrm3/query/parser.hpp"
#include "mrm3/store.hpp"

namespace mrm3::query {

struct NodeValue {
  NodeId id = 0;
  NodeLabel label = NodeLabel::Model;
  PropertyMap properties;
  bool operator==(const NodeValue &) const = default;
};

struct RelationshipValue {
  RelationshipId id = 0;
  RelationType type = RelationType::TRAINED_ON;
  NodeId source = 0;
  NodeId target = 0;
  PropertyMap properties;
  bool operator==(const RelationshipValue &) const = default;
};

using Value = std::variant<PropertyValue, NodeValue, RelationshipValue>;

nlohmann::json to_json(const Value &value);
std::string display_string(const Value &value);

struct ResultTable {
  std::vector<std::string> columnNames;
  std::vector<std::vector<Value>> rows;
  // Set when rows were cut at ExecuteOptions::maxRows.
  bool truncated = false;

  nlohmann::json to_json() const;
  std::string to_csv() const;
  std::string to_text() const;
};

struct ExecuteOptions {
  // Applied only when the query has no LIMIT.
  std::optional<std::size_t> maxRows;
};

/// Rejects labels and relationship types outside the closed vocabulary.
/// Throws SemanticError.
void check_semantics(const QueryAst &ast);

/// Evaluates `ast` against a read view of `graph`.
///
/// MATCH clauses each produce bindings (relationships distinct within a
/// clause) and are natural-joined on shared variables. WHERE keeps rows that
/// evaluate to true; comparisons with null are never true. ORDER BY ranks
/// numbers < text < booleans < lists < nodes < relationships < null, nulls last
/// in either direction, remaining ties by ascending entity ids in variable
/// declaration order.
ResultTable execute(const PropertyGraph &graph, const QueryAst &ast, const ExecuteOptions &options = {});
ResultTable execute(const PropertyGraph &graph, std::string_view text, const ExecuteOptions &options = {});

struct QueryPlan {
  std::vector<std::string> steps;
  std::string to_string() const;
};

// Plan chosen with label cardinalities taken from `graph`.
QueryPlan explain(const QueryAst &ast, const PropertyGraph &graph);
// Plan chosen without cardinalities: labelled scans preferred over unlabelled.
QueryPlan explain(const QueryAst &ast);

} // namespace mrm3::query
