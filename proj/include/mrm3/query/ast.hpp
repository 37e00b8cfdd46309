#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mrm3/property_value.hpp"

namespace mrm3::query {

enum class CompareOp { Eq, Neq, Lt, Le, Gt, Ge };

struct Expr {
  enum class Kind { Literal, Variable, Property, Compare, And, Or, Not };

  Kind kind = Kind::Literal;
  PropertyValue literal;   // Literal
  std::string variable;    // Variable, Property
  std::string property;    // Property
  CompareOp op = CompareOp::Eq;
  std::vector<Expr> operands; // Compare/And/Or: two, Not: one

  static Expr make_literal(PropertyValue value);
  static Expr make_variable(std::string name);
  static Expr make_property(std::string variable, std::string property);
  static Expr make_compare(CompareOp op, Expr lhs, Expr rhs);
  static Expr make_and(Expr lhs, Expr rhs);
  static Expr make_or(Expr lhs, Expr rhs);
  static Expr make_not(Expr operand);

  bool operator==(const Expr &) const = default;
};

struct NodePattern {
  std::optional<std::string> variable;
  std::optional<std::string> label;
  std::vector<std::pair<std::string, PropertyValue>> properties;
  bool operator==(const NodePattern &) const = default;
};

enum class RelDirection { LeftToRight, RightToLeft, Undirected };

struct RelPattern {
  std::optional<std::string> variable;
  std::optional<std::string> type;
  RelDirection direction = RelDirection::LeftToRight;
  bool operator==(const RelPattern &) const = default;
};

// A linear path: nodes[i] -relationships[i]- nodes[i+1].
struct MatchClause {
  std::vector<NodePattern> nodes;
  std::vector<RelPattern> relationships;
  bool operator==(const MatchClause &) const = default;
};

struct ReturnItem {
  Expr expression;
  std::optional<std::string> alias;

  std::string column_name() const;
  bool operator==(const ReturnItem &) const = default;
};

struct OrderKey {
  Expr expression;
  bool ascending = true;
  bool operator==(const OrderKey &) const = default;
};

struct QueryAst {
  std::vector<MatchClause> matches;
  std::optional<Expr> where;
  std::vector<ReturnItem> returnItems;
  std::vector<OrderKey> orderKeys;
  std::optional<std::int64_t> limit;
  bool operator==(const QueryAst &) const = default;
};

std::string quote_identifier(const std::string &name);
std::string to_string(CompareOp op);
std::string pretty_print(const Expr &expr);
std::string pretty_print(const NodePattern &node);
std::string pretty_print(const RelPattern &rel);
std::string pretty_print(const MatchClause &clause);

// Canonical query text: upper-case keywords, one clause per line.
std::string pretty_print(const QueryAst &ast);

} // namespace mrm3::query
