#include "mrm3/query/ast.hpp"

#include <cctype>

#include "mrm3/query/lexer.hpp"

namespace mrm3::query {

Expr Expr::make_literal(PropertyValue value) {
  Expr e;
  e.kind = Kind::Literal;
  e.literal = std::move(value);
  return e;
}

Expr Expr::make_variable(std::string name) {
  Expr e;
  e.kind = Kind::Variable;
  e.variable = std::move(name);
  return e;
}

Expr Expr::make_property(std::string variable, std::string property) {
  Expr e;
  e.kind = Kind::Property;
  e.variable = std::move(variable);
  e.property = std::move(property);
  return e;
}

Expr Expr::make_compare(CompareOp op, Expr lhs, Expr rhs) {
  Expr e;
  e.kind = Kind::Compare;
  e.op = op;
  e.operands = {std::move(lhs), std::move(rhs)};
  return e;
}

Expr Expr::make_and(Expr lhs, Expr rhs) {
  Expr e;
  e.kind = Kind::And;
  e.operands = {std::move(lhs), std::move(rhs)};
  return e;
}

Expr Expr::make_or(Expr lhs, Expr rhs) {
  Expr e;
  e.kind = Kind::Or;
  e.operands = {std::move(lhs), std::move(rhs)};
  return e;
}

Expr Expr::make_not(Expr operand) {
  Expr e;
  e.kind = Kind::Not;
  e.operands = {std::move(operand)};
  return e;
}

std::string quote_identifier(const std::string &name) {
  bool plain = !name.empty() && !is_keyword(name) &&
               (std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_');
  for (char c : name)
    plain = plain && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
  if (plain)
    return name;
  std::string out = "`";
  for (char c : name) {
    if (c == '`')
      out += '`';
    out += c;
  }
  return out + "`";
}

std::string to_string(CompareOp op) {
  switch (op) {
  case CompareOp::Eq: return "=";
  case CompareOp::Neq: return "<>";
  case CompareOp::Lt: return "<";
  case CompareOp::Le: return "<=";
  case CompareOp::Gt: return ">";
  case CompareOp::Ge: return ">=";
  }
  return "?";
}

namespace {

bool is_atomic(const Expr &e) {
  return e.kind == Expr::Kind::Literal || e.kind == Expr::Kind::Variable ||
         e.kind == Expr::Kind::Property;
}

std::string operand(const Expr &e) { return is_atomic(e) ? pretty_print(e) : "(" + pretty_print(e) + ")"; }

std::string property_map(const std::vector<std::pair<std::string, PropertyValue>> &props) {
  std::string out = "{";
  for (std::size_t i = 0; i < props.size(); ++i) {
    if (i)
      out += ", ";
    out += quote_identifier(props[i].first) + ": " + cypher_literal(props[i].second);
  }
  return out + "}";
}

} // namespace

std::string pretty_print(const Expr &e) {
  switch (e.kind) {
  case Expr::Kind::Literal: return cypher_literal(e.literal);
  case Expr::Kind::Variable: return quote_identifier(e.variable);
  case Expr::Kind::Property: return quote_identifier(e.variable) + "." + quote_identifier(e.property);
  case Expr::Kind::Compare:
    return operand(e.operands[0]) + " " + to_string(e.op) + " " + operand(e.operands[1]);
  case Expr::Kind::And: return operand(e.operands[0]) + " AND " + operand(e.operands[1]);
  case Expr::Kind::Or: return operand(e.operands[0]) + " OR " + operand(e.operands[1]);
  case Expr::Kind::Not: return "NOT " + operand(e.operands[0]);
  }
  return "";
}

std::string pretty_print(const NodePattern &node) {
  std::string out = "(";
  if (node.variable)
    out += quote_identifier(*node.variable);
  if (node.label)
    out += ":" + quote_identifier(*node.label);
  if (!node.properties.empty())
    out += (node.variable || node.label ? " " : "") + property_map(node.properties);
  return out + ")";
}

std::string pretty_print(const RelPattern &rel) {
  std::string inner;
  if (rel.variable)
    inner += quote_identifier(*rel.variable);
  if (rel.type)
    inner += ":" + quote_identifier(*rel.type);
  std::string body = inner.empty() ? "--" : "-[" + inner + "]-";
  switch (rel.direction) {
  case RelDirection::LeftToRight: return body + ">";
  case RelDirection::RightToLeft: return "<" + body;
  case RelDirection::Undirected: return body;
  }
  return body;
}

std::string pretty_print(const MatchClause &clause) {
  std::string out = pretty_print(clause.nodes.at(0));
  for (std::size_t i = 0; i < clause.relationships.size(); ++i)
    out += pretty_print(clause.relationships[i]) + pretty_print(clause.nodes.at(i + 1));
  return out;
}

std::string ReturnItem::column_name() const { return alias ? *alias : pretty_print(expression); }

std::string pretty_print(const QueryAst &ast) {
  std::string out;
  for (const auto &m : ast.matches)
    out += "MATCH " + pretty_print(m) + "\n";
  if (ast.where)
    out += "WHERE " + pretty_print(*ast.where) + "\n";
  out += "RETURN ";
  for (std::size_t i = 0; i < ast.returnItems.size(); ++i) {
    if (i)
      out += ", ";
    out += pretty_print(ast.returnItems[i].expression);
    if (ast.returnItems[i].alias)
      out += " AS " + quote_identifier(*ast.returnItems[i].alias);
  }
  if (!ast.orderKeys.empty()) {
    out += "\nORDER BY ";
    for (std::size_t i = 0; i < ast.orderKeys.size(); ++i) {
      if (i)
        out += ", ";
      out += pretty_print(ast.orderKeys[i].expression) + (ast.orderKeys[i].ascending ? " ASC" : " DESC");
    }
  }
  if (ast.limit)
    out += "\nLIMIT " + std::to_string(*ast.limit);
  return out;
}

} // namespace mrm3::query
