#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mrm3/query/ast.hpp"
#include "mrm3/query/lexer.hpp"

namespace mrm3::query {

class SyntaxError : public QueryError {
public:
  SyntaxError(std::size_t line, std::size_t column, std::vector<std::string> expected, std::string found);

  const std::vector<std::string> &expected() const noexcept { return expected_; }
  const std::string &found() const noexcept { return found_; }

private:
  std::vector<std::string> expected_;
  std::string found_;
};

// Unbound variables, duplicate column names, and node/relationship variable
// clashes.
class SemanticError : public QueryError {
public:
  using QueryError::QueryError;
};

class UnboundVariableError : public SemanticError {
public:
  UnboundVariableError(std::size_t line, std::size_t column, std::string variable)
      : SemanticError(line, column, "variable `" + variable + "` is not defined"),
        variable_(std::move(variable)) {}

  const std::string &variable() const noexcept { return variable_; }

private:
  std::string variable_;
};

/// Parses one read query:
///
///   query   := match+ [WHERE expr] RETURN item {, item} [ORDER BY key {, key}] [LIMIT int] [;]
///   match   := MATCH node {rel node}
///   node    := '(' [var] [':' Label] [map] ')'
///   rel     := '-' ['[' [var] [':' TYPE] ']'] '-' ['>'] | '<' '-' ['[' ... ']'] '-'
///   item    := expr [AS name]
///   key     := expr [ASC | DESC]
///   expr    := and {OR and};  and := not {AND not};  not := NOT not | cmp
///   cmp     := atom [op atom];  atom := literal | var | var '.' prop | '(' expr ')'
QueryAst parse(std::string_view text);

} // namespace mrm3::query
