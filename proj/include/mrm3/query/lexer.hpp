#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mrm3/error.hpp"

namespace mrm3::query {

// Base for every query-language error. Positions are 1-based; 0 means the
// error is not tied to a source location.
class QueryError : public Error {
public:
  QueryError(std::size_t line, std::size_t column, const std::string &message)
      : Error(line ? std::to_string(line) + ":" + std::to_string(column) + ": " + message : message),
        line_(line), column_(column), message_(message) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string &message() const noexcept { return message_; }

private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

class LexError : public QueryError {
public:
  using QueryError::QueryError;
};

enum class TokenKind {
  Keyword,
  Identifier,
  String,
  Integer,
  Float,
  LParen,
  RParen,
  LBracket,
  RBracket,
  LBrace,
  RBrace,
  Colon,
  Comma,
  Dot,
  Dash,
  Plus,
  Semicolon,
  Eq,
  Neq,
  Lt,
  Le,
  Gt,
  Ge,
  End,
};

struct Token {
  TokenKind kind = TokenKind::End;
  // Keywords: upper-cased. Identifiers: as written (backticks removed).
  // Strings: unescaped contents. Numbers: source spelling.
  std::string text;
  std::string spelling; // source text of keywords
  std::size_t line = 1;
  std::size_t column = 1;
  std::int64_t integer = 0;
  double number = 0;

  bool is_keyword(std::string_view kw) const { return kind == TokenKind::Keyword && text == kw; }
};

std::string_view describe(TokenKind kind) noexcept;
std::string describe(const Token &token);

bool is_keyword(std::string_view word) noexcept;

// Always ends with an End token. Throws LexError on illegal input.
std::vector<Token> tokenize(std::string_view text);

} // namespace mrm3::query
