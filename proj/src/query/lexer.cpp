#include "mrm3/query/lexer.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>

namespace mrm3::query {

namespace {

constexpr std::array<std::string_view, 15> kKeywords = {
    "MATCH", "WHERE", "RETURN", "ORDER", "BY",   "ASC",   "DESC", "LIMIT",
    "AS",    "AND",   "OR",     "NOT",   "TRUE", "FALSE", "NULL",
};

std::string upper(std::string_view s) {
  std::string out(s);
  for (auto &c : out)
    c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_part(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

class Lexer {
public:
  explicit Lexer(std::string_view text) : src_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_trivia();
      Token t;
      t.line = line_;
      t.column = col_;
      if (pos_ >= src_.size()) {
        out.push_back(t);
        return out;
      }
      char c = src_[pos_];
      if (ident_start(c)) {
        word(t);
      } else if (digit(c)) {
        number(t);
      } else if (c == '\'' || c == '"') {
        string(t);
      } else if (c == '`') {
        quoted_identifier(t);
      } else {
        punct(t);
      }
      out.push_back(std::move(t));
    }
  }

private:
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  char advance() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  [[noreturn]] void fail(std::size_t line, std::size_t col, const std::string &msg) const {
    throw LexError(line, col, msg);
  }

  void skip_trivia() {
    for (;;) {
      if (pos_ >= src_.size())
        return;
      char c = peek();
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (pos_ < src_.size() && peek() != '\n')
          advance();
      } else if (c == '/' && peek(1) == '*') {
        auto line = line_, col = col_;
        advance();
        advance();
        while (!(peek() == '*' && peek(1) == '/')) {
          if (pos_ >= src_.size())
            fail(line, col, "unterminated block comment");
          advance();
        }
        advance();
        advance();
      } else {
        return;
      }
    }
  }

  void word(Token &t) {
    auto start = pos_;
    while (pos_ < src_.size() && ident_part(peek()))
      advance();
    auto text = src_.substr(start, pos_ - start);
    auto up = upper(text);
    if (is_keyword(up)) {
      t.kind = TokenKind::Keyword;
      t.text = up;
      t.spelling = std::string(text);
    } else {
      t.kind = TokenKind::Identifier;
      t.text = std::string(text);
    }
  }

  void number(Token &t) {
    auto start = pos_;
    bool is_float = false;
    while (digit(peek()))
      advance();
    if (peek() == '.' && digit(peek(1))) {
      is_float = true;
      advance();
      while (digit(peek()))
        advance();
    }
    if (peek() == 'e' || peek() == 'E') {
      std::size_t ahead = 1;
      if (peek(1) == '+' || peek(1) == '-')
        ahead = 2;
      if (digit(peek(ahead))) {
        is_float = true;
        for (std::size_t i = 0; i < ahead; ++i)
          advance();
        while (digit(peek()))
          advance();
      }
    }
    if (ident_part(peek()))
      fail(line_, col_, "invalid character '" + std::string(1, peek()) + "' in number");
    t.text = std::string(src_.substr(start, pos_ - start));
    const char *b = t.text.data();
    const char *e = b + t.text.size();
    if (is_float) {
      t.kind = TokenKind::Float;
      auto [p, ec] = std::from_chars(b, e, t.number);
      if (ec != std::errc() || p != e)
        fail(t.line, t.column, "number out of range: " + t.text);
    } else {
      t.kind = TokenKind::Integer;
      // 2^63 is kept (as INT64_MIN) so that a leading minus can reach it;
      // the parser rejects it anywhere else.
      std::uint64_t magnitude = 0;
      auto [p, ec] = std::from_chars(b, e, magnitude);
      if (ec != std::errc() || p != e || magnitude > (std::uint64_t{1} << 63))
        fail(t.line, t.column, "integer out of range: " + t.text);
      t.integer = static_cast<std::int64_t>(magnitude);
    }
  }

  void string(Token &t) {
    char quote = advance();
    t.kind = TokenKind::String;
    for (;;) {
      if (pos_ >= src_.size())
        fail(t.line, t.column, "unterminated string literal");
      char c = advance();
      if (c == quote)
        return;
      if (c != '\\') {
        t.text += c;
        continue;
      }
      if (pos_ >= src_.size())
        fail(t.line, t.column, "unterminated string literal");
      auto line = line_, col = col_;
      char e = advance();
      switch (e) {
      case '\\': t.text += '\\'; break;
      case '\'': t.text += '\''; break;
      case '"': t.text += '"'; break;
      case 'n': t.text += '\n'; break;
      case 'r': t.text += '\r'; break;
      case 't': t.text += '\t'; break;
      case 'u': unicode_escape(t, line, col - 1); break;
      default: fail(line, col - 1, "unknown escape sequence '\\" + std::string(1, e) + "'");
      }
    }
  }

  // \uXXXX, appended as UTF-8. Surrogate halves are rejected.
  void unicode_escape(Token &t, std::size_t line, std::size_t col) {
    unsigned cp = 0;
    for (int i = 0; i < 4; ++i) {
      char h = peek();
      if (!std::isxdigit(static_cast<unsigned char>(h)))
        fail(line, col, "\\u escape needs four hex digits");
      advance();
      cp = cp * 16 + static_cast<unsigned>(std::isdigit(static_cast<unsigned char>(h)) ? h - '0' : (h | 0x20) - 'a' + 10);
    }
    if (cp >= 0xD800 && cp <= 0xDFFF)
      fail(line, col, "\\u escape names a surrogate code point");
    if (cp < 0x80) {
      t.text += static_cast<char>(cp);
    } else if (cp < 0x800) {
      t.text += static_cast<char>(0xC0 | (cp >> 6));
      t.text += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
      t.text += static_cast<char>(0xE0 | (cp >> 12));
      t.text += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      t.text += static_cast<char>(0x80 | (cp & 0x3F));
    }
  }

  void quoted_identifier(Token &t) {
    advance();
    t.kind = TokenKind::Identifier;
    for (;;) {
      if (pos_ >= src_.size())
        fail(t.line, t.column, "unterminated quoted identifier");
      char c = advance();
      if (c == '`') {
        if (peek() == '`') {
          advance();
          t.text += '`';
          continue;
        }
        break;
      }
      t.text += c;
    }
    if (t.text.empty())
      fail(t.line, t.column, "empty quoted identifier");
  }

  void punct(Token &t) {
    char c = advance();
    t.text = std::string(1, c);
    switch (c) {
    case '(': t.kind = TokenKind::LParen; return;
    case ')': t.kind = TokenKind::RParen; return;
    case '[': t.kind = TokenKind::LBracket; return;
    case ']': t.kind = TokenKind::RBracket; return;
    case '{': t.kind = TokenKind::LBrace; return;
    case '}': t.kind = TokenKind::RBrace; return;
    case ':': t.kind = TokenKind::Colon; return;
    case ',': t.kind = TokenKind::Comma; return;
    case '.': t.kind = TokenKind::Dot; return;
    case '-': t.kind = TokenKind::Dash; return;
    case '+': t.kind = TokenKind::Plus; return;
    case ';': t.kind = TokenKind::Semicolon; return;
    case '=': t.kind = TokenKind::Eq; return;
    case '<':
      if (peek() == '>') {
        advance();
        t.kind = TokenKind::Neq;
        t.text = "<>";
      } else if (peek() == '=') {
        advance();
        t.kind = TokenKind::Le;
        t.text = "<=";
      } else {
        t.kind = TokenKind::Lt;
      }
      return;
    case '>':
      if (peek() == '=') {
        advance();
        t.kind = TokenKind::Ge;
        t.text = ">=";
      } else {
        t.kind = TokenKind::Gt;
      }
      return;
    default:
      fail(t.line, t.column, "illegal character '" + t.text + "'");
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

} // namespace

bool is_keyword(std::string_view word) noexcept {
  auto up = upper(word);
  return std::find(kKeywords.begin(), kKeywords.end(), up) != kKeywords.end();
}

std::string_view describe(TokenKind kind) noexcept {
  switch (kind) {
  case TokenKind::Keyword: return "keyword";
  case TokenKind::Identifier: return "identifier";
  case TokenKind::String: return "string literal";
  case TokenKind::Integer: return "integer literal";
  case TokenKind::Float: return "float literal";
  case TokenKind::LParen: return "'('";
  case TokenKind::RParen: return "')'";
  case TokenKind::LBracket: return "'['";
  case TokenKind::RBracket: return "']'";
  case TokenKind::LBrace: return "'{'";
  case TokenKind::RBrace: return "'}'";
  case TokenKind::Colon: return "':'";
  case TokenKind::Comma: return "','";
  case TokenKind::Dot: return "'.'";
  case TokenKind::Dash: return "'-'";
  case TokenKind::Plus: return "'+'";
  case TokenKind::Semicolon: return "';'";
  case TokenKind::Eq: return "'='";
  case TokenKind::Neq: return "'<>'";
  case TokenKind::Lt: return "'<'";
  case TokenKind::Le: return "'<='";
  case TokenKind::Gt: return "'>'";
  case TokenKind::Ge: return "'>='";
  case TokenKind::End: return "end of input";
  }
  return "?";
}

std::string describe(const Token &token) {
  switch (token.kind) {
  case TokenKind::Keyword: return token.text;
  case TokenKind::Identifier: return "identifier '" + token.text + "'";
  case TokenKind::String: return "string literal";
  case TokenKind::Integer:
  case TokenKind::Float: return "number " + token.text;
  default: return std::string(describe(token.kind));
  }
}

std::vector<Token> tokenize(std::string_view text) { return Lexer(text).run(); }

} // namespace mrm3::query
