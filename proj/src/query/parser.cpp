#include "mrm3/query/parser.hpp"

#include <limits>
#include <map>
#include <set>

namespace mrm3::query {

namespace {

std::string join_expected(const std::vector<std::string> &expected) {
  std::string out;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i)
      out += i + 1 == expected.size() ? " or " : ", ";
    out += expected[i];
  }
  return out;
}

enum class VarKind { Node, Relationship };

class Parser {
public:
  explicit Parser(std::string_view text) : tokens_(tokenize(text)) {}

  QueryAst run() {
    QueryAst ast;
    if (!peek().is_keyword("MATCH"))
      fail({"MATCH"});
    while (peek().is_keyword("MATCH")) {
      next();
      ast.matches.push_back(match_clause());
    }
    if (accept_keyword("WHERE"))
      ast.where = expression();
    expect_keyword("RETURN", {"MATCH", "WHERE", "RETURN"});

    std::set<std::string> columns;
    do {
      const Token &start = peek();
      ReturnItem item{expression(), std::nullopt};
      if (accept_keyword("AS"))
        item.alias = name("alias");
      auto column = item.column_name();
      if (!columns.insert(column).second)
        throw SemanticError(start.line, start.column, "duplicate column name '" + column + "' in RETURN");
      if (item.alias)
        aliases_.insert(*item.alias);
      ast.returnItems.push_back(std::move(item));
    } while (accept(TokenKind::Comma));

    if (accept_keyword("ORDER")) {
      expect_keyword("BY", {"BY"});
      in_order_by_ = true;
      do {
        OrderKey key{expression(), true};
        if (accept_keyword("DESC"))
          key.ascending = false;
        else
          accept_keyword("ASC");
        ast.orderKeys.push_back(std::move(key));
      } while (accept(TokenKind::Comma));
      in_order_by_ = false;
    }

    if (accept_keyword("LIMIT")) {
      const Token &t = peek();
      if (t.kind != TokenKind::Integer || t.integer < 1)
        fail({"positive integer"});
      ast.limit = t.integer;
      next();
    }
    accept(TokenKind::Semicolon);
    if (peek().kind != TokenKind::End) {
      std::vector<std::string> exp;
      if (ast.orderKeys.empty() && !ast.limit)
        exp.push_back("ORDER");
      if (!ast.limit)
        exp.push_back("LIMIT");
      exp.push_back("end of input");
      fail(exp);
    }
    return ast;
  }

private:
  const Token &peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  const Token &next() {
    const Token &t = peek();
    if (pos_ < tokens_.size() - 1)
      ++pos_;
    return t;
  }
  bool accept(TokenKind kind) {
    if (peek().kind != kind)
      return false;
    next();
    return true;
  }
  bool accept_keyword(std::string_view kw) {
    if (!peek().is_keyword(kw))
      return false;
    next();
    return true;
  }
  void expect(TokenKind kind) {
    if (!accept(kind))
      fail({std::string(describe(kind))});
  }
  void expect_keyword(std::string_view kw, std::vector<std::string> expected) {
    if (!accept_keyword(kw))
      fail(std::move(expected));
  }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token &t = peek();
    throw SyntaxError(t.line, t.column, std::move(expected), describe(t));
  }

  std::string name(const char *what) {
    if (peek().kind != TokenKind::Identifier)
      fail({what});
    return next().text;
  }

  void declare(const Token &at, const std::string &var, VarKind kind) {
    auto [it, inserted] = bound_.emplace(var, kind);
    if (!inserted && it->second != kind)
      throw SemanticError(at.line, at.column,
                          "variable `" + var + "` is already bound as a " +
                              (it->second == VarKind::Node ? "node" : "relationship"));
  }

  MatchClause match_clause() {
    MatchClause clause;
    std::set<std::string> rel_vars;
    clause.nodes.push_back(node_pattern());
    for (;;) {
      const Token &t = peek();
      if (t.kind != TokenKind::Dash && t.kind != TokenKind::Lt)
        break;
      auto rel = rel_pattern();
      if (rel.variable && !rel_vars.insert(*rel.variable).second)
        throw SemanticError(t.line, t.column,
                            "relationship variable `" + *rel.variable + "` appears twice in one MATCH");
      clause.relationships.push_back(std::move(rel));
      clause.nodes.push_back(node_pattern());
    }
    return clause;
  }

  NodePattern node_pattern() {
    expect(TokenKind::LParen);
    NodePattern node;
    if (peek().kind == TokenKind::Identifier) {
      const Token &t = peek();
      node.variable = next().text;
      declare(t, *node.variable, VarKind::Node);
    }
    if (accept(TokenKind::Colon))
      node.label = name("label");
    if (peek().kind == TokenKind::LBrace)
      node.properties = property_map();
    if (!accept(TokenKind::RParen)) {
      std::vector<std::string> exp;
      if (!node.variable && !node.label && node.properties.empty())
        exp.push_back("identifier");
      if (!node.label && node.properties.empty())
        exp.push_back("':'");
      if (node.properties.empty())
        exp.push_back("'{'");
      exp.push_back("')'");
      fail(exp);
    }
    return node;
  }

  std::vector<std::pair<std::string, PropertyValue>> property_map() {
    expect(TokenKind::LBrace);
    std::vector<std::pair<std::string, PropertyValue>> props;
    if (accept(TokenKind::RBrace))
      return props;
    do {
      auto key = property_name();
      expect(TokenKind::Colon);
      props.emplace_back(std::move(key), literal_value());
    } while (accept(TokenKind::Comma));
    expect(TokenKind::RBrace);
    return props;
  }

  RelPattern rel_pattern() {
    RelPattern rel;
    bool left = accept(TokenKind::Lt);
    expect(TokenKind::Dash);
    if (accept(TokenKind::LBracket)) {
      if (peek().kind == TokenKind::Identifier) {
        const Token &t = peek();
        rel.variable = next().text;
        declare(t, *rel.variable, VarKind::Relationship);
      }
      if (accept(TokenKind::Colon))
        rel.type = name("relationship type");
      if (!accept(TokenKind::RBracket)) {
        std::vector<std::string> exp;
        if (!rel.variable && !rel.type)
          exp.push_back("identifier");
        if (!rel.type)
          exp.push_back("':'");
        exp.push_back("']'");
        fail(exp);
      }
    }
    expect(TokenKind::Dash);
    bool right = accept(TokenKind::Gt);
    if (left && right) {
      const Token &t = tokens_[pos_ - 1];
      throw SyntaxError(t.line, t.column, {"'('"}, "'>'");
    }
    rel.direction = left ? RelDirection::RightToLeft : right ? RelDirection::LeftToRight : RelDirection::Undirected;
    return rel;
  }

  std::string property_name() {
    const Token &t = peek();
    if (t.kind == TokenKind::Identifier) {
      next();
      return t.text;
    }
    if (t.kind == TokenKind::Keyword) {
      // Keywords are fine as property keys; keep the written spelling.
      next();
      return t.spelling;
    }
    fail({"property name"});
  }

  Scalar scalar_literal() {
    auto v = literal_value(false);
    if (v.is_null() || v.is_list())
      fail({"scalar literal"});
    if (v.is_text()) return v.text();
    if (v.is_integer()) return v.integer();
    if (v.is_float()) return std::get<double>(v.storage());
    return v.boolean();
  }

  PropertyValue literal_value(bool allow_list = true) {
    const Token &t = peek();
    switch (t.kind) {
    case TokenKind::String: next(); return t.text;
    case TokenKind::Integer:
      if (t.integer < 0)
        throw LexError(t.line, t.column, "integer out of range: " + t.text);
      next();
      return t.integer;
    case TokenKind::Float: next(); return t.number;
    case TokenKind::Dash: {
      next();
      const Token &n = peek();
      if (n.kind == TokenKind::Integer) {
        next();
        return n.integer == std::numeric_limits<std::int64_t>::min() ? n.integer : -n.integer;
      }
      if (n.kind == TokenKind::Float) {
        next();
        return -n.number;
      }
      fail({"number"});
    }
    case TokenKind::LBracket:
      if (allow_list) {
        next();
        ScalarList list;
        if (!accept(TokenKind::RBracket)) {
          do
            list.push_back(scalar_literal());
          while (accept(TokenKind::Comma));
          expect(TokenKind::RBracket);
        }
        return list;
      }
      break;
    case TokenKind::Keyword:
      if (t.text == "TRUE") { next(); return true; }
      if (t.text == "FALSE") { next(); return false; }
      if (t.text == "NULL") { next(); return {}; }
      break;
    default: break;
    }
    fail({"literal"});
  }

  Expr expression() {
    Expr lhs = conjunction();
    while (accept_keyword("OR"))
      lhs = Expr::make_or(std::move(lhs), conjunction());
    return lhs;
  }

  Expr conjunction() {
    Expr lhs = negation();
    while (accept_keyword("AND"))
      lhs = Expr::make_and(std::move(lhs), negation());
    return lhs;
  }

  Expr negation() {
    if (accept_keyword("NOT"))
      return Expr::make_not(negation());
    return comparison();
  }

  Expr comparison() {
    Expr lhs = atom();
    std::optional<CompareOp> op;
    switch (peek().kind) {
    case TokenKind::Eq: op = CompareOp::Eq; break;
    case TokenKind::Neq: op = CompareOp::Neq; break;
    case TokenKind::Lt: op = CompareOp::Lt; break;
    case TokenKind::Le: op = CompareOp::Le; break;
    case TokenKind::Gt: op = CompareOp::Gt; break;
    case TokenKind::Ge: op = CompareOp::Ge; break;
    default: return lhs;
    }
    next();
    return Expr::make_compare(*op, std::move(lhs), atom());
  }

  Expr atom() {
    const Token &t = peek();
    if (accept(TokenKind::LParen)) {
      Expr inner = expression();
      expect(TokenKind::RParen);
      return inner;
    }
    if (t.kind == TokenKind::Identifier) {
      next();
      if (accept(TokenKind::Dot)) {
        check_bound(t, false);
        return Expr::make_property(t.text, property_name());
      }
      check_bound(t, true);
      return Expr::make_variable(t.text);
    }
    if (t.kind == TokenKind::String || t.kind == TokenKind::Integer || t.kind == TokenKind::Float ||
        t.kind == TokenKind::Dash || t.kind == TokenKind::LBracket ||
        (t.kind == TokenKind::Keyword && (t.text == "TRUE" || t.text == "FALSE" || t.text == "NULL")))
      return Expr::make_literal(literal_value());
    fail({"identifier", "literal", "'('", "NOT"});
  }

  void check_bound(const Token &t, bool alias_ok) {
    if (bound_.contains(t.text))
      return;
    if (alias_ok && in_order_by_ && aliases_.contains(t.text))
      return;
    throw UnboundVariableError(t.line, t.column, t.text);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::map<std::string, VarKind> bound_;
  std::set<std::string> aliases_;
  bool in_order_by_ = false;
};

} // namespace

SyntaxError::SyntaxError(std::size_t line, std::size_t column, std::vector<std::string> expected,
                         std::string found)
    : QueryError(line, column, "syntax error: expected " + join_expected(expected) + " but found " + found),
      expected_(std::move(expected)), found_(std::move(found)) {}

QueryAst parse(std::string_view text) { return Parser(text).run(); }

} // namespace mrm3::query
