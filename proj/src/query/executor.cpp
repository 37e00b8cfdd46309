#include "mrm3/query/executor.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace mrm3::query {

namespace {

constexpr std::uint64_t kUnbound = std::numeric_limits<std::uint64_t>::max();

using Row = std::vector<std::uint64_t>;

struct Variable {
  std::string name;
  bool node = true;
  bool anonymous = false;
};

struct CompiledClause {
  const MatchClause *clause = nullptr;
  std::vector<std::size_t> nodeVars;
  std::vector<std::size_t> relVars;
  std::vector<std::optional<NodeLabel>> labels;
  std::vector<std::optional<RelationType>> types;
};

struct Expansion {
  std::size_t from = 0;
  std::size_t to = 0;
  std::size_t rel = 0;
  Direction direction = Direction::Both;
};

struct ClausePlan {
  std::size_t clause = 0;
  std::size_t anchor = 0;
  std::vector<Expansion> expansions;
};

struct Compiled {
  std::vector<Variable> vars;
  std::map<std::string, std::size_t> byName;
  std::vector<CompiledClause> clauses;
  std::vector<ClausePlan> order;
};

// Runtime value during evaluation: a property value or an entity reference.
struct Eval {
  enum class Kind { Prop, Node, Rel } kind = Kind::Prop;
  PropertyValue value;
  std::uint64_t id = 0;

  static Eval prop(PropertyValue v) { return {Kind::Prop, std::move(v), 0}; }
  bool is_null() const { return kind == Kind::Prop && value.is_null(); }
};

// ---------------------------------------------------------------------------
// Value semantics

std::optional<int> scalar_order(const PropertyValue &a, const PropertyValue &b) {
  if (a.is_number() && b.is_number()) {
    if (a.is_integer() && b.is_integer())
      return a.integer() < b.integer() ? -1 : a.integer() > b.integer() ? 1 : 0;
    double x = a.number(), y = b.number();
    return x < y ? -1 : x > y ? 1 : 0;
  }
  if (a.is_text() && b.is_text())
    return a.text().compare(b.text()) < 0 ? -1 : a.text() == b.text() ? 0 : 1;
  if (a.is_bool() && b.is_bool())
    return static_cast<int>(a.boolean()) - static_cast<int>(b.boolean());
  return std::nullopt;
}

// Three-valued equality; nullopt stands for null.
std::optional<bool> equals(const Eval &a, const Eval &b) {
  if (a.is_null() || b.is_null())
    return std::nullopt;
  if (a.kind != Eval::Kind::Prop || b.kind != Eval::Kind::Prop)
    return a.kind == b.kind && a.id == b.id;
  const auto &x = a.value;
  const auto &y = b.value;
  if (x.is_list() && y.is_list()) {
    if (x.list().size() != y.list().size())
      return false;
    for (std::size_t i = 0; i < x.list().size(); ++i) {
      auto c = scalar_order(PropertyValue(x.list()[i]), PropertyValue(y.list()[i]));
      if (!c || *c != 0)
        return false;
    }
    return true;
  }
  auto c = scalar_order(x, y);
  return c && *c == 0;
}

std::optional<bool> compare(CompareOp op, const Eval &a, const Eval &b) {
  if (op == CompareOp::Eq)
    return equals(a, b);
  if (op == CompareOp::Neq) {
    auto eq = equals(a, b);
    return eq ? std::optional<bool>(!*eq) : std::nullopt;
  }
  if (a.kind != Eval::Kind::Prop || b.kind != Eval::Kind::Prop || a.value.is_list() || b.value.is_list())
    return std::nullopt;
  auto c = scalar_order(a.value, b.value);
  if (!c)
    return std::nullopt;
  switch (op) {
  case CompareOp::Lt: return *c < 0;
  case CompareOp::Le: return *c <= 0;
  case CompareOp::Gt: return *c > 0;
  case CompareOp::Ge: return *c >= 0;
  default: return std::nullopt;
  }
}

int type_rank(const Eval &e) {
  if (e.kind == Eval::Kind::Node) return 4;
  if (e.kind == Eval::Kind::Rel) return 5;
  const auto &v = e.value;
  if (v.is_number()) return 0;
  if (v.is_text()) return 1;
  if (v.is_bool()) return 2;
  if (v.is_list()) return 3;
  return 6;
}

// Total order for sorting (ascending); null ranks last.
int order_compare(const Eval &a, const Eval &b) {
  int ra = type_rank(a), rb = type_rank(b);
  if (ra != rb)
    return ra < rb ? -1 : 1;
  switch (ra) {
  case 3: {
    const auto &x = a.value.list();
    const auto &y = b.value.list();
    for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
      Eval ex = Eval::prop(PropertyValue(x[i])), ey = Eval::prop(PropertyValue(y[i]));
      if (int c = order_compare(ex, ey))
        return c;
    }
    return x.size() < y.size() ? -1 : x.size() > y.size() ? 1 : 0;
  }
  case 4:
  case 5: return a.id < b.id ? -1 : a.id > b.id ? 1 : 0;
  case 6: return 0;
  default: return *scalar_order(a.value, b.value);
  }
}

std::optional<bool> truth(const Eval &e) {
  if (e.kind == Eval::Kind::Prop && e.value.is_bool())
    return e.value.boolean();
  return std::nullopt;
}

Eval from_truth(std::optional<bool> t) { return t ? Eval::prop(*t) : Eval::prop({}); }

// ---------------------------------------------------------------------------
// Compilation and planning

void add_var(Compiled &c, const std::optional<std::string> &name, bool node, std::size_t &out) {
  if (name) {
    auto it = c.byName.find(*name);
    if (it != c.byName.end()) {
      out = it->second;
      return;
    }
    out = c.vars.size();
    c.byName.emplace(*name, out);
    c.vars.push_back({*name, node, false});
    return;
  }
  out = c.vars.size();
  c.vars.push_back({"anon_" + std::to_string(out), node, true});
}

std::size_t estimate(const PropertyGraph *graph, const std::optional<NodeLabel> &label,
                     const NodePattern &pattern) {
  std::size_t est = graph ? (label ? graph->count(*label) : graph->node_count()) : (label ? 100 : 1000);
  if (!pattern.properties.empty())
    est = std::max<std::size_t>(1, est / 10);
  return est;
}

Direction expansion_direction(RelDirection declared, bool rightward) {
  if (declared == RelDirection::Undirected)
    return Direction::Both;
  bool out = (declared == RelDirection::LeftToRight) == rightward;
  return out ? Direction::Out : Direction::In;
}

Compiled compile(const QueryAst &ast, const PropertyGraph *graph) {
  check_semantics(ast);
  Compiled c;
  for (const auto &clause : ast.matches) {
    CompiledClause cc;
    cc.clause = &clause;
    for (std::size_t i = 0; i < clause.nodes.size(); ++i) {
      std::size_t v;
      add_var(c, clause.nodes[i].variable, true, v);
      cc.nodeVars.push_back(v);
      cc.labels.push_back(clause.nodes[i].label ? parse_label(*clause.nodes[i].label) : std::nullopt);
      if (i < clause.relationships.size()) {
        add_var(c, clause.relationships[i].variable, false, v);
        cc.relVars.push_back(v);
        const auto &type = clause.relationships[i].type;
        cc.types.push_back(type ? parse_relation_type(*type) : std::nullopt);
      }
    }
    c.clauses.push_back(std::move(cc));
  }

  std::set<std::size_t> bound;
  std::vector<bool> planned(c.clauses.size(), false);
  for (std::size_t round = 0; round < c.clauses.size(); ++round) {
    std::size_t best_clause = 0, best_anchor = 0, best_cost = std::numeric_limits<std::size_t>::max();
    for (std::size_t ci = 0; ci < c.clauses.size(); ++ci) {
      if (planned[ci])
        continue;
      const auto &cc = c.clauses[ci];
      for (std::size_t p = 0; p < cc.nodeVars.size(); ++p) {
        std::size_t cost =
            bound.contains(cc.nodeVars[p]) ? 0 : 1 + estimate(graph, cc.labels[p], cc.clause->nodes[p]);
        if (cost < best_cost) {
          best_cost = cost;
          best_clause = ci;
          best_anchor = p;
        }
      }
    }
    planned[best_clause] = true;
    const auto &cc = c.clauses[best_clause];
    ClausePlan plan{best_clause, best_anchor, {}};
    for (std::size_t p = best_anchor; p + 1 < cc.nodeVars.size(); ++p)
      plan.expansions.push_back(
          {p, p + 1, p, expansion_direction(cc.clause->relationships[p].direction, true)});
    for (std::size_t p = best_anchor; p > 0; --p)
      plan.expansions.push_back(
          {p, p - 1, p - 1, expansion_direction(cc.clause->relationships[p - 1].direction, false)});
    c.order.push_back(std::move(plan));
    bound.insert(cc.nodeVars.begin(), cc.nodeVars.end());
    bound.insert(cc.relVars.begin(), cc.relVars.end());
  }
  return c;
}

// ---------------------------------------------------------------------------
// Matching

class Matcher {
public:
  Matcher(const PropertyGraph &graph, const Compiled &compiled) : graph_(graph), c_(compiled) {}

  std::vector<Row> run() {
    std::vector<Row> rows{Row(c_.vars.size(), kUnbound)};
    for (const auto &plan : c_.order) {
      std::vector<Row> next;
      for (auto &row : rows)
        match_clause(plan, row, next);
      rows = std::move(next);
      if (rows.empty())
        break;
    }
    return rows;
  }

private:
  bool node_fits(const CompiledClause &cc, std::size_t pos, const GraphNode &node) const {
    if (cc.labels[pos] && node.label != *cc.labels[pos])
      return false;
    for (const auto &[key, expected] : cc.clause->nodes[pos].properties) {
      auto it = node.properties.find(key);
      if (it == node.properties.end())
        return false;
      auto eq = equals(Eval::prop(it->second), Eval::prop(expected));
      if (!eq || !*eq)
        return false;
    }
    return true;
  }

  void match_clause(const ClausePlan &plan, Row &row, std::vector<Row> &out) {
    const auto &cc = c_.clauses[plan.clause];
    std::size_t var = cc.nodeVars[plan.anchor];
    std::vector<RelationshipId> used;
    if (row[var] != kUnbound) {
      if (node_fits(cc, plan.anchor, graph_.node(row[var])))
        expand(plan, cc, 0, row, used, out);
      return;
    }
    for (const GraphNode *node : graph_.find_nodes(cc.labels[plan.anchor])) {
      if (!node_fits(cc, plan.anchor, *node))
        continue;
      row[var] = node->id;
      expand(plan, cc, 0, row, used, out);
    }
    row[var] = kUnbound;
  }

  void expand(const ClausePlan &plan, const CompiledClause &cc, std::size_t step, Row &row,
              std::vector<RelationshipId> &used, std::vector<Row> &out) {
    if (step == plan.expansions.size()) {
      out.push_back(row);
      return;
    }
    const auto &e = plan.expansions[step];
    NodeId from = row[cc.nodeVars[e.from]];
    std::size_t rel_var = cc.relVars[e.rel];
    std::size_t to_var = cc.nodeVars[e.to];
    for (const auto &[rel, other] : graph_.neighbors(from, e.direction, cc.types[e.rel])) {
      if (row[rel_var] != kUnbound && row[rel_var] != rel->id)
        continue;
      if (std::find(used.begin(), used.end(), rel->id) != used.end())
        continue;
      if (row[to_var] != kUnbound && row[to_var] != other->id)
        continue;
      if (!node_fits(cc, e.to, *other))
        continue;
      bool bind_rel = row[rel_var] == kUnbound;
      bool bind_node = row[to_var] == kUnbound;
      row[rel_var] = rel->id;
      row[to_var] = other->id;
      used.push_back(rel->id);
      expand(plan, cc, step + 1, row, used, out);
      used.pop_back();
      if (bind_rel)
        row[rel_var] = kUnbound;
      if (bind_node)
        row[to_var] = kUnbound;
    }
  }

  const PropertyGraph &graph_;
  const Compiled &c_;
};

// ---------------------------------------------------------------------------
// Evaluation

class Evaluator {
public:
  Evaluator(const PropertyGraph &graph, const Compiled &compiled) : graph_(graph), c_(compiled) {}

  // `projected` resolves ORDER BY references to RETURN aliases.
  Eval eval(const Expr &e, const Row &row, const std::map<std::string, const Eval *> *projected = nullptr) const {
    switch (e.kind) {
    case Expr::Kind::Literal: return Eval::prop(e.literal);
    case Expr::Kind::Variable: {
      auto it = c_.byName.find(e.variable);
      if (it == c_.byName.end()) {
        if (projected)
          if (auto p = projected->find(e.variable); p != projected->end())
            return *p->second;
        return Eval::prop({});
      }
      return entity(it->second, row);
    }
    case Expr::Kind::Property: {
      auto it = c_.byName.find(e.variable);
      if (it == c_.byName.end())
        return Eval::prop({});
      std::uint64_t id = row[it->second];
      const PropertyMap &props = c_.vars[it->second].node ? graph_.node(id).properties
                                                          : graph_.relationship(id).properties;
      auto p = props.find(e.property);
      return Eval::prop(p == props.end() ? PropertyValue() : p->second);
    }
    case Expr::Kind::Compare:
      return from_truth(compare(e.op, eval(e.operands[0], row, projected), eval(e.operands[1], row, projected)));
    case Expr::Kind::Not: {
      auto t = truth(eval(e.operands[0], row, projected));
      return from_truth(t ? std::optional<bool>(!*t) : std::nullopt);
    }
    case Expr::Kind::And: {
      auto l = truth(eval(e.operands[0], row, projected));
      auto r = truth(eval(e.operands[1], row, projected));
      if ((l && !*l) || (r && !*r))
        return Eval::prop(false);
      if (l && r)
        return Eval::prop(true);
      return Eval::prop({});
    }
    case Expr::Kind::Or: {
      auto l = truth(eval(e.operands[0], row, projected));
      auto r = truth(eval(e.operands[1], row, projected));
      if ((l && *l) || (r && *r))
        return Eval::prop(true);
      if (l && r)
        return Eval::prop(false);
      return Eval::prop({});
    }
    }
    return Eval::prop({});
  }

  Value materialize(const Eval &e) const {
    switch (e.kind) {
    case Eval::Kind::Node: {
      const auto &n = graph_.node(e.id);
      return NodeValue{n.id, n.label, n.properties};
    }
    case Eval::Kind::Rel: {
      const auto &r = graph_.relationship(e.id);
      return RelationshipValue{r.id, r.type, r.source, r.target, r.properties};
    }
    default: return e.value;
    }
  }

private:
  Eval entity(std::size_t var, const Row &row) const {
    return {c_.vars[var].node ? Eval::Kind::Node : Eval::Kind::Rel, {}, row[var]};
  }

  const PropertyGraph &graph_;
  const Compiled &c_;
};

std::string var_display(const Compiled &c, std::size_t v) { return quote_identifier(c.vars[v].name); }

std::string node_display(const Compiled &c, const CompiledClause &cc, std::size_t pos, bool with_label) {
  std::string out = "(" + var_display(c, cc.nodeVars[pos]);
  const auto &pattern = cc.clause->nodes[pos];
  if (with_label && pattern.label)
    out += ":" + *pattern.label;
  if (with_label && !pattern.properties.empty()) {
    NodePattern props_only;
    props_only.properties = pattern.properties;
    out += " " + pretty_print(props_only).substr(1, pretty_print(props_only).size() - 2);
  }
  return out + ")";
}

QueryPlan describe_plan(const QueryAst &ast, const Compiled &c, const PropertyGraph *graph) {
  QueryPlan plan;
  std::set<std::size_t> bound;
  bool first = true;
  for (const auto &cp : c.order) {
    const auto &cc = c.clauses[cp.clause];
    std::size_t anchor_var = cc.nodeVars[cp.anchor];

    std::vector<std::string> shared;
    std::set<std::size_t> clause_vars(cc.nodeVars.begin(), cc.nodeVars.end());
    clause_vars.insert(cc.relVars.begin(), cc.relVars.end());
    for (auto v : clause_vars)
      if (bound.contains(v))
        shared.push_back(var_display(c, v));

    if (bound.contains(anchor_var)) {
      std::string keys;
      for (std::size_t i = 0; i < shared.size(); ++i)
        keys += (i ? ", " : "") + shared[i];
      plan.steps.push_back("Join MATCH #" + std::to_string(cp.clause + 1) + " on " + keys + " from " +
                           node_display(c, cc, cp.anchor, true));
    } else {
      if (!first)
        plan.steps.push_back("CartesianProduct MATCH #" + std::to_string(cp.clause + 1));
      std::size_t est = estimate(graph, cc.labels[cp.anchor], cc.clause->nodes[cp.anchor]);
      const char *op = cc.labels[cp.anchor] ? "NodeByLabelScan " : "AllNodesScan ";
      plan.steps.push_back(op + node_display(c, cc, cp.anchor, true) +
                           (graph ? " estimated " + std::to_string(est) : std::string()));
      if (!first && !shared.empty()) {
        std::string keys;
        for (std::size_t i = 0; i < shared.size(); ++i)
          keys += (i ? ", " : "") + shared[i];
        plan.steps.push_back("Join on " + keys);
      }
    }
    bound.insert(anchor_var);

    for (const auto &e : cp.expansions) {
      const auto &rp = cc.clause->relationships[e.rel];
      std::string rel = "[" + var_display(c, cc.relVars[e.rel]) + (rp.type ? ":" + *rp.type : "") + "]";
      std::string arrow = e.direction == Direction::Out  ? "-" + rel + "->"
                          : e.direction == Direction::In ? "<-" + rel + "-"
                                                         : "-" + rel + "-";
      bool into = bound.contains(cc.nodeVars[e.to]);
      plan.steps.push_back(std::string(into ? "Expand(Into) " : "Expand(All) ") +
                           node_display(c, cc, e.from, false) + arrow + node_display(c, cc, e.to, true));
      bound.insert(cc.nodeVars[e.to]);
      bound.insert(cc.relVars[e.rel]);
    }
    first = false;
  }
  if (ast.where)
    plan.steps.push_back("Filter " + pretty_print(*ast.where));
  std::string cols;
  for (std::size_t i = 0; i < ast.returnItems.size(); ++i) {
    const auto &item = ast.returnItems[i];
    cols += (i ? ", " : "") + pretty_print(item.expression);
    if (item.alias)
      cols += " AS " + quote_identifier(*item.alias);
  }
  plan.steps.push_back("Projection " + cols);
  if (!ast.orderKeys.empty()) {
    std::string keys;
    for (std::size_t i = 0; i < ast.orderKeys.size(); ++i)
      keys += (i ? ", " : "") + pretty_print(ast.orderKeys[i].expression) +
              (ast.orderKeys[i].ascending ? " ASC" : " DESC");
    plan.steps.push_back("Sort " + keys);
  }
  if (ast.limit)
    plan.steps.push_back("Limit " + std::to_string(*ast.limit));
  return plan;
}

std::string csv_field(const std::string &s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos)
    return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"')
      out += '"';
    out += ch;
  }
  return out + "\"";
}

} // namespace

void check_semantics(const QueryAst &ast) {
  if (ast.matches.empty())
    throw SemanticError(0, 0, "query needs at least one MATCH clause");
  if (ast.returnItems.empty())
    throw SemanticError(0, 0, "query needs at least one RETURN item");
  for (const auto &m : ast.matches) {
    if (m.nodes.size() != m.relationships.size() + 1)
      throw SemanticError(0, 0, "malformed path pattern");
    for (const auto &n : m.nodes)
      if (n.label && !parse_label(*n.label))
        throw SemanticError(0, 0, "unknown node label '" + *n.label + "'");
    for (const auto &r : m.relationships)
      if (r.type && !parse_relation_type(*r.type))
        throw SemanticError(0, 0, "unknown relationship type '" + *r.type + "'");
  }
  if (ast.limit && *ast.limit < 1)
    throw SemanticError(0, 0, "LIMIT must be a positive integer");
}

nlohmann::json to_json(const Value &value) {
  if (const auto *p = std::get_if<PropertyValue>(&value))
    return mrm3::to_json(*p);
  if (const auto *n = std::get_if<NodeValue>(&value))
    return {{"id", n->id}, {"label", to_string(n->label)}, {"properties", mrm3::to_json(n->properties)}};
  const auto &r = std::get<RelationshipValue>(value);
  return {{"id", r.id},
          {"type", to_string(r.type)},
          {"source", r.source},
          {"target", r.target},
          {"properties", mrm3::to_json(r.properties)}};
}

std::string display_string(const Value &value) {
  if (const auto *p = std::get_if<PropertyValue>(&value))
    return mrm3::display_string(*p);
  if (const auto *n = std::get_if<NodeValue>(&value))
    return "(:" + std::string(to_string(n->label)) + " #" + std::to_string(n->id) + " " +
           mrm3::to_json(n->properties).dump() + ")";
  const auto &r = std::get<RelationshipValue>(value);
  return "[:" + std::string(to_string(r.type)) + " #" + std::to_string(r.id) + " " +
         std::to_string(r.source) + "->" + std::to_string(r.target) + "]";
}

nlohmann::json ResultTable::to_json() const {
  nlohmann::json out_rows = nlohmann::json::array();
  for (const auto &row : rows) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto &v : row)
      r.push_back(query::to_json(v));
    out_rows.push_back(std::move(r));
  }
  nlohmann::json out = {{"columns", columnNames}, {"rows", out_rows}};
  if (truncated)
    out["truncated"] = true;
  return out;
}

std::string ResultTable::to_csv() const {
  std::string out;
  for (std::size_t i = 0; i < columnNames.size(); ++i)
    out += (i ? "," : "") + csv_field(columnNames[i]);
  out += "\n";
  for (const auto &row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out += (i ? "," : "") + csv_field(query::display_string(row[i]));
    out += "\n";
  }
  return out;
}

std::string ResultTable::to_text() const {
  std::vector<std::size_t> width(columnNames.size());
  std::vector<std::vector<std::string>> cells;
  for (std::size_t i = 0; i < columnNames.size(); ++i)
    width[i] = columnNames[i].size();
  for (const auto &row : rows) {
    auto &line = cells.emplace_back();
    for (std::size_t i = 0; i < row.size(); ++i) {
      line.push_back(query::display_string(row[i]));
      width[i] = std::max(width[i], line.back().size());
    }
  }
  auto render = [&](const std::vector<std::string> &values) {
    std::string line = "|";
    for (std::size_t i = 0; i < values.size(); ++i)
      line += " " + values[i] + std::string(width[i] - values[i].size(), ' ') + " |";
    return line + "\n";
  };
  std::string rule = "+";
  for (auto w : width)
    rule += std::string(w + 2, '-') + "+";
  rule += "\n";
  std::string out = rule + render(columnNames) + rule;
  for (const auto &line : cells)
    out += render(line);
  out += rule;
  out += std::to_string(rows.size()) + (rows.size() == 1 ? " row" : " rows");
  if (truncated)
    out += " (truncated)";
  return out + "\n";
}

ResultTable execute(const PropertyGraph &graph, const QueryAst &ast, const ExecuteOptions &options) {
  Compiled c = compile(ast, &graph);
  Evaluator ev(graph, c);

  ResultTable table;
  for (const auto &item : ast.returnItems)
    table.columnNames.push_back(item.column_name());

  std::vector<Row> rows = Matcher(graph, c).run();
  if (ast.where) {
    std::erase_if(rows, [&](const Row &row) {
      auto t = truth(ev.eval(*ast.where, row));
      return !(t && *t);
    });
  }

  std::vector<std::vector<Eval>> projected(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const auto &item : ast.returnItems)
      projected[r].push_back(ev.eval(item.expression, rows[r]));

  std::vector<std::size_t> order(rows.size());
  std::iota(order.begin(), order.end(), 0);
  if (!ast.orderKeys.empty()) {
    std::vector<std::vector<Eval>> keys(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      std::map<std::string, const Eval *> aliases;
      for (std::size_t i = 0; i < ast.returnItems.size(); ++i)
        if (ast.returnItems[i].alias)
          aliases.emplace(*ast.returnItems[i].alias, &projected[r][i]);
      for (const auto &key : ast.orderKeys)
        keys[r].push_back(ev.eval(key.expression, rows[r], &aliases));
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      for (std::size_t k = 0; k < ast.orderKeys.size(); ++k) {
        const Eval &x = keys[a][k];
        const Eval &y = keys[b][k];
        if (x.is_null() != y.is_null())
          return y.is_null();
        int cmp = order_compare(x, y);
        if (cmp != 0)
          return ast.orderKeys[k].ascending ? cmp < 0 : cmp > 0;
      }
      return rows[a] < rows[b];
    });
  }

  std::size_t count = order.size();
  if (ast.limit) {
    count = std::min<std::size_t>(count, static_cast<std::size_t>(*ast.limit));
  } else if (options.maxRows && count > *options.maxRows) {
    count = *options.maxRows;
    table.truncated = true;
  }
  table.rows.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<Value> row;
    for (const auto &e : projected[order[i]])
      row.push_back(ev.materialize(e));
    table.rows.push_back(std::move(row));
  }
  return table;
}

ResultTable execute(const PropertyGraph &graph, std::string_view text, const ExecuteOptions &options) {
  return execute(graph, parse(text), options);
}

std::string QueryPlan::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < steps.size(); ++i)
    out += std::to_string(i + 1) + ". " + steps[i] + "\n";
  return out;
}

QueryPlan explain(const QueryAst &ast, const PropertyGraph &graph) {
  return describe_plan(ast, compile(ast, &graph), &graph);
}

QueryPlan explain(const QueryAst &ast) { return describe_plan(ast, compile(ast, nullptr), nullptr); }

} // namespace mrm3::query
