#include "oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace mrm3::testing {

using namespace mrm3::query;

namespace {

struct V {
  enum Kind { Null, Num, Text, Bool, List, Node, Rel } kind = Null;
  PropertyValue p;
  std::uint64_t id = 0;
};

V from_property(const PropertyValue &p) {
  V v;
  v.p = p;
  if (p.is_null()) v.kind = V::Null;
  else if (p.is_number()) v.kind = V::Num;
  else if (p.is_text()) v.kind = V::Text;
  else if (p.is_bool()) v.kind = V::Bool;
  else v.kind = V::List;
  return v;
}

V boolean(std::optional<bool> b) { return b ? from_property(PropertyValue(*b)) : V{}; }

// -1/0/1 for two values of one comparable scalar kind.
int cmp_same_kind(const V &a, const V &b) {
  switch (a.kind) {
  case V::Num:
    if (a.p.is_integer() && b.p.is_integer())
      return (a.p.integer() > b.p.integer()) - (a.p.integer() < b.p.integer());
    return (a.p.number() > b.p.number()) - (a.p.number() < b.p.number());
  case V::Text: return (a.p.text() > b.p.text()) - (a.p.text() < b.p.text());
  case V::Bool: return int(a.p.boolean()) - int(b.p.boolean());
  default: return 0;
  }
}

bool scalar_kind(V::Kind k) { return k == V::Num || k == V::Text || k == V::Bool; }

std::optional<bool> eq(const V &a, const V &b) {
  if (a.kind == V::Null || b.kind == V::Null)
    return std::nullopt;
  if (a.kind != b.kind)
    return false;
  if (a.kind == V::Node || a.kind == V::Rel)
    return a.id == b.id;
  if (a.kind == V::List) {
    const auto &x = a.p.list(), &y = b.p.list();
    if (x.size() != y.size())
      return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      V ex = from_property(x[i]), ey = from_property(y[i]);
      if (ex.kind != ey.kind || cmp_same_kind(ex, ey) != 0)
        return false;
    }
    return true;
  }
  return cmp_same_kind(a, b) == 0;
}

std::optional<bool> compare(CompareOp op, const V &a, const V &b) {
  if (op == CompareOp::Eq)
    return eq(a, b);
  if (op == CompareOp::Neq) {
    auto r = eq(a, b);
    if (!r) return std::nullopt;
    return !*r;
  }
  if (!scalar_kind(a.kind) || a.kind != b.kind)
    return std::nullopt;
  int c = cmp_same_kind(a, b);
  if (op == CompareOp::Lt) return c < 0;
  if (op == CompareOp::Le) return c <= 0;
  if (op == CompareOp::Gt) return c > 0;
  return c >= 0;
}

std::optional<bool> as_bool(const V &v) {
  if (v.kind == V::Bool)
    return v.p.boolean();
  return std::nullopt;
}

int rank(const V &v) {
  switch (v.kind) {
  case V::Num: return 0;
  case V::Text: return 1;
  case V::Bool: return 2;
  case V::List: return 3;
  case V::Node: return 4;
  case V::Rel: return 5;
  default: return 6;
  }
}

// Ascending sort order among non-null values.
int order(const V &a, const V &b) {
  if (rank(a) != rank(b))
    return rank(a) < rank(b) ? -1 : 1;
  if (a.kind == V::Node || a.kind == V::Rel)
    return (a.id > b.id) - (a.id < b.id);
  if (a.kind == V::List) {
    const auto &x = a.p.list(), &y = b.p.list();
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i)
      if (int c = order(from_property(x[i]), from_property(y[i])))
        return c;
    return (x.size() > y.size()) - (x.size() < y.size());
  }
  return cmp_same_kind(a, b);
}

struct Slot {
  std::string name;
  bool node;
};

struct Binding {
  std::vector<std::uint64_t> ids; // per slot
};

} // namespace

std::vector<std::vector<Value>> oracle_rows(const PropertyGraph &graph, const QueryAst &ast) {
  std::vector<Slot> slots;
  std::map<std::string, std::size_t> by_name;
  auto slot_of = [&](const std::optional<std::string> &name, bool node) {
    if (name && by_name.count(*name))
      return by_name[*name];
    slots.push_back({name.value_or(""), node});
    if (name)
      by_name[*name] = slots.size() - 1;
    return slots.size() - 1;
  };
  struct Clause {
    std::vector<std::size_t> nodes, rels;
  };
  std::vector<Clause> clauses;
  for (const auto &m : ast.matches) {
    Clause c;
    for (std::size_t i = 0; i < m.nodes.size(); ++i) {
      c.nodes.push_back(slot_of(m.nodes[i].variable, true));
      if (i < m.relationships.size())
        c.rels.push_back(slot_of(m.relationships[i].variable, false));
    }
    clauses.push_back(c);
  }

  auto nodes = graph.nodes();
  auto rels = graph.relationships();

  auto node_ok = [&](const NodePattern &pattern, const GraphNode &n) {
    if (pattern.label && std::string(to_string(n.label)) != *pattern.label)
      return false;
    for (const auto &[key, expected] : pattern.properties) {
      auto it = n.properties.find(key);
      if (it == n.properties.end())
        return false;
      auto r = eq(from_property(it->second), from_property(expected));
      if (!r || !*r)
        return false;
    }
    return true;
  };

  auto satisfies = [&](const std::vector<std::uint64_t> &ids) {
    for (std::size_t ci = 0; ci < clauses.size(); ++ci) {
      const auto &m = ast.matches[ci];
      const auto &c = clauses[ci];
      for (std::size_t i = 0; i < m.nodes.size(); ++i)
        if (!node_ok(m.nodes[i], nodes[ids[c.nodes[i]]]))
          return false;
      for (std::size_t i = 0; i < m.relationships.size(); ++i) {
        const auto &pattern = m.relationships[i];
        const auto &r = rels[ids[c.rels[i]]];
        if (pattern.type && std::string(to_string(r.type)) != *pattern.type)
          return false;
        NodeId left = nodes[ids[c.nodes[i]]].id, right = nodes[ids[c.nodes[i + 1]]].id;
        bool forward = r.source == left && r.target == right;
        bool backward = r.source == right && r.target == left;
        if (pattern.direction == RelDirection::LeftToRight && !forward) return false;
        if (pattern.direction == RelDirection::RightToLeft && !backward) return false;
        if (pattern.direction == RelDirection::Undirected && !forward && !backward) return false;
        for (std::size_t j = 0; j < i; ++j)
          if (ids[c.rels[j]] == ids[c.rels[i]])
            return false;
      }
    }
    return true;
  };

  // Every assignment of an index into nodes/rels to every slot.
  std::vector<std::vector<std::uint64_t>> bindings;
  std::vector<std::uint64_t> ids(slots.size(), 0);
  std::function<void(std::size_t)> assign = [&](std::size_t s) {
    if (s == slots.size()) {
      if (satisfies(ids))
        bindings.push_back(ids);
      return;
    }
    std::size_t n = slots[s].node ? nodes.size() : rels.size();
    for (std::size_t k = 0; k < n; ++k) {
      ids[s] = k;
      assign(s + 1);
    }
  };
  assign(0);

  std::vector<std::string> columns;
  for (const auto &item : ast.returnItems)
    columns.push_back(item.alias.value_or(""));

  std::function<V(const Expr &, const std::vector<std::uint64_t> &)> eval =
      [&](const Expr &e, const std::vector<std::uint64_t> &b) -> V {
    switch (e.kind) {
    case Expr::Kind::Literal: return from_property(e.literal);
    case Expr::Kind::Variable: {
      std::size_t s = by_name.at(e.variable);
      V v;
      v.kind = slots[s].node ? V::Node : V::Rel;
      v.id = slots[s].node ? nodes[b[s]].id : rels[b[s]].id;
      return v;
    }
    case Expr::Kind::Property: {
      std::size_t s = by_name.at(e.variable);
      const PropertyMap &props = slots[s].node ? nodes[b[s]].properties : rels[b[s]].properties;
      auto it = props.find(e.property);
      return it == props.end() ? V{} : from_property(it->second);
    }
    case Expr::Kind::Compare: return boolean(compare(e.op, eval(e.operands[0], b), eval(e.operands[1], b)));
    case Expr::Kind::Not: {
      auto x = as_bool(eval(e.operands[0], b));
      return boolean(x ? std::optional<bool>(!*x) : std::nullopt);
    }
    case Expr::Kind::And: {
      auto x = as_bool(eval(e.operands[0], b)), y = as_bool(eval(e.operands[1], b));
      if ((x && !*x) || (y && !*y)) return boolean(false);
      if (x && y) return boolean(true);
      return V{};
    }
    case Expr::Kind::Or: {
      auto x = as_bool(eval(e.operands[0], b)), y = as_bool(eval(e.operands[1], b));
      if ((x && *x) || (y && *y)) return boolean(true);
      if (x && y) return boolean(false);
      return V{};
    }
    }
    return V{};
  };

  struct Row {
    std::vector<std::uint64_t> binding;
    std::vector<V> projected;
    std::vector<V> keys;
    std::vector<std::uint64_t> entityIds;
  };
  std::vector<Row> rows;
  for (const auto &b : bindings) {
    if (ast.where) {
      auto t = as_bool(eval(*ast.where, b));
      if (!t || !*t)
        continue;
    }
    Row row{b, {}, {}, {}};
    for (const auto &item : ast.returnItems)
      row.projected.push_back(eval(item.expression, b));
    for (const auto &key : ast.orderKeys) {
      const Expr &e = key.expression;
      auto alias = std::find(columns.begin(), columns.end(), e.variable);
      if (e.kind == Expr::Kind::Variable && !by_name.count(e.variable) && alias != columns.end())
        row.keys.push_back(row.projected[alias - columns.begin()]);
      else
        row.keys.push_back(eval(e, b));
    }
    for (std::size_t s = 0; s < slots.size(); ++s)
      row.entityIds.push_back(slots[s].node ? nodes[b[s]].id : rels[b[s]].id);
    rows.push_back(std::move(row));
  }

  if (!ast.orderKeys.empty()) {
    std::sort(rows.begin(), rows.end(), [&](const Row &x, const Row &y) {
      for (std::size_t k = 0; k < ast.orderKeys.size(); ++k) {
        bool xn = x.keys[k].kind == V::Null, yn = y.keys[k].kind == V::Null;
        if (xn || yn) {
          if (xn && yn) continue;
          return yn; // nulls last either way
        }
        int c = order(x.keys[k], y.keys[k]);
        if (c != 0)
          return ast.orderKeys[k].ascending ? c < 0 : c > 0;
      }
      return x.entityIds < y.entityIds;
    });
  }

  std::vector<std::vector<Value>> out;
  for (const auto &row : rows) {
    std::vector<Value> values;
    for (const auto &v : row.projected) {
      if (v.kind == V::Node) {
        const auto &n = graph.node(v.id);
        values.push_back(NodeValue{n.id, n.label, n.properties});
      } else if (v.kind == V::Rel) {
        const auto &r = graph.relationship(v.id);
        values.push_back(RelationshipValue{r.id, r.type, r.source, r.target, r.properties});
      } else {
        values.push_back(v.p);
      }
    }
    out.push_back(std::move(values));
  }
  return out;
}

bool same_bag(std::vector<std::vector<Value>> a, std::vector<std::vector<Value>> b) {
  if (a.size() != b.size())
    return false;
  auto key = [](const std::vector<Value> &row) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto &v : row)
      j.push_back(to_json(v));
    return j.dump();
  };
  std::vector<std::string> ka, kb;
  for (const auto &r : a) ka.push_back(key(r));
  for (const auto &r : b) kb.push_back(key(r));
  std::sort(ka.begin(), ka.end());
  std::sort(kb.begin(), kb.end());
  return ka == kb;
}

static std::string squash(const std::string &s) {
  std::istringstream in(s);
  std::string word, out;
  while (in >> word)
    out += (out.empty() ? "" : " ") + word;
  return out;
}

GraphStats expected_stats(const std::vector<schema::ModelMetadataDocument> &docs) {
  using Key = std::vector<std::string>;
  std::map<NodeLabel, std::set<Key>> nodes;
  std::map<RelationType, std::set<std::pair<Key, Key>>> rels;
  auto tag = [](NodeLabel l, Key k) {
    k.insert(k.begin(), std::string(to_string(l)));
    return k;
  };
  for (const auto &d : docs) {
    auto hp = [&] {
      std::ostringstream s;
      for (const auto &[k, v] : d.training.hyperparameters)
        std::visit([&](const auto &x) { s << k << "=" << v.index() << ":" << x << ";"; }, v);
      return s.str();
    }();
    auto mem = [](double m) { return std::to_string(m); };
    Key model = tag(NodeLabel::Model, {squash(d.basic.name), squash(d.basic.version)});
    Key dataset = tag(NodeLabel::Dataset, {squash(d.dataset.name), squash(d.dataset.version)});
    Key service = tag(NodeLabel::Service, {squash(d.general.service)});
    Key problem = tag(NodeLabel::ProblemType, {squash(d.general.problemType)});
    Key arch = tag(NodeLabel::ModelArchitecture, {squash(d.general.architecture)});
    Key training = tag(NodeLabel::ModelTraining, model);
    Key inference = tag(NodeLabel::ModelInference, model);
    Key params = tag(NodeLabel::Parameters, model);
    Key hyper = tag(NodeLabel::Hyperparameters, {hp});
    auto device = [&](const schema::DeviceInfo &dev) {
      return tag(NodeLabel::Device, {squash(dev.cpu), squash(dev.gpu), mem(dev.memoryGB)});
    };
    Key tdev = device(d.training.device), idev = device(d.inference.device);
    for (const auto &[label, key] :
         std::vector<std::pair<NodeLabel, Key>>{{NodeLabel::Model, model}, {NodeLabel::Dataset, dataset},
                                                {NodeLabel::Service, service}, {NodeLabel::ProblemType, problem},
                                                {NodeLabel::ModelArchitecture, arch}, {NodeLabel::ModelTraining, training},
                                                {NodeLabel::ModelInference, inference}, {NodeLabel::Parameters, params},
                                                {NodeLabel::Hyperparameters, hyper}, {NodeLabel::Device, tdev},
                                                {NodeLabel::Device, idev}})
      nodes[label].insert(key);
    rels[RelationType::TRAINED_ON].insert({model, dataset});
    rels[RelationType::PROVIDES].insert({model, service});
    rels[RelationType::SOLUTION_FOR].insert({service, problem});
    rels[RelationType::UTILIZES].insert({model, arch});
    rels[RelationType::TRAINS_ON].insert({model, training});
    rels[RelationType::INFERENCE_ON].insert({inference, model});
    rels[RelationType::RUNS_ON].insert({training, tdev});
    rels[RelationType::RUNS_ON].insert({inference, idev});
    rels[RelationType::CONFIGURED_WITH].insert({training, params});
    rels[RelationType::TUNED_WITH].insert({params, hyper});
  }
  GraphStats s = PropertyGraph().stats();
  for (const auto &[label, keys] : nodes) {
    s.nodeCountByLabel[std::string(to_string(label))] = keys.size();
    s.totalNodes += keys.size();
  }
  for (const auto &[type, pairs] : rels) {
    s.relationshipCountByType[std::string(to_string(type))] = pairs.size();
    s.totalRelationships += pairs.size();
  }
  return s;
}

} // namespace mrm3::testing
