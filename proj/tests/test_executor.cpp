#include "doctest.h"
#include "generators.hpp"
#include "mrm3/fixtures.hpp"
#include "mrm3/query/executor.hpp"
#include "oracle.hpp"

using namespace mrm3;
using namespace mrm3::query;
using namespace mrm3::testing;

namespace {

const char *kListing = R"(MATCH (m:Model)-[:TRAINED_ON]->(d:Dataset)
MATCH (m)-[:UTILIZES]->(a:ModelArchitecture)
MATCH (i:ModelInference)-[:INFERENCE_ON]->(m)
RETURN m.name, 
       a.type as architecture,
       d.name as dataset,
       i.energyConsumption,
       i.flops
ORDER BY i.energyConsumption ASC
)";

const PropertyGraph &fixture_graph() {
  static const PropertyGraph g = fixtures::build_graph(fixtures::generate({}));
  return g;
}

const PropertyValue &prop(const Value &v) { return std::get<PropertyValue>(v); }

// n0:Model{a:1} n1:Model{a:'x'} n2:Dataset{} n3:Dataset{a:2.5}; edges n0->n2, n1->n2, n0->n3.
PropertyGraph tiny() {
  PropertyGraph g;
  auto n0 = g.create_node(NodeLabel::Model, {{"a", 1}, {"b", true}});
  auto n1 = g.create_node(NodeLabel::Model, {{"a", "x"}});
  auto n2 = g.create_node(NodeLabel::Dataset, {});
  auto n3 = g.create_node(NodeLabel::Dataset, {{"a", 2.5}});
  g.create_relationship(RelationType::TRAINED_ON, n0, n2, {{"w", 1}});
  g.create_relationship(RelationType::TRAINED_ON, n1, n2);
  g.create_relationship(RelationType::TRAINED_ON, n0, n3);
  return g;
}

std::vector<std::string> column(const ResultTable &t, std::size_t c) {
  std::vector<std::string> out;
  for (const auto &row : t.rows)
    out.push_back(display_string(row[c]));
  return out;
}

} // namespace

TEST_SUITE("executor") {

TEST_CASE("listing query reproduces the best-energy rows") {
  auto table = execute(fixture_graph(), kListing);
  REQUIRE(table.rows.size() == 22);
  struct Row {
    const char *arch, *dataset;
    double energy;
    std::int64_t flops;
  };
  const Row expected[] = {{"Random Forest", "UMU", 0.072, 249},
                          {"Random Forest", "Lumos5G", 0.132, 263},
                          {"XGBoost", "LOG-a-TEC Winter", 0.284, 140},
                          {"KNeighbors", "UMU", 0.326, 134},
                          {"Random Forest", "LOG-a-TEC Spring", 0.370, 246}};
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(prop(table.rows[i][1]).text() == expected[i].arch);
    CHECK(prop(table.rows[i][2]).text() == expected[i].dataset);
    CHECK(prop(table.rows[i][3]).number() == doctest::Approx(expected[i].energy).epsilon(1e-12));
    CHECK(prop(table.rows[i][4]).integer() == expected[i].flops);
  }
  for (std::size_t i = 5; i < table.rows.size(); ++i)
    CHECK(prop(table.rows[i][3]).number() > 0.370);
}

TEST_CASE("empty graph gives no rows but keeps columns") {
  PropertyGraph g;
  auto table = execute(g, kListing);
  CHECK(table.rows.empty());
  CHECK(table.columnNames.size() == 5);
  CHECK(table.to_csv() == "m.name,architecture,dataset,i.energyConsumption,i.flops\n");
  CHECK(table.to_json()["rows"].empty());
}

TEST_CASE("unknown labels and types are rejected before execution") {
  PropertyGraph g;
  CHECK_THROWS_AS(execute(g, "MATCH (n:Person) RETURN n"), SemanticError);
  CHECK_THROWS_AS(execute(g, "MATCH (n)-[:KNOWS]->(m) RETURN n"), SemanticError);
  CHECK_THROWS_AS(explain(parse("MATCH (n:model) RETURN n"), g), SemanticError);
}

TEST_CASE("null semantics in WHERE") {
  auto g = tiny();
  // Missing properties never satisfy a comparison, including <>.
  CHECK(execute(g, "MATCH (n) WHERE n.a <> 1 RETURN n").rows.size() == 2);
  CHECK(execute(g, "MATCH (n) WHERE n.a = null RETURN n").rows.empty());
  CHECK(execute(g, "MATCH (n) WHERE NOT n.a = 1 RETURN n").rows.size() == 2);
  // Mixed types: equality false, ordering null.
  CHECK(execute(g, "MATCH (n) WHERE n.a <> 'x' RETURN n").rows.size() == 2);
  CHECK(execute(g, "MATCH (n) WHERE n.a > 'a' RETURN n").rows.size() == 1);
  // Integers and floats compare numerically.
  CHECK(execute(g, "MATCH (n) WHERE n.a = 1.0 RETURN n").rows.size() == 1);
  CHECK(execute(g, "MATCH (n) WHERE n.a < 3 RETURN n.a ORDER BY n.a").rows.size() == 2);
  // Kleene logic: null OR true is true, null AND false is false.
  CHECK(execute(g, "MATCH (n) WHERE n.missing = 1 OR true RETURN n").rows.size() == 4);
  CHECK(execute(g, "MATCH (n) WHERE NOT (n.missing = 1 AND false) RETURN n").rows.size() == 4);
  // A bare property is not a predicate unless it holds a boolean.
  CHECK(execute(g, "MATCH (n) WHERE n.b RETURN n").rows.size() == 1);
  CHECK(execute(g, "MATCH (n) WHERE n.a RETURN n").rows.empty());
}

TEST_CASE("property access and entity values") {
  auto g = tiny();
  auto t = execute(g, "MATCH (m:Model {a: 1})-[r]->(d) RETURN m, r, d.a, r.w ORDER BY d.a");
  REQUIRE(t.rows.size() == 2);
  CHECK(std::get<NodeValue>(t.rows[0][0]).id == 0);
  CHECK(std::get<RelationshipValue>(t.rows[0][1]).type == RelationType::TRAINED_ON);
  CHECK(prop(t.rows[0][2]) == PropertyValue(2.5));
  CHECK(prop(t.rows[1][2]).is_null());
  CHECK(prop(t.rows[0][3]).is_null());
  auto j = t.to_json();
  CHECK(j["rows"][0][0]["label"] == "Model");
  CHECK(j["rows"][0][1]["type"] == "TRAINED_ON");
  CHECK(j["rows"][1][2].is_null());
}

TEST_CASE("ordering: type ranks, nulls last both ways, id tie-break") {
  PropertyGraph g;
  for (PropertyValue v : {PropertyValue("b"), PropertyValue(2), PropertyValue(true), PropertyValue(),
                          PropertyValue(0.5), PropertyValue("a"), PropertyValue(false), PropertyValue(2)})
    g.create_node(NodeLabel::Model, v.is_null() ? PropertyMap{} : PropertyMap{{"v", v}});
  auto asc = execute(g, "MATCH (n) RETURN n.v ORDER BY n.v");
  CHECK(column(asc, 0) == std::vector<std::string>{"0.5", "2", "2", "a", "b", "false", "true", ""});
  auto desc = execute(g, "MATCH (n) RETURN n.v AS v ORDER BY v DESC");
  CHECK(column(desc, 0) == std::vector<std::string>{"true", "false", "b", "a", "2", "2", "0.5", ""});
  // Equal keys fall back to ascending node id.
  auto ids = execute(g, "MATCH (n) WHERE n.v = 2 RETURN n ORDER BY n.v DESC");
  CHECK(std::get<NodeValue>(ids.rows[0][0]).id < std::get<NodeValue>(ids.rows[1][0]).id);
}

TEST_CASE("limit and row cap") {
  auto g = tiny();
  CHECK(execute(g, "MATCH (n) RETURN n LIMIT 2").rows.size() == 2);
  CHECK(execute(g, "MATCH (n) RETURN n LIMIT 10").rows.size() == 4);
  auto capped = execute(g, "MATCH (n) RETURN n ORDER BY n", {2});
  CHECK(capped.rows.size() == 2);
  CHECK(capped.truncated);
  CHECK(capped.to_json()["truncated"] == true);
  auto explicit_limit = execute(g, "MATCH (n) RETURN n LIMIT 3", {2});
  CHECK(explicit_limit.rows.size() == 3);
  CHECK_FALSE(explicit_limit.truncated);
  CHECK_THROWS_AS(execute(g, "MATCH (n) RETURN n LIMIT 0"), QueryError);
}

TEST_CASE("relationship uniqueness is per clause") {
  PropertyGraph g;
  auto a = g.create_node(NodeLabel::Model, {});
  auto b = g.create_node(NodeLabel::Model, {});
  g.create_relationship(RelationType::TRAINED_ON, a, b);
  // One edge cannot serve both hops of one path...
  CHECK(execute(g, "MATCH (x)--(y)--(z) RETURN x").rows.empty());
  // ...but separate clauses may reuse it.
  CHECK(execute(g, "MATCH (x)--(y) MATCH (y)--(z) RETURN x, z").rows.size() == 2);
  // Undirected match sees each direction once.
  CHECK(execute(g, "MATCH (x)-[r]-(y) RETURN r").rows.size() == 2);
}

TEST_CASE("self-loops") {
  PropertyGraph g;
  auto a = g.create_node(NodeLabel::Model, {});
  g.create_relationship(RelationType::RUNS_ON, a, a);
  CHECK(execute(g, "MATCH (x)-[r]->(y) RETURN x").rows.size() == 1);
  CHECK(execute(g, "MATCH (x)-[r]-(y) RETURN x").rows.size() == 1);
  CHECK(execute(g, "MATCH (x)-[r]->(x) RETURN x").rows.size() == 1);
}

TEST_CASE("output formats") {
  auto g = tiny();
  auto t = execute(g, "MATCH (n:Model) RETURN n.a AS a, 'say \"hi\", ok' AS s ORDER BY a");
  CHECK(t.to_csv() == "a,s\n1,\"say \"\"hi\"\", ok\"\nx,\"say \"\"hi\"\", ok\"\n");
  auto text = t.to_text();
  CHECK(text.find("| a ") != std::string::npos);
  CHECK(text.substr(text.size() - 7) == "2 rows\n");
}

TEST_CASE("explain") {
  const auto &g = fixture_graph();
  auto plan = explain(parse(kListing), g);
  REQUIRE_FALSE(plan.steps.empty());
  // Dataset and ModelArchitecture are the rarest labels in the fixture; the
  // earlier clause wins the tie.
  CHECK(plan.steps[0] == "NodeByLabelScan (d:Dataset) estimated 4");
  CHECK(plan.steps.back() == "Sort i.energyConsumption ASC");
  CHECK(plan.to_string() == explain(parse(kListing), g).to_string());

  auto all = explain(parse("MATCH (n) RETURN n"), g);
  CHECK(all.steps.size() == 2);
  CHECK(all.steps[0].rfind("AllNodesScan", 0) == 0);
  CHECK(all.steps[1] == "Projection n");

  auto limited = explain(parse("MATCH (n:Model) WHERE n.a = 1 RETURN n LIMIT 2"));
  CHECK(limited.steps.back() == "Limit 2");
}

TEST_CASE("single-clause queries agree with the exhaustive oracle") {
  Rng rng(20250601);
  std::size_t nonEmpty = 0;
  for (int i = 0; i < 1000; ++i) {
    auto g = random_graph(rng);
    auto ast = random_query(rng, {1, 2, false});
    auto text = pretty_print(ast);
    auto table = execute(g, text);
    auto expected = oracle_rows(g, ast);
    nonEmpty += !expected.empty();
    std::size_t n = ast.limit ? std::min<std::size_t>(*ast.limit, expected.size()) : expected.size();
    REQUIRE_MESSAGE(table.rows.size() == n, text);
    if (!ast.orderKeys.empty()) {
      expected.resize(n);
      REQUIRE_MESSAGE(table.rows == expected, text);
    } else if (!ast.limit) {
      REQUIRE_MESSAGE(same_bag(table.rows, expected), text);
    } else {
      // Any n rows of the full bag.
      for (const auto &row : table.rows)
        REQUIRE_MESSAGE(std::find(expected.begin(), expected.end(), row) != expected.end(), text);
    }
  }
  CHECK(nonEmpty > 300);
}

TEST_CASE("multi-clause queries equal the natural join") {
  Rng rng(7);
  for (int i = 0; i < 300; ++i) {
    auto g = random_graph(rng, {7, 10, false});
    auto ast = random_query(rng, {2, 1, false});
    auto text = pretty_print(ast);
    auto table = execute(g, text);
    auto expected = oracle_rows(g, ast);
    std::size_t n = ast.limit ? std::min<std::size_t>(*ast.limit, expected.size()) : expected.size();
    REQUIRE_MESSAGE(table.rows.size() == n, text);
    if (!ast.orderKeys.empty()) {
      expected.resize(n);
      REQUIRE_MESSAGE(table.rows == expected, text);
    } else if (!ast.limit) {
      REQUIRE_MESSAGE(same_bag(table.rows, expected), text);
    }
  }
}

}
