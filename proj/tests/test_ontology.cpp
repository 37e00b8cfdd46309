#include <algorithm>
#include <set>
#include <sstream>

#include "doctest.h"
#include "generators.hpp"
#include "mrm3/error.hpp"
#include "mrm3/fixtures.hpp"
#include "mrm3/ontology.hpp"
#include "oracle.hpp"

using namespace mrm3;
using namespace mrm3::testing;

namespace {

schema::ModelMetadataDocument fixture_doc(std::size_t i = 0) { return fixtures::generate({}).at(i); }

PropertyGraph ingest_all(const std::vector<schema::ModelMetadataDocument> &docs) {
  PropertyGraph g;
  ontology::prepare(g);
  for (const auto &d : docs)
    ontology::ingest(g, d);
  return g;
}

} // namespace

TEST_SUITE("ontology") {

TEST_CASE("canonicalization") {
  CHECK(ontology::canonicalize("  Random   Forest \t") == "Random Forest");
  CHECK(ontology::canonicalize("UMU") == "UMU");
  CHECK(ontology::canonicalize("a\n\nb") == "a b");
  CHECK(ontology::canonicalize("   ").empty());
}

TEST_CASE("document maps to the ten-slot template") {
  auto mapped = ontology::map_document(fixture_doc());
  CHECK(mapped.nodes.size() == 10);
  CHECK(mapped.relationships.size() == 10);
  std::set<NodeLabel> labels;
  for (const auto &n : mapped.nodes)
    labels.insert(n.key.label);
  CHECK(labels.size() == 10);
  std::vector<ontology::IdentityKey> device_targets;
  for (const auto &r : mapped.relationships)
    if (r.type == RelationType::RUNS_ON)
      device_targets.push_back(r.target);
  REQUIRE(device_targets.size() == 2);
  CHECK(device_targets[0] == device_targets[1]);
  for (const auto &r : mapped.relationships)
    CHECK(signature_allows(r.type, r.source.label, r.target.label));
}

TEST_CASE("distinct devices give eleven slots") {
  auto doc = fixture_doc();
  doc.inference.device.gpu = "A100";
  auto mapped = ontology::map_document(doc);
  CHECK(mapped.nodes.size() == 11);
  CHECK(std::count_if(mapped.nodes.begin(), mapped.nodes.end(),
                      [](const auto &n) { return n.key.label == NodeLabel::Device; }) == 2);
  PropertyGraph g;
  auto report = ontology::ingest(g, doc);
  CHECK(report.nodesCreated == 11);
  CHECK(g.stats().nodes(NodeLabel::Device) == 2);
}

TEST_CASE("model identity ignores metrics") {
  auto a = fixture_doc(), b = fixture_doc();
  b.training.evaluation["MAE"] = 99;
  b.inference.sustainability.energyConsumption = 5;
  auto key = [](const ontology::MappedDocument &m) {
    for (const auto &n : m.nodes)
      if (n.key.label == NodeLabel::Model)
        return n.key;
    return ontology::IdentityKey{};
  };
  auto ka = key(ontology::map_document(a));
  CHECK(ka == key(ontology::map_document(b)));
  CHECK(ka.keyProperties.size() == 2);
  CHECK(ka.keyProperties[0].first == "name");
  CHECK(ka.keyProperties[1].first == "version");
}

TEST_CASE("identity properties per label") {
  using V = std::vector<std::string>;
  CHECK(ontology::identity_properties(NodeLabel::Model) == V{"name", "version"});
  CHECK(ontology::identity_properties(NodeLabel::Device) == V{"cpu", "gpu", "memoryGB"});
  CHECK(ontology::identity_properties(NodeLabel::ModelArchitecture) == V{"type"});
  CHECK(ontology::identity_properties(NodeLabel::Hyperparameters) == V{ontology::kHyperparameterKey});
}

TEST_CASE("hyperparameter signature is order independent and typed") {
  std::map<std::string, Scalar> a{{"x", std::int64_t{1}}, {"y", std::string("1")}};
  std::map<std::string, Scalar> b{{"y", std::string("1")}, {"x", std::int64_t{1}}};
  std::map<std::string, Scalar> c{{"x", std::string("1")}, {"y", std::string("1")}};
  CHECK(ontology::hyperparameter_signature(a) == ontology::hyperparameter_signature(b));
  CHECK(ontology::hyperparameter_signature(a) != ontology::hyperparameter_signature(c));
}

TEST_CASE("ingest is idempotent") {
  PropertyGraph g;
  auto first = ontology::ingest(g, fixture_doc());
  CHECK(first.nodesCreated == 10);
  CHECK(first.relationshipsCreated == 10);
  auto second = ontology::ingest(g, fixture_doc());
  CHECK(second.nodesCreated == 0);
  CHECK(second.nodesMatched == 10);
  CHECK(second.relationshipsCreated == 0);
  CHECK(second.relationshipsMatched == 10);
  CHECK(second.modelNodeId == first.modelNodeId);
  CHECK(g.node(first.modelNodeId).label == NodeLabel::Model);
}

TEST_CASE("shared dataset is merged") {
  auto a = fixture_doc(0), b = fixture_doc(4); // both on Lumos5G
  REQUIRE(a.dataset.name == b.dataset.name);
  auto g = ingest_all({a, b});
  CHECK(g.stats().nodes(NodeLabel::Dataset) == 1);
  CHECK(g.stats().relationships(RelationType::TRAINED_ON) == 2);
}

TEST_CASE("whitespace variants of a key denote one node") {
  auto a = fixture_doc(0), b = fixture_doc(1);
  b.general.architecture = "  " + a.general.architecture + " ";
  b.training.device.cpu = "Intel  Xeon Gold 6248R";
  b.inference.device.cpu = b.training.device.cpu;
  auto g = ingest_all({a, b});
  CHECK(g.stats().nodes(NodeLabel::ModelArchitecture) == 1);
  CHECK(g.stats().nodes(NodeLabel::Device) == 1);
  auto arch = g.find_nodes(NodeLabel::ModelArchitecture);
  CHECK(arch.front()->properties.at("type") == PropertyValue(a.general.architecture));
}

TEST_CASE("property placement and last writer wins") {
  auto doc = fixture_doc(3);
  auto g = ingest_all({doc});
  auto inference = g.find_nodes(NodeLabel::ModelInference).front();
  CHECK(inference->properties.at("energyConsumption") == PropertyValue(0.072));
  CHECK(inference->properties.at("flops") == PropertyValue(std::int64_t{249}));
  auto training = g.find_nodes(NodeLabel::ModelTraining).front();
  CHECK(training->properties.contains("RMSE"));
  CHECK(training->properties.contains("optimizer"));
  auto model = g.find_nodes(NodeLabel::Model).front();
  CHECK(model->properties.at("authors").is_list());
  CHECK(model->properties.contains("sizeMB"));
  auto device = g.find_nodes(NodeLabel::Device).front();
  CHECK(device->properties.at("memoryGB").is_float());

  doc.general.sizeMB = 1234.5;
  ontology::ingest(g, doc);
  CHECK(g.node(model->id).properties.at("sizeMB") == PropertyValue(1234.5));
}

TEST_CASE("signature violations and dangling endpoints leave the graph untouched") {
  PropertyGraph g;
  ontology::ingest(g, fixture_doc(0));
  auto before = snapshot_text(g);

  auto mapped = ontology::map_document(fixture_doc(1));
  mapped.relationships.push_back({RelationType::TRAINED_ON, mapped.relationships[0].target,
                                  mapped.relationships[0].source});
  CHECK_THROWS_AS(ontology::merge_into(g, mapped), ContractError);
  CHECK(snapshot_text(g) == before);

  mapped = ontology::map_document(fixture_doc(1));
  auto stray = mapped.relationships[0];
  stray.target.keyProperties[0].second = "not mapped";
  mapped.relationships.push_back(stray);
  CHECK_THROWS_AS(ontology::merge_into(g, mapped), ContractError);
  CHECK(snapshot_text(g) == before);
}

TEST_CASE("counts match the key oracle, ignore order and repeat ingests") {
  Rng rng(777);
  for (int round = 0; round < 200; ++round) {
    auto docs = random_documents(rng, 30);
    auto g = ingest_all(docs);
    auto stats = g.stats();
    REQUIRE(stats == expected_stats(docs));

    for (const auto &r : g.relationships())
      REQUIRE(signature_allows(r.type, g.node(r.source).label, g.node(r.target).label));

    for (const auto &d : docs)
      ontology::ingest(g, d);
    REQUIRE(g.stats() == stats);

    for (int p = 0; p < 3; ++p) {
      auto shuffled = docs;
      std::shuffle(shuffled.begin(), shuffled.end(), rng);
      REQUIRE(ingest_all(shuffled).stats() == stats);
    }
  }
}

}
