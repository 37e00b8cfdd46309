#include <cmath>
#include <limits>

#include "doctest.h"
#include "mrm3/error.hpp"
#include "mrm3/property_value.hpp"
#include "mrm3/vocabulary.hpp"

using namespace mrm3;

TEST_SUITE("vocabulary") {

TEST_CASE("closed label and type sets round-trip through names") {
  CHECK(kAllLabels.size() == 10);
  CHECK(kAllRelationTypes.size() == 9);
  for (auto label : kAllLabels)
    CHECK(parse_label(to_string(label)) == label);
  for (auto type : kAllRelationTypes)
    CHECK(parse_relation_type(to_string(type)) == type);
  CHECK_FALSE(parse_label("model"));
  CHECK_FALSE(parse_relation_type("trained_on"));
}

TEST_CASE("signature table") {
  using L = NodeLabel;
  using R = RelationType;
  CHECK(signature_allows(R::TRAINED_ON, L::Model, L::Dataset));
  CHECK_FALSE(signature_allows(R::TRAINED_ON, L::Dataset, L::Model));
  CHECK(signature_allows(R::INFERENCE_ON, L::ModelInference, L::Model));
  CHECK(signature_allows(R::RUNS_ON, L::ModelTraining, L::Device));
  CHECK(signature_allows(R::RUNS_ON, L::ModelInference, L::Device));
  CHECK_FALSE(signature_allows(R::RUNS_ON, L::Model, L::Device));
  CHECK(signature_allows(R::CONFIGURED_WITH, L::ModelTraining, L::Parameters));
  CHECK(signature_allows(R::TUNED_WITH, L::Parameters, L::Hyperparameters));
  CHECK(signature_allows(R::SOLUTION_FOR, L::Service, L::ProblemType));

  int admissible = 0;
  for (auto t : kAllRelationTypes)
    for (auto s : kAllLabels)
      for (auto d : kAllLabels)
        admissible += signature_allows(t, s, d);
  CHECK(admissible == 10);
}

TEST_CASE("double formatting keeps a float marker and round-trips") {
  CHECK(format_double(0.072) == "0.072");
  CHECK(format_double(1.0) == "1.0");
  CHECK(format_double(-2.0) == "-2.0");
  CHECK(format_double(1e300) == "1e+300");
  for (double d : {0.1, 1.0 / 3.0, 5e-324, 123456789.125, -0.5})
    CHECK(std::strtod(format_double(d).c_str(), nullptr) == d);
}

TEST_CASE("literal rendering") {
  CHECK(cypher_literal(PropertyValue("it's")) == "'it\\'s'");
  CHECK(cypher_literal(PropertyValue("a\\b")) == "'a\\\\b'");
  CHECK(cypher_literal(PropertyValue(std::int64_t{-3})) == "-3");
  CHECK(cypher_literal(PropertyValue(true)) == "true");
  CHECK(cypher_literal(PropertyValue()) == "null");
  CHECK(cypher_literal(PropertyValue(ScalarList{std::int64_t{1}, std::string("x")})) == "[1, 'x']");
  CHECK(display_string(PropertyValue("plain")) == "plain");
  CHECK(display_string(PropertyValue()) == "");
}

TEST_CASE("json conversion") {
  CHECK(property_from_json(nlohmann::json(3)).is_integer());
  CHECK(property_from_json(nlohmann::json(3.0)).is_float());
  CHECK(property_from_json(nlohmann::json(nullptr)).is_null());
  CHECK(property_from_json(nlohmann::json::array({1, "a", true})).list().size() == 3);
  CHECK_THROWS_AS(property_from_json(nlohmann::json::array({nlohmann::json::array()})), Error);
  CHECK_THROWS_AS(property_from_json(nlohmann::json::object()), Error);
  PropertyValue v(ScalarList{2.5, std::string("q"), false});
  CHECK(property_from_json(to_json(v)) == v);
}

TEST_CASE("finiteness") {
  CHECK(PropertyValue(1.0).is_finite());
  CHECK_FALSE(PropertyValue(std::numeric_limits<double>::infinity()).is_finite());
  CHECK_FALSE(PropertyValue(ScalarList{std::nan("")}).is_finite());
}

}
