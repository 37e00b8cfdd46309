#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "mrm3/schema.hpp"
#include "mrm3/store.hpp"

namespace mrm3::fixtures {

struct FixtureConfig {
  std::size_t modelCount = 22;
  std::vector<std::string> datasetNames = {"Lumos5G", "LOG-a-TEC Winter", "LOG-a-TEC Spring", "UMU"};
  std::vector<std::string> architectureNames = {"Random Forest", "KNeighbors", "XGBoost", "MLP"};
  std::size_t deviceCount = 1;
  // Distinct hyperparameter sets across the corpus; models of one
  // architecture share sets when this is below their count. 14 brings the
  // default corpus to 113 nodes.
  std::size_t hyperparameterSetCount = 14;
  std::uint64_t randomSeed = 20250601;

  // Throws ContractError for zero counts or repeated names.
  void check() const;
};

// Best-energy inference results the default corpus must reproduce, in
// ascending energy order.
struct GoldenRow {
  std::string architecture;
  std::string dataset;
  double energyConsumption;
  std::int64_t flops;
};

const std::vector<GoldenRow> &golden_rows();

// Lower bound for inference energy of every non-golden model (J).
inline constexpr double kMinOtherEnergy = 0.4;
inline constexpr double kMaxOtherEnergy = 2.0;

std::vector<schema::ModelMetadataDocument> generate(const FixtureConfig &config = {});

PropertyGraph build_graph(const std::vector<schema::ModelMetadataDocument> &docs);

struct CalibrationReport {
  std::size_t targetNodes = 0;
  std::size_t targetRelationships = 0;
  std::size_t hyperparameterSetCount = 0;
  GraphStats stats;
  bool matched = false;

  nlohmann::json to_json() const;
};

/// Searches hyperparameterSetCount for the setting whose ingested corpus
/// reaches the target totals. Counts come from ingesting and calling stats().
CalibrationReport calibrate(FixtureConfig config, std::size_t targetNodes = 113,
                            std::size_t targetRelationships = 199);

// One pretty-printed JSON file per model: model_00.json, model_01.json, ...
std::vector<std::filesystem::path> write_corpus(const std::vector<schema::ModelMetadataDocument> &docs,
                                                const std::filesystem::path &directory);

} // namespace mrm3::fixtures
