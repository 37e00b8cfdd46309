#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "mrm3/property_value.hpp"

namespace mrm3::schema {

// Units: energy J, carbon gCO2eq, latency ms, sizes MB, memory GB.

struct BasicMetadata {
  std::string name;
  std::string version;
  std::string date; // YYYY-MM-DD
  std::string description;
  std::vector<std::string> authors;
  bool operator==(const BasicMetadata &) const = default;
};

struct GeneralInfo {
  double sizeMB = 0;
  std::string architecture;
  std::string modelType;
  std::string explainability;
  std::string service;
  std::string problemType;
  bool operator==(const GeneralInfo &) const = default;
};

struct DatasetInfo {
  std::string name;
  std::string version;
  std::string date;
  double sizeMB = 0;
  bool operator==(const DatasetInfo &) const = default;
};

struct SustainabilityRecord {
  double energyConsumption = 0;
  double carbonFootprint = 0;
  bool operator==(const SustainabilityRecord &) const = default;
};

struct DeviceInfo {
  std::string cpu;
  std::string gpu; // "none" when absent
  double memoryGB = 0;
  bool operator==(const DeviceInfo &) const = default;
};

struct TrainingRecord {
  std::string splitType;
  std::string optimizer;
  std::map<std::string, Scalar> hyperparameters;
  std::map<std::string, double> evaluation; // MAE, MEDE, RMSE, R_squared plus extensions
  SustainabilityRecord sustainability;
  DeviceInfo device;
  bool operator==(const TrainingRecord &) const = default;
};

struct InferenceRecord {
  double latencyMs = 0;
  std::int64_t flops = 0;
  std::optional<double> accuracy;
  SustainabilityRecord sustainability;
  DeviceInfo device;
  bool operator==(const InferenceRecord &) const = default;
};

struct ModelMetadataDocument {
  BasicMetadata basic;
  GeneralInfo general;
  DatasetInfo dataset;
  TrainingRecord training;
  InferenceRecord inference;
  bool operator==(const ModelMetadataDocument &) const = default;
};

inline constexpr std::string_view kRecognizedMetrics[] = {"MAE", "MEDE", "RMSE", "R_squared"};

struct Violation {
  std::string jsonPath;
  std::string rule;
  std::string message;
  bool operator==(const Violation &) const = default;
};

struct ValidationReport {
  bool valid = true;
  std::vector<Violation> violations;

  nlohmann::json to_json() const;
};

// The built-in JSON Schema (draft 2020-12) for metadata documents.
struct SchemaDefinition {
  nlohmann::ordered_json document;

  std::vector<std::string> sections() const;
};

const SchemaDefinition &load_schema();

/// Checks `raw` against the built-in schema. Syntax errors are reported as a
/// single violation at "$" with rule "parse"; nothing throws.
ValidationReport validate_document(std::string_view raw);
ValidationReport validate_json(const nlohmann::json &document);

/// Throws ContractError listing the violations when `raw` does not validate.
ModelMetadataDocument parse_document(std::string_view raw);
ModelMetadataDocument from_json(const nlohmann::json &document);

nlohmann::json to_json(const ModelMetadataDocument &doc);
std::string serialize(const ModelMetadataDocument &doc);

} // namespace mrm3::schema
