#include "mrm3/vocabulary.hpp"

namespace mrm3 {

std::string_view to_string(NodeLabel label) noexcept {
  switch (label) {
  case NodeLabel::Model: return "Model";
  case NodeLabel::Dataset: return "Dataset";
  case NodeLabel::Service: return "Service";
  case NodeLabel::ProblemType: return "ProblemType";
  case NodeLabel::ModelArchitecture: return "ModelArchitecture";
  case NodeLabel::ModelTraining: return "ModelTraining";
  case NodeLabel::ModelInference: return "ModelInference";
  case NodeLabel::Parameters: return "Parameters";
  case NodeLabel::Hyperparameters: return "Hyperparameters";
  case NodeLabel::Device: return "Device";
  }
  return "?";
}

std::string_view to_string(RelationType type) noexcept {
  switch (type) {
  case RelationType::TRAINED_ON: return "TRAINED_ON";
  case RelationType::PROVIDES: return "PROVIDES";
  case RelationType::SOLUTION_FOR: return "SOLUTION_FOR";
  case RelationType::UTILIZES: return "UTILIZES";
  case RelationType::TRAINS_ON: return "TRAINS_ON";
  case RelationType::INFERENCE_ON: return "INFERENCE_ON";
  case RelationType::RUNS_ON: return "RUNS_ON";
  case RelationType::CONFIGURED_WITH: return "CONFIGURED_WITH";
  case RelationType::TUNED_WITH: return "TUNED_WITH";
  }
  return "?";
}

std::optional<NodeLabel> parse_label(std::string_view name) noexcept {
  for (auto label : kAllLabels)
    if (to_string(label) == name)
      return label;
  return std::nullopt;
}

std::optional<RelationType> parse_relation_type(std::string_view name) noexcept {
  for (auto type : kAllRelationTypes)
    if (to_string(type) == name)
      return type;
  return std::nullopt;
}

bool signature_allows(RelationType type, NodeLabel source, NodeLabel target) noexcept {
  using L = NodeLabel;
  switch (type) {
  case RelationType::TRAINED_ON: return source == L::Model && target == L::Dataset;
  case RelationType::PROVIDES: return source == L::Model && target == L::Service;
  case RelationType::SOLUTION_FOR: return source == L::Service && target == L::ProblemType;
  case RelationType::UTILIZES: return source == L::Model && target == L::ModelArchitecture;
  case RelationType::TRAINS_ON: return source == L::Model && target == L::ModelTraining;
  case RelationType::INFERENCE_ON: return source == L::ModelInference && target == L::Model;
  case RelationType::RUNS_ON:
    return (source == L::ModelTraining || source == L::ModelInference) && target == L::Device;
  case RelationType::CONFIGURED_WITH: return source == L::ModelTraining && target == L::Parameters;
  case RelationType::TUNED_WITH: return source == L::Parameters && target == L::Hyperparameters;
  }
  return false;
}

} // namespace mrm3
